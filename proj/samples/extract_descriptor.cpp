// Prints the HCLBP+SPS descriptor of one image, or of a synthetic sample when
// no path is given.
#include <cstdio>
#include <exception>

#include "texlbp/extractor.hpp"
#include "texlbp/image_io.hpp"
#include "texlbp/synth.hpp"

int main(int argc, char** argv) {
  using namespace texlbp;
  try {
    const RgbImage image = argc > 1 ? load_image(argv[1]) : synth_sample(1, 64, 6, 7);

    ExtractorConfig cfg;
    cfg.schedule = parse_schedule("8,1;16,2");
    cfg.sps = true;
    const Descriptor d = extract(image, cfg);

    for (const auto& b : d.blocks) {
      std::printf("%s P=%d R=%d labeled=%llu:", b.name.c_str(), b.neighbors, b.radius,
                  static_cast<unsigned long long>(b.labeled));
      for (std::size_t i = 0; i < b.length; ++i) std::printf(" %.4f", d.bins[b.offset + i]);
      std::printf("\n");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}
