#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "texlbp/dataset.hpp"
#include "texlbp/image.hpp"
#include "texlbp/image_io.hpp"
#include "texlbp/rng.hpp"

namespace texlbp {

// Synthetic colour-texture corpus: flat fields, fine checkerboards (2-3 px
// cells), thin hard-edged lines (period 6-10 px, 25% duty) and random-phase
// sinusoid mixtures, each class in its own colour pair whose lighter member
// is lighter in every plane. Every sample draws its geometry, phase and colours from a stream
// derived from (seed, class, index) and carries a small per-channel grain.
struct SynthSpec {
  int classes = 4;
  int per_class = 25;
  int size = 32;
  int grain = 6;  // peak-to-peak amplitude of the per-cell grain
  std::uint64_t seed = 2024;
};

inline const std::vector<std::string>& synth_class_names() {
  static const std::vector<std::string> names{"flat", "checker", "stripes", "sinusoid", "dots", "rings"};
  return names;
}

namespace detail {

inline std::uint8_t clamp8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

using Color = std::array<double, 3>;

inline Color jitter(const Color& c, Rng& rng, double amount) {
  Color out{};
  for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] + amount * (2.0 * uniform01(rng) - 1.0);
  return out;
}

// Base colour pairs per class kind, kept away from 0 and 255.
inline std::array<Color, 2> class_colors(int kind) {
  static const std::array<std::array<Color, 2>, 6> table{{
      {{{150, 120, 90}, {150, 120, 90}}},
      {{{60, 90, 160}, {170, 190, 220}}},
      {{{170, 70, 60}, {230, 180, 110}}},
      {{{60, 140, 80}, {190, 220, 140}}},
      {{{110, 80, 150}, {210, 190, 230}}},
      {{{90, 90, 90}, {200, 200, 180}}},
  }};
  return table[static_cast<std::size_t>(kind)];
}

// Texture mixing weight in [0, 1] at (x, y) for a class kind.
struct Pattern {
  int kind = 0;
  double scale = 1.0;
  double phase_x = 0.0, phase_y = 0.0;
  double theta = 0.0, theta2 = 0.0, period2 = 1.0, phase2 = 0.0;

  double weight(double x, double y) const {
    switch (kind) {
      case 0:
        return 0.0;
      case 1: {
        const auto cx = static_cast<long>(std::floor((x + phase_x) / scale));
        const auto cy = static_cast<long>(std::floor((y + phase_y) / scale));
        return ((cx + cy) & 1) ? 1.0 : 0.0;
      }
      case 2: {
        const double u = (x * std::cos(theta) + y * std::sin(theta)) / scale + phase_x;
        return u - std::floor(u) < 0.25 ? 1.0 : 0.0;
      }
      case 3: {
        const double u = (x * std::cos(theta) + y * std::sin(theta)) / scale + phase_x;
        const double v = (x * std::cos(theta2) + y * std::sin(theta2)) / period2 + phase2;
        return 0.5 + 0.25 * (std::sin(2 * std::numbers::pi * u) + std::sin(2 * std::numbers::pi * v));
      }
      case 4: {
        const double u = std::fmod(x + phase_x, scale) - scale / 2;
        const double v = std::fmod(y + phase_y, scale) - scale / 2;
        return u * u + v * v < scale * scale / 9.0 ? 1.0 : 0.0;
      }
      default: {
        const double r = std::hypot(x - phase_x, y - phase_y) / scale;
        return r - std::floor(r) < 0.5 ? 1.0 : 0.0;
      }
    }
  }
};

}  // namespace detail

inline RgbImage synth_sample(int kind, int size, int grain, std::uint64_t stream_seed) {
  if (kind < 0 || kind >= static_cast<int>(synth_class_names().size())) {
    throw std::invalid_argument("synthetic class kind out of range");
  }
  Rng rng(stream_seed);
  const auto base = detail::class_colors(kind);
  const auto c0 = detail::jitter(base[0], rng, 12.0);
  const auto c1 = detail::jitter(base[1], rng, 12.0);
  detail::Pattern pat;
  pat.kind = kind;
  pat.theta = std::numbers::pi * uniform01(rng);
  pat.theta2 = std::numbers::pi * uniform01(rng);
  pat.phase_x = 64.0 * uniform01(rng);
  pat.phase_y = 64.0 * uniform01(rng);
  pat.phase2 = uniform01(rng);
  switch (kind) {
    case 1: pat.scale = 2.0 + static_cast<double>(uniform_index(rng, 2)); break;
    case 2: pat.scale = 6.0 + 4.0 * uniform01(rng); break;
    case 3:
      pat.scale = 9.0 + 6.0 * uniform01(rng);
      pat.period2 = 9.0 + 6.0 * uniform01(rng);
      break;
    case 4: pat.scale = 7.0 + static_cast<double>(uniform_index(rng, 4)); break;
    case 5: pat.scale = 5.0 + 3.0 * uniform01(rng); break;
    default: break;
  }
  RgbImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double w = pat.weight(x, y);
      std::array<std::uint8_t, 3> px{};
      for (std::size_t c = 0; c < 3; ++c) {
        const double g = grain > 0 ? static_cast<double>(uniform_index(rng, static_cast<std::uint64_t>(grain) + 1)) - grain / 2.0 : 0.0;
        px[c] = detail::clamp8((1.0 - w) * c0[c] + w * c1[c] + g);
      }
      img.set_pixel(x, y, px);
    }
  }
  return img;
}

inline SampleSet synth_corpus(const SynthSpec& spec) {
  if (spec.classes < 2 || spec.classes > static_cast<int>(synth_class_names().size())) {
    throw std::invalid_argument("synthetic corpus supports 2 to 6 classes");
  }
  if (spec.per_class < 1 || spec.size < 8) throw std::invalid_argument("bad synthetic corpus size");
  SampleSet set;
  for (int c = 0; c < spec.classes; ++c) set.class_names.push_back(synth_class_names()[static_cast<std::size_t>(c)]);
  for (int c = 0; c < spec.classes; ++c) {
    for (int i = 0; i < spec.per_class; ++i) {
      char id[64];
      std::snprintf(id, sizeof id, "%s/%03d.png", set.class_names[static_cast<std::size_t>(c)].c_str(), i);
      set.add(id, c,
              synth_sample(c, spec.size, spec.grain,
                           derive_seed(spec.seed, static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(i))));
    }
  }
  return set;
}

// Writes the corpus as <root>/<class>/<NNN>.png.
inline void write_synth_corpus(const std::filesystem::path& root, const SynthSpec& spec) {
  const SampleSet set = synth_corpus(spec);
  for (const auto& name : set.class_names) std::filesystem::create_directories(root / name);
  for (std::size_t i = 0; i < set.size(); ++i) write_png(root / set.ids[i], set.images[i]);
}

}  // namespace texlbp
