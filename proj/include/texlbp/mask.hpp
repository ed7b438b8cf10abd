#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace texlbp {

// Selection over the valid interior of an image for one radius: entry
// (x, y) refers to image pixel (x + radius, y + radius).
struct SignificanceMask {
  int width = 0;
  int height = 0;
  int radius = 0;
  std::vector<std::uint8_t> selected;
  std::size_t selected_count = 0;
  double gsv = 0.0;
  bool fallback_used = false;

  bool at(int x, int y) const {
    return selected[static_cast<std::size_t>(y) * width + x] != 0;
  }

  std::size_t interior_size() const noexcept {
    return static_cast<std::size_t>(width) * height;
  }

  static SignificanceMask all(int width, int height, int radius) {
    SignificanceMask m;
    m.width = width;
    m.height = height;
    m.radius = radius;
    m.selected.assign(static_cast<std::size_t>(width) * height, 1);
    m.selected_count = m.selected.size();
    return m;
  }

  void check_matches(int image_width, int image_height, int r) const {
    if (radius != r || width != image_width - 2 * r || height != image_height - 2 * r) {
      throw std::invalid_argument("significance mask does not match image interior");
    }
  }
};

}  // namespace texlbp
