#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "texlbp/image.hpp"
#include "texlbp/mask.hpp"
#include "texlbp/ops.hpp"

namespace texlbp {

// kAbsolute averages |f_k - f_c|; kSigned keeps the sign of each difference,
// under which symmetric neighbourhoods cancel to zero.
enum class LsvMode { kAbsolute, kSigned };

struct SpsOptions {
  LsvMode mode = LsvMode::kAbsolute;
  bool fallback = true;  // select everything when nothing beats the mean
};

inline double lsv(const GrayPlane& plane, int x, int y, const CircularPattern& pattern,
                  LsvMode mode = LsvMode::kAbsolute) {
  const int r = pattern.params().radius;
  if (!is_interior(plane.width(), plane.height(), x, y, r)) {
    throw std::out_of_range("lsv: border pixel");
  }
  const double center = plane.at(x, y);
  double sum = 0.0;
  for (int k = 0; k < pattern.size(); ++k) {
    const double d = pattern.sample(plane, x, y, k) - center;
    sum += mode == LsvMode::kAbsolute ? std::abs(d) : d;
  }
  return sum / pattern.size();
}

inline double lsv(const GrayPlane& plane, int x, int y, const OperatorParams& params,
                  LsvMode mode = LsvMode::kAbsolute) {
  return lsv(plane, x, y, CircularPattern(params), mode);
}

// LSV for every interior pixel, row-major over the (W-2R) x (H-2R) interior.
inline std::vector<double> lsv_field(const GrayPlane& plane, const OperatorParams& params,
                                     LsvMode mode = LsvMode::kAbsolute,
                                     OpTally* ops = nullptr) {
  require_operator_fits(plane.width(), plane.height(), params);
  const CircularPattern pattern(params);
  const int r = params.radius;
  const int w = plane.width() - 2 * r;
  const int h = plane.height() - 2 * r;
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out[static_cast<std::size_t>(y) * w + x] = lsv(plane, x + r, y + r, pattern, mode);
    }
  }
  if (ops) {
    const auto n = static_cast<std::uint64_t>(out.size());
    const auto p = static_cast<std::uint64_t>(params.neighbors);
    auto& g = ops->aux(aux_group::kSignificance);
    g.subtractions += n * p;
    g.additions += n * p;
    g.divisions += n;
  }
  return out;
}

inline double gsv(const GrayPlane& plane, const OperatorParams& params,
                  LsvMode mode = LsvMode::kAbsolute) {
  const auto field = lsv_field(plane, params, mode);
  double sum = 0.0;
  for (double v : field) sum += v;
  return sum / static_cast<double>(field.size());
}

// Selects interior pixels with LSV strictly above the image-wide mean (GSV).
// Colour images are reduced to their mean plane first, so a single mask
// gates every descriptor block.
inline SignificanceMask significance_mask(const GrayPlane& plane, const OperatorParams& params,
                                          const SpsOptions& options = {},
                                          OpTally* ops = nullptr) {
  const auto field = lsv_field(plane, params, options.mode, ops);
  double sum = 0.0;
  for (double v : field) sum += v;
  const double g = sum / static_cast<double>(field.size());
  if (ops) {
    auto& grp = ops->aux(aux_group::kSignificance);
    grp.additions += field.size();
    grp.divisions += 1;
    grp.comparisons += field.size();
  }

  SignificanceMask m;
  m.radius = params.radius;
  m.width = plane.width() - 2 * params.radius;
  m.height = plane.height() - 2 * params.radius;
  m.gsv = g;
  m.selected.resize(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    m.selected[i] = field[i] > g ? 1 : 0;
    m.selected_count += m.selected[i];
  }
  if (m.selected_count == 0 && options.fallback) {
    std::fill(m.selected.begin(), m.selected.end(), std::uint8_t{1});
    m.selected_count = m.selected.size();
    m.fallback_used = true;
  }
  return m;
}

inline SignificanceMask significance_mask(const RgbImage& image, const OperatorParams& params,
                                          const SpsOptions& options = {},
                                          OpTally* ops = nullptr) {
  return significance_mask(mean_plane(image), params, options, ops);
}

}  // namespace texlbp
