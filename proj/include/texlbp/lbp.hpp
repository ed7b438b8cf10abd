#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "texlbp/image.hpp"
#include "texlbp/mask.hpp"
#include "texlbp/ops.hpp"

namespace texlbp {

// Threshold function: 1 for x >= 0.
constexpr int omega(double x) noexcept { return x >= 0.0 ? 1 : 0; }

struct LbpCode {
  std::uint32_t value = 0;
  int bits = 8;

  bool operator==(const LbpCode&) const = default;
};

namespace detail {

constexpr std::uint32_t low_mask(int bits) noexcept {
  return bits >= 32 ? 0xFFFFFFFFu : ((1u << bits) - 1u);
}

}  // namespace detail

inline LbpCode lbp_code(const NeighborhoodSample& s) {
  LbpCode code{0, static_cast<int>(s.neighbors.size())};
  for (std::size_t k = 0; k < s.neighbors.size(); ++k) {
    code.value |= static_cast<std::uint32_t>(omega(s.neighbors[k] - s.center)) << k;
  }
  return code;
}

// Circular right shift of a P-bit code.
constexpr LbpCode rotate_right(LbpCode c, int i) noexcept {
  const int p = c.bits;
  i = ((i % p) + p) % p;
  if (i == 0) return c;
  const std::uint32_t m = detail::low_mask(p);
  const std::uint32_t v = c.value & m;
  return {((v >> i) | (v << (p - i))) & m, p};
}

constexpr LbpCode ror_min(LbpCode c) noexcept {
  LbpCode best = rotate_right(c, 0);
  for (int i = 1; i < c.bits; ++i) {
    const LbpCode r = rotate_right(c, i);
    if (r.value < best.value) best = r;
  }
  return best;
}

// Number of 0/1 transitions around the closed ring of P bits.
constexpr int uniformity(LbpCode c) noexcept {
  const std::uint32_t m = detail::low_mask(c.bits);
  const std::uint32_t v = c.value & m;
  return std::popcount(v ^ rotate_right(c, 1).value);
}

constexpr int popcount(LbpCode c) noexcept {
  return std::popcount(c.value & detail::low_mask(c.bits));
}

constexpr int riu_label(LbpCode c, int uniform_threshold) noexcept {
  return uniformity(c) <= uniform_threshold ? popcount(c) : c.bits + 1;
}

inline int riu_label(const NeighborhoodSample& s, const OperatorParams& params) {
  return riu_label(lbp_code(s), params.uniform_threshold);
}

// Labels over the valid interior ((W-2R) x (H-2R)); kUnlabeled marks pixels
// excluded by a mask.
struct LabelMap {
  static constexpr std::int16_t kUnlabeled = -1;

  int width = 0;
  int height = 0;
  OperatorParams params;
  std::vector<std::int16_t> labels;

  std::int16_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }

  std::size_t labeled_count() const noexcept {
    std::size_t n = 0;
    for (auto l : labels) n += l != kUnlabeled;
    return n;
  }
};

namespace detail {

inline void count_labeling(OpTally* ops, int p) {
  if (!ops) return;
  auto& g = ops->aux(aux_group::kLabeling);
  g.comparisons += static_cast<std::uint64_t>(p) + 1;
  g.additions += 2 * static_cast<std::uint64_t>(p);
}

inline void count_interpolation(OpTally* ops, const CircularPattern& pattern) {
  if (!ops) return;
  const auto n = static_cast<std::uint64_t>(pattern.interpolated_taps());
  auto& g = ops->aux(aux_group::kInterpolation);
  g.multiplications += 4 * n;
  g.additions += 3 * n;
}

inline LabelMap make_label_map(int image_width, int image_height,
                               const OperatorParams& params,
                               const SignificanceMask* mask) {
  params.validate();
  require_operator_fits(image_width, image_height, params);
  if (mask) mask->check_matches(image_width, image_height, params.radius);
  LabelMap map;
  map.width = image_width - 2 * params.radius;
  map.height = image_height - 2 * params.radius;
  map.params = params;
  map.labels.assign(static_cast<std::size_t>(map.width) * map.height, LabelMap::kUnlabeled);
  return map;
}

}  // namespace detail

// riu_T labels for one grayscale plane. With a mask, only selected interior
// pixels are labelled. When `ops` is set, the modeled group receives one
// subtraction, comparison and addition per neighbour.
inline LabelMap label_map(const GrayPlane& plane, const OperatorParams& params,
                          const SignificanceMask* mask = nullptr, OpTally* ops = nullptr) {
  LabelMap map = detail::make_label_map(plane.width(), plane.height(), params, mask);
  const CircularPattern pattern(params);
  const int r = params.radius;
  const int p = params.neighbors;
  std::vector<double> ring(static_cast<std::size_t>(p));
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (mask && !mask->at(x, y)) continue;
      const int cx = x + r;
      const int cy = y + r;
      const double center = plane.at(cx, cy);
      for (int k = 0; k < p; ++k) ring[static_cast<std::size_t>(k)] = pattern.sample(plane, cx, cy, k);
      LbpCode code{0, p};
      for (int k = 0; k < p; ++k) {
        const double diff = ring[static_cast<std::size_t>(k)] - center;
        const int bit = omega(diff);
        code.value += static_cast<std::uint32_t>(bit) << k;
      }
      if (ops) {
        ops->modeled.subtractions += static_cast<std::uint64_t>(p);
        ops->modeled.comparisons += static_cast<std::uint64_t>(p);
        ops->modeled.additions += static_cast<std::uint64_t>(p);
      }
      detail::count_interpolation(ops, pattern);
      detail::count_labeling(ops, p);
      map.labels[static_cast<std::size_t>(y) * map.width + x] =
          static_cast<std::int16_t>(riu_label(code, params.uniform_threshold));
    }
  }
  return map;
}

// Named run of P+2 bins inside a descriptor.
struct DescriptorBlock {
  std::string name;
  int neighbors = 8;
  int radius = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
  bool masked = false;
  std::size_t labeled = 0;

  bool operator==(const DescriptorBlock&) const = default;
};

// Normalised label-occurrence histograms. Each block is divided by the
// number of labelled pixels (not by the full image area), so it sums to 1.
struct Descriptor {
  std::vector<double> bins;
  std::vector<DescriptorBlock> blocks;

  std::size_t size() const noexcept { return bins.size(); }

  std::vector<double> block_bins(std::size_t i) const {
    const auto& b = blocks.at(i);
    return {bins.begin() + static_cast<std::ptrdiff_t>(b.offset),
            bins.begin() + static_cast<std::ptrdiff_t>(b.offset + b.length)};
  }

  void append(const Descriptor& other) {
    const std::size_t base = bins.size();
    bins.insert(bins.end(), other.bins.begin(), other.bins.end());
    for (auto b : other.blocks) {
      b.offset += base;
      blocks.push_back(std::move(b));
    }
  }

  bool operator==(const Descriptor&) const = default;
};

inline constexpr const char* kNormalization = "labeled_pixels";

inline Descriptor label_histogram(const LabelMap& map, const std::string& name = "D",
                                  bool masked = false, OpTally* ops = nullptr) {
  const int nbins = map.params.bins();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(nbins), 0);
  std::size_t labeled = 0;
  for (auto l : map.labels) {
    if (l == LabelMap::kUnlabeled) continue;
    if (l < 0 || l >= nbins) throw std::logic_error("label_histogram: label out of range");
    ++counts[static_cast<std::size_t>(l)];
    ++labeled;
  }
  if (labeled == 0) throw std::invalid_argument("label_histogram: empty label map");
  if (ops) {
    auto& g = ops->aux(aux_group::kHistogram);
    g.additions += labeled;
    g.divisions += static_cast<std::uint64_t>(nbins);
  }
  Descriptor d;
  d.bins.resize(static_cast<std::size_t>(nbins));
  for (int k = 0; k < nbins; ++k) {
    d.bins[static_cast<std::size_t>(k)] =
        static_cast<double>(counts[static_cast<std::size_t>(k)]) / static_cast<double>(labeled);
  }
  d.blocks.push_back({name, map.params.neighbors, map.params.radius, 0,
                      static_cast<std::size_t>(nbins), masked, labeled});
  return d;
}

}  // namespace texlbp
