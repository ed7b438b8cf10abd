#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "texlbp/image.hpp"
#include "texlbp/lbp.hpp"
#include "texlbp/mask.hpp"
#include "texlbp/ops.hpp"

namespace texlbp {

// Per-plane strict threshold of the hybrid operator.
constexpr int strict_omega(double neighbor, double center) noexcept {
  return neighbor - center > 0.0 ? 1 : 0;
}

// AND-fused bit: 1 only when the neighbour exceeds the centre in every plane.
constexpr int hclbp_bit(const std::array<double, 3>& center,
                        const std::array<double, 3>& neighbor) noexcept {
  return strict_omega(neighbor[0], center[0]) * strict_omega(neighbor[1], center[1]) *
         strict_omega(neighbor[2], center[2]);
}

// HCLBP codes pushed through the same uniformity / riu_T labelling as the
// grayscale operator. Constant regions label 0 here (strict >), whereas the
// per-plane operator labels them P.
inline LabelMap hclbp_label_map(const RgbImage& image, const OperatorParams& params,
                                const SignificanceMask* mask = nullptr,
                                OpTally* ops = nullptr) {
  LabelMap map = detail::make_label_map(image.width(), image.height(), params, mask);
  const CircularPattern pattern(params);
  const int r = params.radius;
  const int p = params.neighbors;
  std::array<std::vector<double>, 3> ring;
  for (auto& v : ring) v.resize(static_cast<std::size_t>(p));
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (mask && !mask->at(x, y)) continue;
      const int cx = x + r;
      const int cy = y + r;
      std::array<double, 3> center{};
      for (int c = 0; c < 3; ++c) {
        center[static_cast<std::size_t>(c)] = image.plane(c).at(cx, cy);
        for (int k = 0; k < p; ++k) {
          ring[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] =
              pattern.sample(image.plane(c), cx, cy, k);
        }
        detail::count_interpolation(ops, pattern);
      }
      LbpCode code{0, p};
      for (int k = 0; k < p; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const int wr = strict_omega(ring[0][kk], center[0]);
        const int wg = strict_omega(ring[1][kk], center[1]);
        const int wb = strict_omega(ring[2][kk], center[2]);
        const int bit = wr * wg * wb;
        code.value += static_cast<std::uint32_t>(bit) << k;
      }
      if (ops) {
        const auto n = static_cast<std::uint64_t>(p);
        // One colour difference/threshold per neighbour is the modeled unit;
        // the two extra scalar planes are tallied separately.
        ops->modeled.subtractions += n;
        ops->modeled.comparisons += n;
        ops->modeled.multiplications += 2 * n;
        ops->modeled.additions += n;
        auto& fan = ops->aux(aux_group::kPlaneFanout);
        fan.subtractions += 2 * n;
        fan.comparisons += 2 * n;
      }
      detail::count_labeling(ops, p);
      map.labels[static_cast<std::size_t>(y) * map.width + x] =
          static_cast<std::int16_t>(riu_label(code, params.uniform_threshold));
    }
  }
  return map;
}

enum class HybridBlock {
  kOff,      // <D_R, D_G, D_B>
  kAppend,   // <D_R, D_G, D_B, D_H>
  kOnly,     // <D_H>
};

inline Descriptor color_descriptor(const RgbImage& image, const OperatorParams& params,
                                   HybridBlock hybrid,
                                   const SignificanceMask* mask = nullptr,
                                   OpTally* ops = nullptr) {
  Descriptor out;
  const bool masked = mask != nullptr;
  if (hybrid != HybridBlock::kOnly) {
    static constexpr const char* kNames[3] = {"R", "G", "B"};
    for (int c = 0; c < 3; ++c) {
      out.append(label_histogram(label_map(image.plane(c), params, mask, ops), kNames[c],
                                 masked, ops));
    }
  }
  if (hybrid != HybridBlock::kOff) {
    out.append(label_histogram(hclbp_label_map(image, params, mask, ops), "H", masked, ops));
  }
  return out;
}

inline Descriptor color_descriptor(const RgbImage& image, const OperatorParams& params,
                                   bool include_hclbp,
                                   const SignificanceMask* mask = nullptr) {
  return color_descriptor(image, params, include_hclbp ? HybridBlock::kAppend : HybridBlock::kOff,
                          mask);
}

// Non-empty list of operators with strictly increasing radius.
class ResolutionSchedule {
 public:
  ResolutionSchedule() = default;

  explicit ResolutionSchedule(std::vector<OperatorParams> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("resolution schedule is empty");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      entries_[i].validate();
      if (i > 0 && entries_[i].radius <= entries_[i - 1].radius) {
        throw std::invalid_argument("resolution schedule radii must be strictly increasing");
      }
    }
  }

  const std::vector<OperatorParams>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  int max_radius() const noexcept { return entries_.empty() ? 0 : entries_.back().radius; }

  bool operator==(const ResolutionSchedule&) const = default;

 private:
  std::vector<OperatorParams> entries_;
};

}  // namespace texlbp
