#pragma once

#include <optional>
#include <stdexcept>

#include "texlbp/hclbp.hpp"
#include "texlbp/sps.hpp"

namespace texlbp {

// Either no masking, or one significance mask per (P, R) entry.
struct MaskPolicy {
  std::optional<SpsOptions> sps;

  static MaskPolicy none() { return {}; }
  static MaskPolicy significant(SpsOptions o = {}) { return {o}; }
};

// Concatenated colour descriptors over the schedule, in schedule order.
inline Descriptor multiresolution_descriptor(const RgbImage& image,
                                             const ResolutionSchedule& schedule,
                                             HybridBlock hybrid,
                                             const MaskPolicy& policy = MaskPolicy::none(),
                                             OpTally* ops = nullptr) {
  if (schedule.empty()) throw std::invalid_argument("resolution schedule is empty");
  Descriptor out;
  for (const auto& params : schedule.entries()) {
    require_operator_fits(image.width(), image.height(), params);
    if (policy.sps) {
      const SignificanceMask mask = significance_mask(image, params, *policy.sps, ops);
      out.append(color_descriptor(image, params, hybrid, &mask, ops));
    } else {
      out.append(color_descriptor(image, params, hybrid, nullptr, ops));
    }
  }
  return out;
}

inline Descriptor multiresolution_descriptor(const RgbImage& image,
                                             const ResolutionSchedule& schedule,
                                             bool include_hclbp,
                                             const MaskPolicy& policy = MaskPolicy::none()) {
  return multiresolution_descriptor(
      image, schedule, include_hclbp ? HybridBlock::kAppend : HybridBlock::kOff, policy);
}

}  // namespace texlbp
