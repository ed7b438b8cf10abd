#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace texlbp {

struct OpCounters {
  std::uint64_t comparisons = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t divisions = 0;
  std::uint64_t additions = 0;
  std::uint64_t subtractions = 0;

  OpCounters& operator+=(const OpCounters& o) noexcept {
    comparisons += o.comparisons;
    multiplications += o.multiplications;
    divisions += o.divisions;
    additions += o.additions;
    subtractions += o.subtractions;
    return *this;
  }

  friend OpCounters operator+(OpCounters a, const OpCounters& b) noexcept { return a += b; }

  bool operator==(const OpCounters&) const = default;
};

// Counter groups filled by instrumented extraction. `modeled` covers the
// threshold/difference/bit-weight/AND-product loops only; everything else
// lands in a named auxiliary group.
struct OpTally {
  OpCounters modeled;
  std::map<std::string, OpCounters> auxiliary;

  OpCounters& aux(const std::string& group) { return auxiliary[group]; }

  OpTally& operator+=(const OpTally& o) {
    modeled += o.modeled;
    for (const auto& [k, v] : o.auxiliary) auxiliary[k] += v;
    return *this;
  }
};

namespace aux_group {
inline constexpr const char* kInterpolation = "interpolation";
inline constexpr const char* kLabeling = "labeling";
inline constexpr const char* kHistogram = "histogram";
inline constexpr const char* kPlaneFanout = "plane_fanout";
inline constexpr const char* kSignificance = "significance";
}  // namespace aux_group

}  // namespace texlbp
