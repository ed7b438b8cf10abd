#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "texlbp/hclbp.hpp"
#include "texlbp/lbp.hpp"
#include "texlbp/ops.hpp"
#include "texlbp/sps.hpp"

namespace texlbp {

enum class OperatorKind { kPlaneLbp, kHclbp };

inline std::string operator_name(OperatorKind kind, const OperatorParams& p, bool sps = false) {
  std::string s = kind == OperatorKind::kHclbp ? "HCLBP" : "MLBP";
  s += "_{" + std::to_string(p.neighbors) + "," + std::to_string(p.radius) + "}";
  if (sps) s += "+SPS";
  return s;
}

struct OpContext {
  std::string name;
  OperatorParams params;
  int width = 0;
  int height = 0;
  std::uint64_t neighborhoods = 0;
};

struct OpReport {
  OpContext context;
  OpCounters predicted;
  OpCounters measured;                  // modeled group only
  std::map<std::string, OpCounters> auxiliary;
  bool fallback_used = false;
};

// Closed-form counts for the modeled loops: per neighbourhood P comparisons,
// P subtractions, P additions, and 2P multiplications for HCLBP (the
// three-factor AND product). No per-neighbourhood division exists.
inline OpCounters predict_ops(OperatorKind kind, const OperatorParams& params, int width,
                              int height, std::optional<std::uint64_t> selected = std::nullopt) {
  if (width <= 2 * params.radius || height <= 2 * params.radius) {
    throw std::invalid_argument("predict_ops: degenerate dimensions");
  }
  const std::uint64_t interior = static_cast<std::uint64_t>(width - 2 * params.radius) *
                                 static_cast<std::uint64_t>(height - 2 * params.radius);
  const std::uint64_t n = selected.value_or(interior);
  if (n > interior) throw std::invalid_argument("predict_ops: selected exceeds interior");
  const auto p = static_cast<std::uint64_t>(params.neighbors);
  OpCounters c;
  c.comparisons = p * n;
  c.subtractions = p * n;
  c.additions = p * n;
  c.multiplications = kind == OperatorKind::kHclbp ? 2 * p * n : 0;
  return c;
}

// Runs one instrumented extraction (a single plane for the per-plane operator,
// the fused operator for HCLBP) and reports measured against predicted.
inline OpReport measure_ops(OperatorKind kind, const RgbImage& image, const OperatorParams& params,
                            const std::optional<SpsOptions>& sps = std::nullopt) {
  OpTally tally;
  std::optional<SignificanceMask> mask;
  if (sps) mask = significance_mask(image, params, *sps, &tally);
  const SignificanceMask* m = mask ? &*mask : nullptr;

  const LabelMap map = kind == OperatorKind::kHclbp
                           ? hclbp_label_map(image, params, m, &tally)
                           : label_map(image.plane(Channel::R), params, m, &tally);
  label_histogram(map, "D", m != nullptr, &tally);

  OpReport r;
  r.context.name = operator_name(kind, params, sps.has_value());
  r.context.params = params;
  r.context.width = image.width();
  r.context.height = image.height();
  r.context.neighborhoods = map.labeled_count();
  r.predicted = predict_ops(kind, params, image.width(), image.height(),
                            m ? std::optional<std::uint64_t>(m->selected_count) : std::nullopt);
  r.measured = tally.modeled;
  r.auxiliary = tally.auxiliary;
  r.fallback_used = mask && mask->fallback_used;
  return r;
}

}  // namespace texlbp
