#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "texlbp/format.hpp"
#include "texlbp/hclbp.hpp"
#include "texlbp/multires.hpp"

namespace texlbp {

// What to extract from one colour sample.
struct ExtractorConfig {
  ResolutionSchedule schedule{{OperatorParams::make(8, 1)}};
  HybridBlock hybrid = HybridBlock::kAppend;
  bool sps = false;
  LsvMode lsv_mode = LsvMode::kAbsolute;

  // "plane", "hclbp" or "hclbp-only", optionally followed by "+sps".
  std::string name() const {
    std::string s = hybrid == HybridBlock::kOff    ? "plane"
                    : hybrid == HybridBlock::kOnly ? "hclbp-only"
                                                   : "hclbp";
    if (sps) s += "+sps";
    return s;
  }

  static ExtractorConfig from_name(const std::string& name, const ResolutionSchedule& schedule) {
    ExtractorConfig c;
    c.schedule = schedule;
    std::string base = name;
    const auto plus = name.find('+');
    if (plus != std::string::npos) {
      if (name.substr(plus + 1) != "sps") throw std::invalid_argument("unknown extractor: " + name);
      c.sps = true;
      base = name.substr(0, plus);
    }
    if (base == "plane") c.hybrid = HybridBlock::kOff;
    else if (base == "hclbp") c.hybrid = HybridBlock::kAppend;
    else if (base == "hclbp-only") c.hybrid = HybridBlock::kOnly;
    else throw std::invalid_argument("unknown extractor: " + name);
    return c;
  }

  std::size_t dimensions() const {
    const std::size_t blocks = hybrid == HybridBlock::kAppend ? 4 : hybrid == HybridBlock::kOnly ? 1 : 3;
    std::size_t d = 0;
    for (const auto& p : schedule.entries()) d += blocks * static_cast<std::size_t>(p.bins());
    return d;
  }

  nlohmann::json to_json() const {
    nlohmann::json sched = nlohmann::json::array();
    for (const auto& p : schedule.entries()) {
      sched.push_back({{"P", p.neighbors}, {"R", p.radius}, {"U_T", p.uniform_threshold}});
    }
    return {{"name", name()},
            {"schedule", sched},
            {"sps", sps},
            {"lsv", lsv_mode == LsvMode::kAbsolute ? "absolute" : "signed"},
            {"normalization", kNormalization}};
  }

  std::string hash() const { return hex64(fnv1a(to_json().dump())); }
};

inline Descriptor extract(const RgbImage& image, const ExtractorConfig& config) {
  const MaskPolicy policy =
      config.sps ? MaskPolicy::significant({config.lsv_mode, true}) : MaskPolicy::none();
  return multiresolution_descriptor(image, config.schedule, config.hybrid, policy);
}

// "8,1;16,2" -> [(8,1), (16,2)], U_T = P/4.
inline ResolutionSchedule parse_schedule(const std::string& text) {
  std::vector<OperatorParams> entries;
  for (const auto& item : split(text, ';')) {
    const auto t = trim(item);
    if (t.empty()) continue;
    const auto parts = split(t, ',');
    if (parts.size() != 2) throw std::invalid_argument("bad schedule entry: " + t);
    try {
      entries.push_back(OperatorParams::make(std::stoi(parts[0]), std::stoi(parts[1])));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad schedule entry: " + t);
    }
  }
  return ResolutionSchedule(std::move(entries));
}

inline std::string schedule_text(const ResolutionSchedule& s) {
  std::string out;
  for (const auto& p : s.entries()) {
    if (!out.empty()) out += ';';
    out += std::to_string(p.neighbors) + "," + std::to_string(p.radius);
  }
  return out;
}

}  // namespace texlbp
