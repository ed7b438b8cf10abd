#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "texlbp/format.hpp"
#include "texlbp/lbp.hpp"

namespace texlbp {

using nlohmann::json;

// {normalization, blocks: [{name, P, R, masked, labeled, bins[]}]}. Doubles
// are written at full precision, so parsing gives back identical bits.
inline json descriptor_to_json(const Descriptor& d) {
  json blocks = json::array();
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    const auto& b = d.blocks[i];
    blocks.push_back({{"name", b.name},
                      {"P", b.neighbors},
                      {"R", b.radius},
                      {"masked", b.masked},
                      {"labeled", b.labeled},
                      {"bins", d.block_bins(i)}});
  }
  return {{"normalization", kNormalization}, {"blocks", std::move(blocks)}};
}

inline Descriptor descriptor_from_json(const json& j) {
  Descriptor d;
  for (const auto& jb : j.at("blocks")) {
    Descriptor part;
    part.bins = jb.at("bins").get<std::vector<double>>();
    DescriptorBlock b;
    b.name = jb.at("name").get<std::string>();
    b.neighbors = jb.at("P").get<int>();
    b.radius = jb.at("R").get<int>();
    b.masked = jb.value("masked", false);
    b.labeled = jb.value("labeled", std::size_t{0});
    b.length = part.bins.size();
    if (static_cast<int>(b.length) != b.neighbors + 2) {
      throw std::invalid_argument("descriptor block " + b.name + " does not have P+2 bins");
    }
    part.blocks.push_back(b);
    d.append(part);
  }
  return d;
}

inline std::vector<std::string> descriptor_csv_columns(const Descriptor& d) {
  std::vector<std::string> cols;
  for (const auto& b : d.blocks) {
    for (std::size_t k = 0; k < b.length; ++k) {
      cols.push_back(b.name + "_" + std::to_string(b.neighbors) + "_" +
                     std::to_string(b.radius) + "_" + std::to_string(k));
    }
  }
  return cols;
}

inline std::string csv_join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s;
}

// Metadata cells followed by the bins at 12 significant digits.
inline std::string descriptor_csv_row(const std::vector<std::string>& metadata,
                                      const Descriptor& d) {
  std::vector<std::string> cells = metadata;
  for (double v : d.bins) cells.push_back(fmt12(v));
  return csv_join(cells);
}

inline std::vector<double> parse_csv_bins(const std::string& row, std::size_t metadata_columns) {
  const auto cells = split(row, ',');
  if (cells.size() < metadata_columns) throw std::invalid_argument("short CSV row");
  std::vector<double> bins;
  for (std::size_t i = metadata_columns; i < cells.size(); ++i) bins.push_back(std::stod(cells[i]));
  return bins;
}

}  // namespace texlbp
