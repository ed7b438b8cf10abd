#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "texlbp/crossval.hpp"
#include "texlbp/descriptor_io.hpp"
#include "texlbp/extractor.hpp"

namespace texlbp {

// Descriptor rows stored as <dir>/<extractor hash>.csv, one line per sample:
// sample_id,hash,bins... with bins written exactly. A cache hit requires the
// same ids in the same order.
class DescriptorCache {
 public:
  explicit DescriptorCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path file_for(const ExtractorConfig& config) const {
    return dir_ / (config.hash() + ".csv");
  }

  std::optional<FeatureRows> load(const ExtractorConfig& config,
                                  const std::vector<std::string>& ids) const {
    std::ifstream in(file_for(config));
    if (!in) return std::nullopt;
    FeatureRows rows;
    std::string line;
    std::getline(in, line);  // header
    std::size_t i = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cells = split(line, ',');
      if (i >= ids.size() || cells.size() < 2 || cells[0] != ids[i] || cells[1] != config.hash()) {
        return std::nullopt;
      }
      rows.push_back(parse_csv_bins(line, 2));
      if (rows.back().size() != config.dimensions()) return std::nullopt;
      ++i;
    }
    if (i != ids.size()) return std::nullopt;
    return rows;
  }

  void store(const ExtractorConfig& config, const std::vector<std::string>& ids,
             const FeatureRows& rows) const {
    std::filesystem::create_directories(dir_);
    std::ofstream out(file_for(config));
    out << "sample_id,extractor_hash,bins\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::vector<std::string> cells{ids[i], config.hash()};
      for (double v : rows[i]) cells.push_back(fmt17(v));
      out << csv_join(cells) << '\n';
    }
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace texlbp
