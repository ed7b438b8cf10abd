#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "texlbp/image.hpp"
#include "texlbp/image_io.hpp"

namespace texlbp {

struct DatasetEntry {
  std::string id;
  int label = 0;
  std::string path;   // relative to the index root
  std::string group;  // sub-directory inside the class directory, or ""
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

struct DatasetIndex {
  std::string root;
  std::optional<int> crop;
  std::vector<std::string> classes;
  std::vector<DatasetEntry> entries;

  void validate() const {
    std::set<std::string> ids;
    for (const auto& e : entries) {
      if (e.label < 0 || e.label >= static_cast<int>(classes.size())) {
        throw std::invalid_argument("dataset entry " + e.id + " has unknown class");
      }
      if (!ids.insert(e.id).second) throw std::invalid_argument("duplicate sample id " + e.id);
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["root"] = root;
    j["crop"] = crop ? nlohmann::json(*crop) : nlohmann::json(nullptr);
    j["classes"] = classes;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : entries) {
      j["entries"].push_back({{"id", e.id},
                              {"class", e.label},
                              {"path", e.path},
                              {"group", e.group},
                              {"window", {e.x, e.y, e.width, e.height}}});
    }
    return j;
  }

  static DatasetIndex from_json(const nlohmann::json& j) {
    DatasetIndex idx;
    idx.root = j.at("root").get<std::string>();
    if (!j.at("crop").is_null()) idx.crop = j.at("crop").get<int>();
    idx.classes = j.at("classes").get<std::vector<std::string>>();
    for (const auto& je : j.at("entries")) {
      DatasetEntry e;
      e.id = je.at("id").get<std::string>();
      e.label = je.at("class").get<int>();
      e.path = je.at("path").get<std::string>();
      e.group = je.value("group", std::string{});
      const auto w = je.at("window").get<std::vector<int>>();
      if (w.size() != 4) throw std::invalid_argument("bad window in index entry " + e.id);
      e.x = w[0];
      e.y = w[1];
      e.width = w[2];
      e.height = w[3];
      idx.entries.push_back(std::move(e));
    }
    idx.validate();
    return idx;
  }
};

namespace detail {

inline bool is_image_file(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".ppm";
}

inline bool hidden(const std::filesystem::path& p) {
  const auto n = p.filename().string();
  return !n.empty() && n[0] == '.';
}

inline std::vector<std::filesystem::path> sorted_children(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (!hidden(e.path())) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// One sub-directory per class. Images sit directly in the class directory
// or one level below it; that second level names the sample group used by
// grouped (leave-one-group-out) evaluation. With a crop size, each image
// contributes its non-overlapping windows.
inline DatasetIndex build_dataset_index(const std::filesystem::path& root,
                                        std::optional<int> crop = std::nullopt) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw std::invalid_argument("dataset root is not a directory: " + root.string());
  DatasetIndex idx;
  idx.root = root.string();
  idx.crop = crop;
  for (const auto& class_dir : detail::sorted_children(root)) {
    if (!fs::is_directory(class_dir)) {
      throw std::invalid_argument("dataset root must contain only class directories, found file " +
                                  class_dir.filename().string());
    }
    const int label = static_cast<int>(idx.classes.size());
    const std::string cname = class_dir.filename().string();
    idx.classes.push_back(cname);

    std::vector<std::pair<fs::path, std::string>> images;
    for (const auto& child : detail::sorted_children(class_dir)) {
      if (fs::is_directory(child)) {
        for (const auto& f : detail::sorted_children(child)) {
          if (fs::is_regular_file(f) && detail::is_image_file(f)) {
            images.emplace_back(f, child.filename().string());
          }
        }
      } else if (fs::is_regular_file(child) && detail::is_image_file(child)) {
        images.emplace_back(child, "");
      }
    }
    if (images.empty()) throw std::invalid_argument("empty class directory: " + cname);

    for (const auto& [file, group] : images) {
      const RgbImage img = load_image(file);
      const std::string rel = fs::relative(file, root).generic_string();
      if (!crop) {
        idx.entries.push_back({rel, label, rel, group, 0, 0, img.width(), img.height()});
        continue;
      }
      if (*crop > img.width() || *crop > img.height()) {
        throw std::invalid_argument("crop window larger than image " + rel);
      }
      const int cols = img.width() / *crop;
      const int rows = img.height() / *crop;
      for (int wy = 0; wy < rows; ++wy) {
        for (int wx = 0; wx < cols; ++wx) {
          const int n = wy * cols + wx;
          idx.entries.push_back({rel + "#" + std::to_string(n), label, rel, group, wx * *crop,
                                 wy * *crop, *crop, *crop});
        }
      }
    }
  }
  if (idx.classes.empty()) throw std::invalid_argument("dataset root has no class directories");
  idx.validate();
  return idx;
}

// Materialised samples, parallel arrays indexed by sample.
struct SampleSet {
  std::vector<std::string> class_names;
  std::vector<std::string> ids;
  std::vector<int> labels;
  std::vector<std::string> groups;
  std::vector<RgbImage> images;

  std::size_t size() const noexcept { return images.size(); }
  int num_classes() const noexcept { return static_cast<int>(class_names.size()); }

  void add(const std::string& id, int label, RgbImage image, std::string group = {}) {
    ids.push_back(id);
    labels.push_back(label);
    groups.push_back(std::move(group));
    images.push_back(std::move(image));
  }
};

inline SampleSet materialize(const DatasetIndex& index) {
  namespace fs = std::filesystem;
  SampleSet set;
  set.class_names = index.classes;
  std::map<std::string, RgbImage> cache;
  for (const auto& e : index.entries) {
    auto it = cache.find(e.path);
    if (it == cache.end()) it = cache.emplace(e.path, load_image(fs::path(index.root) / e.path)).first;
    const RgbImage& src = it->second;
    if (e.x == 0 && e.y == 0 && e.width == src.width() && e.height == src.height()) {
      set.add(e.id, e.label, src, e.group);
    } else {
      set.add(e.id, e.label, crop(src, e.x, e.y, e.width, e.height), e.group);
    }
  }
  return set;
}

}  // namespace texlbp
