#pragma once

#include <gtest/gtest.h>

#include <cstdint>
#include <filesystem>
#include <string>

#include "texlbp/image.hpp"
#include "texlbp/rng.hpp"

namespace texlbp::testing {

inline GrayPlane random_plane(int w, int h, std::uint64_t seed, int levels = 256) {
  Rng rng(seed);
  GrayPlane p(w, h);
  for (auto& v : p.data()) v = static_cast<std::uint8_t>(uniform_index(rng, static_cast<std::uint64_t>(levels)));
  return p;
}

inline RgbImage random_image(int w, int h, std::uint64_t seed, int levels = 256) {
  return RgbImage(random_plane(w, h, derive_seed(seed, 0), levels), random_plane(w, h, derive_seed(seed, 1), levels),
                  random_plane(w, h, derive_seed(seed, 2), levels));
}

inline RgbImage constant_image(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return RgbImage(GrayPlane(w, h, r), GrayPlane(w, h, g), GrayPlane(w, h, b));
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    std::string name = "texlbp_" + tag;
    if (info) name += std::string("_") + info->test_suite_name() + "_" + info->name();
    path_ = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

}  // namespace texlbp::testing
