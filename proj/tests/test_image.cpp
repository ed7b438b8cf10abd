#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "test_util.hpp"
#include "texlbp/image.hpp"
#include "texlbp/image_io.hpp"

using namespace texlbp;
using texlbp::testing::random_image;
using texlbp::testing::random_plane;
using texlbp::testing::TempDir;

namespace {

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

}  // namespace

TEST(LoadImage, PpmKeepsStoredValues) {
  TempDir dir("io");
  std::string ppm = "P6\n# comment\n2 2\n255\n";
  const unsigned char px[] = {0, 0, 0, 255, 0, 0, 0, 255, 0, 0, 0, 255};
  ppm.append(reinterpret_cast<const char*>(px), sizeof px);
  write_bytes(dir / "a.ppm", ppm);

  const RgbImage img = load_image(dir / "a.ppm");
  ASSERT_EQ(img.width(), 2);
  ASSERT_EQ(img.height(), 2);
  EXPECT_EQ(img.plane(Channel::R).data(), (std::vector<std::uint8_t>{0, 255, 0, 0}));
  EXPECT_EQ(img.plane(Channel::G).data(), (std::vector<std::uint8_t>{0, 0, 255, 0}));
  EXPECT_EQ(img.plane(Channel::B).data(), (std::vector<std::uint8_t>{0, 0, 0, 255}));
}

TEST(LoadImage, GrayPngReplicatesIntoAllPlanes) {
  TempDir dir("io");
  // 1x1 8-bit grayscale PNG holding 128.
  const unsigned char png[] = {
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
      0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x00, 0x00, 0x00, 0x00, 0x3a, 0x7e, 0x9b,
      0x55, 0x00, 0x00, 0x00, 0x0a, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x68, 0x00, 0x00, 0x00,
      0x82, 0x00, 0x81, 0x77, 0xcd, 0x72, 0xb6, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae,
      0x42, 0x60, 0x82};
  write_bytes(dir / "g.png", std::string(reinterpret_cast<const char*>(png), sizeof png));
  const RgbImage img = load_image(dir / "g.png");
  ASSERT_EQ(img.width(), 1);
  ASSERT_EQ(img.height(), 1);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(img.plane(c).at(0, 0), 128);
}

TEST(LoadImage, PngRoundTrip) {
  TempDir dir("io");
  const RgbImage img = random_image(17, 9, 3);
  write_png(dir / "r.png", img);
  EXPECT_EQ(load_image(dir / "r.png"), img);
  write_ppm(dir / "r.ppm", img);
  EXPECT_EQ(load_image(dir / "r.ppm"), img);
}

TEST(LoadImage, Errors) {
  TempDir dir("io");
  write_bytes(dir / "bad.ppm", "XX garbage");
  try {
    load_image(dir / "bad.ppm");
    FAIL() << "expected an error";
  } catch (const ImageIoError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported format"), std::string::npos);
  }
  write_bytes(dir / "zero.ppm", "P6\n0 4\n255\n");
  EXPECT_THROW(load_image(dir / "zero.ppm"), ImageIoError);
  EXPECT_THROW(load_image(dir / "missing.png"), ImageIoError);
  write_bytes(dir / "deep.ppm", "P6\n1 1\n65535\n\x01\x02\x03\x04\x05\x06");
  EXPECT_THROW(load_image(dir / "deep.ppm"), ImageIoError);
}

TEST(SampleNeighborhood, ConstantPlane) {
  const GrayPlane p(6, 6, 7);
  const auto s = sample_neighborhood(p, 2, 3, OperatorParams::make(8, 1));
  EXPECT_EQ(s.center, 7.0);
  ASSERT_EQ(s.neighbors.size(), 8u);
  for (double v : s.neighbors) EXPECT_EQ(v, 7.0);
}

TEST(SampleNeighborhood, AxisNeighborsForFourPoints) {
  const GrayPlane p = random_plane(5, 5, 11);
  const auto s = sample_neighborhood(p, 2, 2, OperatorParams::make(4, 1));
  EXPECT_EQ(s.neighbors[0], p.at(3, 2));  // east
  EXPECT_EQ(s.neighbors[1], p.at(2, 1));  // north
  EXPECT_EQ(s.neighbors[2], p.at(1, 2));  // west
  EXPECT_EQ(s.neighbors[3], p.at(2, 3));  // south
}

TEST(SampleNeighborhood, BilinearDiagonal) {
  const GrayPlane p(3, 3, std::vector<std::uint8_t>{0, 0, 0, 0, 0, 0, 0, 0, 4});
  const auto s = sample_neighborhood(p, 1, 1, OperatorParams::make(8, 1));
  // k = 7 sits at 315 degrees, (1.7071, 1.7071); the 4 is p11 of the cell at (1, 1).
  const double fx = 1.0 + std::cos(2 * M_PI * 7 / 8), fy = 1.0 - std::sin(2 * M_PI * 7 / 8);
  const double dx = fx - 1.0, dy = fy - 1.0;
  const double expected = (1 - dx) * (1 - dy) * 0 + dx * (1 - dy) * 0 + (1 - dx) * dy * 0 + dx * dy * 4;
  EXPECT_NEAR(s.neighbors[7], expected, 1e-12);
  EXPECT_NEAR(s.neighbors[7], 2.0, 1e-12);
  for (int k = 0; k < 7; ++k) EXPECT_EQ(s.neighbors[static_cast<std::size_t>(k)], 0.0);
}

TEST(SampleNeighborhood, BorderRejected) {
  const GrayPlane p(5, 5);
  EXPECT_THROW(sample_neighborhood(p, 0, 2, OperatorParams::make(8, 1)), std::out_of_range);
  EXPECT_THROW(sample_neighborhood(p, 1, 1, OperatorParams::make(8, 2)), std::out_of_range);
  EXPECT_NO_THROW(sample_neighborhood(p, 2, 2, OperatorParams::make(16, 2)));
}

TEST(SampleNeighborhood, InteriorProperties) {
  const GrayPlane p = random_plane(20, 20, 5);
  const auto params = OperatorParams::make(8, 1);
  for (int y = 1; y < 19; ++y) {
    for (int x = 1; x < 19; ++x) {
      const auto s = sample_neighborhood(p, x, y, params);
      EXPECT_EQ(s.neighbors[0], p.at(x + 1, y));
      EXPECT_EQ(s.neighbors[2], p.at(x, y - 1));
      EXPECT_EQ(s.neighbors[4], p.at(x - 1, y));
      EXPECT_EQ(s.neighbors[6], p.at(x, y + 1));
      const int diag[4][2] = {{1, -1}, {-1, -1}, {-1, 1}, {1, 1}};
      for (int i = 0; i < 4; ++i) {
        const int dx = diag[i][0], dy = diag[i][1];
        const std::uint8_t q[4] = {p.at(x, y), p.at(x + dx, y), p.at(x, y + dy), p.at(x + dx, y + dy)};
        const double v = s.neighbors[static_cast<std::size_t>(2 * i + 1)];
        EXPECT_GE(v, *std::min_element(q, q + 4));
        EXPECT_LE(v, *std::max_element(q, q + 4));
      }
    }
  }
}

TEST(SampleNeighborhood, RotationKeepsNeighborMultiset) {
  const GrayPlane p = random_plane(9, 7, 21);
  for (const auto& params : {OperatorParams::make(8, 1), OperatorParams::make(16, 2)}) {
    const GrayPlane q = rotate90(p);
    // Counter-clockwise: (x, y) -> (y, W - 1 - x).
    for (int y = 2; y < 5; ++y) {
      for (int x = 2; x < 7; ++x) {
        auto a = sample_neighborhood(p, x, y, params).neighbors;
        auto b = sample_neighborhood(q, y, p.width() - 1 - x, params).neighbors;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
      }
    }
  }
}

TEST(CropWindows, SourceSizeCounts) {
  EXPECT_EQ(crop_windows(RgbImage(512, 512), 128, 128).size(), 16u);
  EXPECT_EQ(crop_windows(RgbImage(746, 538), 128, 128).size(), 20u);
  EXPECT_THROW(crop_windows(RgbImage(100, 100), 128, 128), std::invalid_argument);
}

TEST(CropWindows, DisjointRowMajorTiling) {
  const RgbImage img = random_image(23, 17, 8);
  for (int w : {1, 4, 5, 23}) {
    for (int h : {3, 8, 17}) {
      const auto windows = crop_windows(img, w, h);
      const int cols = 23 / w, rows = 17 / h;
      ASSERT_EQ(windows.size(), static_cast<std::size_t>(cols * rows));
      std::set<std::pair<int, int>> seen;
      for (int i = 0; i < static_cast<int>(windows.size()); ++i) {
        const int ox = (i % cols) * w, oy = (i / cols) * h;
        for (int y = 0; y < h; ++y) {
          for (int x = 0; x < w; ++x) {
            EXPECT_EQ(windows[static_cast<std::size_t>(i)].pixel(x, y), img.pixel(ox + x, oy + y));
            EXPECT_TRUE(seen.insert({ox + x, oy + y}).second);
          }
        }
      }
    }
  }
}

TEST(MeanPlane, Rounding) {
  RgbImage img(3, 1);
  img.set_pixel(0, 0, {0, 0, 0});
  img.set_pixel(1, 0, {255, 255, 255});
  img.set_pixel(2, 0, {10, 20, 40});
  const GrayPlane m = mean_plane(img);
  EXPECT_EQ(m.at(0, 0), 0);
  EXPECT_EQ(m.at(1, 0), 255);
  EXPECT_EQ(m.at(2, 0), 23);
}

TEST(MeanPlane, MatchesRoundedMean) {
  const RgbImage img = random_image(40, 40, 99);
  const GrayPlane m = mean_plane(img);
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) {
      const auto px = img.pixel(x, y);
      const double mean = (px[0] + px[1] + px[2]) / 3.0;
      EXPECT_EQ(m.at(x, y), static_cast<int>(std::lround(mean)));
    }
  }
}

TEST(GrayPlane, Invariants) {
  EXPECT_THROW(GrayPlane(0, 3), std::invalid_argument);
  EXPECT_THROW(GrayPlane(2, 2, std::vector<std::uint8_t>(3)), std::invalid_argument);
  EXPECT_THROW(RgbImage(GrayPlane(2, 2), GrayPlane(2, 3), GrayPlane(2, 2)), std::invalid_argument);
}

TEST(OperatorParams, Defaults) {
  const auto p = OperatorParams::make(16, 2);
  EXPECT_EQ(p.uniform_threshold, 4);
  EXPECT_EQ(p.bins(), 18);
  EXPECT_THROW(OperatorParams::make(3, 1).validate(), std::invalid_argument);
  EXPECT_THROW(OperatorParams::make(8, 0).validate(), std::invalid_argument);
}
