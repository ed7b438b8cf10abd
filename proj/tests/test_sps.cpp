#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "test_util.hpp"
#include "texlbp/image_io.hpp"
#include "texlbp/sps.hpp"

using namespace texlbp;
using texlbp::testing::constant_image;
using texlbp::testing::random_image;
using texlbp::testing::random_plane;
using texlbp::testing::TempDir;

namespace {

double bilinear(const GrayPlane& p, double fx, double fy) {
  const int x0 = static_cast<int>(std::floor(fx + 1e-9));
  const int y0 = static_cast<int>(std::floor(fy + 1e-9));
  const double dx = std::max(0.0, fx - x0), dy = std::max(0.0, fy - y0);
  auto at = [&](int x, int y) {
    return static_cast<double>(p.at(std::min(x, p.width() - 1), std::min(y, p.height() - 1)));
  };
  return (1 - dx) * (1 - dy) * at(x0, y0) + dx * (1 - dy) * at(x0 + 1, y0) + (1 - dx) * dy * at(x0, y0 + 1) +
         dx * dy * at(x0 + 1, y0 + 1);
}

struct Oracle {
  std::vector<double> lsv;
  double gsv = 0.0;
  std::vector<std::uint8_t> mask;
};

Oracle brute_force(const GrayPlane& p, int P, int R, bool absolute = true) {
  Oracle o;
  const int w = p.width() - 2 * R, h = p.height() - 2 * R;
  for (int y = R; y < p.height() - R; ++y) {
    for (int x = R; x < p.width() - R; ++x) {
      double s = 0.0;
      for (int k = 0; k < P; ++k) {
        const double a = 2.0 * M_PI * k / P;
        const double d = bilinear(p, x + R * std::cos(a), y - R * std::sin(a)) - p.at(x, y);
        s += absolute ? std::abs(d) : d;
      }
      o.lsv.push_back(s / P);
    }
  }
  for (double v : o.lsv) o.gsv += v;
  o.gsv /= static_cast<double>(w) * h;
  for (double v : o.lsv) o.mask.push_back(v > o.gsv ? 1 : 0);
  return o;
}

}  // namespace

TEST(Lsv, Examples) {
  const auto params = OperatorParams::make(8, 1);
  EXPECT_EQ(lsv(GrayPlane(5, 5, 9), 2, 2, params), 0.0);

  // P = 4 keeps every tap on the lattice, so the neighbour values are exact.
  const auto p4 = OperatorParams::make(4, 1);
  GrayPlane p(3, 3, 18);
  p.at(1, 1) = 10;
  EXPECT_DOUBLE_EQ(lsv(p, 1, 1, p4), 8.0);
  GrayPlane q(3, 3, 0);
  q.at(1, 1) = 10;
  q.at(2, 1) = 6;   // k = 0
  q.at(1, 0) = 14;  // k = 1
  q.at(0, 1) = 6;   // k = 2
  q.at(1, 2) = 14;  // k = 3
  EXPECT_DOUBLE_EQ(lsv(q, 1, 1, p4), 4.0);
  EXPECT_DOUBLE_EQ(lsv(q, 1, 1, p4, LsvMode::kSigned), 0.0);
  EXPECT_THROW(lsv(q, 0, 1, p4), std::out_of_range);
}

TEST(Lsv, EightNeighbours) {
  // At R = 2 no diagonal tap's cell touches the centre, so every tap reads 18.
  GrayPlane p(7, 7, 18);
  p.at(3, 3) = 10;
  EXPECT_DOUBLE_EQ(lsv(p, 3, 3, OperatorParams::make(8, 2)), 8.0);
}

TEST(Gsv, Examples) {
  const auto p4 = OperatorParams::make(4, 1);
  EXPECT_EQ(gsv(GrayPlane(6, 6, 3), p4), 0.0);

  GrayPlane single = random_plane(3, 3, 5);
  EXPECT_DOUBLE_EQ(gsv(single, OperatorParams::make(8, 1)), lsv(single, 1, 1, OperatorParams::make(8, 1)));

  // A single 10 in a field of 18: LSV 8 at the 10, 2 next to it, 0 beyond.
  GrayPlane wide(6, 3, 18);
  wide.at(1, 1) = 10;
  const auto field = lsv_field(wide, p4);
  ASSERT_EQ(field.size(), 4u);
  EXPECT_DOUBLE_EQ(field[0], 8.0);
  EXPECT_DOUBLE_EQ(field[1], 2.0);
  EXPECT_DOUBLE_EQ(field[2], 0.0);
  EXPECT_DOUBLE_EQ(field[3], 0.0);

  GrayPlane halves(7, 3, 18);
  halves.at(1, 1) = 10;
  halves.at(5, 1) = 10;
  // Interior centres x = 1..5: LSV 8, 2, 0, 2, 8.
  EXPECT_DOUBLE_EQ(gsv(halves, p4), 4.0);
}

TEST(SignificanceMask, ConstantImageFallsBack) {
  const auto m = significance_mask(constant_image(10, 10, 7, 8, 9), OperatorParams::make(8, 1));
  EXPECT_TRUE(m.fallback_used);
  EXPECT_EQ(m.selected_count, 64u);
  EXPECT_EQ(m.gsv, 0.0);
  const auto none = significance_mask(constant_image(10, 10, 7, 8, 9), OperatorParams::make(8, 1),
                                      SpsOptions{LsvMode::kAbsolute, false});
  EXPECT_FALSE(none.fallback_used);
  EXPECT_EQ(none.selected_count, 0u);
}

TEST(SignificanceMask, BlobOnFlatField) {
  GrayPlane g(16, 16, 50);
  for (int y = 6; y < 10; ++y) {
    for (int x = 6; x < 10; ++x) g.at(x, y) = 200;
  }
  const auto params = OperatorParams::make(8, 1);
  const auto m = significance_mask(RgbImage::from_gray(g), params);
  const auto o = brute_force(g, 8, 1);
  EXPECT_FALSE(m.fallback_used);
  EXPECT_EQ(m.selected, o.mask);
  EXPECT_NEAR(m.gsv, o.gsv, 1e-9);
  // Selected pixels hug the blob boundary; nothing far from it is selected.
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      const int px = x + 1, py = y + 1;
      const bool near_edge = px >= 5 && px <= 10 && py >= 5 && py <= 10 && !(px >= 7 && px <= 8 && py >= 7 && py <= 8);
      if (m.at(x, y)) EXPECT_TRUE(near_edge) << px << "," << py;
    }
  }
  EXPECT_GT(m.selected_count, 0u);
  EXPECT_LT(m.selected_count, m.interior_size());
}

TEST(SignificanceMask, BruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GrayPlane g = random_plane(32, 32, seed);
    for (const auto& params : {OperatorParams::make(8, 1), OperatorParams::make(16, 2)}) {
      const auto o = brute_force(g, params.neighbors, params.radius);
      const auto field = lsv_field(g, params);
      ASSERT_EQ(field.size(), o.lsv.size());
      for (std::size_t i = 0; i < field.size(); ++i) EXPECT_NEAR(field[i], o.lsv[i], 1e-9);
      EXPECT_NEAR(gsv(g, params), o.gsv, 1e-9);
      const auto m = significance_mask(g, params);
      EXPECT_EQ(m.selected, o.mask);
      EXPECT_EQ(m.selected_count, static_cast<std::size_t>(std::count(o.mask.begin(), o.mask.end(), 1)));
      EXPECT_LT(m.selected_count, m.interior_size());

      const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
      EXPECT_LE(*lo, m.gsv);
      EXPECT_LE(m.gsv, *hi);
    }
  }
}

TEST(SignificanceMask, SignedModeOracle) {
  const GrayPlane g = random_plane(20, 20, 3);
  const auto params = OperatorParams::make(8, 1);
  const auto o = brute_force(g, 8, 1, false);
  const auto field = lsv_field(g, params, LsvMode::kSigned);
  for (std::size_t i = 0; i < field.size(); ++i) EXPECT_NEAR(field[i], o.lsv[i], 1e-9);
}

TEST(SignificanceMask, ShiftScaleRotation) {
  const auto params = OperatorParams::make(8, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GrayPlane g = random_plane(24, 20, seed, 64);
    const auto m = significance_mask(g, params);

    GrayPlane shifted = g, scaled = g;
    for (auto& v : shifted.data()) v = static_cast<std::uint8_t>(v + 100);
    for (auto& v : scaled.data()) v = static_cast<std::uint8_t>(v * 3);
    const auto ms = significance_mask(shifted, params);
    const auto mc = significance_mask(scaled, params);
    EXPECT_EQ(ms.selected, m.selected);
    EXPECT_NEAR(ms.gsv, m.gsv, 1e-9);
    EXPECT_EQ(mc.selected, m.selected);
    EXPECT_NEAR(mc.gsv, 3 * m.gsv, 1e-9);

    const auto mr = significance_mask(rotate90(g), params);
    // Interior (x, y) of the original lands at (y, w - 1 - x) after one
    // counter-clockwise turn.
    for (int y = 0; y < m.height; ++y) {
      for (int x = 0; x < m.width; ++x) EXPECT_EQ(mr.at(y, m.width - 1 - x), m.at(x, y));
    }
  }
}

TEST(SignificanceMask, PgmExport) {
  TempDir dir("mask");
  GrayPlane g(8, 8, 10);
  g.at(4, 4) = 200;
  const auto m = significance_mask(g, OperatorParams::make(8, 1));
  write_pgm(dir / "m.pgm", m);
  std::ifstream in(dir / "m.pgm", std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string header = "P5\n6 6\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 36);
  EXPECT_EQ(bytes.substr(0, header.size()), header);
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      const auto v = static_cast<unsigned char>(bytes[header.size() + static_cast<std::size_t>(y * m.width + x)]);
      EXPECT_EQ(v, m.at(x, y) ? 255 : 0);
    }
  }
}
