#include <gtest/gtest.h>

#include "test_util.hpp"
#include "texlbp/opcount.hpp"
#include "texlbp/synth.hpp"

using namespace texlbp;
using texlbp::testing::constant_image;
using texlbp::testing::random_image;

TEST(PredictOps, Hclbp81On128) {
  const auto p = OperatorParams::make(8, 1);
  const auto h = predict_ops(OperatorKind::kHclbp, p, 128, 128);
  EXPECT_EQ(h.comparisons, 127008u);
  EXPECT_EQ(h.multiplications, 254016u);
  EXPECT_EQ(h.additions, 127008u);
  EXPECT_EQ(h.subtractions, 127008u);
  EXPECT_EQ(h.divisions, 0u);

  EXPECT_EQ(predict_ops(OperatorKind::kHclbp, p, 128, 128, 10320).comparisons, 82560u);

  const auto m = predict_ops(OperatorKind::kPlaneLbp, p, 128, 128);
  EXPECT_EQ(m.comparisons, 127008u);
  EXPECT_EQ(m.multiplications, 0u);
  EXPECT_EQ(m.divisions, 0u);

  EXPECT_EQ(predict_ops(OperatorKind::kHclbp, p, 128, 128, 0), OpCounters{});
  EXPECT_EQ(predict_ops(OperatorKind::kHclbp, p, 64, 64).comparisons, 30752u);
  EXPECT_THROW(predict_ops(OperatorKind::kHclbp, p, 2, 40), std::invalid_argument);
}

TEST(MeasureOps, MatchesPrediction) {
  const RgbImage img = synth_sample(3, 128, 6, 1);
  const auto p = OperatorParams::make(8, 1);
  const auto h = measure_ops(OperatorKind::kHclbp, img, p);
  EXPECT_EQ(h.measured, h.predicted);
  EXPECT_EQ(h.measured.comparisons, 127008u);
  EXPECT_EQ(h.measured.multiplications, 254016u);
  EXPECT_EQ(h.context.name, "HCLBP_{8,1}");

  const auto m = measure_ops(OperatorKind::kPlaneLbp, img, p);
  EXPECT_EQ(m.measured.comparisons, 127008u);
  EXPECT_EQ(m.measured.multiplications, 0u);
  EXPECT_EQ(m.context.name, "MLBP_{8,1}");

  // Interpolation and histogramming stay outside the modeled group.
  EXPECT_GT(h.auxiliary.at("interpolation").multiplications, 0u);
  EXPECT_EQ(h.auxiliary.at("histogram").divisions, 10u);
  EXPECT_EQ(h.auxiliary.at("plane_fanout").comparisons, 2 * 127008u);
}

TEST(MeasureOps, SpsScalesWithSelection) {
  const RgbImage img = synth_sample(2, 128, 6, 2);
  const auto p = OperatorParams::make(8, 1);
  const auto r = measure_ops(OperatorKind::kHclbp, img, p, SpsOptions{});
  ASSERT_FALSE(r.fallback_used);
  const auto selected = r.context.neighborhoods;
  EXPECT_LT(selected, 126u * 126u);
  EXPECT_EQ(r.measured.comparisons, 8 * selected);
  EXPECT_EQ(r.measured, r.predicted);
  EXPECT_LT(r.measured.comparisons, measure_ops(OperatorKind::kHclbp, img, p).measured.comparisons);
}

TEST(MeasureOps, FlatImageFallback) {
  const RgbImage img = constant_image(64, 64, 30, 60, 90);
  const auto p = OperatorParams::make(8, 1);
  const auto r = measure_ops(OperatorKind::kHclbp, img, p, SpsOptions{});
  EXPECT_TRUE(r.fallback_used);
  EXPECT_EQ(r.measured, measure_ops(OperatorKind::kHclbp, img, p).measured);
  EXPECT_EQ(r.measured.comparisons, 30752u);
}

TEST(MeasureOps, PredictionGrid) {
  for (const auto& p : {OperatorParams::make(8, 1), OperatorParams::make(16, 2)}) {
    for (int w : {33, 64, 97, 128, 200, 256}) {
      for (int h : {33, 71, 256}) {
        const RgbImage img = random_image(w, h, static_cast<std::uint64_t>(w * 1000 + h), 16);
        for (auto kind : {OperatorKind::kHclbp, OperatorKind::kPlaneLbp}) {
          const auto r = measure_ops(kind, img, p);
          EXPECT_EQ(r.measured, r.predicted) << w << "x" << h;
          const auto s = measure_ops(kind, img, p, SpsOptions{});
          EXPECT_EQ(s.measured, s.predicted) << w << "x" << h;
        }
      }
    }
  }
}

TEST(MeasureOps, IndependentOfPixelValues) {
  const auto p = OperatorParams::make(16, 2);
  const auto a = measure_ops(OperatorKind::kHclbp, random_image(50, 40, 1), p);
  const auto b = measure_ops(OperatorKind::kHclbp, constant_image(50, 40, 0, 0, 0), p);
  const auto c = measure_ops(OperatorKind::kHclbp, random_image(50, 40, 2, 2), p);
  EXPECT_EQ(a.measured, b.measured);
  EXPECT_EQ(a.measured, c.measured);
  EXPECT_EQ(a.auxiliary.at("interpolation"), b.auxiliary.at("interpolation"));
}

TEST(OpCounters, MergeIsAssociativeAndCommutative) {
  const OpCounters a{1, 2, 3, 4, 5}, b{10, 20, 30, 40, 50}, c{7, 0, 0, 1, 0};
  OpCounters ab = a;
  ab += b;
  OpCounters ba = b;
  ba += a;
  EXPECT_EQ(ab, ba);
  OpCounters ab_c = ab;
  ab_c += c;
  OpCounters bc = b;
  bc += c;
  OpCounters a_bc = a;
  a_bc += bc;
  EXPECT_EQ(ab_c, a_bc);
}
