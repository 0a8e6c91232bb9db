#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracle/oracle.hpp"
#include "tsketch/count_sketch.hpp"
#include "tsketch/errors.hpp"
#include "tsketch/eval.hpp"

namespace tsketch {
namespace {

TEST(CountSketch, SingleCoordinateLandsInOneBucket) {
  const KWiseHash h({2, 0}, 4);  // h(i) = 2
  const SignHash s(KWiseHash({0, 0, 0, 0}, 2));
  const auto cs = count_sketch(InputVector::dense({1, 0, 0}), h, s);
  EXPECT_EQ(cs.values, (std::vector<double>{0, 0, 1, 0}));
  EXPECT_EQ(cs.origin_dim, 3u);
}

TEST(CountSketch, DirectSummationExample) {
  const KWiseHash h({0, 1}, 2);                // h = (0, 1, 0)
  const SignHash s(KWiseHash({0, 1, 0, 0}, 2));  // s = (+1, -1, +1)
  ASSERT_EQ(h(0), 0u);
  ASSERT_EQ(h(1), 1u);
  ASSERT_EQ(h(2), 0u);
  ASSERT_EQ(s(0), 1);
  ASSERT_EQ(s(1), -1);
  ASSERT_EQ(s(2), 1);
  const auto cs = count_sketch(InputVector::dense({1, 2, 3}), h, s);
  EXPECT_EQ(cs.values, (std::vector<double>{4, -2}));
}

TEST(CountSketch, ZeroInputGivesZeroSketch) {
  const auto h = KWiseHash::sample(1, 0, 2, 8);
  const auto s = SignHash::sample(1, 1);
  for (double v : count_sketch(InputVector::dense(std::vector<double>(5, 0.0)), h, s).values) {
    EXPECT_EQ(v, 0.0);
  }
  for (double v : count_sketch(InputVector::sparse(5, {}), h, s).values) EXPECT_EQ(v, 0.0);
}

TEST(CountSketch, RequiresPowerOfTwoLength) {
  const auto h = KWiseHash::sample(1, 0, 2, 6);
  const auto s = SignHash::sample(1, 1);
  EXPECT_THROW(count_sketch(InputVector::dense({1, 2}), h, s), DimensionError);
}

TEST(CountSketch, LinearUnderFixedHashes) {
  const auto data = gaussian_dataset(40, 12, 77, false);
  for (std::size_t t = 0; t + 1 < data.size(); t += 2) {
    const auto h = KWiseHash::sample(t, 0, 2, 8);
    const auto s = SignHash::sample(t, 1);
    const double alpha = 0.75;
    const double beta = -2.0;
    const auto& x = data[t];
    const auto& y = data[t + 1];
    std::vector<double> mix(12);
    for (std::size_t i = 0; i < 12; ++i) mix[i] = alpha * x.to_dense()[i] + beta * y.to_dense()[i];
    const auto cm = count_sketch(InputVector::dense(mix), h, s);
    const auto cx = count_sketch(x, h, s);
    const auto cy = count_sketch(y, h, s);
    for (std::size_t k = 0; k < 8; ++k) {
      EXPECT_NEAR(cm.values[k], alpha * cx.values[k] + beta * cy.values[k], 1e-12);
    }
  }
}

TEST(CountSketch, SparseAndDenseAgreeExactly) {
  const std::vector<double> dense{0, 1.5, 0, 0, -2.25, 0, 3, 0};
  const auto xd = InputVector::dense(dense);
  const auto xs = InputVector::sparse(8, {{1, 1.5}, {4, -2.25}, {6, 3}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = KWiseHash::sample(seed, 0, 2, 4);
    const auto s = SignHash::sample(seed, 1);
    EXPECT_EQ(count_sketch(xd, h, s).values, count_sketch(xs, h, s).values);
  }
}

TEST(CountSketch, EnergyBoundedByL1Squared) {
  const auto data = gaussian_dataset(50, 10, 5, false);
  for (std::size_t t = 0; t < data.size(); ++t) {
    const auto cs = count_sketch(data[t], KWiseHash::sample(t, 0, 2, 4), SignHash::sample(t, 1));
    double energy = 0.0;
    for (double v : cs.values) energy += v * v;
    double l1 = 0.0;
    data[t].for_each_nonzero([&](std::size_t, double v) { l1 += std::abs(v); });
    EXPECT_LE(energy, l1 * l1 * (1 + 1e-12));
  }
}

TEST(CountSketchInner, SelfInnerProductIsNonNegative) {
  const auto x = gaussian_dataset(1, 9, 3, false)[0];
  const auto cx = count_sketch(x, KWiseHash::sample(3, 0, 2, 8), SignHash::sample(3, 1));
  EXPECT_GE(count_sketch_inner(cx, cx), 0.0);
}

TEST(CountSketchInner, RejectsSketchesFromDifferentHashes) {
  const auto x = InputVector::dense({1, 2, 3});
  const auto a = count_sketch(x, KWiseHash::sample(1, 0, 2, 8), SignHash::sample(1, 1));
  const auto b = count_sketch(x, KWiseHash::sample(2, 0, 2, 8), SignHash::sample(2, 1));
  EXPECT_THROW(count_sketch_inner(a, b), IncompatibleSketchError);
}

TEST(CountSketchInner, UnbiasedWithClosedFormVariance) {
  const auto xy = gaussian_dataset(2, 6, 1001, false);
  const auto xd = xy[0].to_dense();
  const auto yd = xy[1].to_dense();
  constexpr std::size_t kTrials = 100000;
  constexpr std::size_t D = 16;
  std::vector<double> est(kTrials);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto h = KWiseHash::sample(555, 2 * t, 2, D);
    const auto s = SignHash::sample(555, 2 * t + 1);
    est[t] = count_sketch_inner(count_sketch(xy[0], h, s), count_sketch(xy[1], h, s));
  }
  const auto stats = summarize(est);
  EXPECT_LE(std::abs(stats.mean - xy[0].dot(xy[1])), 3 * stats.std_error);
  const double predicted = oracle::count_sketch_variance(xd, yd, D);
  EXPECT_NEAR(stats.variance, predicted, 0.05 * predicted);
  EXPECT_LE(predicted, 2.0 / D * xy[0].squared_norm() * xy[1].squared_norm());
}

TEST(AmsSketch, SingleTerm) {
  const SignHash minus(KWiseHash({1, 0, 0, 0}, 2));
  EXPECT_EQ(ams_sketch(InputVector::dense({1, 0, 0}), minus), -1.0);
}

TEST(AmsSketch, SecondMomentAndVariance) {
  const auto x = gaussian_dataset(1, 8, 4242, false)[0];
  constexpr std::size_t kTrials = 100000;
  std::vector<double> sq(kTrials);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const double z = ams_sketch(x, SignHash::sample(99, t));
    sq[t] = z * z;
  }
  const auto stats = summarize(sq);
  const double norm2 = x.squared_norm();
  EXPECT_LE(std::abs(stats.mean - norm2), 3 * stats.std_error);
  EXPECT_LE(stats.variance, 2 * norm2 * norm2 * 1.1);
}

}  // namespace
}  // namespace tsketch
