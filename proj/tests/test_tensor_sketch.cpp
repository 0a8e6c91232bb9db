#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracle/oracle.hpp"
#include "tsketch/count_sketch.hpp"
#include "tsketch/errors.hpp"
#include "tsketch/eval.hpp"
#include "tsketch/tensor_sketch.hpp"

namespace tsketch {
namespace {

InputVector basis(std::size_t d, std::size_t i) {
  std::vector<double> v(d, 0.0);
  v[i] = 1.0;
  return InputVector::dense(std::move(v));
}

TEST(SketchConfig, Validation) {
  EXPECT_NO_THROW((SketchConfig{3, 4, 2, 0.0, 1}.validate()));
  EXPECT_THROW((SketchConfig{3, 6, 2, 0.0, 1}.validate()), DimensionError);
  EXPECT_THROW((SketchConfig{3, 1, 2, 0.0, 1}.validate()), DimensionError);
  EXPECT_THROW((SketchConfig{3, 4, 0, 0.0, 1}.validate()), ParameterError);
  EXPECT_THROW((SketchConfig{3, 4, 2, -1.0, 1}.validate()), ParameterError);
  EXPECT_THROW((SketchConfig{0, 4, 2, 0.0, 1}.validate()), ParameterError);
  EXPECT_THROW(TensorSketchMap(SketchConfig{3, 12, 2, 0.0, 1}), DimensionError);
}

TEST(Augment, IdentityAtZeroOffset) {
  const auto x = InputVector::dense({1, -2});
  EXPECT_TRUE(augment(x, 0.0).same_values(x));
  EXPECT_EQ(augment(x, 0.0).dim(), 2u);
  EXPECT_THROW(augment(x, -0.5), ParameterError);
}

TEST(Augment, AddsOffsetToInnerProduct) {
  const auto x = InputVector::dense({1, 2});
  const auto y = InputVector::dense({3, -1});
  EXPECT_DOUBLE_EQ(augment(x, 4.0).dot(augment(y, 4.0)), 5.0);
  const auto zero = augment(InputVector::dense({0, 0, 0}), 9.0);
  EXPECT_EQ(zero.nnz(), 1u);
  EXPECT_EQ(zero.to_dense().back(), 3.0);
  const auto sparse = augment(InputVector::sparse(4, {{1, 2.0}}), 1.0);
  EXPECT_TRUE(sparse.is_sparse());
  EXPECT_EQ(sparse.dim(), 5u);
  EXPECT_EQ(sparse.to_sparse_entries().back(), (SparseEntry{4, 1.0}));
}

TEST(TensorSketchMap, DeterministicPerSeed) {
  const SketchConfig cfg{10, 64, 3, 0.5, 1234};
  const auto x = gaussian_dataset(1, 10, 8, false)[0];
  EXPECT_EQ(TensorSketchMap(cfg).apply(x), TensorSketchMap(cfg).apply(x));
  SketchConfig other = cfg;
  other.seed = 1235;
  EXPECT_NE(TensorSketchMap(cfg).apply(x), TensorSketchMap(other).apply(x));
  EXPECT_EQ(TensorSketchMap(cfg).fingerprint(), TensorSketchMap(cfg).fingerprint());
  EXPECT_NE(TensorSketchMap(cfg).fingerprint(), TensorSketchMap(other).fingerprint());
}

TEST(TensorSketchMap, HashLayout) {
  const TensorSketchMap map(SketchConfig{5, 32, 3, 2.0, 77});
  ASSERT_EQ(map.bucket_hashes().size(), 3u);
  ASSERT_EQ(map.sign_hashes().size(), 3u);
  EXPECT_EQ(map.effective_dim(), 6u);
  EXPECT_EQ(TensorSketchMap(SketchConfig{5, 32, 3, 0.0, 77}).effective_dim(), 5u);
  for (unsigned j = 0; j < 3; ++j) {
    EXPECT_EQ(map.bucket_hashes()[j], KWiseHash::sample(77, 2 * j, 2, 32));
    EXPECT_EQ(map.sign_hashes()[j], SignHash::sample(77, 2 * j + 1));
    EXPECT_EQ(map.bucket_hashes()[j].independence(), 2u);
    EXPECT_EQ(map.sign_hashes()[j].base().independence(), 4u);
  }
}

TEST(TensorSketchMap, DegreeOneIsPlainCountSketch) {
  const SketchConfig cfg{7, 16, 1, 0.0, 5};
  const TensorSketchMap map(cfg);
  for (const auto& x : gaussian_dataset(20, 7, 6, false)) {
    const auto cs = count_sketch(x, map.bucket_hashes()[0], map.sign_hashes()[0]);
    EXPECT_EQ(map.apply(x), cs.values);
  }
}

TEST(TensorSketchMap, BasisVectorMapsToSignedBasisVector) {
  for (unsigned p = 1; p <= 4; ++p) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const TensorSketchMap map(SketchConfig{5, 16, p, 0.0, seed});
      const auto f = map.apply(basis(5, seed % 5));
      std::size_t nonzero = 0;
      for (double v : f) {
        if (v != 0.0) {
          ++nonzero;
          EXPECT_EQ(std::abs(v), 1.0);
        }
      }
      EXPECT_EQ(nonzero, 1u);
      EXPECT_EQ(dot(f, f), 1.0);
    }
  }
}

TEST(TensorSketchMap, FixedHashExample) {
  // h1 = (0,1,2), h2 = (1,2,3), s1 = (+,-,+), s2 = (+,+,+), x = (1,2,3).
  // C1 x = (1,-2,3,0), C2 x = (0,1,2,3); circular convolution = (0,10,0,2).
  const SketchConfig cfg{3, 4, 2, 0.0, 0};
  const TensorSketchMap map(cfg, {KWiseHash({0, 1}, 4), KWiseHash({1, 1}, 4)},
                            {SignHash(KWiseHash({0, 1, 0, 0}, 2)),
                             SignHash(KWiseHash({0, 0, 0, 0}, 2))});
  const auto x = InputVector::dense({1, 2, 3});
  const auto f = map.apply(x);
  const std::vector<double> expect{0, 10, 0, 2};
  const auto brute = oracle::explicit_tensor_sketch(map, x);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(f[k], expect[k], 1e-9);
    EXPECT_NEAR(brute[k], expect[k], 1e-12);
  }
}

TEST(TensorSketchMap, MatchesExplicitTensorPowerSketch) {
  std::uint64_t seed = 1;
  for (std::size_t d = 1; d <= 4; ++d) {
    for (unsigned p = 1; p <= 3; ++p) {
      for (std::size_t D : {2u, 4u, 8u}) {
        for (double c : {0.0, 1.0}) {
          const TensorSketchMap map(SketchConfig{d, D, p, c, seed++});
          for (const auto& x : gaussian_dataset(50, d, seed++, false)) {
            const auto fast = map.apply(x);
            const auto brute = oracle::explicit_tensor_sketch(map, x);
            for (std::size_t k = 0; k < D; ++k) ASSERT_NEAR(fast[k], brute[k], 1e-9);
          }
        }
      }
    }
  }
}

TEST(TensorSketchMap, FourierPathAtLargerSizes) {
  const TensorSketchMap map(SketchConfig{20, 64, 3, 0.0, 9});
  for (const auto& x : gaussian_dataset(5, 20, 10, false)) {
    const auto fast = map.apply(x);
    const auto brute = oracle::explicit_tensor_sketch(map, x);
    for (std::size_t k = 0; k < 64; ++k) EXPECT_NEAR(fast[k], brute[k], 1e-9);
  }
}

TEST(TensorSketchMap, HomogeneousOfDegreeP) {
  for (unsigned p = 1; p <= 4; ++p) {
    const TensorSketchMap map(SketchConfig{12, 32, p, 0.0, 100 + p});
    const auto x = gaussian_dataset(1, 12, p, false)[0];
    const double alpha = -1.7;
    const auto fx = map.apply(x);
    const auto fax = map.apply(x.scaled(alpha));
    double scale = 0.0;
    for (double v : fx) scale = std::max(scale, std::abs(v));
    const double factor = std::pow(alpha, p);
    for (std::size_t k = 0; k < fx.size(); ++k) {
      EXPECT_NEAR(fax[k], factor * fx[k], 1e-9 * std::abs(factor) * scale);
    }
  }
}

TEST(TensorSketchMap, SparseAndDenseInputsAgree) {
  const TensorSketchMap map(SketchConfig{9, 32, 2, 1.0, 3});
  const auto xd = InputVector::dense({0, 0, 2.5, 0, -1, 0, 0, 4, 0});
  const auto xs = InputVector::sparse(9, {{2, 2.5}, {4, -1}, {7, 4}});
  EXPECT_EQ(map.apply(xd), map.apply(xs));
}

TEST(TensorSketchMap, BatchMatchesOneShotAndSerial) {
  const TensorSketchMap map(SketchConfig{30, 128, 3, 0.25, 21});
  const auto data = gaussian_dataset(97, 30, 22, false);
  const auto parallel = map.apply_batch(data);
  const auto serial = map.apply_batch_serial(data);
  EXPECT_EQ(parallel.values, serial.values);
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto one = map.apply(data[r]);
    const auto row = serial.row(r);
    ASSERT_TRUE(std::equal(one.begin(), one.end(), row.begin()));
  }
}

TEST(TensorSketchMap, RejectsDimensionMismatch) {
  const TensorSketchMap map(SketchConfig{4, 8, 2, 0.0, 1});
  EXPECT_THROW(map.apply(InputVector::dense({1, 2, 3})), DimensionError);
  EXPECT_THROW(map.apply_batch(std::vector<InputVector>{InputVector::dense({1})}),
               DimensionError);
}

TEST(EstimateKernel, BasisVectorsGiveExactlyOne) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TensorSketchMap map(SketchConfig{6, 16, 3, 0.0, seed});
    EXPECT_EQ(estimate_kernel(map, basis(6, 0), basis(6, 0)), 1.0);
  }
}

TEST(EstimateKernel, RejectsDifferentMaps) {
  const TensorSketchMap a(SketchConfig{3, 8, 2, 0.0, 1});
  const TensorSketchMap b(SketchConfig{3, 8, 2, 0.0, 2});
  const auto x = InputVector::dense({1, 2, 3});
  EXPECT_THROW(estimate_kernel(a, x, b, x), IncompatibleSketchError);
  EXPECT_EQ(estimate_kernel(a, x, a, x), estimate_kernel(a, x, x));
}

TEST(TensorPower, InnerProductIdentity) {
  const auto xy = gaussian_dataset(2, 4, 31, false);
  const auto x = xy[0].to_dense();
  const auto y = xy[1].to_dense();
  for (unsigned p = 1; p <= 3; ++p) {
    const auto xp = oracle::tensor_power(x, p);
    const auto yp = oracle::tensor_power(y, p);
    const double lhs = dot(xp, yp);
    const double rhs = std::pow(xy[0].dot(xy[1]), p);
    EXPECT_NEAR(lhs, rhs, 1e-9 * std::abs(rhs));
  }
}

TEST(TensorPower, CapacityGuard) {
  EXPECT_THROW(oracle::tensor_power(std::vector<double>(101, 1.0), 3), CapacityError);
  EXPECT_NO_THROW(oracle::tensor_power(std::vector<double>(100, 1.0), 3));
}

TEST(TensorSketchStatistics, UnbiasedWithBoundedVariance) {
  const auto xy = gaussian_dataset(2, 6, 2718, true);
  const SketchConfig cfg{6, 16, 2, 0.0, 0};
  const auto stats = run_trials(EstimatorKind::tensor, xy[0], xy[1], cfg, 100000, 314);
  EXPECT_TRUE(stats.unbiased_within(3.0)) << stats.mean << " vs " << stats.target;
  EXPECT_TRUE(stats.variance_within_bound(1.05)) << stats.variance << " vs " << stats.bound;
}

TEST(TensorSketchStatistics, NormPreservation) {
  const auto x = gaussian_dataset(1, 32, 99, true)[0];
  std::size_t far = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const auto f = TensorSketchMap(SketchConfig{32, 512, 2, 0.0, trial_seed(7, t)}).apply(x);
    if (std::abs(dot(f, f) - 1.0) > 0.2) ++far;
  }
  EXPECT_LT(static_cast<double>(far) / 1000.0, 0.2);
}

TEST(TensorSketchMap, WorkModelGrowsAsDLogD) {
  const TensorSketchMap small(SketchConfig{1024, 1024, 2, 0.0, 1});
  const TensorSketchMap big(SketchConfig{1024, 4096, 2, 0.0, 1});
  const double ratio = static_cast<double>(big.work_per_vector(1024)) /
                       static_cast<double>(small.work_per_vector(1024));
  EXPECT_LT(ratio, 8.0);
  EXPECT_GT(ratio, 1.0);
}

}  // namespace
}  // namespace tsketch
