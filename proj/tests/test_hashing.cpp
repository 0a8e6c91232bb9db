#include <gtest/gtest.h>

#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <cstdint>
#include <vector>

#include "oracle/oracle.hpp"
#include "tsketch/errors.hpp"
#include "tsketch/hashing.hpp"

namespace tsketch {
namespace {

double chi_square_critical(double dof, double alpha) {
  return boost::math::quantile(
      boost::math::complement(boost::math::chi_squared(dof), alpha));
}

TEST(MersenneField, ReductionMatchesWideModulo) {
  SplitMix64 rng(42);
  for (int t = 0; t < 100000; ++t) {
    const uint128 v =
        (static_cast<uint128>(rng.next()) << 64) | rng.next();
    ASSERT_EQ(mod_mersenne61(v), static_cast<std::uint64_t>(v % kMersenne61));
  }
  EXPECT_EQ(mod_mersenne61(kMersenne61), 0u);
  EXPECT_EQ(mod_mersenne61(static_cast<uint128>(kMersenne61) * 2 + 5), 5u);
}

TEST(KWiseHash, HornerMatchesDirectPolynomial) {
  SplitMix64 rng(9);
  for (int t = 0; t < 2000; ++t) {
    const unsigned k = 2 + static_cast<unsigned>(rng.next() % 5);
    const auto h = KWiseHash::sample(rng.next(), rng.next(), k, 1 + (rng.next() % 1000) + 1);
    const std::uint64_t i = rng.next() % 100000000;
    uint128 sum = 0;
    uint128 power = 1;
    for (std::uint64_t a : h.coefficients()) {
      sum = (sum + a * power) % kMersenne61;
      power = (power * i) % kMersenne61;
    }
    ASSERT_EQ(h.field_value(i), static_cast<std::uint64_t>(sum));
    ASSERT_EQ(h(i), static_cast<std::uint64_t>(sum) % h.range());
  }
}

TEST(KWiseHash, HandEvaluatedExamples) {
  const KWiseHash constant({5, 0}, 16);
  for (std::uint64_t i : {0ULL, 1ULL, 77ULL, 1ULL << 40}) EXPECT_EQ(constant(i), 5u);
  const KWiseHash constant3({5, 0}, 3);
  EXPECT_EQ(constant3(12), 2u);
  const KWiseHash linear({3, 2}, 16);
  EXPECT_EQ(linear(10), 7u);  // (3 + 2*10) mod 16
}

TEST(KWiseHash, SampleIsDeterministic) {
  const auto a = KWiseHash::sample(0, 0, 2, 16);
  const auto b = KWiseHash::sample(0, 0, 2, 16);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.independence(), 2u);
  EXPECT_EQ(a.range(), 16u);
  for (std::uint64_t c : a.coefficients()) EXPECT_LT(c, kMersenne61);
}

TEST(KWiseHash, StreamsGiveDistinctCoefficients) {
  std::vector<std::vector<std::uint64_t>> seen;
  for (std::uint64_t id = 0; id < 100; ++id) {
    const auto h = KWiseHash::sample(0, id, 2, 16);
    std::vector<std::uint64_t> c(h.coefficients().begin(), h.coefficients().end());
    for (const auto& prev : seen) ASSERT_NE(prev, c) << "stream " << id;
    seen.push_back(std::move(c));
  }
}

TEST(KWiseHash, OutputsStayInRange) {
  SplitMix64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t range = 2 + rng.next() % 5000;
    const auto h = KWiseHash::sample(rng.next(), t, 2 + t % 4, range);
    for (std::uint64_t i = 0; i < 500; ++i) ASSERT_LT(h(i), range);
  }
}

TEST(KWiseHash, RejectsBadParameters) {
  EXPECT_THROW(KWiseHash::sample(0, 0, 1, 16), ParameterError);
  EXPECT_THROW(KWiseHash::sample(0, 0, 2, 1), ParameterError);
  EXPECT_THROW(KWiseHash({1}, 16), ParameterError);
  EXPECT_THROW(KWiseHash({kMersenne61, 0}, 16), ParameterError);
  EXPECT_THROW(KWiseHash({1, 2}, (std::uint64_t{1} << 32) + 1), ParameterError);
}

TEST(KWiseHash, PairwiseJointDistributionIsUniform) {
  std::array<std::size_t, 64> cells{};
  for (std::uint64_t id = 0; id < 10000; ++id) {
    const auto h = KWiseHash::sample(2024, id, 2, 8);
    ++cells[h(0) * 8 + h(1)];
  }
  EXPECT_LE(oracle::chi_square_uniform(cells), chi_square_critical(63, 0.001));
}

TEST(SignHash, SignBalanceOverInputs) {
  const auto s = SignHash::sample(7, 3);
  std::size_t plus = 0;
  for (std::uint64_t i = 0; i < 100000; ++i) plus += s(i) == 1 ? 1 : 0;
  const double frac = static_cast<double>(plus) / 100000.0;
  EXPECT_GE(frac, 0.49);
  EXPECT_LE(frac, 0.51);
}

TEST(SignHash, MapsBaseOutputToSign) {
  const SignHash zero(KWiseHash({0, 0, 0, 0}, 2));
  const SignHash one(KWiseHash({1, 0, 0, 0}, 2));
  EXPECT_EQ(zero(0), 1);
  EXPECT_EQ(zero(12345), 1);
  EXPECT_EQ(one(0), -1);
  EXPECT_EQ(one(999), -1);
  EXPECT_THROW(SignHash(KWiseHash({0, 0}, 2)), ParameterError);
  EXPECT_THROW(SignHash(KWiseHash({0, 0, 0, 0}, 4)), ParameterError);
}

TEST(SignHash, DistinctInputsAreUncorrelated) {
  const std::array<std::pair<std::uint64_t, std::uint64_t>, 3> pairs{
      {{0, 1}, {3, 17}, {100, 100000}}};
  for (auto [i, j] : pairs) {
    double sum = 0.0;
    for (std::uint64_t id = 0; id < 10000; ++id) {
      const auto s = SignHash::sample(11, id);
      sum += s(i) * s(j);
    }
    const double mean = sum / 10000.0;
    EXPECT_GE(mean, -0.05) << i << "," << j;
    EXPECT_LE(mean, 0.05) << i << "," << j;
  }
}

TEST(SignHash, FourWiseJointPatternsAreUniform) {
  std::array<std::size_t, 16> cells{};
  const std::array<std::uint64_t, 4> inputs{0, 1, 2, 3};
  for (std::uint64_t id = 0; id < 100000; ++id) {
    const auto s = SignHash::sample(31337, id);
    std::size_t pattern = 0;
    for (std::size_t b = 0; b < 4; ++b) pattern |= (s(inputs[b]) < 0 ? 1u : 0u) << b;
    ++cells[pattern];
  }
  EXPECT_LE(oracle::chi_square_uniform(cells), chi_square_critical(15, 0.001));
}

}  // namespace
}  // namespace tsketch
