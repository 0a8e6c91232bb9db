#pragma once

// Comparison estimators for (c + <x, y>)^p:
//  - product of AMS sketches on the tensor domain, averaged over D replicas;
//  - Maclaurin random features with Rademacher vectors (Kar & Karnick).
// Both keep O(D p) hash functions and cost O(p d D) per vector or pair.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tsketch/hashing.hpp"
#include "tsketch/input_vector.hpp"
#include "tsketch/tensor_sketch.hpp"

namespace tsketch {

/// Z = (1/D) sum_r prod_j Z_{s_j^r}(x) Z_{s_j^r}(y), with pD independent
/// 4-wise sign hashes. Inputs are augmented by sqrt(c) when c > 0.
class AmsTensorEstimator {
 public:
  /// Uses config.feature_dim as the replica count (any value >= 1).
  explicit AmsTensorEstimator(const SketchConfig& config);

  std::size_t replicas() const noexcept { return replicas_; }
  unsigned degree() const noexcept { return config_.degree; }
  const SignHash& sign_hash(std::size_t replica, unsigned j) const {
    return signs_[replica * config_.degree + j];
  }

  /// prod_j Z_{s_j^r}(x) Z_{s_j^r}(y) for one replica.
  double replica_estimate(std::size_t replica, const InputVector& x,
                          const InputVector& y) const;
  /// Mean over all replicas.
  double estimate(const InputVector& x, const InputVector& y) const;

  /// Sign-hash evaluations per pair: 2 p D (nnz + [c > 0]).
  std::size_t work_per_pair(std::size_t nnz) const noexcept;

 private:
  SketchConfig config_;
  std::size_t replicas_;
  std::vector<SignHash> signs_;
};

enum class MaclaurinMode {
  homogeneous,    // <x, y>^p, requires c == 0
  inhomogeneous,  // (c + <x, y>)^p via a random degree per feature
};

/// D random features whose inner products are unbiased for the kernel.
///
/// Homogeneous: feature r = D^{-1/2} prod_{j<p} <w_j^r, x>.
/// Inhomogeneous: feature r draws a degree t with P(t) = 2^{-(t+1)} and is
/// D^{-1/2} sqrt(a_t 2^{t+1}) prod_{j<t} <w_j^r, x>, a_t = C(p, t) c^{p-t};
/// degrees t > p carry no mass in (c + z)^p and give a zero feature.
/// Rademacher entries w_j^r[i] are sign-hash evaluations, never stored.
class MaclaurinMap {
 public:
  MaclaurinMap(const SketchConfig& config, MaclaurinMode mode);

  const SketchConfig& config() const noexcept { return config_; }
  MaclaurinMode mode() const noexcept { return mode_; }
  /// Degree drawn for feature r (inhomogeneous mode; p in homogeneous mode).
  unsigned feature_degree(std::size_t r) const { return degrees_[r]; }

  std::vector<double> apply(const InputVector& x) const;
  FeatureMatrix apply_batch(std::span<const InputVector> xs) const;
  FeatureMatrix apply_batch_serial(std::span<const InputVector> xs) const;

 private:
  void apply_into(const InputVector& x, std::span<double> out) const;

  SketchConfig config_;
  MaclaurinMode mode_;
  std::vector<SignHash> rows_;    // D * p Rademacher vectors
  std::vector<unsigned> degrees_;  // per feature
  std::vector<double> weights_;    // per feature, includes D^{-1/2}
};

/// Stream-id namespaces for baseline randomness under one seed.
inline constexpr std::uint64_t kAmsStreamBase = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kMaclaurinStreamBase = std::uint64_t{2} << 40;
inline constexpr std::uint64_t kMaclaurinDegreeStream = std::uint64_t{3} << 40;

}  // namespace tsketch
