#pragma once

// Monte Carlo verification harness: bias and variance of kernel estimators
// over independent map draws, Gram-matrix approximation error, and timing.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsketch/input_vector.hpp"
#include "tsketch/tensor_sketch.hpp"

namespace tsketch {

enum class EstimatorKind { tensor, ams, maclaurin };

std::string_view to_string(EstimatorKind kind) noexcept;
/// Throws ParameterError for names other than tensor|ams|maclaurin.
EstimatorKind parse_estimator_kind(std::string_view name);

enum class Execution { parallel, serial };

struct EstimateStats {
  std::size_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;   // unbiased sample variance
  double std_error = 0.0;  // sqrt(variance / trials)
  double target = 0.0;     // (c + <x, y>)^p
  double bound = 0.0;      // theoretical variance bound; NaN when none applies

  /// |mean - target| <= z * std_error. A zero-variance run must hit the
  /// target to within 1e-12 relative.
  bool unbiased_within(double z) const noexcept;
  /// variance <= bound * slack; vacuously true when no bound applies.
  bool variance_within_bound(double slack) const noexcept;

  friend bool operator==(const EstimateStats&, const EstimateStats&) = default;
};

/// Seed of trial `index` under a master seed.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// One kernel estimate from a freshly built estimator with `config`
/// (config.seed selects the randomness). Maclaurin uses the inhomogeneous
/// mode whenever config.offset > 0.
double single_estimate(EstimatorKind kind, const InputVector& x,
                       const InputVector& y, const SketchConfig& config);

/// Variance bound (3^p - 1)/D (||x||^2 + c)^p (||y||^2 + c)^p; D is the
/// feature count (replica count for ams). NaN for inhomogeneous Maclaurin.
double variance_bound(EstimatorKind kind, const InputVector& x,
                      const InputVector& y, const SketchConfig& config);

/// Draws `trials` independent estimators (seeds trial_seed(seed, t)) and
/// summarizes their estimates. Parallel and serial runs are bit-identical.
/// Throws ParameterError when trials < 100.
EstimateStats run_trials(EstimatorKind kind, const InputVector& x,
                         const InputVector& y, const SketchConfig& config,
                         std::size_t trials, std::uint64_t seed,
                         Execution exec = Execution::parallel);

/// Mean and unbiased variance of a sample; both reductions are sequential.
EstimateStats summarize(const std::vector<double>& samples);

inline constexpr std::size_t kMinTrials = 100;
inline constexpr std::size_t kMaxGramSize = 10000;

struct GramErrorReport {
  std::size_t n = 0;
  std::size_t feature_dim = 0;
  unsigned degree = 0;
  double offset = 0.0;
  std::uint64_t seed = 0;
  double frobenius_rel_error = 0.0;  // ||K^ - K||_F / ||K||_F
  double max_abs_entry_error = 0.0;
};

/// Sketches all vectors with one map built from `config` and compares the
/// estimated Gram matrix with the exact one. Throws CapacityError above
/// kMaxGramSize vectors.
GramErrorReport gram_error(const std::vector<InputVector>& data,
                           const SketchConfig& config,
                           EstimatorKind kind = EstimatorKind::tensor,
                           Execution exec = Execution::parallel);

/// n standard-Gaussian vectors of dimension d from a portable generator
/// (splitmix64 + Box-Muller), optionally scaled to unit norm.
std::vector<InputVector> gaussian_dataset(std::size_t n, std::size_t d,
                                          std::uint64_t seed, bool unit_norm);

struct TimingRow {
  std::size_t feature_dim = 0;
  double median_seconds_per_vector = 0.0;
  double min_seconds_per_vector = 0.0;
};

struct TimingOptions {
  std::size_t input_dim = 1024;
  std::size_t vectors = 64;
  std::vector<std::size_t> feature_dims{256, 1024, 4096};
  unsigned degree = 2;
  double offset = 0.0;
  std::uint64_t seed = 0;
  std::size_t repetitions = 5;
};

/// Per-vector Tensor Sketch time for each D after one warm-up pass; the
/// median of `repetitions` (>= 5) single-threaded runs is reported.
std::vector<TimingRow> timing_profile(const TimingOptions& options);

/// True when times never decrease with D and every 4x step in D costs less
/// than `max_ratio` times as much.
bool timing_profile_ok(const std::vector<TimingRow>& rows, double max_ratio = 8.0);

struct PairCost {
  double tensor_seconds = 0.0;  // apply(x), apply(y) and the inner product
  double ams_seconds = 0.0;     // D-replica AMS product estimate
};

/// Median per-pair wall time of Tensor Sketch against the AMS-product
/// baseline on one random pair, estimators prebuilt, `repetitions` runs.
PairCost compare_pair_cost(std::size_t input_dim, std::size_t feature_dim,
                           unsigned degree, std::uint64_t seed,
                           std::size_t repetitions = 5);

}  // namespace tsketch
