#include "tsketch/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tsketch/baselines.hpp"
#include "tsketch/errors.hpp"
#include "tsketch/hashing.hpp"

namespace tsketch {

std::string_view to_string(EstimatorKind kind) noexcept {
  switch (kind) {
    case EstimatorKind::tensor: return "tensor";
    case EstimatorKind::ams: return "ams";
    case EstimatorKind::maclaurin: return "maclaurin";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  if (name == "tensor") return EstimatorKind::tensor;
  if (name == "ams") return EstimatorKind::ams;
  if (name == "maclaurin") return EstimatorKind::maclaurin;
  throw ParameterError("unknown estimator '" + std::string(name) +
                       "' (expected tensor, ams or maclaurin)");
}

bool EstimateStats::unbiased_within(double z) const noexcept {
  const double gap = std::abs(mean - target);
  if (std_error == 0.0) return gap <= 1e-12 * std::max(1.0, std::abs(target));
  return gap <= z * std_error;
}

bool EstimateStats::variance_within_bound(double slack) const noexcept {
  if (std::isnan(bound)) return true;
  return variance <= bound * slack;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return SplitMix64::for_stream(master_seed, index).next();
}

double single_estimate(EstimatorKind kind, const InputVector& x,
                       const InputVector& y, const SketchConfig& config) {
  switch (kind) {
    case EstimatorKind::tensor:
      return estimate_kernel(TensorSketchMap(config), x, y);
    case EstimatorKind::ams:
      return AmsTensorEstimator(config).estimate(x, y);
    case EstimatorKind::maclaurin: {
      const MaclaurinMap map(config, config.offset > 0.0
                                         ? MaclaurinMode::inhomogeneous
                                         : MaclaurinMode::homogeneous);
      return dot(map.apply(x), map.apply(y));
    }
  }
  throw ParameterError("unknown estimator kind");
}

double variance_bound(EstimatorKind kind, const InputVector& x,
                      const InputVector& y, const SketchConfig& config) {
  if (kind == EstimatorKind::maclaurin && config.offset > 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double p = config.degree;
  const double nx = x.squared_norm() + config.offset;
  const double ny = y.squared_norm() + config.offset;
  return (std::pow(3.0, p) - 1.0) / static_cast<double>(config.feature_dim) *
         std::pow(nx, p) * std::pow(ny, p);
}

EstimateStats summarize(const std::vector<double>& samples) {
  EstimateStats s;
  s.trials = samples.size();
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(samples.size() - 1);
  }
  s.std_error = std::sqrt(s.variance / static_cast<double>(samples.size()));
  return s;
}

EstimateStats run_trials(EstimatorKind kind, const InputVector& x,
                         const InputVector& y, const SketchConfig& config,
                         std::size_t trials, std::uint64_t seed, Execution exec) {
  if (trials < kMinTrials) {
    throw ParameterError("run_trials: trials = " + std::to_string(trials) +
                         " is below the minimum of " + std::to_string(kMinTrials));
  }
  if (kind == EstimatorKind::tensor) config.validate();
  // Validate once up front so that worker threads never throw.
  (void)single_estimate(kind, x, y, config);

  std::vector<double> estimates(trials);
  const auto n = static_cast<std::ptrdiff_t>(trials);
  auto one = [&](std::ptrdiff_t t) {
    SketchConfig c = config;
    c.seed = trial_seed(seed, static_cast<std::uint64_t>(t));
    estimates[static_cast<std::size_t>(t)] = single_estimate(kind, x, y, c);
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < n; ++t) one(t);
  } else {
    for (std::ptrdiff_t t = 0; t < n; ++t) one(t);
  }

  EstimateStats stats = summarize(estimates);
  stats.target = polynomial_kernel(x, y, config.degree, config.offset);
  stats.bound = variance_bound(kind, x, y, config);
  return stats;
}

GramErrorReport gram_error(const std::vector<InputVector>& data,
                           const SketchConfig& config, EstimatorKind kind,
                           Execution exec) {
  if (data.size() > kMaxGramSize) {
    throw CapacityError("gram_error: " + std::to_string(data.size()) +
                        " vectors exceed the limit of " +
                        std::to_string(kMaxGramSize));
  }
  GramErrorReport report;
  report.n = data.size();
  report.feature_dim = config.feature_dim;
  report.degree = config.degree;
  report.offset = config.offset;
  report.seed = config.seed;
  if (data.empty()) return report;

  FeatureMatrix features;
  const bool parallel = exec == Execution::parallel;
  switch (kind) {
    case EstimatorKind::tensor: {
      const TensorSketchMap map(config);
      features = parallel ? map.apply_batch(data) : map.apply_batch_serial(data);
      break;
    }
    case EstimatorKind::maclaurin: {
      const MaclaurinMap map(config, config.offset > 0.0
                                         ? MaclaurinMode::inhomogeneous
                                         : MaclaurinMode::homogeneous);
      features = parallel ? map.apply_batch(data) : map.apply_batch_serial(data);
      break;
    }
    case EstimatorKind::ams:
      throw ParameterError("gram_error: the ams estimator has no feature map");
  }

  const std::size_t n = data.size();
  for (const auto& x : data) {
    if (x.dim() != config.input_dim) {
      throw DimensionError("gram_error: vector dimension does not match config");
    }
  }
  std::vector<double> diff_sq(n, 0.0);
  std::vector<double> exact_sq(n, 0.0);
  std::vector<double> max_abs(n, 0.0);
  const auto rows = static_cast<std::ptrdiff_t>(n);
  auto row = [&](std::ptrdiff_t ri) {
    const auto i = static_cast<std::size_t>(ri);
    for (std::size_t j = 0; j < n; ++j) {
      const double exact = polynomial_kernel(data[i], data[j], config.degree, config.offset);
      const double approx = dot(features.row(i), features.row(j));
      const double e = approx - exact;
      diff_sq[i] += e * e;
      exact_sq[i] += exact * exact;
      max_abs[i] = std::max(max_abs[i], std::abs(e));
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < rows; ++i) row(i);
  } else {
    for (std::ptrdiff_t i = 0; i < rows; ++i) row(i);
  }

  double diff_total = 0.0;
  double exact_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diff_total += diff_sq[i];
    exact_total += exact_sq[i];
    report.max_abs_entry_error = std::max(report.max_abs_entry_error, max_abs[i]);
  }
  if (exact_total == 0.0) {
    report.frobenius_rel_error =
        diff_total == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    report.frobenius_rel_error = std::sqrt(diff_total / exact_total);
  }
  return report;
}

std::vector<InputVector> gaussian_dataset(std::size_t n, std::size_t d,
                                          std::uint64_t seed, bool unit_norm) {
  std::vector<InputVector> out;
  out.reserve(n);
  SplitMix64 rng(seed);
  auto uniform = [&rng] {
    // (0, 1]: never zero so the logarithm below is finite.
    return (static_cast<double>(rng.next() >> 11) + 1.0) * 0x1.0p-53;
  };
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; i += 2) {
      const double radius = std::sqrt(-2.0 * std::log(uniform()));
      const double angle = 2.0 * std::numbers::pi * uniform();
      v[i] = radius * std::cos(angle);
      if (i + 1 < d) v[i + 1] = radius * std::sin(angle);
    }
    if (unit_norm) {
      double norm = 0.0;
      for (double a : v) norm += a * a;
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        for (double& a : v) a /= norm;
      }
    }
    out.push_back(InputVector::dense(std::move(v)));
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <typename F>
double seconds(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<TimingRow> timing_profile(const TimingOptions& options) {
  if (options.repetitions < 5) {
    throw ParameterError("timing_profile: at least 5 repetitions are required");
  }
  if (options.vectors == 0) throw ParameterError("timing_profile: no vectors");
  const auto data =
      gaussian_dataset(options.vectors, options.input_dim, options.seed, true);
  std::vector<TimingRow> rows;
  for (std::size_t D : options.feature_dims) {
    SketchConfig config{options.input_dim, D, options.degree, options.offset,
                        options.seed};
    const TensorSketchMap map(config);
    TensorSketchMap::Workspace ws;
    std::vector<double> out(D);
    volatile double sink = 0.0;
    auto pass = [&] {
      for (const auto& x : data) {
        map.apply_into(x, out, ws);
        sink = sink + out[0];
      }
    };
    pass();  // warm-up: plans, workspace, caches
    std::vector<double> samples;
    for (std::size_t r = 0; r < options.repetitions; ++r) {
      samples.push_back(seconds(pass) / static_cast<double>(data.size()));
    }
    rows.push_back({D, median(samples), *std::min_element(samples.begin(), samples.end())});
  }
  return rows;
}

bool timing_profile_ok(const std::vector<TimingRow>& rows, double max_ratio) {
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      if (rows[b].feature_dim < rows[a].feature_dim) continue;
      if (rows[b].median_seconds_per_vector < rows[a].median_seconds_per_vector) {
        return false;
      }
      if (rows[b].feature_dim == 4 * rows[a].feature_dim &&
          !(rows[b].median_seconds_per_vector <
            max_ratio * rows[a].median_seconds_per_vector)) {
        return false;
      }
    }
  }
  return true;
}

PairCost compare_pair_cost(std::size_t input_dim, std::size_t feature_dim,
                           unsigned degree, std::uint64_t seed,
                           std::size_t repetitions) {
  const auto pair = gaussian_dataset(2, input_dim, seed, true);
  const SketchConfig config{input_dim, feature_dim, degree, 0.0, seed};
  const TensorSketchMap map(config);
  const AmsTensorEstimator ams(config);
  TensorSketchMap::Workspace ws;
  std::vector<double> fx(feature_dim);
  std::vector<double> fy(feature_dim);
  volatile double sink = 0.0;

  auto tensor_pass = [&] {
    map.apply_into(pair[0], fx, ws);
    map.apply_into(pair[1], fy, ws);
    sink = sink + dot(fx, fy);
  };
  auto ams_pass = [&] { sink = sink + ams.estimate(pair[0], pair[1]); };
  tensor_pass();
  ams_pass();
  std::vector<double> t_tensor;
  std::vector<double> t_ams;
  for (std::size_t r = 0; r < std::max<std::size_t>(repetitions, 1); ++r) {
    t_tensor.push_back(seconds(tensor_pass));
    t_ams.push_back(seconds(ams_pass));
  }
  return {median(t_tensor), median(t_ams)};
}

}  // namespace tsketch
