#include "tsketch/baselines.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "tsketch/count_sketch.hpp"
#include "tsketch/errors.hpp"

namespace tsketch {

namespace {

void check_dim(const SketchConfig& config, const InputVector& x) {
  if (x.dim() != config.input_dim) {
    throw DimensionError("input dimension " + std::to_string(x.dim()) +
                         " does not match configured dimension " +
                         std::to_string(config.input_dim));
  }
}

void validate_baseline(const SketchConfig& config) {
  if (config.input_dim < 1) throw ParameterError("input dimension d must be >= 1");
  if (config.feature_dim < 1) throw ParameterError("feature count D must be >= 1");
  if (config.degree < 1) throw ParameterError("degree p must be >= 1");
  if (!(config.offset >= 0.0) || !std::isfinite(config.offset)) {
    throw ParameterError("offset c must be finite and >= 0");
  }
}

// Z_s(aug(x)) without materializing the augmented vector.
double ams_augmented(const InputVector& x, const SignHash& s, double root_c,
                     std::size_t extra_index) {
  double z = ams_sketch(x, s);
  if (root_c > 0.0) z += s(extra_index) > 0 ? root_c : -root_c;
  return z;
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

AmsTensorEstimator::AmsTensorEstimator(const SketchConfig& config)
    : config_(config), replicas_(config.feature_dim) {
  validate_baseline(config_);
  signs_.reserve(replicas_ * config_.degree);
  for (std::size_t r = 0; r < replicas_; ++r) {
    for (unsigned j = 0; j < config_.degree; ++j) {
      signs_.push_back(
          SignHash::sample(config_.seed, kAmsStreamBase + r * config_.degree + j));
    }
  }
}

double AmsTensorEstimator::replica_estimate(std::size_t replica,
                                            const InputVector& x,
                                            const InputVector& y) const {
  check_dim(config_, x);
  check_dim(config_, y);
  const double root_c = config_.offset > 0.0 ? std::sqrt(config_.offset) : 0.0;
  double z = 1.0;
  for (unsigned j = 0; j < config_.degree; ++j) {
    const SignHash& s = sign_hash(replica, j);
    z *= ams_augmented(x, s, root_c, config_.input_dim) *
         ams_augmented(y, s, root_c, config_.input_dim);
  }
  return z;
}

double AmsTensorEstimator::estimate(const InputVector& x,
                                    const InputVector& y) const {
  double sum = 0.0;
  for (std::size_t r = 0; r < replicas_; ++r) sum += replica_estimate(r, x, y);
  return sum / static_cast<double>(replicas_);
}

std::size_t AmsTensorEstimator::work_per_pair(std::size_t nnz) const noexcept {
  return 2 * config_.degree * replicas_ * (nnz + (config_.offset > 0.0 ? 1 : 0));
}

MaclaurinMap::MaclaurinMap(const SketchConfig& config, MaclaurinMode mode)
    : config_(config), mode_(mode) {
  validate_baseline(config_);
  if (mode_ == MaclaurinMode::homogeneous && config_.offset != 0.0) {
    throw ParameterError("Maclaurin homogeneous mode requires offset c == 0");
  }
  const std::size_t D = config_.feature_dim;
  const unsigned p = config_.degree;
  rows_.reserve(D * p);
  for (std::size_t r = 0; r < D; ++r) {
    for (unsigned j = 0; j < p; ++j) {
      rows_.push_back(SignHash::sample(config_.seed, kMaclaurinStreamBase + r * p + j));
    }
  }
  const double inv_root_d = 1.0 / std::sqrt(static_cast<double>(D));
  degrees_.assign(D, p);
  weights_.assign(D, inv_root_d);
  if (mode_ == MaclaurinMode::inhomogeneous) {
    SplitMix64 rng = SplitMix64::for_stream(config_.seed, kMaclaurinDegreeStream);
    for (std::size_t r = 0; r < D; ++r) {
      // countr_zero of a uniform word is t with probability 2^{-(t+1)}.
      const auto t = static_cast<unsigned>(std::countr_zero(rng.next()));
      if (t > p) {
        degrees_[r] = 0;
        weights_[r] = 0.0;
        continue;
      }
      const double a_t = binomial(p, t) * std::pow(config_.offset, p - t);
      degrees_[r] = t;
      weights_[r] = inv_root_d * std::sqrt(a_t * std::ldexp(1.0, static_cast<int>(t) + 1));
    }
  }
}

void MaclaurinMap::apply_into(const InputVector& x, std::span<double> out) const {
  check_dim(config_, x);
  const unsigned p = config_.degree;
  for (std::size_t r = 0; r < out.size(); ++r) {
    double f = weights_[r];
    if (f != 0.0) {
      for (unsigned j = 0; j < degrees_[r]; ++j) f *= ams_sketch(x, rows_[r * p + j]);
    }
    out[r] = f;
  }
}

std::vector<double> MaclaurinMap::apply(const InputVector& x) const {
  std::vector<double> out(config_.feature_dim);
  apply_into(x, out);
  return out;
}

FeatureMatrix MaclaurinMap::apply_batch(std::span<const InputVector> xs) const {
  for (const auto& x : xs) check_dim(config_, x);
  FeatureMatrix m{xs.size(), config_.feature_dim,
                  std::vector<double>(xs.size() * config_.feature_dim)};
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    apply_into(xs[static_cast<std::size_t>(r)], m.row(static_cast<std::size_t>(r)));
  }
  return m;
}

FeatureMatrix MaclaurinMap::apply_batch_serial(std::span<const InputVector> xs) const {
  FeatureMatrix m{xs.size(), config_.feature_dim,
                  std::vector<double>(xs.size() * config_.feature_dim)};
  for (std::size_t r = 0; r < xs.size(); ++r) apply_into(xs[r], m.row(r));
  return m;
}

}  // namespace tsketch
