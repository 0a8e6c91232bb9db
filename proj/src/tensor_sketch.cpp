#include "tsketch/tensor_sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "tsketch/count_sketch.hpp"
#include "tsketch/errors.hpp"

namespace tsketch {

void SketchConfig::validate() const {
  if (input_dim < 1) throw ParameterError("input dimension d must be >= 1");
  if (feature_dim < 2 || !is_power_of_two(feature_dim)) {
    throw DimensionError("feature dimension D = " + std::to_string(feature_dim) +
                         " must be a power of two >= 2");
  }
  if (degree < 1) throw ParameterError("degree p must be >= 1");
  if (!(offset >= 0.0) || !std::isfinite(offset)) {
    throw ParameterError("offset c must be finite and >= 0");
  }
}

double polynomial_kernel(const InputVector& x, const InputVector& y,
                         unsigned degree, double offset) {
  return std::pow(offset + x.dot(y), static_cast<double>(degree));
}

InputVector augment(const InputVector& x, double c) {
  if (!(c >= 0.0)) throw ParameterError("augment: offset c must be >= 0");
  if (c == 0.0) return x;
  auto entries = x.to_sparse_entries();
  entries.push_back({x.dim(), std::sqrt(c)});
  if (x.is_sparse()) return InputVector::sparse(x.dim() + 1, std::move(entries));
  auto values = x.to_dense();
  values.push_back(std::sqrt(c));
  return InputVector::dense(std::move(values));
}

namespace {

std::uint64_t map_fingerprint(const SketchConfig& config,
                              std::span<const KWiseHash> buckets,
                              std::span<const SignHash> signs) {
  std::uint64_t offset_bits = 0;
  std::memcpy(&offset_bits, &config.offset, sizeof offset_bits);
  std::uint64_t h = SplitMix64::mix(config.input_dim);
  auto fold = [&h](std::uint64_t v) {
    h = SplitMix64::mix(h ^ (v + SplitMix64::kGamma + (h << 6) + (h >> 2)));
  };
  fold(config.feature_dim);
  fold(config.degree);
  fold(offset_bits);
  for (const auto& b : buckets) fold(b.fingerprint());
  for (const auto& s : signs) fold(s.fingerprint());
  return h;
}

}  // namespace

TensorSketchMap::TensorSketchMap(const SketchConfig& config)
    : config_(config), effective_dim_(0), fingerprint_(0) {
  config_.validate();
  effective_dim_ = config_.input_dim + (config_.offset > 0.0 ? 1 : 0);
  buckets_.reserve(config_.degree);
  signs_.reserve(config_.degree);
  for (unsigned j = 0; j < config_.degree; ++j) {
    buckets_.push_back(
        KWiseHash::sample(config_.seed, 2 * std::uint64_t{j}, 2, config_.feature_dim));
    signs_.push_back(SignHash::sample(config_.seed, 2 * std::uint64_t{j} + 1));
  }
  fingerprint_ = map_fingerprint(config_, buckets_, signs_);
}

TensorSketchMap::TensorSketchMap(const SketchConfig& config,
                                 std::vector<KWiseHash> buckets,
                                 std::vector<SignHash> signs)
    : config_(config),
      effective_dim_(0),
      buckets_(std::move(buckets)),
      signs_(std::move(signs)),
      fingerprint_(0) {
  config_.validate();
  effective_dim_ = config_.input_dim + (config_.offset > 0.0 ? 1 : 0);
  if (buckets_.size() != config_.degree || signs_.size() != config_.degree) {
    throw ParameterError("TensorSketchMap: need exactly p bucket and p sign hashes");
  }
  for (const auto& b : buckets_) {
    if (b.range() != config_.feature_dim) {
      throw DimensionError("TensorSketchMap: bucket hash range must equal D");
    }
  }
  fingerprint_ = map_fingerprint(config_, buckets_, signs_);
}

void TensorSketchMap::check_input(const InputVector& x) const {
  if (x.dim() != config_.input_dim) {
    throw DimensionError("TensorSketchMap: input dimension " +
                         std::to_string(x.dim()) + " does not match map dimension " +
                         std::to_string(config_.input_dim));
  }
}

std::vector<double> TensorSketchMap::apply(const InputVector& x) const {
  Workspace ws;
  std::vector<double> out(config_.feature_dim);
  apply_into(x, out, ws);
  return out;
}

void TensorSketchMap::apply_into(const InputVector& x, std::span<double> out,
                                 Workspace& ws) const {
  check_input(x);
  const std::size_t D = config_.feature_dim;
  if (out.size() != D) throw DimensionError("apply_into: output length must be D");

  const double root_c = config_.offset > 0.0 ? std::sqrt(config_.offset) : 0.0;
  const std::size_t extra_index = config_.input_dim;
  // Count Sketch of aug(x) under hash pair j, accumulated into `dst`.
  auto sketch_into = [&](unsigned j, std::span<double> dst) {
    count_sketch_accumulate(x, buckets_[j], signs_[j], dst);
    if (root_c > 0.0) {
      dst[buckets_[j](extra_index)] += signs_[j](extra_index) > 0 ? root_c : -root_c;
    }
  };

  if (config_.degree == 1) {
    std::fill(out.begin(), out.end(), 0.0);
    sketch_into(0, out);
    return;
  }

  // Sketch every factor first; when the bucket supports are tiny, convolve
  // them directly (cheaper than three transforms and exact for e.g. basis
  // vectors), otherwise multiply their spectra.
  const unsigned p = config_.degree;
  ws.sketch.assign(p * D, 0.0);
  std::size_t support_product = 1;
  for (unsigned j = 0; j < p; ++j) {
    std::span<double> cj(ws.sketch.data() + j * D, D);
    sketch_into(j, cj);
    const auto support = static_cast<std::size_t>(
        std::count_if(cj.begin(), cj.end(), [](double v) { return v != 0.0; }));
    support_product = support_product > D ? support_product : support_product * support;
  }

  if (support_product <= D) {
    std::vector<double>& cur = ws.direct;
    std::vector<double>& next = ws.direct_next;
    cur.assign(ws.sketch.begin(), ws.sketch.begin() + static_cast<std::ptrdiff_t>(D));
    for (unsigned j = 1; j < p; ++j) {
      next.assign(D, 0.0);
      const double* cj = ws.sketch.data() + j * D;
      for (std::size_t a = 0; a < D; ++a) {
        if (cur[a] == 0.0) continue;
        for (std::size_t b = 0; b < D; ++b) {
          if (cj[b] != 0.0) next[(a + b) & (D - 1)] += cur[a] * cj[b];
        }
      }
      cur.swap(next);
    }
    std::copy(cur.begin(), cur.end(), out.begin());
    return;
  }

  const FftPlan& plan = plan_for(D);
  ws.product.resize(D);
  ws.factor.resize(D);
  for (unsigned j = 0; j < p; ++j) {
    const double* cj = ws.sketch.data() + j * D;
    auto& target = j == 0 ? ws.product : ws.factor;
    for (std::size_t k = 0; k < D; ++k) target[k] = Complex(cj[k], 0.0);
    plan.forward(target);
    if (j > 0) {
      for (std::size_t k = 0; k < D; ++k) ws.product[k] *= ws.factor[k];
    }
  }
  plan.inverse(ws.product);
  take_real_checked(ws.product, out);
}

FeatureMatrix TensorSketchMap::apply_batch(std::span<const InputVector> xs) const {
  for (const auto& x : xs) check_input(x);
  FeatureMatrix m{xs.size(), config_.feature_dim,
                  std::vector<double>(xs.size() * config_.feature_dim)};
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel
  {
    Workspace ws;
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      apply_into(xs[static_cast<std::size_t>(r)], m.row(static_cast<std::size_t>(r)), ws);
    }
  }
  return m;
}

FeatureMatrix TensorSketchMap::apply_batch_serial(
    std::span<const InputVector> xs) const {
  FeatureMatrix m{xs.size(), config_.feature_dim,
                  std::vector<double>(xs.size() * config_.feature_dim)};
  Workspace ws;
  for (std::size_t r = 0; r < xs.size(); ++r) apply_into(xs[r], m.row(r), ws);
  return m;
}

std::size_t TensorSketchMap::work_per_vector(std::size_t nnz) const noexcept {
  const std::size_t p = config_.degree;
  const std::size_t D = config_.feature_dim;
  const std::size_t hashing = p * (nnz + (config_.offset > 0.0 ? 1 : 0));
  if (p == 1) return hashing;
  const std::size_t butterflies = (D / 2) * static_cast<std::size_t>(std::countr_zero(D));
  return hashing + (p + 1) * butterflies + p * D;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: lengths differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double estimate_kernel(const TensorSketchMap& map, const InputVector& x,
                       const InputVector& y) {
  TensorSketchMap::Workspace ws;
  std::vector<double> fx(map.config().feature_dim);
  std::vector<double> fy(map.config().feature_dim);
  map.apply_into(x, fx, ws);
  map.apply_into(y, fy, ws);
  return dot(fx, fy);
}

double estimate_kernel(const TensorSketchMap& map_x, const InputVector& x,
                       const TensorSketchMap& map_y, const InputVector& y) {
  if (map_x.fingerprint() != map_y.fingerprint()) {
    throw IncompatibleSketchError(
        "estimate_kernel: feature vectors come from different maps");
  }
  return estimate_kernel(map_x, x, y);
}

}  // namespace tsketch
