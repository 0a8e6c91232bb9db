#pragma once

// Tensor Sketch: a random feature map f: R^d -> R^D with
// E<f(x), f(y)> = (c + <x, y>)^p, computed as the Count Sketch of the p-fold
// tensor power of x under the composed hashes
//   H(i_1..i_p) = (h_1(i_1) + ... + h_p(i_p)) mod D,
//   S(i_1..i_p) = s_1(i_1) * ... * s_p(i_p),
// without materializing the d^p-dimensional tensor: the p Count Sketches are
// multiplied pointwise in the Fourier domain and transformed back.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tsketch/fft.hpp"
#include "tsketch/hashing.hpp"
#include "tsketch/input_vector.hpp"

namespace tsketch {

/// Parameters of a polynomial-kernel feature map.
struct SketchConfig {
  std::size_t input_dim = 1;    // d
  std::size_t feature_dim = 2;  // D, a power of two >= 2
  unsigned degree = 1;          // p
  double offset = 0.0;          // c >= 0
  std::uint64_t seed = 0;

  /// Throws DimensionError / ParameterError on an invalid combination.
  void validate() const;
};

/// Exact kernel value (c + <x, y>)^p.
double polynomial_kernel(const InputVector& x, const InputVector& y,
                         unsigned degree, double offset);

/// Appends sqrt(c) at index d so that <aug(x), aug(y)> = c + <x, y>.
/// c == 0 returns x unchanged. Throws ParameterError when c < 0.
InputVector augment(const InputVector& x, double c);

/// Row-major n x D matrix of feature vectors.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values).subspan(r * cols, cols);
  }
  std::span<double> row(std::size_t r) {
    return std::span<double>(values).subspan(r * cols, cols);
  }
};

class TensorSketchMap {
 public:
  /// Reusable scratch for apply_into(); one per thread.
  struct Workspace {
    std::vector<double> sketch;  // p Count Sketches, back to back
    std::vector<double> direct;
    std::vector<double> direct_next;
    std::vector<Complex> product;
    std::vector<Complex> factor;
  };

  /// Samples 2p hashes from config.seed: bucket hash j uses stream 2j,
  /// sign hash j uses stream 2j + 1.
  explicit TensorSketchMap(const SketchConfig& config);

  /// Map over caller-chosen hashes (tests pin hash values this way).
  /// Requires p bucket hashes of range D and p sign hashes.
  TensorSketchMap(const SketchConfig& config, std::vector<KWiseHash> buckets,
                  std::vector<SignHash> signs);

  const SketchConfig& config() const noexcept { return config_; }
  std::size_t effective_dim() const noexcept { return effective_dim_; }
  std::span<const KWiseHash> bucket_hashes() const noexcept { return buckets_; }
  std::span<const SignHash> sign_hashes() const noexcept { return signs_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// f(x). Throws DimensionError when x.dim() != config().input_dim.
  /// For p >= 2 the p sketches are combined in the Fourier domain, except
  /// when the product of their bucket supports is at most D: then they are
  /// convolved directly, which is exact for inputs such as basis vectors.
  std::vector<double> apply(const InputVector& x) const;

  /// f(x) written into `out` (length D) reusing `ws`; same numbers as apply().
  void apply_into(const InputVector& x, std::span<double> out,
                  Workspace& ws) const;

  /// Feature rows for a batch, parallel over rows with OpenMP.
  FeatureMatrix apply_batch(std::span<const InputVector> xs) const;
  /// Single-threaded reference for apply_batch; bit-identical output.
  FeatureMatrix apply_batch_serial(std::span<const InputVector> xs) const;

  /// Arithmetic work model for one vector on the Fourier path: p * nnz hash
  /// evaluations plus (p + 1) transforms of (D/2) log2 D butterflies and
  /// p * D products. The p = 1 path skips the transforms.
  std::size_t work_per_vector(std::size_t nnz) const noexcept;

 private:
  void check_input(const InputVector& x) const;

  SketchConfig config_;
  std::size_t effective_dim_;
  std::vector<KWiseHash> buckets_;
  std::vector<SignHash> signs_;
  std::uint64_t fingerprint_;
};

/// <f(x), f(y)> under one shared map.
double estimate_kernel(const TensorSketchMap& map, const InputVector& x,
                       const InputVector& y);

/// <f_x(x), f_y(y)>. Throws IncompatibleSketchError unless the two maps carry
/// identical randomness.
double estimate_kernel(const TensorSketchMap& map_x, const InputVector& x,
                       const TensorSketchMap& map_y, const InputVector& y);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace tsketch
