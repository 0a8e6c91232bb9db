#pragma once

// Radix-2 iterative Cooley-Tukey FFT over double-precision complex numbers.
// Lengths are restricted to powers of two.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tsketch {

using Complex = std::complex<double>;

constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

/// Tolerance on the imaginary residue left by ifft on a spectrum that should
/// be Hermitian, relative to max(1, largest real magnitude).
inline constexpr double kImagResidueTolerance = 1e-9;

/// Transformed representation of a real length-D sequence.
struct Spectrum {
  std::vector<Complex> values;

  std::size_t size() const noexcept { return values.size(); }
};

/// Precomputed bit-reversal permutation and twiddle table for one length.
/// Immutable after construction; safe to share between threads.
class FftPlan {
 public:
  /// Throws DimensionError unless n is a power of two.
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// In-place forward transform X_k = sum_j x_j e^{-2 pi i jk/n}.
  void forward(std::span<Complex> data) const;
  /// In-place inverse transform, including the 1/n factor.
  void inverse(std::span<Complex> data) const;

  /// Butterfly count of one transform: (n/2) log2 n.
  std::size_t butterflies() const noexcept;

 private:
  void transform(std::span<Complex> data, bool invert) const;

  std::size_t n_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<Complex> twiddles_;  // e^{-2 pi i k/n}, k < n/2
};

/// Plans for one length, built once and shared; lengths are cached per thread.
const FftPlan& plan_for(std::size_t n);

Spectrum fft(std::span<const double> real_input);

/// Inverse transform of a spectrum known to come from real data. Throws
/// NumericError when an output entry keeps an imaginary part above
/// kImagResidueTolerance (relative), which signals a non-Hermitian input.
std::vector<double> ifft(const Spectrum& spectrum);

/// out_k = sum_{i + j == k mod D} a_i b_j, via fft, pointwise product, ifft.
std::vector<double> circular_convolve(std::span<const double> a,
                                      std::span<const double> b);

/// Extracts real parts of `data` into `out` after the residue check above.
void take_real_checked(std::span<const Complex> data, std::span<double> out);

}  // namespace tsketch
