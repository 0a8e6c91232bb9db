#include "tsketch/fft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <string>

#include "tsketch/errors.hpp"

namespace tsketch {

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) {
    throw DimensionError("FFT length " + std::to_string(n) +
                         " is not a power of two");
  }
  const unsigned bits = static_cast<unsigned>(std::countr_zero(n));
  bit_reverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddles_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle =
        -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddles_[k] = Complex(std::cos(angle), std::sin(angle));
  }
}

std::size_t FftPlan::butterflies() const noexcept {
  return (n_ / 2) * static_cast<std::size_t>(std::countr_zero(n_));
}

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }

void FftPlan::inverse(std::span<Complex> data) const {
  transform(data, true);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v *= scale;
}

void FftPlan::transform(std::span<Complex> data, bool invert) const {
  if (data.size() != n_) {
    throw DimensionError("FFT buffer length " + std::to_string(data.size()) +
                         " does not match plan length " + std::to_string(n_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bit_reverse_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = twiddles_[k * stride];
        if (invert) w = std::conj(w);
        const Complex u = data[start + k];
        const Complex t = w * data[start + k + half];
        data[start + k] = u + t;
        data[start + k + half] = u - t;
      }
    }
  }
}

const FftPlan& plan_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
  }
  return *it->second;
}

Spectrum fft(std::span<const double> real_input) {
  const FftPlan& plan = plan_for(real_input.size());
  Spectrum out;
  out.values.assign(real_input.begin(), real_input.end());
  plan.forward(out.values);
  return out;
}

void take_real_checked(std::span<const Complex> data, std::span<double> out) {
  if (out.size() != data.size()) {
    throw DimensionError("take_real_checked: output length mismatch");
  }
  double scale = 1.0;
  for (const auto& v : data) scale = std::max(scale, std::abs(v.real()));
  const double limit = kImagResidueTolerance * scale;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!(std::abs(data[i].imag()) <= limit)) {
      throw NumericError("ifft: imaginary residue " +
                         std::to_string(data[i].imag()) + " at index " +
                         std::to_string(i) + " exceeds tolerance");
    }
    out[i] = data[i].real();
  }
}

std::vector<double> ifft(const Spectrum& spectrum) {
  const FftPlan& plan = plan_for(spectrum.size());
  std::vector<Complex> buffer = spectrum.values;
  plan.inverse(buffer);
  std::vector<double> out(buffer.size());
  take_real_checked(buffer, out);
  return out;
}

std::vector<double> circular_convolve(std::span<const double> a,
                                      std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("circular_convolve: lengths " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  Spectrum fa = fft(a);
  const Spectrum fb = fft(b);
  for (std::size_t k = 0; k < fa.size(); ++k) fa.values[k] *= fb.values[k];
  return ifft(fa);
}

}  // namespace tsketch
