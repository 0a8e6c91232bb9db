#include "tsketch/hashing.hpp"

#include <utility>

#include "tsketch/errors.hpp"

namespace tsketch {

std::uint64_t draw_field_element(SplitMix64& rng) noexcept {
  for (;;) {
    const std::uint64_t v = rng.next() >> 3;
    if (v < kMersenne61) return v;
  }
}

KWiseHash::KWiseHash(std::vector<std::uint64_t> coefficients,
                     std::uint64_t range)
    : coefficients_(std::move(coefficients)), range_(range) {
  if (coefficients_.size() < 2) {
    throw ParameterError("KWiseHash: independence k must be >= 2");
  }
  if (range_ < 2 || range_ > (std::uint64_t{1} << 32)) {
    throw ParameterError("KWiseHash: range must lie in [2, 2^32]");
  }
  for (std::uint64_t a : coefficients_) {
    if (a >= kMersenne61) {
      throw ParameterError("KWiseHash: coefficient outside [0, 2^61 - 1)");
    }
  }
}

KWiseHash KWiseHash::sample(std::uint64_t seed, std::uint64_t stream_id,
                            unsigned k, std::uint64_t range) {
  if (k < 2) throw ParameterError("sample_kwise: k must be >= 2");
  if (range < 2) throw ParameterError("sample_kwise: range must be >= 2");
  SplitMix64 rng = SplitMix64::for_stream(seed, stream_id);
  std::vector<std::uint64_t> coefficients(k);
  for (auto& a : coefficients) a = draw_field_element(rng);
  return KWiseHash(std::move(coefficients), range);
}

std::uint64_t KWiseHash::fingerprint() const noexcept {
  std::uint64_t h = SplitMix64::mix(range_);
  for (std::uint64_t a : coefficients_) {
    h = SplitMix64::mix(h ^ (a + SplitMix64::kGamma + (h << 6) + (h >> 2)));
  }
  return h;
}

SignHash::SignHash(KWiseHash base) : base_(std::move(base)) {
  if (base_.independence() != 4 || base_.range() != 2) {
    throw ParameterError("SignHash: base hash must be 4-wise with range 2");
  }
}

SignHash SignHash::sample(std::uint64_t seed, std::uint64_t stream_id) {
  return SignHash(KWiseHash::sample(seed, stream_id, 4, 2));
}

}  // namespace tsketch
