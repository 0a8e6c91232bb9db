#pragma once

// Carter-Wegman polynomial hash families over the Mersenne field
// GF(2^61 - 1). A random polynomial of degree k-1 gives a k-wise independent
// family; outputs are folded into [0, range) with a plain `mod range`
// (per-bucket bias at most range / 2^61).

#include <cstdint>
#include <span>
#include <vector>

namespace tsketch {

__extension__ using uint128 = unsigned __int128;

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Reduce a 128-bit value modulo 2^61 - 1 by shift-and-add.
constexpr std::uint64_t mod_mersenne61(uint128 v) noexcept {
  // 2^61 == 1 (mod M): split into 61-bit limbs and add them.
  const std::uint64_t a0 = static_cast<std::uint64_t>(v) & kMersenne61;
  const std::uint64_t a1 = static_cast<std::uint64_t>(v >> 61) & kMersenne61;
  const std::uint64_t a2 = static_cast<std::uint64_t>(v >> 122);
  std::uint64_t r = a0 + a1 + a2;
  r = (r & kMersenne61) + (r >> 61);
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

constexpr std::uint64_t mul_mod_mersenne61(std::uint64_t a,
                                           std::uint64_t b) noexcept {
  return mod_mersenne61(static_cast<uint128>(a) * b);
}

/// splitmix64 (Steele, Lea, Flood 2014). Fully specified so that coefficient
/// draws are reproducible across platforms and implementations.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  /// The splitmix64 output finalizer applied to a single word.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  /// Generator for stream `stream_id` under master `seed`. Streams start from
  /// decorrelated states: state = seed XOR mix(stream_id + gamma).
  static constexpr SplitMix64 for_stream(std::uint64_t seed,
                                         std::uint64_t stream_id) noexcept {
    return SplitMix64(seed ^ mix(stream_id + kGamma));
  }

 private:
  std::uint64_t state_;
};

/// Uniform draw from [0, 2^61 - 1): top 61 bits of a splitmix64 word, with
/// the single out-of-range value rejected.
std::uint64_t draw_field_element(SplitMix64& rng) noexcept;

/// h(i) = ((sum_t a_t i^t) mod M) mod range, a_t in [0, M).
class KWiseHash {
 public:
  /// Wraps explicit coefficients (a_0, ..., a_{k-1}). Throws ParameterError
  /// when k < 2, range < 2, range > 2^32 or a coefficient is not in [0, M).
  KWiseHash(std::vector<std::uint64_t> coefficients, std::uint64_t range);

  /// Deterministic draw keyed by (seed, stream_id).
  static KWiseHash sample(std::uint64_t seed, std::uint64_t stream_id,
                          unsigned k, std::uint64_t range);

  /// Polynomial value in the field, before range folding.
  std::uint64_t field_value(std::uint64_t i) const noexcept {
    const std::uint64_t x = i >= kMersenne61 ? i % kMersenne61 : i;
    std::uint64_t acc = coefficients_.back();
    for (std::size_t t = coefficients_.size() - 1; t-- > 0;) {
      acc = mul_mod_mersenne61(acc, x) + coefficients_[t];
      acc = acc >= kMersenne61 ? acc - kMersenne61 : acc;
    }
    return acc;
  }

  std::uint64_t operator()(std::uint64_t i) const noexcept {
    return field_value(i) % range_;
  }

  unsigned independence() const noexcept {
    return static_cast<unsigned>(coefficients_.size());
  }
  std::uint64_t range() const noexcept { return range_; }
  std::span<const std::uint64_t> coefficients() const noexcept {
    return coefficients_;
  }

  /// 64-bit digest of (range, coefficients); equal hashes have equal digests.
  std::uint64_t fingerprint() const noexcept;

  friend bool operator==(const KWiseHash&, const KWiseHash&) = default;

 private:
  std::vector<std::uint64_t> coefficients_;
  std::uint64_t range_;
};

/// s: [d] -> {-1, +1} from the low bit of a 4-wise independent hash.
class SignHash {
 public:
  /// Requires base.independence() == 4 and base.range() == 2.
  explicit SignHash(KWiseHash base);

  static SignHash sample(std::uint64_t seed, std::uint64_t stream_id);

  /// 0 -> +1, 1 -> -1.
  int operator()(std::uint64_t i) const noexcept {
    return base_(i) == 0 ? 1 : -1;
  }

  const KWiseHash& base() const noexcept { return base_; }
  std::uint64_t fingerprint() const noexcept { return base_.fingerprint(); }

  friend bool operator==(const SignHash&, const SignHash&) = default;

 private:
  KWiseHash base_;
};

}  // namespace tsketch
