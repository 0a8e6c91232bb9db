#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tsketch/hashing.hpp"
#include "tsketch/input_vector.hpp"

namespace tsketch {

/// Identifies the (bucket hash, sign hash) pair a sketch was built with.
struct HashPairId {
  std::uint64_t bucket = 0;
  std::uint64_t sign = 0;

  friend bool operator==(const HashPairId&, const HashPairId&) = default;
};

/// (Cx)_k = sum_{i : h(i) = k} s(i) x_i, with its provenance.
struct CountSketchVector {
  std::vector<double> values;
  std::size_t origin_dim = 0;
  HashPairId hash_ids;
};

/// Adds s(i) x_i into out[h(i)] for every nonzero of x. Work is O(nnz(x)).
/// `out` must have length h.range(); it is accumulated into, not cleared.
void count_sketch_accumulate(const InputVector& x, const KWiseHash& h,
                             const SignHash& s, std::span<double> out);

/// Count Sketch of x. Throws DimensionError unless h.range() is a power of two.
CountSketchVector count_sketch(const InputVector& x, const KWiseHash& h,
                               const SignHash& s);

/// <Cx, Cy>. Throws IncompatibleSketchError unless both sketches share the
/// same hash pair, DimensionError on length mismatch.
double count_sketch_inner(const CountSketchVector& cx,
                          const CountSketchVector& cy);

/// AMS sketch Z(x) = sum_i s(i) x_i.
double ams_sketch(const InputVector& x, const SignHash& s);

}  // namespace tsketch
