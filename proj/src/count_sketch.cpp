#include "tsketch/count_sketch.hpp"

#include <string>

#include "tsketch/errors.hpp"
#include "tsketch/fft.hpp"

namespace tsketch {

void count_sketch_accumulate(const InputVector& x, const KWiseHash& h,
                             const SignHash& s, std::span<double> out) {
  if (out.size() != h.range()) {
    throw DimensionError("count_sketch: output length " +
                         std::to_string(out.size()) +
                         " does not match hash range " +
                         std::to_string(h.range()));
  }
  x.for_each_nonzero([&](std::size_t i, double v) {
    out[h(i)] += s(i) > 0 ? v : -v;
  });
}

CountSketchVector count_sketch(const InputVector& x, const KWiseHash& h,
                               const SignHash& s) {
  if (!is_power_of_two(h.range())) {
    throw DimensionError("count_sketch: sketch length " +
                         std::to_string(h.range()) + " is not a power of two");
  }
  CountSketchVector out;
  out.values.assign(h.range(), 0.0);
  out.origin_dim = x.dim();
  out.hash_ids = {h.fingerprint(), s.fingerprint()};
  count_sketch_accumulate(x, h, s, out.values);
  return out;
}

double count_sketch_inner(const CountSketchVector& cx,
                          const CountSketchVector& cy) {
  if (!(cx.hash_ids == cy.hash_ids)) {
    throw IncompatibleSketchError(
        "count_sketch_inner: sketches were built from different hash pairs");
  }
  if (cx.values.size() != cy.values.size()) {
    throw DimensionError("count_sketch_inner: sketch lengths differ");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < cx.values.size(); ++k) {
    s += cx.values[k] * cy.values[k];
  }
  return s;
}

double ams_sketch(const InputVector& x, const SignHash& s) {
  double z = 0.0;
  x.for_each_nonzero([&](std::size_t i, double v) { z += s(i) > 0 ? v : -v; });
  return z;
}

}  // namespace tsketch
