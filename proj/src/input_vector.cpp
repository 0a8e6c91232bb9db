#include "tsketch/input_vector.hpp"

#include <cmath>
#include <string>

#include "tsketch/errors.hpp"

namespace tsketch {

InputVector InputVector::dense(std::vector<double> values) {
  if (values.empty()) throw ParameterError("InputVector: dimension must be >= 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ParameterError("InputVector: non-finite value at index " +
                           std::to_string(i));
    }
  }
  InputVector v;
  v.dim_ = values.size();
  v.sparse_ = false;
  v.values_ = std::move(values);
  return v;
}

InputVector InputVector::sparse(std::size_t dim,
                                std::vector<SparseEntry> entries) {
  if (dim == 0) throw ParameterError("InputVector: dimension must be >= 1");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.index >= dim) {
      throw ParameterError("InputVector: index " + std::to_string(e.index) +
                           " out of range for dimension " + std::to_string(dim));
    }
    if (k > 0 && e.index <= entries[k - 1].index) {
      throw ParameterError("InputVector: sparse indices not strictly increasing");
    }
    if (!std::isfinite(e.value)) {
      throw ParameterError("InputVector: non-finite value at index " +
                           std::to_string(e.index));
    }
  }
  InputVector v;
  v.dim_ = dim;
  v.sparse_ = true;
  v.entries_ = std::move(entries);
  return v;
}

std::size_t InputVector::nnz() const {
  std::size_t n = 0;
  for_each_nonzero([&](std::size_t, double) { ++n; });
  return n;
}

double InputVector::squared_norm() const {
  double s = 0.0;
  for_each_nonzero([&](std::size_t, double v) { s += v * v; });
  return s;
}

double InputVector::dot(const InputVector& other) const {
  if (dim_ != other.dim_) {
    throw DimensionError("dot: dimensions " + std::to_string(dim_) + " and " +
                         std::to_string(other.dim_) + " differ");
  }
  if (!other.sparse_) {
    double s = 0.0;
    for_each_nonzero([&](std::size_t i, double v) { s += v * other.values_[i]; });
    return s;
  }
  if (!sparse_) return other.dot(*this);
  double s = 0.0;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < entries_.size() && b < other.entries_.size()) {
    if (entries_[a].index < other.entries_[b].index) {
      ++a;
    } else if (entries_[a].index > other.entries_[b].index) {
      ++b;
    } else {
      s += entries_[a++].value * other.entries_[b++].value;
    }
  }
  return s;
}

std::vector<double> InputVector::to_dense() const {
  if (!sparse_) return values_;
  std::vector<double> out(dim_, 0.0);
  for (const auto& e : entries_) out[e.index] = e.value;
  return out;
}

std::vector<SparseEntry> InputVector::to_sparse_entries() const {
  std::vector<SparseEntry> out;
  for_each_nonzero([&](std::size_t i, double v) { out.push_back({i, v}); });
  return out;
}

InputVector InputVector::scaled(double alpha) const {
  InputVector v = *this;
  for (auto& x : v.values_) x *= alpha;
  for (auto& e : v.entries_) e.value *= alpha;
  return v;
}

bool InputVector::same_values(const InputVector& other) const {
  return dim_ == other.dim_ && to_sparse_entries() == other.to_sparse_entries();
}

}  // namespace tsketch
