#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tsketch {

/// One (index, value) pair of a sparse vector. Indices are 0-based.
struct SparseEntry {
  std::size_t index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// A point of R^d held densely or as a sorted list of nonzeros.
///
/// Invariants: dim >= 1; dense storage has exactly dim values; sparse indices
/// are strictly increasing and < dim; every value is finite.
class InputVector {
 public:
  /// Dense vector; dim = values.size(). Throws on empty or non-finite input.
  static InputVector dense(std::vector<double> values);
  /// Sparse vector. Throws ParameterError on unsorted, duplicate or
  /// out-of-range indices and on non-finite values.
  static InputVector sparse(std::size_t dim, std::vector<SparseEntry> entries);

  std::size_t dim() const noexcept { return dim_; }
  bool is_sparse() const noexcept { return sparse_; }

  /// Stored entries: all values when dense, the entry list when sparse.
  std::size_t stored_count() const noexcept {
    return sparse_ ? entries_.size() : values_.size();
  }

  /// Visits (index, value) for every nonzero in increasing index order.
  /// Dense and sparse forms of one vector produce the same visit sequence.
  template <typename F>
  void for_each_nonzero(F&& f) const {
    if (sparse_) {
      for (const auto& e : entries_) {
        if (e.value != 0.0) f(e.index, e.value);
      }
    } else {
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] != 0.0) f(i, values_[i]);
      }
    }
  }

  std::size_t nnz() const;
  double squared_norm() const;
  double dot(const InputVector& other) const;
  std::vector<double> to_dense() const;
  std::vector<SparseEntry> to_sparse_entries() const;

  /// alpha * x, keeping the storage kind.
  InputVector scaled(double alpha) const;

  /// Mathematical equality (same dim and same nonzeros), ignoring storage kind.
  bool same_values(const InputVector& other) const;

 private:
  InputVector() = default;

  std::size_t dim_ = 0;
  bool sparse_ = false;
  std::vector<double> values_;
  std::vector<SparseEntry> entries_;
};

}  // namespace tsketch
