#pragma once

// Dataset ingestion and feature-matrix emission.
//
// libsvm text: `<label> <index>:<value> ...`, 1-based strictly increasing
// indices, `#` starts a comment. CSV: one dense row per line, optionally with
// the label in the first column. Internally every index is 0-based; the
// conversion happens only in this module.
//
// Binary feature matrix (little-endian regardless of host):
//   u32 magic = 0x54534B31, u64 rows, u64 cols, rows * cols float64 row-major.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tsketch/input_vector.hpp"
#include "tsketch/tensor_sketch.hpp"

namespace tsketch {

struct Dataset {
  std::vector<InputVector> vectors;
  std::optional<std::vector<double>> labels;
  std::size_t dim = 0;

  std::size_t size() const noexcept { return vectors.size(); }
};

/// Throws ParseError (with line number) on malformed tokens, indices <= 0,
/// non-increasing indices, non-finite values, or an index above `forced_dim`.
/// dim = max(largest index, forced_dim, 1) once any row is present.
Dataset parse_libsvm(std::istream& in, std::optional<std::size_t> forced_dim = {});

/// Throws ParseError on ragged rows, malformed numbers and rows wider than
/// `forced_dim`. An empty stream yields an empty Dataset.
Dataset parse_csv_dense(std::istream& in, bool label_first,
                        std::optional<std::size_t> forced_dim = {});

/// Values are written with 17 significant digits (exact double round trip).
/// Missing labels are written as 0.
void write_libsvm(std::ostream& out, const Dataset& data);
void write_csv_dense(std::ostream& out, const Dataset& data, bool label_first);

inline constexpr std::uint32_t kFeatureMatrixMagic = 0x54534B31;
inline constexpr std::size_t kFeatureMatrixHeaderBytes = 4 + 8 + 8;

void write_feature_csv(std::ostream& out, const FeatureMatrix& m);
void write_feature_binary(std::ostream& out, const FeatureMatrix& m);
/// Throws ParseError(0, ...) on a bad magic or truncated payload.
FeatureMatrix read_feature_binary(std::istream& in);

}  // namespace tsketch
