#pragma once

// LIBSVM / SVMlight text format:
//   <label> <index>:<value> <index>:<value> ...
// Indices are 1-based and strictly ascending within a line. Blank lines and
// lines whose first non-blank character is '#' are skipped.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "scfw/kernels.hpp"

namespace scfw {

struct SparseEntry {
  std::size_t index = 0;  // 0-based
  double value = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

struct LibsvmData {
  std::vector<std::vector<SparseEntry>> rows;
  std::vector<double> labels;
  std::size_t n_features = 0;  // largest index seen (1-based), i.e. column count

  /// Dense copy with max(n_features, min_cols) columns.
  DenseMatrix to_dense(std::size_t min_cols = 0) const;
};

/// Throws ParseError carrying the 1-based line number on malformed input.
LibsvmData parse_libsvm(std::istream& in);

/// Writes values with 17 significant digits so that parse_libsvm reads back
/// the same structure.
void write_libsvm(std::ostream& out, const LibsvmData& data);

}  // namespace scfw
