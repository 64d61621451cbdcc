#pragma once

#include <aaprox/data_matrix.hpp>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace aaprox::tools {

/// Data matrix with one target per row (labels or measurements).
struct Dataset {
  DataMatrix a;
  Vector b;
};

/// Malformed input file; the message carries the line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `label idx:val idx:val ...` with 1-based, strictly increasing indices.
/// Labels 0/1 are mapped to -1/+1. The column count is the largest index
/// seen unless `min_cols` is larger.
Dataset parse_libsvm(std::istream& in, Eigen::Index min_cols = 0);
Dataset parse_libsvm_file(const std::string& path, Eigen::Index min_cols = 0);

/// Writes nonzero entries with 17 significant digits.
void write_libsvm(std::ostream& out, const Dataset& data);

/// Comma separated rows `target,a_1,...,a_n`, optional header row.
Dataset parse_dense_csv(std::istream& in, bool has_header);
Dataset parse_dense_csv_file(const std::string& path, bool has_header);

}  // namespace aaprox::tools
