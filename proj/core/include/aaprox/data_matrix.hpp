#pragma once

#include "aaprox/types.hpp"

#include <Eigen/SparseCore>

#include <cstdint>
#include <variant>

namespace aaprox {

/// Row-oriented data matrix, dense or sparse.
class DataMatrix {
 public:
  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  DataMatrix() = default;
  explicit DataMatrix(Matrix dense) : storage_(std::move(dense)) {}
  explicit DataMatrix(Sparse sparse) : storage_(std::move(sparse)) {}

  Eigen::Index rows() const;
  Eigen::Index cols() const;
  bool is_sparse() const { return std::holds_alternative<Sparse>(storage_); }

  /// A x
  Vector multiply(const Vector& x) const;
  /// A^T v
  Vector multiply_transpose(const Vector& v) const;

  Matrix to_dense() const;
  const Matrix* dense() const { return std::get_if<Matrix>(&storage_); }
  const Sparse* sparse() const { return std::get_if<Sparse>(&storage_); }

  bool nonnegative() const;
  /// max_j sum_i |A_ij|
  double max_column_l1() const;
  /// Whether row i has at least one nonzero entry, per row.
  std::vector<bool> nonzero_rows() const;

 private:
  std::variant<Matrix, Sparse> storage_;
};

struct PowerIterationResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// ||A||_2^2 by power iteration on A^T A from a seeded start vector.
PowerIterationResult operator_norm_sq(const DataMatrix& a, double rel_tol = 1e-6,
                                      std::size_t max_iters = 500,
                                      std::uint64_t seed = 0x5eedULL);

}  // namespace aaprox
