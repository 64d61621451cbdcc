#pragma once

#include "aaprox/types.hpp"

#include <cstddef>

namespace aaprox {

/// Thin QR factorization of a sliding window of columns.
///
/// Columns are stored oldest first. Appending uses Gram-Schmidt with one
/// reorthogonalization pass; removing the oldest column restores the
/// triangular factor with Givens rotations. Both updates cost O(k^2 + k n)
/// for k stored columns of length n.
class QrWindow {
 public:
  enum class AppendStatus { ok, rank_deficient };

  /// Work counters. `vector_ops` counts length-n kernels (dot, axpy, scale,
  /// rotation of a column pair); `full_factorizations` counts from-scratch
  /// rebuilds.
  struct Stats {
    std::size_t vector_ops = 0;
    std::size_t full_factorizations = 0;
  };

  QrWindow(std::size_t dimension, std::size_t capacity);

  /// Drops the oldest column if the window is full, then appends `column`.
  AppendStatus push(const Vector& column);

  /// Appends `column`. When its component orthogonal to the stored columns
  /// is below 1e-14 times the Frobenius norm of the enlarged matrix, the
  /// window is left unchanged and `rank_deficient` is returned.
  AppendStatus append(const Vector& column);

  void remove_oldest();
  void clear();

  /// Rebuilds from scratch (columns oldest first). Stops at the first column
  /// that would make the factor rank deficient and returns its index, or the
  /// column count when all fit.
  std::size_t rebuild(const Matrix& columns);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t dimension() const { return dimension_; }
  bool full() const { return size_ == capacity_; }

  /// Q factor, n x k with orthonormal columns.
  Matrix q() const;
  /// Upper-triangular R factor, k x k.
  Matrix r() const;
  /// Q * R, i.e. the stored columns oldest first.
  Matrix reconstruct() const;

  /// Squared Frobenius norm of the stored column matrix (equal to that of R).
  double frobenius_norm_sq() const;

  /// Solves (R^T R + lambda I) z = rhs using only the k x k factor.
  Vector solve_gram(const Vector& rhs, double lambda) const;

  /// Coefficients c (oldest first) minimizing ||columns * c - v||.
  Vector least_squares(const Vector& v) const;

  const Stats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

 private:
  void ensure_allocated(std::size_t columns);

  std::size_t dimension_;
  std::size_t capacity_;
  std::size_t size_ = 0;
  Matrix q_;
  Matrix r_;
  Stats stats_;
};

}  // namespace aaprox
