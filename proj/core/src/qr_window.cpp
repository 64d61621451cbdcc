#include "aaprox/qr_window.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Jacobi>

#include <algorithm>
#include <cmath>

namespace aaprox {

namespace {
constexpr double kRankTolerance = 1e-14;
}

QrWindow::QrWindow(std::size_t dimension, std::size_t capacity)
    : dimension_(dimension), capacity_(capacity) {
  if (capacity == 0) throw ConfigError("QrWindow capacity must be positive");
}

void QrWindow::ensure_allocated(std::size_t columns) {
  const auto have = static_cast<std::size_t>(q_.cols());
  if (columns <= have) return;
  std::size_t grow = std::max<std::size_t>(4, 2 * have);
  grow = std::min(std::max(grow, columns), capacity_);
  const auto n = static_cast<Eigen::Index>(dimension_);
  const auto c = static_cast<Eigen::Index>(grow);
  Matrix q = Matrix::Zero(n, c);
  Matrix r = Matrix::Zero(c, c);
  if (have > 0) {
    const auto k = static_cast<Eigen::Index>(have);
    q.leftCols(k) = q_;
    r.topLeftCorner(k, k) = r_;
  }
  q_.swap(q);
  r_.swap(r);
}

QrWindow::AppendStatus QrWindow::push(const Vector& column) {
  if (full()) remove_oldest();
  return append(column);
}

QrWindow::AppendStatus QrWindow::append(const Vector& column) {
  if (static_cast<std::size_t>(column.size()) != dimension_) {
    throw ConfigError("QrWindow::append: column length mismatch");
  }
  if (full()) throw ConfigError("QrWindow::append: window is full");
  ensure_allocated(size_ + 1);

  const auto k = static_cast<Eigen::Index>(size_);
  const double fro_after = frobenius_norm_sq() + column.squaredNorm();
  ++stats_.vector_ops;

  Vector v = column;
  Vector h = Vector::Zero(k);
  if (k > 0) {
    const auto q = q_.leftCols(k);
    // Classical Gram-Schmidt, applied twice.
    for (int pass = 0; pass < 2; ++pass) {
      Vector hp = q.transpose() * v;
      v.noalias() -= q * hp;
      h += hp;
      stats_.vector_ops += 2 * size_;
    }
  }
  const double rho = v.norm();
  ++stats_.vector_ops;
  if (!(rho > kRankTolerance * std::sqrt(fro_after))) {
    return AppendStatus::rank_deficient;
  }
  q_.col(k) = v / rho;
  ++stats_.vector_ops;
  r_.col(k).head(k) = h;
  r_(k, k) = rho;
  ++size_;
  return AppendStatus::ok;
}

void QrWindow::remove_oldest() {
  if (size_ == 0) return;
  const auto k = static_cast<Eigen::Index>(size_);
  // Shift columns left; the leading k x (k-1) block becomes upper Hessenberg.
  for (Eigen::Index j = 0; j + 1 < k; ++j) r_.col(j).head(k) = r_.col(j + 1).head(k);
  r_.col(k - 1).setZero();

  for (Eigen::Index j = 0; j + 1 < k; ++j) {
    Eigen::JacobiRotation<double> rot;
    double diag = 0.0;
    rot.makeGivens(r_(j, j), r_(j + 1, j), &diag);
    auto rblock = r_.block(0, j, k, k - 1 - j);
    rblock.applyOnTheLeft(j, j + 1, rot.adjoint());
    r_(j, j) = diag;
    r_(j + 1, j) = 0.0;
    auto qblock = q_.leftCols(k);
    qblock.applyOnTheRight(j, j + 1, rot);
    stats_.vector_ops += 2;
  }
  r_.row(k - 1).head(k).setZero();
  q_.col(k - 1).setZero();
  --size_;
}

void QrWindow::clear() {
  if (q_.cols() > 0) {
    q_.setZero();
    r_.setZero();
  }
  size_ = 0;
}

std::size_t QrWindow::rebuild(const Matrix& columns) {
  clear();
  ++stats_.full_factorizations;
  const auto count = static_cast<std::size_t>(columns.cols());
  for (std::size_t j = 0; j < count; ++j) {
    if (full()) return j;
    if (append(columns.col(static_cast<Eigen::Index>(j))) != AppendStatus::ok) return j;
  }
  return count;
}

Matrix QrWindow::q() const { return q_.leftCols(static_cast<Eigen::Index>(size_)); }

Matrix QrWindow::r() const {
  const auto k = static_cast<Eigen::Index>(size_);
  return r_.topLeftCorner(k, k);
}

Matrix QrWindow::reconstruct() const { return q() * r(); }

double QrWindow::frobenius_norm_sq() const {
  const auto k = static_cast<Eigen::Index>(size_);
  return r_.topLeftCorner(k, k).squaredNorm();
}

Vector QrWindow::solve_gram(const Vector& rhs, double lambda) const {
  const auto k = static_cast<Eigen::Index>(size_);
  if (rhs.size() != k) throw ConfigError("QrWindow::solve_gram: rhs length mismatch");
  const auto rf = r_.topLeftCorner(k, k);
  if (lambda == 0.0) {
    Vector w = rf.triangularView<Eigen::Upper>().transpose().solve(rhs);
    return rf.triangularView<Eigen::Upper>().solve(w);
  }
  const Matrix upper = rf.triangularView<Eigen::Upper>();
  Matrix gram = upper.transpose() * upper;
  gram.diagonal().array() += lambda;
  return gram.llt().solve(rhs);
}

Vector QrWindow::least_squares(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != dimension_) {
    throw ConfigError("QrWindow::least_squares: length mismatch");
  }
  const auto k = static_cast<Eigen::Index>(size_);
  const Vector qtv = q_.leftCols(k).transpose() * v;
  return r_.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(qtv);
}

}  // namespace aaprox
