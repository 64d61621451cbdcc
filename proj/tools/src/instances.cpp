#include "aaprox_tools/instances.hpp"

#include <Eigen/QR>

#include <cmath>
#include <random>

namespace aaprox::tools {
namespace {

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  }
  return out;
}

Matrix orthonormal_columns(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rows, cols, rng));
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

Vector log_spaced(Eigen::Index count, double first, double last) {
  Vector out(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double t = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
    out(i) = first * std::pow(last / first, t);
  }
  return out;
}

void require_shape(Eigen::Index rows, Eigen::Index cols) {
  if (rows < 1 || cols < 1) throw ConfigError("instance dimensions must be positive");
}

}  // namespace

Dataset generate_kl_instance(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  require_shape(rows, cols);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = unif(rng);
  }
  Vector b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    do {
      b(i) = unif(rng);
    } while (b(i) == 0.0);
  }
  return {DataMatrix(std::move(a)), std::move(b)};
}

Matrix conditioned_matrix(Eigen::Index rows, Eigen::Index cols, double condition, std::uint64_t seed) {
  require_shape(rows, cols);
  if (rows < cols) throw ConfigError("conditioned_matrix needs rows >= cols");
  if (!(condition >= 1.0)) throw ConfigError("condition must be >= 1");
  std::mt19937_64 rng(seed);
  const Matrix u = orthonormal_columns(rows, cols, rng);
  const Matrix v = orthonormal_columns(cols, cols, rng);
  const double top = std::sqrt(static_cast<double>(rows));
  const Vector s = log_spaced(cols, top, top / condition);
  return u * s.asDiagonal() * v.transpose();
}

Dataset generate_logreg_instance(Eigen::Index rows, Eigen::Index cols, double condition, std::uint64_t seed) {
  Matrix a = conditioned_matrix(rows, cols, condition, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::normal_distribution<double> normal;
  Vector x_true(cols);
  for (Eigen::Index j = 0; j < cols; ++j) x_true(j) = unif(rng);
  const Vector scores = a * x_true;
  Vector labels(rows);
  for (Eigen::Index i = 0; i < rows; ++i) labels(i) = scores(i) + 0.1 * normal(rng) >= 0.0 ? 1.0 : -1.0;
  return {DataMatrix(std::move(a)), std::move(labels)};
}

Dataset generate_nnls_instance(Eigen::Index rows, Eigen::Index cols, double condition, std::uint64_t seed) {
  Matrix a = conditioned_matrix(rows, cols, condition, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  Vector b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) b(i) = normal(rng);
  return {DataMatrix(std::move(a)), std::move(b)};
}

QuadraticInstance generate_quadratic_instance(Eigen::Index n, Eigen::Index rank, double lo, double hi,
                                              std::uint64_t seed) {
  require_shape(n, n);
  if (rank < 1 || rank > n) throw ConfigError("rank must lie in [1, n]");
  if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError("eigenvalue range must satisfy 0 < lo <= hi");
  std::mt19937_64 rng(seed);
  const Matrix v = orthonormal_columns(n, n, rng);
  Vector eig = Vector::Zero(n);
  eig.head(rank) = log_spaced(rank, hi, lo);
  QuadraticInstance out;
  out.hessian = v * eig.asDiagonal() * v.transpose();
  out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
  // Minimizer in the range of H, the limit of gradient methods from 0.
  const Matrix basis = v.leftCols(rank);
  Vector coeffs(rank);
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < rank; ++i) coeffs(i) = normal(rng);
  out.minimizer = basis * coeffs;
  out.linear = out.hessian * out.minimizer;
  return out;
}

}  // namespace aaprox::tools
