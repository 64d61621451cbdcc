#include "aaprox/data_matrix.hpp"

#include <cmath>
#include <random>

namespace aaprox {

Eigen::Index DataMatrix::rows() const {
  return std::visit([](const auto& m) { return static_cast<Eigen::Index>(m.rows()); }, storage_);
}

Eigen::Index DataMatrix::cols() const {
  return std::visit([](const auto& m) { return static_cast<Eigen::Index>(m.cols()); }, storage_);
}

Vector DataMatrix::multiply(const Vector& x) const {
  if (x.size() != cols()) throw ConfigError("DataMatrix::multiply: dimension mismatch");
  return std::visit([&](const auto& m) -> Vector { return m * x; }, storage_);
}

Vector DataMatrix::multiply_transpose(const Vector& v) const {
  if (v.size() != rows()) throw ConfigError("DataMatrix::multiply_transpose: dimension mismatch");
  return std::visit([&](const auto& m) -> Vector { return m.transpose() * v; }, storage_);
}

Matrix DataMatrix::to_dense() const {
  if (const auto* d = dense()) return *d;
  return Matrix(*sparse());
}

bool DataMatrix::nonnegative() const {
  if (const auto* d = dense()) return (d->array() >= 0.0).all();
  const auto& s = *sparse();
  for (Eigen::Index k = 0; k < s.nonZeros(); ++k) {
    if (!(s.valuePtr()[k] >= 0.0)) return false;
  }
  return true;
}

double DataMatrix::max_column_l1() const {
  if (const auto* d = dense()) return d->cwiseAbs().colwise().sum().maxCoeff();
  const auto& s = *sparse();
  Vector sums = Vector::Zero(s.cols());
  for (Eigen::Index i = 0; i < s.outerSize(); ++i) {
    for (Sparse::InnerIterator it(s, i); it; ++it) sums(it.col()) += std::abs(it.value());
  }
  return sums.size() > 0 ? sums.maxCoeff() : 0.0;
}

std::vector<bool> DataMatrix::nonzero_rows() const {
  std::vector<bool> out(static_cast<std::size_t>(rows()), false);
  if (const auto* d = dense()) {
    for (Eigen::Index i = 0; i < d->rows(); ++i) out[static_cast<std::size_t>(i)] = (d->row(i).array() != 0.0).any();
    return out;
  }
  const auto& s = *sparse();
  for (Eigen::Index i = 0; i < s.outerSize(); ++i) {
    for (Sparse::InnerIterator it(s, i); it; ++it) {
      if (it.value() != 0.0) {
        out[static_cast<std::size_t>(i)] = true;
        break;
      }
    }
  }
  return out;
}

PowerIterationResult operator_norm_sq(const DataMatrix& a, double rel_tol, std::size_t max_iters,
                                      std::uint64_t seed) {
  if (a.rows() == 0 || a.cols() == 0) throw ConfigError("operator_norm_sq: empty matrix");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Vector v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = unif(rng);
  v.normalize();

  PowerIterationResult out;
  double estimate = 0.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    Vector w = a.multiply_transpose(a.multiply(v));
    const double next = v.dot(w);  // Rayleigh quotient, v normalized
    const double norm = w.norm();
    out.iterations = it;
    if (!(norm > 0.0)) {
      out.value = 0.0;
      out.converged = false;
      return out;
    }
    v = w / norm;
    if (it > 1 && std::abs(next - estimate) <= rel_tol * std::abs(next)) {
      out.value = next;
      out.converged = true;
      return out;
    }
    estimate = next;
  }
  out.value = estimate;
  return out;
}

}  // namespace aaprox
