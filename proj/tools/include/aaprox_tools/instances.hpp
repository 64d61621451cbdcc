#pragma once

#include "aaprox_tools/dataset.hpp"

#include <cstdint>

namespace aaprox::tools {

/// A and b with i.i.d. uniform [0, 1] entries; b is redrawn while zero.
Dataset generate_kl_instance(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// U diag(s) V^T with Haar-like orthonormal U (rows x cols), V (cols x cols)
/// and singular values log-spaced from sqrt(rows) down to
/// sqrt(rows) / condition.
Matrix conditioned_matrix(Eigen::Index rows, Eigen::Index cols, double condition, std::uint64_t seed);

/// Conditioned features and labels sign(A x_true + 0.1 noise).
Dataset generate_logreg_instance(Eigen::Index rows, Eigen::Index cols, double condition, std::uint64_t seed);

/// Conditioned features and standard normal targets, so that the
/// nonnegativity constraint is active at the solution.
Dataset generate_nnls_instance(Eigen::Index rows, Eigen::Index cols, double condition, std::uint64_t seed);

/// Convex quadratic 0.5 x^T H x - c^T x.
struct QuadraticInstance {
  Matrix hessian;
  Vector linear;
  Vector minimizer;
};

/// H = V diag(e) V^T with eigenvalues log-spaced in [lo, hi] (the first
/// `rank` of them; the rest zero) and c = H x_true, so the system is
/// consistent.
QuadraticInstance generate_quadratic_instance(Eigen::Index n, Eigen::Index rank, double lo, double hi,
                                              std::uint64_t seed);

}  // namespace aaprox::tools
