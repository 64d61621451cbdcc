#pragma once

#include "aaprox/losses.hpp"
#include "aaprox/prox.hpp"
#include "aaprox/trace.hpp"

namespace aaprox {

/// minimize f(x) + h(x).
struct CompositeProblem {
  LossPtr f;
  Regularizer h = NoRegularizer{};

  Eigen::Index dimension() const { return f->dimension(); }
  double objective(const Vector& x) const;
  Vector prox(const Vector& y, double gamma) const { return regularizer_prox(h, y, gamma); }
};

/// prox_{gamma h}(x - gamma grad f(x)).
Vector pga_step(const CompositeProblem& problem, const Vector& x, double gamma);

/// prox_{gamma h}(y) - gamma grad f(prox_{gamma h}(y)).
Vector g_map(const CompositeProblem& problem, const Vector& y, double gamma);

/// f_test <= f_k - gamma/2 * grad_norm_sq, compared exactly.
bool descent_check(double f_test, double f_k, double grad_norm_sq, double gamma);

/// phi_test <= phi_k - ||x_k - x_pga||^2 / (2 gamma), compared exactly.
/// Reduces to descent_check when h = 0.
bool composite_descent_check(double phi_test, double phi_k, double step_norm_sq, double gamma);

SolveReport run_pga(const CompositeProblem& problem, const Vector& x0, double gamma,
                    const RunOptions& options = {});

/// Anderson acceleration of the sequence y_{k+1} = g(y_k), x_k = prox(y_k).
SolveReport run_aa_pga(const CompositeProblem& problem, const Vector& x0, double gamma,
                       const RunOptions& options = {});

/// AA-PGA with a sufficient-descent test on each extrapolated candidate and
/// the plain step as fallback.
SolveReport run_guarded_aa_pga(const CompositeProblem& problem, const Vector& x0, double gamma,
                               const RunOptions& options = {});

/// Accelerated proximal gradient with beta_k = (k - 1)/(k + 2). The reported
/// residual is ||x_{k+1} - v_k|| at the extrapolated point v_k, and
/// `momentum = false` gives plain PGA.
SolveReport run_nesterov_pga(const CompositeProblem& problem, const Vector& x0, double gamma,
                             const RunOptions& options = {}, bool momentum = true);

}  // namespace aaprox
