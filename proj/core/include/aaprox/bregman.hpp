#pragma once

#include "aaprox/kernels.hpp"
#include "aaprox/losses.hpp"
#include "aaprox/prox.hpp"
#include "aaprox/trace.hpp"

#include <utility>

namespace aaprox {

/// argmin_x gamma h(x) + D(x, u).
///
/// Closed forms: h = 0 (any kernel), energy kernel (Euclidean prox), and for
/// the Shannon kernel the nonnegative l1 term, l1 term, orthant and simplex
/// indicators. Other pairs throw UnsupportedCombination.
Vector bregman_prox(const Regularizer& h, const Kernel& kernel, double gamma, const Vector& u);

/// Whether bregman_prox has a closed form for the pair.
bool bregman_prox_supported(const Regularizer& h, const Kernel& kernel);

/// minimize f(x) + h(x) over dom phi, with f smooth relative to phi.
struct BregmanProblem {
  LossPtr f;
  Regularizer h = NoRegularizer{};
  KernelPtr kernel;
  double gamma = 0.0;

  Eigen::Index dimension() const { return f->dimension(); }
  double objective(const Vector& x) const;
  /// prox^phi_{gamma h}(grad phi*(y)).
  Vector primal_from_dual(const Vector& y) const;
  /// Throws ConfigError for missing parts, bad step or unsupported pairs.
  void validate() const;
};

struct BpgStep {
  Vector y_next;
  Vector x_next;
};

/// y = grad phi(x) - gamma grad f(x), x_next = prox^phi(grad phi*(y)).
BpgStep bpg_step(const BregmanProblem& problem, const Vector& x);

/// f_test <= f_k + <grad_k, x_bpg - x_k> + D(x_bpg, x_k) / gamma, compared exactly.
bool bregman_descent_check(double f_test, double f_k, const Vector& grad_k, const Vector& x_bpg,
                           const Vector& x_k, double gamma, const Kernel& kernel);

/// Same model bound with h added on both sides:
/// f_test + h_test <= f_k + <grad_k, x_bpg - x_k> + D(x_bpg, x_k) / gamma + h(x_bpg).
bool bregman_composite_check(double objective_test, double f_k, const Vector& grad_k, const Vector& x_bpg,
                             const Vector& x_k, double gamma, const Kernel& kernel, double h_bpg);

/// grad phi(x0), the dual point matching a primal start.
Vector dual_start(const BregmanProblem& problem, const Vector& x0);

/// Plain iteration from x0 in int dom phi, with y_0 = grad phi(x0).
SolveReport run_bpg(const BregmanProblem& problem, const Vector& x0, const RunOptions& options = {});

/// Guarded Anderson acceleration on the dual sequence, from y0 with
/// x_0 = prox^phi(grad phi*(y0)). Kernels whose conjugate gradient is not
/// defined everywhere are rejected with ConfigError. Candidates outside
/// int dom phi are rejected.
SolveReport run_guarded_aa_bpg(const BregmanProblem& problem, const Vector& y0, const RunOptions& options = {});

}  // namespace aaprox
