#include "aaprox/bregman.hpp"

#include <algorithm>
#include <cmath>

namespace aaprox {
namespace {

bool is_energy(const Kernel& k) { return dynamic_cast<const EnergyKernel*>(&k) != nullptr; }
bool is_shannon(const Kernel& k) { return dynamic_cast<const ShannonKernel*>(&k) != nullptr; }

}  // namespace

bool bregman_prox_supported(const Regularizer& h, const Kernel& kernel) {
  if (std::holds_alternative<NoRegularizer>(h) || is_energy(kernel)) return true;
  if (!is_shannon(kernel)) return false;
  return std::holds_alternative<L1Norm>(h) || std::holds_alternative<NonnegL1>(h) ||
         std::holds_alternative<NonnegIndicator>(h) || std::holds_alternative<SimplexIndicator>(h);
}

Vector bregman_prox(const Regularizer& h, const Kernel& kernel, double gamma, const Vector& u) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("bregman_prox: step must be positive");
  if (std::holds_alternative<NoRegularizer>(h)) return u;
  if (is_energy(kernel)) return regularizer_prox(h, u, gamma);
  if (is_shannon(kernel)) {
    if (const auto* r = std::get_if<L1Norm>(&h)) return u * std::exp(-gamma * r->weight);
    if (const auto* r = std::get_if<NonnegL1>(&h)) return u * std::exp(-gamma * r->weight);
    if (std::holds_alternative<NonnegIndicator>(h)) return u;
    if (const auto* r = std::get_if<SimplexIndicator>(&h)) {
      const double total = u.sum();
      if (!(total > 0.0)) throw DomainError("bregman_prox: simplex projection needs a positive sum");
      return u * (r->radius / total);
    }
  }
  throw UnsupportedCombination("no closed-form Bregman prox for " + regularizer_name(h) + " with the " +
                               kernel.name() + " kernel");
}

double BregmanProblem::objective(const Vector& x) const { return f->value(x) + regularizer_value(h, x); }

Vector BregmanProblem::primal_from_dual(const Vector& y) const {
  return bregman_prox(h, *kernel, gamma, kernel->conj_grad(y));
}

void BregmanProblem::validate() const {
  if (!f) throw ConfigError("Bregman problem has no smooth part");
  if (!kernel) throw ConfigError("Bregman problem has no kernel");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("step size must be positive and finite");
  aaprox::validate(h);
  if (!bregman_prox_supported(h, *kernel)) {
    throw UnsupportedCombination("no closed-form Bregman prox for " + regularizer_name(h) + " with the " +
                                 kernel->name() + " kernel");
  }
}

BpgStep bpg_step(const BregmanProblem& problem, const Vector& x) {
  BpgStep out;
  out.y_next = problem.kernel->grad(x) - problem.gamma * problem.f->gradient(x);
  out.x_next = problem.primal_from_dual(out.y_next);
  return out;
}

bool bregman_descent_check(double f_test, double f_k, const Vector& grad_k, const Vector& x_bpg,
                           const Vector& x_k, double gamma, const Kernel& kernel) {
  const double bound = f_k + grad_k.dot(x_bpg - x_k) + kernel.distance(x_bpg, x_k) / gamma;
  return f_test <= bound;
}

bool bregman_composite_check(double objective_test, double f_k, const Vector& grad_k, const Vector& x_bpg,
                             const Vector& x_k, double gamma, const Kernel& kernel, double h_bpg) {
  const double bound = f_k + grad_k.dot(x_bpg - x_k) + kernel.distance(x_bpg, x_k) / gamma + h_bpg;
  return objective_test <= bound;
}

Vector dual_start(const BregmanProblem& problem, const Vector& x0) { return problem.kernel->grad(x0); }

namespace {

bool converged(const Vector& r, const Vector& g, double tol) {
  return r.norm() <= tol * std::max(1.0, g.norm());
}

SolveReport drive(const BregmanProblem& problem, Vector x, Vector y, const RunOptions& options, bool guarded) {
  const Stopwatch clock;
  const Kernel& kernel = *problem.kernel;
  const double gamma = problem.gamma;
  SolveReport report;
  AAConfig aa = options.aa;
  if (!guarded) aa.m = 0;
  AndersonAccelerator engine(aa);

  StepKind kind = StepKind::plain;
  for (std::size_t k = 0;; ++k) {
    Vector grad;
    Vector g;
    double fx = 0.0;
    bool ok = true;
    try {
      fx = problem.f->value_and_gradient(x, grad);
      g = kernel.grad(x) - gamma * grad;
    } catch (const DomainError&) {
      ok = false;
    }
    if (!ok) {
      report.termination = Termination::degenerate;
      break;
    }
    const Vector r = g - y;
    const double phi = fx + regularizer_value(problem.h, x);
    report.trace.push_back({k, phi, r.norm(), kind, clock.seconds()});
    if (options.observer) options.observer(k, x, y);

    if (!std::isfinite(fx) || !all_finite(g)) {
      report.termination = Termination::degenerate;
      break;
    }
    if (converged(r, g, options.tol)) {
      report.termination = Termination::tolerance;
      break;
    }
    if (k >= options.max_iters) {
      report.termination = Termination::max_iterations;
      break;
    }

    Vector x_bpg;
    try {
      x_bpg = problem.primal_from_dual(g);
    } catch (const DomainError&) {
      report.termination = Termination::degenerate;
      break;
    }
    if (!kernel.in_interior(x_bpg)) {
      report.termination = Termination::degenerate;
      break;
    }

    if (!guarded) {
      x = std::move(x_bpg);
      y = g;
      kind = StepKind::plain;
      continue;
    }

    AAStep step = engine.step(g, y);
    if (k == 0) {
      // One residual in the window: the extrapolation is g_0.
      x = std::move(x_bpg);
      y = std::move(step.y_next);
      kind = StepKind::plain;
      continue;
    }

    bool accept = false;
    Vector x_test;
    try {
      x_test = problem.primal_from_dual(step.y_next);
      if (kernel.in_interior(x_test)) {
        if (options.descent == DescentTest::smooth_only) {
          accept = bregman_descent_check(problem.f->value(x_test), fx, grad, x_bpg, x, gamma, kernel);
        } else {
          accept = bregman_composite_check(problem.objective(x_test), fx, grad, x_bpg, x, gamma, kernel,
                                           regularizer_value(problem.h, x_bpg));
        }
      }
    } catch (const DomainError&) {
      accept = false;
    }
    if (accept) {
      x = std::move(x_test);
      y = std::move(step.y_next);
      kind = StepKind::aa;
      ++report.aa_accepted;
    } else {
      x = std::move(x_bpg);
      y = g;
      kind = StepKind::fallback;
      ++report.aa_rejected;
      if (aa.flush_on_fallback) engine.reset();
    }
  }
  report.x = x;
  report.y = y;
  return report;
}

void check_options(const RunOptions& options) {
  if (!(options.tol >= 0.0)) throw ConfigError("tolerance must be nonnegative");
  options.aa.validate();
}

}  // namespace

SolveReport run_bpg(const BregmanProblem& problem, const Vector& x0, const RunOptions& options) {
  problem.validate();
  check_options(options);
  if (x0.size() != problem.dimension()) throw ConfigError("x0 has the wrong dimension");
  if (!problem.kernel->in_interior(x0)) throw DomainError("x0 must lie in the interior of the kernel domain");
  Vector y0 = problem.kernel->grad(x0);
  return drive(problem, x0, std::move(y0), options, false);
}

SolveReport run_guarded_aa_bpg(const BregmanProblem& problem, const Vector& y0, const RunOptions& options) {
  problem.validate();
  check_options(options);
  if (!problem.kernel->full_dual_domain()) {
    throw ConfigError("the " + problem.kernel->name() +
                      " kernel has a restricted dual domain and cannot be used with dual extrapolation");
  }
  if (y0.size() != problem.dimension()) throw ConfigError("y0 has the wrong dimension");
  if (!all_finite(y0)) throw ConfigError("y0 must be finite");
  Vector x0 = problem.primal_from_dual(y0);
  if (!problem.kernel->in_interior(x0)) throw DomainError("y0 maps outside the interior of the kernel domain");
  return drive(problem, std::move(x0), y0, options, true);
}

}  // namespace aaprox
