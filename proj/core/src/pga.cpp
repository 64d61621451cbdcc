#include "aaprox/pga.hpp"

#include <algorithm>
#include <cmath>

namespace aaprox {

double CompositeProblem::objective(const Vector& x) const { return f->value(x) + regularizer_value(h, x); }

Vector pga_step(const CompositeProblem& problem, const Vector& x, double gamma) {
  return problem.prox(x - gamma * problem.f->gradient(x), gamma);
}

Vector g_map(const CompositeProblem& problem, const Vector& y, double gamma) {
  const Vector x = problem.prox(y, gamma);
  return x - gamma * problem.f->gradient(x);
}

bool descent_check(double f_test, double f_k, double grad_norm_sq, double gamma) {
  return f_test <= f_k - 0.5 * gamma * grad_norm_sq;
}

bool composite_descent_check(double phi_test, double phi_k, double step_norm_sq, double gamma) {
  return phi_test <= phi_k - step_norm_sq / (2.0 * gamma);
}

namespace {

enum class Mode { plain, accelerated, guarded };

void check_inputs(const CompositeProblem& problem, const Vector& x0, double gamma, const RunOptions& options) {
  if (!problem.f) throw ConfigError("problem has no smooth part");
  validate(problem.h);
  if (x0.size() != problem.dimension()) throw ConfigError("x0 has the wrong dimension");
  if (!all_finite(x0)) throw ConfigError("x0 must be finite");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("step size must be positive and finite");
  if (!(options.tol >= 0.0)) throw ConfigError("tolerance must be nonnegative");
  options.aa.validate();
}

bool converged(const Vector& r, const Vector& g, double tol) {
  return r.norm() <= tol * std::max(1.0, g.norm());
}

SolveReport drive(const CompositeProblem& problem, const Vector& x0, double gamma, const RunOptions& options,
                  Mode mode) {
  check_inputs(problem, x0, gamma, options);
  const Stopwatch clock;
  SolveReport report;
  AAConfig aa = options.aa;
  if (mode == Mode::plain) aa.m = 0;
  AndersonAccelerator engine(aa);

  Vector x = x0;
  Vector y = x0;
  StepKind kind = StepKind::plain;
  for (std::size_t k = 0;; ++k) {
    Vector grad;
    double fx = 0.0;
    try {
      fx = problem.f->value_and_gradient(x, grad);
    } catch (const DomainError&) {
      report.termination = Termination::degenerate;
      break;
    }
    const Vector g = x - gamma * grad;
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

    if (mode == Mode::plain) {
      y = g;
      x = problem.prox(y, gamma);
      kind = StepKind::plain;
      continue;
    }

    AAStep step = engine.step(g, y);
    if (mode == Mode::accelerated || k == 0) {
      // At k = 0 the window holds one residual and the step is g_0.
      y = std::move(step.y_next);
      x = problem.prox(y, gamma);
      kind = k == 0 ? StepKind::plain : StepKind::aa;
      continue;
    }

    const Vector x_pga = problem.prox(g, gamma);
    const Vector x_test = problem.prox(step.y_next, gamma);
    bool accept = false;
    if (all_finite(x_test)) {
      try {
        if (options.descent == DescentTest::smooth_only) {
          accept = descent_check(problem.f->value(x_test), fx, grad.squaredNorm(), gamma);
        } else {
          accept = composite_descent_check(problem.objective(x_test), phi, (x - x_pga).squaredNorm(), gamma);
        }
      } catch (const DomainError&) {
        accept = false;
      }
    }
    if (accept) {
      x = x_test;
      y = std::move(step.y_next);
      kind = StepKind::aa;
      ++report.aa_accepted;
    } else {
      x = x_pga;
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

}  // namespace

SolveReport run_pga(const CompositeProblem& problem, const Vector& x0, double gamma, const RunOptions& options) {
  return drive(problem, x0, gamma, options, Mode::plain);
}

SolveReport run_aa_pga(const CompositeProblem& problem, const Vector& x0, double gamma,
                       const RunOptions& options) {
  return drive(problem, x0, gamma, options, Mode::accelerated);
}

SolveReport run_guarded_aa_pga(const CompositeProblem& problem, const Vector& x0, double gamma,
                               const RunOptions& options) {
  return drive(problem, x0, gamma, options, Mode::guarded);
}

SolveReport run_nesterov_pga(const CompositeProblem& problem, const Vector& x0, double gamma,
                             const RunOptions& options, bool momentum) {
  check_inputs(problem, x0, gamma, options);
  const Stopwatch clock;
  SolveReport report;

  Vector x = x0;
  Vector x_prev = x0;
  for (std::size_t k = 0;; ++k) {
    const double beta = (momentum && k >= 1) ? static_cast<double>(k - 1) / static_cast<double>(k + 2) : 0.0;
    const Vector v = x + beta * (x - x_prev);
    Vector grad;
    double phi = 0.0;
    try {
      grad = problem.f->gradient(v);
      phi = problem.objective(x);
    } catch (const DomainError&) {
      report.termination = Termination::degenerate;
      break;
    }
    const Vector g = v - gamma * grad;
    Vector x_next = problem.prox(g, gamma);
    const Vector step = x_next - v;
    report.trace.push_back({k, phi, step.norm(), StepKind::plain, clock.seconds()});
    if (options.observer) options.observer(k, x, v);
    report.y = v;

    if (!all_finite(x_next) || std::isnan(phi)) {
      report.termination = Termination::degenerate;
      break;
    }
    if (converged(step, g, options.tol)) {
      report.termination = Termination::tolerance;
      break;
    }
    if (k >= options.max_iters) {
      report.termination = Termination::max_iterations;
      break;
    }
    x_prev = std::move(x);
    x = std::move(x_next);
  }
  report.x = x;
  return report;
}

}  // namespace aaprox
