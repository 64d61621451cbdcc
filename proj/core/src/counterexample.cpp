#include "aaprox/counterexample.hpp"

#include "aaprox/anderson.hpp"

#include <algorithm>
#include <cmath>

namespace aaprox::cycle {

double gradient(double x) {
  if (x < -1.0) return x / 10.0 - 24.9;
  if (x < 1.0) return 25.0 * x;
  return x / 10.0 + 24.9;
}

double value(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 12.5 * x * x;
  return x * x / 20.0 + 24.9 * a - 12.45;
}

double gd_step(double x) { return x - kStep * gradient(x); }

double aa_m1_step(double x_k, double x_km1) {
  const double a = gradient(x_k);
  const double b = gradient(x_km1);
  if (a == b) return gd_step(x_k);
  return (b * x_k - a * x_km1) / (b - a);
}

double inner_limit() { return 249.0 * (std::sqrt(5.0) - 2.0); }

double contraction_map(double y) { return 249.0 * (y + 249.0) / (y + 1245.0); }

bool in_proven_range(double x0) { return x0 >= 2.01 && x0 <= 246.98; }

LossPtr make_loss() {
  return std::make_shared<CallbackLoss>(
      1, [](const Vector& x) { return value(x(0)); },
      [](const Vector& x) { return Vector::Constant(1, gradient(x(0))); }, kL);
}

CycleReport run_cycle(double x0, std::size_t n_cycles) {
  CycleReport report;
  report.x0 = x0;
  report.in_proven_range = in_proven_range(x0);
  const std::size_t count = 4 * n_cycles + 7;

  AAConfig config;
  config.m = 1;
  config.reg_scale = 0.0;
  config.method = CoefficientMethod::normal_equations;
  AndersonIteration engine([](const Vector& y) { return Vector::Constant(1, gd_step(y(0))); },
                           Vector::Constant(1, x0), config);
  report.iterates.reserve(count);
  report.iterates.push_back(x0);
  while (report.iterates.size() < count) {
    engine.step();
    report.iterates.push_back(engine.current()(0));
  }

  report.closed_form.reserve(count);
  report.closed_form.push_back(x0);
  report.closed_form.push_back(gd_step(x0));
  while (report.closed_form.size() < count) {
    const std::size_t k = report.closed_form.size() - 1;
    report.closed_form.push_back(aa_m1_step(report.closed_form[k], report.closed_form[k - 1]));
  }

  for (std::size_t k = 0; k < count; ++k) {
    const double ref = report.closed_form[k];
    report.max_gap = std::max(report.max_gap, std::abs(report.iterates[k] - ref) / std::max(1.0, std::abs(ref)));
  }

  // Largest n with 4n + 6 < count.
  const std::size_t n = (count - 7) / 4;
  report.last_4n3 = report.iterates[4 * n + 3];
  report.last_4n4 = report.iterates[4 * n + 4];
  report.last_4n5 = report.iterates[4 * n + 5];
  report.last_4n6 = report.iterates[4 * n + 6];
  return report;
}

}  // namespace aaprox::cycle
