#pragma once

#include "aaprox/losses.hpp"

#include <cstddef>
#include <vector>

namespace aaprox::cycle {

/// Strong convexity and smoothness constants of the piecewise quadratic.
inline constexpr double kMu = 0.1;
inline constexpr double kL = 25.0;
inline constexpr double kStep = 1.0 / 25.0;

/// x/10 - 24.9 for x < -1, 25 x on [-1, 1), x/10 + 24.9 for x >= 1.
double gradient(double x);

/// Antiderivative of `gradient` with value 0 at the minimizer.
double value(double x);

/// x_k - step * gradient(x_k).
double gd_step(double x);

/// Closed-form m = 1 Anderson update
/// (f'(x_{k-1}) x_k - f'(x_k) x_{k-1}) / (f'(x_{k-1}) - f'(x_k)).
/// Falls back to gd_step(x_k) when the two gradients coincide.
double aa_m1_step(double x_k, double x_km1);

/// 249 (sqrt(5) - 2), the inner point of the limit cycle.
double inner_limit();

/// y -> 249 (y + 249) / (y + 1245), the map between consecutive inner points.
double contraction_map(double y);

/// Whether x0 lies in [2.01, 246.98], the range where the cycle is proven.
bool in_proven_range(double x0);

/// The function as a one-dimensional smooth loss.
LossPtr make_loss();

struct CycleReport {
  double x0 = 0.0;
  bool in_proven_range = false;
  /// x_0, x_1, ... from the general Anderson engine (m = 1, no Tikhonov term).
  std::vector<double> iterates;
  /// Same sequence from aa_m1_step.
  std::vector<double> closed_form;
  /// max_k |iterates_k - closed_form_k| / max(1, |closed_form_k|).
  double max_gap = 0.0;
  /// Last x_{4n+3}, x_{4n+4}, x_{4n+5}, x_{4n+6}.
  double last_4n3 = 0.0;
  double last_4n4 = 0.0;
  double last_4n5 = 0.0;
  double last_4n6 = 0.0;
};

/// Runs plain Anderson-accelerated gradient descent with m = 1 and step
/// 1/25 for at least 4 n_cycles + 6 iterations.
CycleReport run_cycle(double x0, std::size_t n_cycles);

}  // namespace aaprox::cycle
