#pragma once

#include "aaprox/types.hpp"

#include <string>
#include <variant>

namespace aaprox {

/// h = 0.
struct NoRegularizer {};

/// h(x) = weight * ||x||_1.
struct L1Norm {
  double weight = 0.0;
};

/// Indicator of the box [lo, hi]^n.
struct BoxIndicator {
  double lo = -1.0;
  double hi = 1.0;
};

/// Indicator of the nonnegative orthant.
struct NonnegIndicator {};

/// weight * ||x||_1 plus the indicator of the nonnegative orthant.
struct NonnegL1 {
  double weight = 0.0;
};

/// Indicator of {x >= 0, sum(x) = radius}.
struct SimplexIndicator {
  double radius = 1.0;
};

using Regularizer =
    std::variant<NoRegularizer, L1Norm, BoxIndicator, NonnegIndicator, NonnegL1, SimplexIndicator>;

/// sign(y_i) * max(|y_i| - t, 0).
Vector prox_l1(const Vector& y, double t);
Vector project_box(const Vector& y, double lo, double hi);
Vector project_nonneg(const Vector& y);
/// Euclidean projection onto {x >= 0, sum(x) = radius}.
Vector project_simplex(const Vector& y, double radius = 1.0);

/// h(x); +infinity outside the domain. Simplex membership uses a
/// 1e-10 * max(1, radius) tolerance on the sum.
double regularizer_value(const Regularizer& h, const Vector& x);

/// argmin_x h(x) + ||x - y||^2 / (2 gamma).
Vector regularizer_prox(const Regularizer& h, const Vector& y, double gamma);

std::string regularizer_name(const Regularizer& h);

/// Throws ConfigError on invalid parameters (negative weights, lo > hi, ...).
void validate(const Regularizer& h);

}  // namespace aaprox
