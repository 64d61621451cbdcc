#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace aaprox {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Evaluation outside the domain of a function or map.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid solver or problem configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A (regularizer, kernel) pair with no closed-form Bregman proximal map.
class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace aaprox
