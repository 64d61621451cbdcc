#include "aaprox/losses.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace aaprox {

double SmoothLoss::value_and_gradient(const Vector& x, Vector& grad) const {
  grad = gradient(x);
  return value(x);
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

void check_dimension(const Vector& x, Eigen::Index n, const char* who) {
  if (x.size() != n) throw ConfigError(std::string(who) + ": dimension mismatch");
}

}  // namespace

// Logistic

LogisticLoss::LogisticLoss(DataMatrix a, Vector labels, LogisticOptions options)
    : a_(std::move(a)), labels_(std::move(labels)), options_(options) {
  if (a_.rows() == 0 || a_.cols() == 0) throw ConfigError("LogisticLoss: empty data");
  if (labels_.size() != a_.rows()) throw ConfigError("LogisticLoss: label count must match rows");
  for (Eigen::Index i = 0; i < labels_.size(); ++i) {
    if (labels_(i) != 1.0 && labels_(i) != -1.0) {
      throw ConfigError("LogisticLoss: label at row " + std::to_string(i) + " is not -1 or +1");
    }
  }
  if (!(options_.mu >= 0.0)) throw ConfigError("LogisticLoss: mu must be nonnegative");
  norm_ = operator_norm_sq(a_);
  smoothness_ = norm_.value / (4.0 * static_cast<double>(a_.rows()));
  if (options_.include_ridge_in_L) smoothness_ += 2.0 * options_.mu;
}

double LogisticLoss::value_from_margins(const Vector& x, const Vector& margins) const {
  double total = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) total += softplus(-margins(i));
  return total / static_cast<double>(a_.rows()) + options_.mu * x.squaredNorm();
}

double LogisticLoss::value(const Vector& x) const {
  check_dimension(x, dimension(), "LogisticLoss");
  const Vector margins = labels_.cwiseProduct(a_.multiply(x));
  return value_from_margins(x, margins);
}

Vector LogisticLoss::gradient(const Vector& x) const {
  Vector grad;
  value_and_gradient(x, grad);
  return grad;
}

double LogisticLoss::value_and_gradient(const Vector& x, Vector& grad) const {
  check_dimension(x, dimension(), "LogisticLoss");
  const Vector margins = labels_.cwiseProduct(a_.multiply(x));
  Vector weights(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) weights(i) = -labels_(i) * sigmoid(-margins(i));
  grad = a_.multiply_transpose(weights) / static_cast<double>(a_.rows()) + 2.0 * options_.mu * x;
  return value_from_margins(x, margins);
}

// Least squares

LeastSquaresLoss::LeastSquaresLoss(DataMatrix a, Vector b, LeastSquaresOptions options)
    : a_(std::move(a)), b_(std::move(b)), options_(options) {
  if (a_.rows() == 0 || a_.cols() == 0) throw ConfigError("LeastSquaresLoss: empty data");
  if (b_.size() != a_.rows()) throw ConfigError("LeastSquaresLoss: b must have one entry per row");
  if (!(options_.mu >= 0.0)) throw ConfigError("LeastSquaresLoss: mu must be nonnegative");
  norm_ = operator_norm_sq(a_);
  smoothness_ = norm_.value / static_cast<double>(a_.rows());
  if (options_.include_ridge_in_L) smoothness_ += 2.0 * options_.mu;
}

double LeastSquaresLoss::value(const Vector& x) const {
  check_dimension(x, dimension(), "LeastSquaresLoss");
  const Vector residual = a_.multiply(x) - b_;
  return residual.squaredNorm() / (2.0 * static_cast<double>(a_.rows())) + options_.mu * x.squaredNorm();
}

Vector LeastSquaresLoss::gradient(const Vector& x) const {
  Vector grad;
  value_and_gradient(x, grad);
  return grad;
}

double LeastSquaresLoss::value_and_gradient(const Vector& x, Vector& grad) const {
  check_dimension(x, dimension(), "LeastSquaresLoss");
  const double rows = static_cast<double>(a_.rows());
  const Vector residual = a_.multiply(x) - b_;
  grad = a_.multiply_transpose(residual) / rows + 2.0 * options_.mu * x;
  return residual.squaredNorm() / (2.0 * rows) + options_.mu * x.squaredNorm();
}

// KL

KlLoss::KlLoss(DataMatrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() == 0 || a_.cols() == 0) throw ConfigError("KlLoss: empty data");
  if (b_.size() != a_.rows()) throw ConfigError("KlLoss: b must have one entry per row");
  if (!a_.nonnegative()) throw ConfigError("KlLoss: A must be entrywise nonnegative");
  if (!(b_.array() > 0.0).all()) throw ConfigError("KlLoss: b must be strictly positive");
  nonzero_row_ = a_.nonzero_rows();
  smoothness_ = a_.max_column_l1();
}

Vector KlLoss::checked_product(const Vector& x) const {
  check_dimension(x, dimension(), "KlLoss");
  Vector ax = a_.multiply(x);
  for (Eigen::Index i = 0; i < ax.size(); ++i) {
    if (nonzero_row_[static_cast<std::size_t>(i)] && !(ax(i) > 0.0)) {
      throw DomainError("KlLoss: (Ax)_" + std::to_string(i) + " is not positive");
    }
  }
  return ax;
}

double KlLoss::value(const Vector& x) const {
  const Vector ax = checked_product(x);
  double total = 0.0;
  for (Eigen::Index i = 0; i < ax.size(); ++i) {
    const double u = ax(i);
    total += (u > 0.0 ? u * std::log(u / b_(i)) : 0.0) - u + b_(i);
  }
  return total;
}

Vector KlLoss::gradient(const Vector& x) const {
  Vector grad;
  value_and_gradient(x, grad);
  return grad;
}

double KlLoss::value_and_gradient(const Vector& x, Vector& grad) const {
  const Vector ax = checked_product(x);
  Vector logs = Vector::Zero(ax.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < ax.size(); ++i) {
    const double u = ax(i);
    if (u > 0.0) {
      logs(i) = std::log(u / b_(i));
      total += u * logs(i);
    }
    total += b_(i) - u;
  }
  grad = a_.multiply_transpose(logs);
  return total;
}

// Quadratic

QuadraticLoss::QuadraticLoss(Matrix hessian, Vector linear) : h_(std::move(hessian)), c_(std::move(linear)) {
  if (h_.rows() != h_.cols() || h_.rows() == 0) throw ConfigError("QuadraticLoss: Hessian must be square");
  if (c_.size() != h_.rows()) throw ConfigError("QuadraticLoss: linear term size mismatch");
  if ((h_ - h_.transpose()).norm() > 1e-12 * std::max(1.0, h_.norm())) {
    throw ConfigError("QuadraticLoss: Hessian must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h_, Eigen::EigenvaluesOnly);
  smoothness_ = eig.eigenvalues().maxCoeff();
}

double QuadraticLoss::value(const Vector& x) const {
  check_dimension(x, dimension(), "QuadraticLoss");
  return 0.5 * x.dot(h_ * x) - c_.dot(x);
}

Vector QuadraticLoss::gradient(const Vector& x) const {
  check_dimension(x, dimension(), "QuadraticLoss");
  return h_ * x - c_;
}

double QuadraticLoss::value_and_gradient(const Vector& x, Vector& grad) const {
  check_dimension(x, dimension(), "QuadraticLoss");
  const Vector hx = h_ * x;
  grad = hx - c_;
  return 0.5 * x.dot(hx) - c_.dot(x);
}

// Callback

CallbackLoss::CallbackLoss(Eigen::Index dimension, ValueFn value, GradientFn gradient, double smoothness)
    : dimension_(dimension), value_(std::move(value)), gradient_(std::move(gradient)), smoothness_(smoothness) {
  if (!value_ || !gradient_) throw ConfigError("CallbackLoss: value and gradient are required");
}

}  // namespace aaprox
