#pragma once

#include "aaprox/data_matrix.hpp"
#include "aaprox/types.hpp"

#include <functional>
#include <memory>

namespace aaprox {

/// Smooth part f of a composite objective. Implementations are immutable
/// after construction and safe to evaluate concurrently.
class SmoothLoss {
 public:
  virtual ~SmoothLoss() = default;

  virtual Eigen::Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  /// Returns f(x) and writes the gradient; shares the A x product when the
  /// loss has one.
  virtual double value_and_gradient(const Vector& x, Vector& grad) const;
  /// Lipschitz constant of the gradient (Euclidean losses) or the relative
  /// smoothness constant (Bregman losses).
  virtual double smoothness() const = 0;
};

using LossPtr = std::shared_ptr<const SmoothLoss>;

struct LogisticOptions {
  double mu = 0.0;
  /// Report ||A||^2/(4M) + 2 mu instead of ||A||^2/(4M).
  bool include_ridge_in_L = false;
};

/// (1/M) sum log(1 + exp(-y_i a_i^T x)) + mu ||x||^2.
class LogisticLoss final : public SmoothLoss {
 public:
  LogisticLoss(DataMatrix a, Vector labels, LogisticOptions options = {});

  Eigen::Index dimension() const override { return a_.cols(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  double smoothness() const override { return smoothness_; }

  /// Power iteration estimate of ||A||_2^2 used for the constant.
  const PowerIterationResult& norm_estimate() const { return norm_; }

 private:
  double value_from_margins(const Vector& x, const Vector& margins) const;

  DataMatrix a_;
  Vector labels_;
  LogisticOptions options_;
  PowerIterationResult norm_;
  double smoothness_ = 0.0;
};

struct LeastSquaresOptions {
  double mu = 0.0;
  /// Report ||A||^2/M + 2 mu instead of ||A||^2/M.
  bool include_ridge_in_L = false;
};

/// (1/2M) ||A x - b||^2 + mu ||x||^2.
class LeastSquaresLoss final : public SmoothLoss {
 public:
  LeastSquaresLoss(DataMatrix a, Vector b, LeastSquaresOptions options = {});

  Eigen::Index dimension() const override { return a_.cols(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  double smoothness() const override { return smoothness_; }
  const PowerIterationResult& norm_estimate() const { return norm_; }

 private:
  DataMatrix a_;
  Vector b_;
  LeastSquaresOptions options_;
  PowerIterationResult norm_;
  double smoothness_ = 0.0;
};

/// sum_i (Ax)_i log((Ax)_i / b_i) - (Ax)_i + b_i, with 0 log 0 = 0.
/// smoothness() is the constant relative to the Shannon entropy,
/// the largest column l1 norm of A.
class KlLoss final : public SmoothLoss {
 public:
  KlLoss(DataMatrix a, Vector b);

  Eigen::Index dimension() const override { return a_.cols(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  double smoothness() const override { return smoothness_; }

 private:
  /// Throws DomainError when (Ax)_i <= 0 on a nonzero row.
  Vector checked_product(const Vector& x) const;

  DataMatrix a_;
  Vector b_;
  std::vector<bool> nonzero_row_;
  double smoothness_ = 0.0;
};

/// 0.5 x^T H x - c^T x with symmetric positive semidefinite H.
class QuadraticLoss final : public SmoothLoss {
 public:
  QuadraticLoss(Matrix hessian, Vector linear);

  Eigen::Index dimension() const override { return h_.cols(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  /// Largest eigenvalue of H.
  double smoothness() const override { return smoothness_; }
  const Matrix& hessian() const { return h_; }
  const Vector& linear() const { return c_; }

 private:
  Matrix h_;
  Vector c_;
  double smoothness_ = 0.0;
};

/// Loss assembled from callables.
class CallbackLoss final : public SmoothLoss {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  CallbackLoss(Eigen::Index dimension, ValueFn value, GradientFn gradient, double smoothness);

  Eigen::Index dimension() const override { return dimension_; }
  double value(const Vector& x) const override { return value_(x); }
  Vector gradient(const Vector& x) const override { return gradient_(x); }
  double smoothness() const override { return smoothness_; }

 private:
  Eigen::Index dimension_;
  ValueFn value_;
  GradientFn gradient_;
  double smoothness_;
};

/// Numerically stable log(1 + exp(z)).
double softplus(double z);
/// 1 / (1 + exp(-z)) without overflow.
double sigmoid(double z);

}  // namespace aaprox
