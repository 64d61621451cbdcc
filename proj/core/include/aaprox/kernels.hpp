#pragma once

#include "aaprox/types.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace aaprox {

/// Closure of the kernel domain.
enum class KernelDomain {
  full,             ///< R^n
  nonneg_orthant,   ///< [0, inf)^n
  positive_orthant, ///< (0, inf)^n
  unit_box,         ///< [0, 1]^n
  symmetric_box,    ///< [-1, 1]^n
};

/// Legendre kernel phi with gradient map and its inverse.
class Kernel {
 public:
  virtual ~Kernel() = default;

  virtual std::string name() const = 0;
  virtual KernelDomain domain() const = 0;
  /// Whether grad phi* is defined on all of R^n.
  virtual bool full_dual_domain() const = 0;

  /// phi(x), +infinity outside dom phi.
  virtual double value(const Vector& x) const = 0;
  /// grad phi(x); DomainError outside int dom phi.
  virtual Vector grad(const Vector& x) const = 0;
  /// grad phi*(y) = (grad phi)^{-1}(y); DomainError outside its domain.
  virtual Vector conj_grad(const Vector& y) const = 0;
  /// phi*(y) = <grad phi*(y), y> - phi(grad phi*(y)).
  virtual double conj_value(const Vector& y) const;
  /// D(x, y) = phi(x) - phi(y) - <grad phi(y), x - y>.
  virtual double distance(const Vector& x, const Vector& y) const;

  bool in_domain(const Vector& x) const;
  bool in_interior(const Vector& x) const;
};

using KernelPtr = std::shared_ptr<const Kernel>;

/// phi = 0.5 ||x||^2
class EnergyKernel final : public Kernel {
 public:
  std::string name() const override { return "energy"; }
  KernelDomain domain() const override { return KernelDomain::full; }
  bool full_dual_domain() const override { return true; }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  Vector conj_grad(const Vector& y) const override;
  double conj_value(const Vector& y) const override;
  double distance(const Vector& x, const Vector& y) const override;
};

/// phi = sum x log x, 0 log 0 = 0
class ShannonKernel final : public Kernel {
 public:
  std::string name() const override { return "shannon"; }
  KernelDomain domain() const override { return KernelDomain::nonneg_orthant; }
  bool full_dual_domain() const override { return true; }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  Vector conj_grad(const Vector& y) const override;
  double conj_value(const Vector& y) const override;
  double distance(const Vector& x, const Vector& y) const override;
};

/// phi = -sum log x
class BurgKernel final : public Kernel {
 public:
  std::string name() const override { return "burg"; }
  KernelDomain domain() const override { return KernelDomain::positive_orthant; }
  bool full_dual_domain() const override { return false; }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  /// Defined for y < 0 only.
  Vector conj_grad(const Vector& y) const override;
  double conj_value(const Vector& y) const override;
  double distance(const Vector& x, const Vector& y) const override;
};

/// phi = sum x log x + (1 - x) log(1 - x)
class FermiDiracKernel final : public Kernel {
 public:
  std::string name() const override { return "fermi_dirac"; }
  KernelDomain domain() const override { return KernelDomain::unit_box; }
  bool full_dual_domain() const override { return true; }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  Vector conj_grad(const Vector& y) const override;
  double conj_value(const Vector& y) const override;
  double distance(const Vector& x, const Vector& y) const override;
};

/// phi = -sum sqrt(1 - x^2)
class HellingerKernel final : public Kernel {
 public:
  std::string name() const override { return "hellinger"; }
  KernelDomain domain() const override { return KernelDomain::symmetric_box; }
  bool full_dual_domain() const override { return true; }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  Vector conj_grad(const Vector& y) const override;
  double conj_value(const Vector& y) const override;
  double distance(const Vector& x, const Vector& y) const override;
};

/// phi = alpha/2 ||x||^2 + 1/4 ||x||^4
class PolynomialKernel final : public Kernel {
 public:
  explicit PolynomialKernel(double alpha = 1.0);

  std::string name() const override { return "polynomial"; }
  KernelDomain domain() const override { return KernelDomain::full; }
  bool full_dual_domain() const override { return true; }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  /// Scales y by the root t >= 0 of t (alpha + t^2) = ||y||, found by
  /// safeguarded Newton.
  Vector conj_grad(const Vector& y) const override;
  double distance(const Vector& x, const Vector& y) const override;

  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

/// Nonnegative root of t^3 + alpha t = s for s >= 0, alpha >= 0.
double solve_depressed_cubic(double alpha, double s);

/// One of energy, shannon, burg, fermi_dirac, hellinger, polynomial.
KernelPtr make_kernel(std::string_view name, double polynomial_alpha = 1.0);

double bregman_distance(const Kernel& kernel, const Vector& x, const Vector& y);

}  // namespace aaprox
