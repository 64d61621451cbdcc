#include "aaprox/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace aaprox {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// x log(x / y) with 0 log 0 = 0.
double xlog_ratio(double x, double y) { return x > 0.0 ? x * std::log(x / y) : 0.0; }

void require_interior(const Kernel& k, const Vector& x) {
  if (!k.in_interior(x)) throw DomainError(k.name() + " kernel: point outside the interior of the domain");
}

void require_pair(const Kernel& k, const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw ConfigError(k.name() + " kernel: dimension mismatch");
  if (!k.in_domain(x)) throw DomainError(k.name() + " kernel: first argument outside the domain");
  require_interior(k, y);
}

double softplus_scalar(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

}  // namespace

double Kernel::conj_value(const Vector& y) const {
  const Vector x = conj_grad(y);
  return x.dot(y) - value(x);
}

double Kernel::distance(const Vector& x, const Vector& y) const {
  require_pair(*this, x, y);
  return value(x) - value(y) - grad(y).dot(x - y);
}

bool Kernel::in_domain(const Vector& x) const {
  if (!all_finite(x)) return false;
  const auto a = x.array();
  switch (domain()) {
    case KernelDomain::full: return true;
    case KernelDomain::nonneg_orthant: return (a >= 0.0).all();
    case KernelDomain::positive_orthant: return (a > 0.0).all();
    case KernelDomain::unit_box: return (a >= 0.0).all() && (a <= 1.0).all();
    case KernelDomain::symmetric_box: return (a >= -1.0).all() && (a <= 1.0).all();
  }
  return false;
}

bool Kernel::in_interior(const Vector& x) const {
  if (!all_finite(x)) return false;
  const auto a = x.array();
  switch (domain()) {
    case KernelDomain::full: return true;
    case KernelDomain::nonneg_orthant:
    case KernelDomain::positive_orthant: return (a > 0.0).all();
    case KernelDomain::unit_box: return (a > 0.0).all() && (a < 1.0).all();
    case KernelDomain::symmetric_box: return (a > -1.0).all() && (a < 1.0).all();
  }
  return false;
}

// Energy

double EnergyKernel::value(const Vector& x) const { return 0.5 * x.squaredNorm(); }
Vector EnergyKernel::grad(const Vector& x) const { return x; }
Vector EnergyKernel::conj_grad(const Vector& y) const { return y; }
double EnergyKernel::conj_value(const Vector& y) const { return 0.5 * y.squaredNorm(); }
double EnergyKernel::distance(const Vector& x, const Vector& y) const {
  if (x.size() != y.size()) throw ConfigError("energy kernel: dimension mismatch");
  return 0.5 * (x - y).squaredNorm();
}

// Shannon

double ShannonKernel::value(const Vector& x) const {
  if (!in_domain(x)) return kInf;
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) total += xlogx(x(i));
  return total;
}

Vector ShannonKernel::grad(const Vector& x) const {
  require_interior(*this, x);
  return (x.array().log() + 1.0).matrix();
}

Vector ShannonKernel::conj_grad(const Vector& y) const { return (y.array() - 1.0).exp().matrix(); }

double ShannonKernel::conj_value(const Vector& y) const { return (y.array() - 1.0).exp().sum(); }

double ShannonKernel::distance(const Vector& x, const Vector& y) const {
  require_pair(*this, x, y);
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    total += std::max(0.0, xlog_ratio(x(i), y(i)) - x(i) + y(i));
  }
  return total;
}

// Burg

double BurgKernel::value(const Vector& x) const {
  if (!in_domain(x)) return kInf;
  return -x.array().log().sum();
}

Vector BurgKernel::grad(const Vector& x) const {
  require_interior(*this, x);
  return (-x.array().inverse()).matrix();
}

Vector BurgKernel::conj_grad(const Vector& y) const {
  if (!all_finite(y) || !(y.array() < 0.0).all()) {
    throw DomainError("burg kernel: conjugate gradient needs strictly negative arguments");
  }
  return (-y.array().inverse()).matrix();
}

double BurgKernel::conj_value(const Vector& y) const {
  if (!all_finite(y) || !(y.array() < 0.0).all()) return kInf;
  return (-1.0 - (-y.array()).log()).sum();
}

double BurgKernel::distance(const Vector& x, const Vector& y) const {
  require_pair(*this, x, y);
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double q = x(i) / y(i);
    total += std::max(0.0, q - std::log(q) - 1.0);
  }
  return total;
}

// Fermi-Dirac

double FermiDiracKernel::value(const Vector& x) const {
  if (!in_domain(x)) return kInf;
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) total += xlogx(x(i)) + xlogx(1.0 - x(i));
  return total;
}

Vector FermiDiracKernel::grad(const Vector& x) const {
  require_interior(*this, x);
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = std::log(x(i)) - std::log1p(-x(i));
  return out;
}

Vector FermiDiracKernel::conj_grad(const Vector& y) const {
  Vector out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double z = y(i);
    out(i) = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  }
  return out;
}

double FermiDiracKernel::conj_value(const Vector& y) const {
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) total += softplus_scalar(y(i));
  return total;
}

double FermiDiracKernel::distance(const Vector& x, const Vector& y) const {
  require_pair(*this, x, y);
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    total += std::max(0.0, xlog_ratio(x(i), y(i)) + xlog_ratio(1.0 - x(i), 1.0 - y(i)));
  }
  return total;
}

// Hellinger

double HellingerKernel::value(const Vector& x) const {
  if (!in_domain(x)) return kInf;
  return -(1.0 - x.array().square()).sqrt().sum();
}

Vector HellingerKernel::grad(const Vector& x) const {
  require_interior(*this, x);
  return (x.array() / (1.0 - x.array().square()).sqrt()).matrix();
}

Vector HellingerKernel::conj_grad(const Vector& y) const {
  Vector out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) out(i) = y(i) / std::hypot(1.0, y(i));
  return out;
}

double HellingerKernel::conj_value(const Vector& y) const {
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) total += std::hypot(1.0, y(i));
  return total;
}

double HellingerKernel::distance(const Vector& x, const Vector& y) const {
  require_pair(*this, x, y);
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    // (1 - xy)^2 - (1 - x^2)(1 - y^2) = (x - y)^2
    const double sx = std::sqrt(1.0 - x(i) * x(i));
    const double sy = std::sqrt(1.0 - y(i) * y(i));
    const double d = x(i) - y(i);
    total += d * d / ((1.0 - x(i) * y(i) + sx * sy) * sy);
  }
  return total;
}

// Polynomial

PolynomialKernel::PolynomialKernel(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("polynomial kernel: alpha must be >= 0");
}

double PolynomialKernel::value(const Vector& x) const {
  if (!all_finite(x)) return kInf;
  const double s = x.squaredNorm();
  return 0.5 * alpha_ * s + 0.25 * s * s;
}

Vector PolynomialKernel::grad(const Vector& x) const {
  require_interior(*this, x);
  return (alpha_ + x.squaredNorm()) * x;
}

Vector PolynomialKernel::conj_grad(const Vector& y) const {
  if (!all_finite(y)) throw DomainError("polynomial kernel: nonfinite argument");
  const double s = y.norm();
  if (s == 0.0) return Vector::Zero(y.size());
  return (solve_depressed_cubic(alpha_, s) / s) * y;
}

double PolynomialKernel::distance(const Vector& x, const Vector& y) const {
  require_pair(*this, x, y);
  const double d2 = (x - y).squaredNorm();
  const double ny = y.squaredNorm();
  const double gap = x.squaredNorm() - ny;
  return 0.5 * alpha_ * d2 + 0.25 * gap * gap + 0.5 * ny * d2;
}

double solve_depressed_cubic(double alpha, double s) {
  if (!(alpha >= 0.0) || !(s >= 0.0)) throw DomainError("solve_depressed_cubic: needs alpha, s >= 0");
  if (s == 0.0) return 0.0;
  // Both cbrt(s) and s / alpha bound the root from above; Newton on the
  // convex cubic then decreases monotonically.
  double t = std::cbrt(s);
  if (alpha > 0.0) t = std::min(t, s / alpha);
  for (int it = 0; it < 200; ++it) {
    const double p = t * (alpha + t * t) - s;
    if (std::abs(p) <= 1e-14 * s) break;
    const double next = t - p / (3.0 * t * t + alpha);
    if (!(next < t)) break;
    t = next > 0.0 ? next : 0.5 * t;
  }
  return t;
}

KernelPtr make_kernel(std::string_view name, double polynomial_alpha) {
  if (name == "energy") return std::make_shared<EnergyKernel>();
  if (name == "shannon") return std::make_shared<ShannonKernel>();
  if (name == "burg") return std::make_shared<BurgKernel>();
  if (name == "fermi_dirac") return std::make_shared<FermiDiracKernel>();
  if (name == "hellinger") return std::make_shared<HellingerKernel>();
  if (name == "polynomial") return std::make_shared<PolynomialKernel>(polynomial_alpha);
  throw ConfigError("unknown kernel: " + std::string(name));
}

double bregman_distance(const Kernel& kernel, const Vector& x, const Vector& y) {
  return kernel.distance(x, y);
}

}  // namespace aaprox
