#include "aaprox/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace aaprox {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_step(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("prox step must be positive and finite");
}

}  // namespace

Vector prox_l1(const Vector& y, double t) {
  if (!(t >= 0.0)) throw ConfigError("prox_l1: threshold must be nonnegative");
  Vector out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double mag = std::abs(y(i)) - t;
    out(i) = mag > 0.0 ? std::copysign(mag, y(i)) : 0.0;
  }
  return out;
}

Vector project_box(const Vector& y, double lo, double hi) {
  if (!(lo <= hi)) throw ConfigError("project_box: lo must not exceed hi");
  return y.cwiseMax(lo).cwiseMin(hi);
}

Vector project_nonneg(const Vector& y) { return y.cwiseMax(0.0); }

Vector project_simplex(const Vector& y, double radius) {
  if (!(radius > 0.0)) throw ConfigError("project_simplex: radius must be positive");
  const auto n = y.size();
  if (n == 0) throw ConfigError("project_simplex: empty vector");
  std::vector<double> sorted(y.data(), y.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumulative += sorted[static_cast<std::size_t>(j)];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) theta = candidate;
  }
  return (y.array() - theta).cwiseMax(0.0).matrix();
}

double regularizer_value(const Regularizer& h, const Vector& x) {
  return std::visit(
      overloaded{
          [](const NoRegularizer&) { return 0.0; },
          [&](const L1Norm& r) { return r.weight * x.lpNorm<1>(); },
          [&](const BoxIndicator& r) {
            return ((x.array() >= r.lo) && (x.array() <= r.hi)).all() ? 0.0 : kInf;
          },
          [&](const NonnegIndicator&) { return (x.array() >= 0.0).all() ? 0.0 : kInf; },
          [&](const NonnegL1& r) { return (x.array() >= 0.0).all() ? r.weight * x.sum() : kInf; },
          [&](const SimplexIndicator& r) {
            if (!(x.array() >= 0.0).all()) return kInf;
            return std::abs(x.sum() - r.radius) <= 1e-10 * std::max(1.0, r.radius) ? 0.0 : kInf;
          },
      },
      h);
}

Vector regularizer_prox(const Regularizer& h, const Vector& y, double gamma) {
  require_positive_step(gamma);
  return std::visit(
      overloaded{
          [&](const NoRegularizer&) -> Vector { return y; },
          [&](const L1Norm& r) -> Vector { return prox_l1(y, gamma * r.weight); },
          [&](const BoxIndicator& r) -> Vector { return project_box(y, r.lo, r.hi); },
          [&](const NonnegIndicator&) -> Vector { return project_nonneg(y); },
          [&](const NonnegL1& r) -> Vector {
            return (y.array() - gamma * r.weight).cwiseMax(0.0).matrix();
          },
          [&](const SimplexIndicator& r) -> Vector { return project_simplex(y, r.radius); },
      },
      h);
}

std::string regularizer_name(const Regularizer& h) {
  return std::visit(overloaded{
                        [](const NoRegularizer&) { return std::string("none"); },
                        [](const L1Norm&) { return std::string("l1"); },
                        [](const BoxIndicator&) { return std::string("box"); },
                        [](const NonnegIndicator&) { return std::string("nonneg"); },
                        [](const NonnegL1&) { return std::string("nonneg_l1"); },
                        [](const SimplexIndicator&) { return std::string("simplex"); },
                    },
                    h);
}

void validate(const Regularizer& h) {
  std::visit(overloaded{
                 [](const NoRegularizer&) {},
                 [](const L1Norm& r) {
                   if (!(r.weight >= 0.0) || !std::isfinite(r.weight)) throw ConfigError("l1 weight must be >= 0");
                 },
                 [](const BoxIndicator& r) {
                   if (!(r.lo <= r.hi)) throw ConfigError("box bounds must satisfy lo <= hi");
                 },
                 [](const NonnegIndicator&) {},
                 [](const NonnegL1& r) {
                   if (!(r.weight >= 0.0) || !std::isfinite(r.weight)) throw ConfigError("l1 weight must be >= 0");
                 },
                 [](const SimplexIndicator& r) {
                   if (!(r.radius > 0.0) || !std::isfinite(r.radius)) throw ConfigError("simplex radius must be > 0");
                 },
             },
             h);
}

}  // namespace aaprox
