#include "aaprox/anderson.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <utility>

namespace aaprox {

namespace {

constexpr double kTinySum = 1e-300;
constexpr double kInSpanDenominator = 1e-8;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// z = M^{-1} 1 for a symmetric positive semidefinite M; nullopt when M is
// numerically singular.
std::optional<Vector> solve_gram_system(const Matrix& gram) {
  const auto k = gram.rows();
  Eigen::LDLT<Matrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success) return std::nullopt;
  const Vector d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  const double dmin = d.minCoeff();
  if (!(dmax > 0.0) || !(dmin > static_cast<double>(k) * kEps * dmax)) return std::nullopt;
  Vector z = ldlt.solve(Vector::Ones(k));
  if (!z.allFinite()) return std::nullopt;
  return z;
}

// Minimizer of ||R a||^2 + lambda ||a||^2 over a = e_0 + P t, where the
// columns of P are e_i - e_0 and span the null space of 1^T.
std::optional<Vector> solve_in_constraint_coordinates(const Matrix& residuals, double lambda) {
  const auto n = residuals.rows();
  const auto k = residuals.cols();
  const auto p = k - 1;
  const double root = std::sqrt(lambda);

  Matrix stacked = Matrix::Zero(n + k, p);
  Vector rhs = Vector::Zero(n + k);
  stacked.topRows(n) = residuals.rightCols(p).colwise() - residuals.col(0);
  rhs.head(n) = -residuals.col(0);
  if (lambda > 0.0) {
    stacked.row(n).setConstant(-root);
    stacked.bottomRightCorner(p, p).diagonal().setConstant(root);
    rhs(n) = -root;
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
  if (qr.rank() < p) return std::nullopt;
  const Vector t = qr.solve(rhs);
  if (!t.allFinite()) return std::nullopt;
  Vector alpha(k);
  alpha(0) = 1.0 - t.sum();
  alpha.tail(p) = t;
  return alpha;
}

}  // namespace

void AAConfig::validate() const {
  if (!(reg_scale >= 0.0) || !std::isfinite(reg_scale)) {
    throw ConfigError("AAConfig: reg_scale must be finite and nonnegative");
  }
  if (std::isnan(m_alpha) || !(m_alpha > 1.0)) {
    throw ConfigError("AAConfig: m_alpha must exceed 1 (or be infinite)");
  }
}

bool AAConfig::uses_qr() const {
  switch (method) {
    case CoefficientMethod::qr_updates: return true;
    case CoefficientMethod::normal_equations: return false;
    case CoefficientMethod::automatic: return m > 3;
  }
  return false;
}

ResidualHistory::ResidualHistory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("ResidualHistory capacity must be positive");
}

bool ResidualHistory::push(Vector g, Vector r) {
  if (g.size() != r.size()) throw ConfigError("ResidualHistory::push: length mismatch");
  if (!entries_.empty() && entries_.front().g.size() != g.size()) {
    throw ConfigError("ResidualHistory::push: dimension changed");
  }
  entries_.push_front(Entry{std::move(g), std::move(r)});
  if (entries_.size() > capacity_) {
    entries_.pop_back();
    return true;
  }
  return false;
}

void ResidualHistory::drop_oldest() {
  if (!entries_.empty()) entries_.pop_back();
}

void ResidualHistory::keep_newest(std::size_t count) {
  while (entries_.size() > count) entries_.pop_back();
}

Matrix ResidualHistory::residual_matrix() const {
  if (entries_.empty()) return Matrix();
  Matrix out(entries_.front().r.size(), static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = entries_[i].r;
  }
  return out;
}

ExtrapolationCoefficients ExtrapolationCoefficients::fixed_point(std::size_t length) {
  ExtrapolationCoefficients out;
  out.alpha = Vector::Zero(static_cast<Eigen::Index>(length));
  if (length > 0) out.alpha(0) = 1.0;
  return out;
}

ExtrapolationCoefficients solve_coefficients(const Matrix& residuals, double reg_scale) {
  const auto k = residuals.cols();
  if (k == 0) throw ConfigError("solve_coefficients: residual matrix has no columns");
  if (k == 1) return ExtrapolationCoefficients::fixed_point(1);

  const double lambda = reg_scale * residuals.squaredNorm();
  Matrix gram = residuals.transpose() * residuals;
  gram.diagonal().array() += lambda;

  if (auto z = solve_gram_system(gram)) {
    const double total = z->sum();
    if (std::isfinite(total) && std::abs(total) >= kTinySum) {
      return ExtrapolationCoefficients{*z / total, false};
    }
  }
  if (auto alpha = solve_in_constraint_coordinates(residuals, lambda)) {
    return ExtrapolationCoefficients{std::move(*alpha), false};
  }
  auto out = ExtrapolationCoefficients::fixed_point(static_cast<std::size_t>(k));
  out.degenerate = true;
  return out;
}

ExtrapolationCoefficients solve_coefficients(const QrWindow& qr, double reg_scale) {
  const auto k = static_cast<Eigen::Index>(qr.size());
  if (k == 0) throw ConfigError("solve_coefficients: empty QR window");
  if (k == 1) return ExtrapolationCoefficients::fixed_point(1);

  const double lambda = reg_scale * qr.frobenius_norm_sq();
  const Vector z = qr.solve_gram(Vector::Ones(k), lambda);
  const double total = z.sum();
  if (!z.allFinite() || !std::isfinite(total) || std::abs(total) < kTinySum) {
    auto out = ExtrapolationCoefficients::fixed_point(static_cast<std::size_t>(k));
    out.degenerate = true;
    return out;
  }
  // The window is oldest first; coefficients are newest first.
  return ExtrapolationCoefficients{z.reverse() / total, false};
}

ExtrapolationCoefficients enforce_coefficient_bound(ExtrapolationCoefficients coefficients,
                                                    double m_alpha) {
  if (coefficients.l1_norm() <= m_alpha) return coefficients;
  return ExtrapolationCoefficients::fixed_point(static_cast<std::size_t>(coefficients.alpha.size()));
}

Vector extrapolate(const ResidualHistory& history, const Vector& alpha) {
  if (static_cast<std::size_t>(alpha.size()) != history.size() || history.empty()) {
    throw ConfigError("extrapolate: coefficient count does not match history length");
  }
  Vector out = alpha(0) * history.g(0);
  for (std::size_t i = 1; i < history.size(); ++i) {
    out.noalias() += alpha(static_cast<Eigen::Index>(i)) * history.g(i);
  }
  return out;
}

Vector averaged_point(const ResidualHistory& history, const Vector& alpha) {
  if (static_cast<std::size_t>(alpha.size()) != history.size() || history.empty()) {
    throw ConfigError("averaged_point: coefficient count does not match history length");
  }
  Vector out = alpha(0) * (history.g(0) - history.r(0));
  for (std::size_t i = 1; i < history.size(); ++i) {
    out.noalias() += alpha(static_cast<Eigen::Index>(i)) * (history.g(i) - history.r(i));
  }
  return out;
}

namespace {
std::size_t window_capacity(std::size_t m) {
  return m == std::numeric_limits<std::size_t>::max() ? m : m + 1;
}
}  // namespace

AndersonAccelerator::AndersonAccelerator(AAConfig config)
    : config_(config), history_(window_capacity(config.m)) {
  config_.validate();
}

void AndersonAccelerator::reset() {
  history_.clear();
  if (qr_) qr_->clear();
}

AAStep AndersonAccelerator::step(const Vector& g, const Vector& y) {
  if (g.size() != y.size()) throw ConfigError("AndersonAccelerator::step: length mismatch");
  const bool use_qr = config_.uses_qr();
  if (use_qr) {
    if (!qr_ || qr_->dimension() != static_cast<std::size_t>(g.size())) {
      qr_.emplace(static_cast<std::size_t>(g.size()), history_.capacity());
      history_.clear();
    } else if (qr_->size() != history_.size()) {
      // A zero residual could not enter the factor; restart the window.
      history_.clear();
      qr_->clear();
    }
  }
  const bool evicted = history_.push(g, g - y);

  AAStep out;
  ExtrapolationCoefficients solved = use_qr ? solve_qr(evicted) : solve_normal();
  out.bound_reset = !(solved.l1_norm() <= config_.m_alpha);
  out.coefficients = enforce_coefficient_bound(std::move(solved), config_.m_alpha);
  out.y_next = extrapolate(history_, out.coefficients.alpha);
  return out;
}

ExtrapolationCoefficients AndersonAccelerator::solve_normal() {
  auto coefficients = solve_coefficients(history_.residual_matrix(), config_.reg_scale);
  if (coefficients.degenerate && history_.size() > 1) {
    history_.drop_oldest();
    coefficients = solve_coefficients(history_.residual_matrix(), config_.reg_scale);
  }
  return coefficients;
}

ExtrapolationCoefficients AndersonAccelerator::solve_qr(bool evicted) {
  QrWindow& qr = *qr_;
  if (evicted) qr.remove_oldest();
  const Vector& newest = history_.r(0);
  if (qr.append(newest) != QrWindow::AppendStatus::ok) {
    // r_k = R_old c: the combination (1, -c) / (1 - sum c) has zero
    // residual. The factor stays without r_k, so the next step restarts.
    if (qr.size() > 0) {
      const Vector c = qr.least_squares(newest);
      const double denom = 1.0 - c.sum();
      if (c.allFinite() && std::abs(denom) >= kInSpanDenominator * std::max(1.0, c.lpNorm<1>())) {
        ExtrapolationCoefficients out;
        out.alpha.resize(c.size() + 1);
        out.alpha(0) = 1.0;
        out.alpha.tail(c.size()) = -c.reverse();
        out.alpha /= denom;
        return out;
      }
    }
    bool recovered = false;
    if (history_.size() > 1) {
      history_.drop_oldest();
      qr.remove_oldest();
      recovered = qr.append(newest) == QrWindow::AppendStatus::ok;
    }
    if (!recovered) {
      history_.keep_newest(1);
      qr.clear();
      (void)qr.append(newest);
      auto out = ExtrapolationCoefficients::fixed_point(1);
      out.degenerate = true;
      return out;
    }
  }
  return solve_coefficients(qr, config_.reg_scale);
}

Vector AndersonAccelerator::averaged_point(const Vector& alpha) const {
  return aaprox::averaged_point(history_, alpha);
}

AndersonIteration::AndersonIteration(FixedPointMap map, Vector y0, AAConfig config)
    : map_(std::move(map)), y_(std::move(y0)), engine_(config) {
  if (!map_) throw ConfigError("AndersonIteration: empty map");
}

const AAStep& AndersonIteration::step() {
  Vector g = map_(y_);
  last_ = engine_.step(g, y_);
  y_ = last_.y_next;
  ++k_;
  return last_;
}

}  // namespace aaprox
