#pragma once

#include "aaprox/qr_window.hpp"
#include "aaprox/types.hpp"

#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace aaprox {

/// How the extrapolation coefficients are computed.
enum class CoefficientMethod {
  automatic,         ///< QR updates for m > 3, normal equations otherwise.
  normal_equations,  ///< Rebuild and factor R^T R every step.
  qr_updates,        ///< Maintain a sliding thin QR of the residual matrix.
};

struct AAConfig {
  /// History depth; the window holds m + 1 residuals.
  std::size_t m = 5;
  /// Tikhonov weight factor: the penalty is reg_scale * ||R||_F^2 * ||alpha||^2.
  double reg_scale = 1e-10;
  /// l1 bound on the coefficients; exceeding it resets to a fixed-point step.
  double m_alpha = std::numeric_limits<double>::infinity();
  CoefficientMethod method = CoefficientMethod::automatic;
  /// Clear the history after a guarded step falls back to the plain step.
  bool flush_on_fallback = false;

  void validate() const;
  bool uses_qr() const;
};

/// Sliding window of (g_i, r_i) pairs, newest first.
class ResidualHistory {
 public:
  struct Entry {
    Vector g;
    Vector r;
  };

  explicit ResidualHistory(std::size_t capacity);

  /// Adds a pair at the front. Returns true when the oldest pair was evicted.
  bool push(Vector g, Vector r);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return entries_.empty(); }

  /// Entry i corresponds to iterate k - i.
  const Vector& g(std::size_t i) const { return entries_.at(i).g; }
  const Vector& r(std::size_t i) const { return entries_.at(i).r; }

  void drop_oldest();
  void keep_newest(std::size_t count);
  void clear() { entries_.clear(); }

  /// Residual matrix [r_k, ..., r_{k-m_k}].
  Matrix residual_matrix() const;

 private:
  std::size_t capacity_;
  std::deque<Entry> entries_;
};

/// Coefficients alpha of an affine combination, ordered newest first.
struct ExtrapolationCoefficients {
  Vector alpha;
  /// The least-squares problem could not be solved and alpha is the pure
  /// fixed-point choice.
  bool degenerate = false;

  double l1_norm() const { return alpha.lpNorm<1>(); }
  static ExtrapolationCoefficients fixed_point(std::size_t length);
};

/// Minimizes ||R a||^2 + reg_scale ||R||_F^2 ||a||^2 subject to sum(a) = 1.
///
/// Solves (R^T R + reg_scale ||R||_F^2 I) z = 1 and normalizes. When that
/// matrix is numerically singular but the constrained problem still has a
/// unique minimizer, the minimizer is computed in the coordinates of the
/// constraint's null space. Returns the fixed-point coefficients with the
/// `degenerate` flag when both fail.
ExtrapolationCoefficients solve_coefficients(const Matrix& residuals, double reg_scale);

/// Same problem, using an up-to-date QR window of the residual matrix
/// (columns oldest first). Degenerate when 1^T z is nonfinite or tiny.
ExtrapolationCoefficients solve_coefficients(const QrWindow& qr, double reg_scale);

/// Returns alpha unchanged when ||alpha||_1 <= m_alpha, otherwise weight 1 on
/// the newest entry.
ExtrapolationCoefficients enforce_coefficient_bound(ExtrapolationCoefficients coefficients,
                                                    double m_alpha);

/// Sum_i alpha_i g_{k-i}.
Vector extrapolate(const ResidualHistory& history, const Vector& alpha);

/// Sum_i alpha_i y_{k-i} with y_{k-i} = g_{k-i} - r_{k-i}.
Vector averaged_point(const ResidualHistory& history, const Vector& alpha);

/// Result of one accelerated update.
struct AAStep {
  Vector y_next;
  ExtrapolationCoefficients coefficients;
  /// The l1 safeguard replaced the least-squares coefficients.
  bool bound_reset = false;
};

/// Anderson acceleration engine: residual bookkeeping, coefficient solve,
/// safeguard and extrapolation. Single owner; not thread safe.
class AndersonAccelerator {
 public:
  explicit AndersonAccelerator(AAConfig config);

  /// Records g_k = g(y_k) and r_k = g_k - y_k, then returns the next point.
  AAStep step(const Vector& g, const Vector& y);

  /// Sum_i alpha_i y_{k-i} for coefficients from the last step.
  Vector averaged_point(const Vector& alpha) const;

  void reset();

  const ResidualHistory& history() const { return history_; }
  const AAConfig& config() const { return config_; }
  /// QR window when the QR path is active and initialized, else nullptr.
  const QrWindow* qr() const { return qr_ ? &*qr_ : nullptr; }

 private:
  ExtrapolationCoefficients solve_normal();
  ExtrapolationCoefficients solve_qr(bool evicted);

  AAConfig config_;
  ResidualHistory history_;
  std::optional<QrWindow> qr_;
};

using FixedPointMap = std::function<Vector(const Vector&)>;

/// Algorithm state for driving a bare fixed-point map.
class AndersonIteration {
 public:
  AndersonIteration(FixedPointMap map, Vector y0, AAConfig config);

  /// One iteration: evaluates g(y_k), pushes the residual, solves for the
  /// coefficients, applies the safeguard and extrapolates. The first call
  /// yields y_1 = g(y_0).
  const AAStep& step();

  const Vector& current() const { return y_; }
  /// g(y_k) - y_k from the most recent step.
  const Vector& last_residual() const { return history().r(0); }
  std::size_t iteration() const { return k_; }
  const ResidualHistory& history() const { return engine_.history(); }
  const AndersonAccelerator& engine() const { return engine_; }

 private:
  FixedPointMap map_;
  Vector y_;
  AndersonAccelerator engine_;
  AAStep last_;
  std::size_t k_ = 0;
};

}  // namespace aaprox
