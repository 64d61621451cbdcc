#pragma once

#include "aaprox/anderson.hpp"
#include "aaprox/types.hpp"

#include <chrono>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace aaprox {

/// How an iterate was produced.
enum class StepKind { plain, aa, fallback };

enum class Termination { tolerance, max_iterations, degenerate };

std::string_view to_string(StepKind kind);
std::string_view to_string(Termination reason);

/// Sufficient-descent test used by the guarded drivers.
enum class DescentTest {
  /// Objective phi = f + h against the decrease predicted by the proximal
  /// gradient step. Identical to `smooth_only` when h = 0.
  composite,
  /// Smooth part only, f(x_test) <= f(x_k) - gamma/2 ||grad f(x_k)||^2
  /// (Euclidean) or the relative-smoothness model bound (Bregman).
  smooth_only,
};

/// trace[k] describes x_k.
struct IterationRecord {
  std::size_t iter = 0;
  double objective = 0.0;
  double residual = 0.0;
  StepKind kind = StepKind::plain;
  double elapsed_s = 0.0;
};

struct SolveReport {
  Vector x;
  Vector y;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::max_iterations;
  std::size_t aa_accepted = 0;
  std::size_t aa_rejected = 0;

  /// Steps taken; the trace also holds the starting point.
  std::size_t iterations() const { return trace.empty() ? 0 : trace.size() - 1; }
};

/// Called with (k, x_k, y_k) for every iterate, including k = 0.
using IterateObserver = std::function<void(std::size_t, const Vector&, const Vector&)>;

struct RunOptions {
  /// Stop when ||r_k|| <= tol * max(1, ||g_k||).
  double tol = 1e-10;
  std::size_t max_iters = 1000;
  AAConfig aa{};
  DescentTest descent = DescentTest::composite;
  IterateObserver observer;
};

/// Wall-clock helper for trace timestamps.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace aaprox
