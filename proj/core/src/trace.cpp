#include "aaprox/trace.hpp"

namespace aaprox {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::plain: return "plain";
    case StepKind::aa: return "aa";
    case StepKind::fallback: return "fallback";
  }
  return "unknown";
}

std::string_view to_string(Termination reason) {
  switch (reason) {
    case Termination::tolerance: return "tol";
    case Termination::max_iterations: return "max_iters";
    case Termination::degenerate: return "degenerate";
  }
  return "unknown";
}

}  // namespace aaprox
