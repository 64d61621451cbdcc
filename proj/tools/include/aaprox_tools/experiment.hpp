#pragma once

#include "aaprox_tools/dataset.hpp"

#include <aaprox/bregman.hpp>
#include <aaprox/pga.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace aaprox::tools {

enum class ProblemKind { logreg_box, nnls, kl_l1, quadratic, counterexample };
enum class MethodKind { pga, aa_pga, guarded_aa_pga, nesterov, bpg, guarded_aa_bpg };

std::string to_string(ProblemKind kind);
std::string to_string(MethodKind kind);
ProblemKind parse_problem(const std::string& name);
MethodKind parse_method(const std::string& name);
bool is_bregman(MethodKind kind);

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::logreg_box;
  MethodKind method = MethodKind::guarded_aa_pga;
  /// Comparison mode when non-empty; `method` is then ignored.
  std::vector<MethodKind> compare;
  std::size_t m = 5;
  double reg_scale = 1e-10;
  double m_alpha = std::numeric_limits<double>::infinity();
  double mu = 0.0;
  double lambda = 1e-3;
  std::optional<double> gamma_override;
  std::size_t max_iters = 1000;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  std::optional<std::string> data_path;
  std::optional<std::pair<Eigen::Index, Eigen::Index>> synth_dims;
  /// Singular value ratio of synthetic logreg/nnls matrices, eigenvalue
  /// ratio for quadratics.
  double condition = 1e3;
  bool csv_has_header = false;
  DescentTest descent = DescentTest::composite;
  bool flush_on_fallback = false;
  /// Start of the one-dimensional counterexample problem.
  double x0 = 2.1;
  std::string out = "out";

  /// Throws ConfigError on incompatible settings.
  void validate() const;
  std::vector<MethodKind> methods() const { return compare.empty() ? std::vector{method} : compare; }
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// Loads the dataset named by the config, or generates a synthetic one.
/// Returns an empty optional for problems that take no data.
std::optional<Dataset> load_data(const ExperimentConfig& config);

/// Solver-ready problem with step size and start.
struct AssembledProblem {
  CompositeProblem composite;
  /// Set for kl_l1 and whenever a Bregman method runs (energy kernel for
  /// Euclidean problems).
  std::optional<BregmanProblem> bregman;
  double gamma = 0.0;
  Vector x0;
};

AssembledProblem assemble_problem(const ExperimentConfig& config, const std::optional<Dataset>& data);

/// Runs one method on an assembled problem.
SolveReport run_method(const AssembledProblem& problem, MethodKind method, const ExperimentConfig& config);

struct MethodRun {
  MethodKind method;
  SolveReport report;
};

struct ExperimentResult {
  std::vector<MethodRun> runs;
  double best_objective = 0.0;
};

/// Runs every configured method on one instance. Methods run on up to
/// `threads` threads; results are ordered as configured.
ExperimentResult run_instance(const ExperimentConfig& config, const AssembledProblem& problem,
                              std::size_t threads = 1);

/// Full pipeline: data, assembly, runs, then `trace.csv` (single method) or
/// `trace_<method>.csv` (comparison) and `summary.json` under config.out.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads = 1);

/// CSV with columns iter,objective,subopt,residual,step_kind,elapsed_s.
void write_trace_csv(std::ostream& out, const SolveReport& report, double best_objective);

nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentResult& result);

/// Value of AAPROX_THREADS, at least 1; 1 when unset or invalid.
std::size_t threads_from_env();

}  // namespace aaprox::tools
