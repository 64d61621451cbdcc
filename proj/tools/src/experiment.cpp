#include "aaprox_tools/experiment.hpp"

#include "aaprox_tools/instances.hpp"

#include <aaprox/counterexample.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <set>

namespace aaprox::tools {
namespace {

using nlohmann::json;

constexpr std::pair<ProblemKind, const char*> kProblems[] = {
    {ProblemKind::logreg_box, "logreg_box"}, {ProblemKind::nnls, "nnls"},
    {ProblemKind::kl_l1, "kl_l1"},           {ProblemKind::quadratic, "quadratic"},
    {ProblemKind::counterexample, "counterexample"},
};

constexpr std::pair<MethodKind, const char*> kMethods[] = {
    {MethodKind::pga, "pga"},
    {MethodKind::aa_pga, "aa_pga"},
    {MethodKind::guarded_aa_pga, "guarded_aa_pga"},
    {MethodKind::nesterov, "nesterov"},
    {MethodKind::bpg, "bpg"},
    {MethodKind::guarded_aa_bpg, "guarded_aa_bpg"},
};

std::pair<Eigen::Index, Eigen::Index> default_dims(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kl_l1: return {100, 50};
    case ProblemKind::quadratic: return {30, 30};
    default: return {200, 100};
  }
}

std::pair<Eigen::Index, Eigen::Index> dims_of(const ExperimentConfig& c) {
  return c.synth_dims ? *c.synth_dims : default_dims(c.problem);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string to_string(ProblemKind kind) {
  for (const auto& [k, name] : kProblems) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::string to_string(MethodKind kind) {
  for (const auto& [k, name] : kMethods) {
    if (k == kind) return name;
  }
  return "unknown";
}

ProblemKind parse_problem(const std::string& name) {
  for (const auto& [k, n] : kProblems) {
    if (name == n) return k;
  }
  throw ConfigError("unknown problem '" + name + "'");
}

MethodKind parse_method(const std::string& name) {
  for (const auto& [k, n] : kMethods) {
    if (name == n) return k;
  }
  throw ConfigError("unknown method '" + name + "'");
}

bool is_bregman(MethodKind kind) { return kind == MethodKind::bpg || kind == MethodKind::guarded_aa_bpg; }

void ExperimentConfig::validate() const {
  for (MethodKind method_kind : methods()) {
    if (problem == ProblemKind::kl_l1 && !is_bregman(method_kind)) {
      throw ConfigError("kl_l1 needs a Bregman method (bpg or guarded_aa_bpg), got " + to_string(method_kind));
    }
  }
  if (max_iters == 0) throw ConfigError("max_iters must be positive");
  if (!(tol >= 0.0)) throw ConfigError("tol must be nonnegative");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be nonnegative");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be nonnegative");
  if (gamma_override && (!(*gamma_override > 0.0) || !std::isfinite(*gamma_override))) {
    throw ConfigError("gamma must be positive");
  }
  if (!(condition >= 1.0)) throw ConfigError("condition must be >= 1");
  if (data_path && synth_dims) throw ConfigError("give either a data file or synthetic dimensions, not both");
  if (data_path && (problem == ProblemKind::quadratic || problem == ProblemKind::counterexample)) {
    throw ConfigError(to_string(problem) + " does not read data files");
  }
  if (synth_dims && (synth_dims->first < 1 || synth_dims->second < 1)) {
    throw ConfigError("synthetic dimensions must be positive");
  }
  AAConfig aa;
  aa.m = m;
  aa.reg_scale = reg_scale;
  aa.m_alpha = m_alpha;
  aa.validate();
}

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"problem", to_string(c.problem)},
           {"method", to_string(c.method)},
           {"m", c.m},
           {"reg_scale", c.reg_scale},
           {"mu", c.mu},
           {"lambda", c.lambda},
           {"max_iters", c.max_iters},
           {"tol", c.tol},
           {"seed", c.seed},
           {"condition", c.condition},
           {"csv_has_header", c.csv_has_header},
           {"descent", c.descent == DescentTest::composite ? "composite" : "smooth_only"},
           {"flush_on_fallback", c.flush_on_fallback},
           {"x0", c.x0},
           {"out", c.out}};
  j["m_alpha"] = std::isfinite(c.m_alpha) ? json(c.m_alpha) : json(nullptr);
  j["gamma"] = c.gamma_override ? json(*c.gamma_override) : json(nullptr);
  j["data"] = c.data_path ? json(*c.data_path) : json(nullptr);
  j["synth"] = c.synth_dims ? json::array({c.synth_dims->first, c.synth_dims->second}) : json(nullptr);
  json methods = json::array();
  for (MethodKind k : c.compare) methods.push_back(to_string(k));
  j["compare"] = methods;
}

void from_json(const json& j, ExperimentConfig& c) {
  static const std::set<std::string> known = {
      "problem", "method", "compare",        "m",    "reg_scale", "m_alpha",          "mu",
      "lambda",  "gamma",  "max_iters",      "tol",  "seed",      "data",             "synth",
      "condition", "csv_has_header", "descent", "flush_on_fallback", "x0", "out"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");
  }
  try {
    if (j.contains("problem")) c.problem = parse_problem(j.at("problem").get<std::string>());
    if (j.contains("method")) c.method = parse_method(j.at("method").get<std::string>());
    if (j.contains("compare")) {
      c.compare.clear();
      for (const auto& name : j.at("compare")) c.compare.push_back(parse_method(name.get<std::string>()));
    }
    if (j.contains("m")) c.m = j.at("m").get<std::size_t>();
    if (j.contains("reg_scale")) c.reg_scale = j.at("reg_scale").get<double>();
    if (j.contains("m_alpha")) {
      c.m_alpha = j.at("m_alpha").is_null() ? std::numeric_limits<double>::infinity()
                                            : j.at("m_alpha").get<double>();
    }
    if (j.contains("mu")) c.mu = j.at("mu").get<double>();
    if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
    if (j.contains("gamma")) {
      if (j.at("gamma").is_null()) {
        c.gamma_override.reset();
      } else {
        c.gamma_override = j.at("gamma").get<double>();
      }
    }
    if (j.contains("max_iters")) c.max_iters = j.at("max_iters").get<std::size_t>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("data")) {
      if (j.at("data").is_null()) {
        c.data_path.reset();
      } else {
        c.data_path = j.at("data").get<std::string>();
      }
    }
    if (j.contains("synth")) {
      if (j.at("synth").is_null()) {
        c.synth_dims.reset();
      } else {
        const auto dims = j.at("synth").get<std::vector<Eigen::Index>>();
        if (dims.size() != 2) throw ConfigError("synth must be [M, n]");
        c.synth_dims = std::make_pair(dims[0], dims[1]);
      }
    }
    if (j.contains("condition")) c.condition = j.at("condition").get<double>();
    if (j.contains("csv_has_header")) c.csv_has_header = j.at("csv_has_header").get<bool>();
    if (j.contains("descent")) {
      const auto d = j.at("descent").get<std::string>();
      if (d == "composite") {
        c.descent = DescentTest::composite;
      } else if (d == "smooth_only") {
        c.descent = DescentTest::smooth_only;
      } else {
        throw ConfigError("descent must be composite or smooth_only");
      }
    }
    if (j.contains("flush_on_fallback")) c.flush_on_fallback = j.at("flush_on_fallback").get<bool>();
    if (j.contains("x0")) c.x0 = j.at("x0").get<double>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

std::optional<Dataset> load_data(const ExperimentConfig& config) {
  if (config.problem == ProblemKind::counterexample || config.problem == ProblemKind::quadratic) {
    return std::nullopt;
  }
  if (config.data_path) {
    if (ends_with(*config.data_path, ".csv")) return parse_dense_csv_file(*config.data_path, config.csv_has_header);
    return parse_libsvm_file(*config.data_path);
  }
  const auto [rows, cols] = dims_of(config);
  switch (config.problem) {
    case ProblemKind::logreg_box: return generate_logreg_instance(rows, cols, config.condition, config.seed);
    case ProblemKind::nnls: return generate_nnls_instance(rows, cols, config.condition, config.seed);
    case ProblemKind::kl_l1: return generate_kl_instance(rows, cols, config.seed);
    default: return std::nullopt;
  }
}

AssembledProblem assemble_problem(const ExperimentConfig& config, const std::optional<Dataset>& data) {
  config.validate();
  AssembledProblem out;
  const bool needs_data = config.problem == ProblemKind::logreg_box || config.problem == ProblemKind::nnls ||
                          config.problem == ProblemKind::kl_l1;
  if (needs_data && !data) throw ConfigError(to_string(config.problem) + " needs a dataset");

  KernelPtr kernel = make_kernel("energy");
  switch (config.problem) {
    case ProblemKind::logreg_box:
      out.composite.f = std::make_shared<LogisticLoss>(data->a, data->b, LogisticOptions{config.mu, false});
      out.composite.h = BoxIndicator{-1.0, 1.0};
      out.x0 = Vector::Zero(data->a.cols());
      break;
    case ProblemKind::nnls:
      out.composite.f = std::make_shared<LeastSquaresLoss>(data->a, data->b, LeastSquaresOptions{config.mu, false});
      out.composite.h = NonnegIndicator{};
      out.x0 = Vector::Zero(data->a.cols());
      break;
    case ProblemKind::kl_l1:
      out.composite.f = std::make_shared<KlLoss>(data->a, data->b);
      out.composite.h = NonnegL1{config.lambda};
      out.x0 = Vector::Ones(data->a.cols());
      kernel = make_kernel("shannon");
      break;
    case ProblemKind::quadratic: {
      const auto [rank, n] = dims_of(config);
      auto inst = generate_quadratic_instance(n, std::min(rank, n), 1.0, config.condition, config.seed);
      out.composite.f = std::make_shared<QuadraticLoss>(std::move(inst.hessian), std::move(inst.linear));
      out.x0 = Vector::Zero(n);
      break;
    }
    case ProblemKind::counterexample:
      out.composite.f = cycle::make_loss();
      out.x0 = Vector::Constant(1, config.x0);
      break;
  }
  out.gamma = config.gamma_override ? *config.gamma_override : 1.0 / out.composite.f->smoothness();
  if (!(out.gamma > 0.0) || !std::isfinite(out.gamma)) throw ConfigError("could not derive a finite step size");

  bool any_bregman = config.problem == ProblemKind::kl_l1;
  for (MethodKind k : config.methods()) any_bregman = any_bregman || is_bregman(k);
  if (any_bregman) out.bregman = BregmanProblem{out.composite.f, out.composite.h, kernel, out.gamma};
  return out;
}

SolveReport run_method(const AssembledProblem& problem, MethodKind method, const ExperimentConfig& config) {
  RunOptions options;
  options.tol = config.tol;
  options.max_iters = config.max_iters;
  options.aa.m = config.m;
  options.aa.reg_scale = config.reg_scale;
  options.aa.m_alpha = config.m_alpha;
  options.aa.flush_on_fallback = config.flush_on_fallback;
  options.descent = config.descent;

  const auto bregman = [&]() -> const BregmanProblem& {
    if (!problem.bregman) throw ConfigError("problem was assembled without a kernel");
    return *problem.bregman;
  };
  switch (method) {
    case MethodKind::pga: return run_pga(problem.composite, problem.x0, problem.gamma, options);
    case MethodKind::aa_pga: return run_aa_pga(problem.composite, problem.x0, problem.gamma, options);
    case MethodKind::guarded_aa_pga: return run_guarded_aa_pga(problem.composite, problem.x0, problem.gamma, options);
    case MethodKind::nesterov: return run_nesterov_pga(problem.composite, problem.x0, problem.gamma, options);
    case MethodKind::bpg: return run_bpg(bregman(), problem.x0, options);
    case MethodKind::guarded_aa_bpg:
      return run_guarded_aa_bpg(bregman(), dual_start(bregman(), problem.x0), options);
  }
  throw ConfigError("unhandled method");
}

ExperimentResult run_instance(const ExperimentConfig& config, const AssembledProblem& problem, std::size_t threads) {
  const auto methods = config.methods();
  ExperimentResult result;
  result.runs.reserve(methods.size());
  threads = std::max<std::size_t>(1, threads);
  for (std::size_t start = 0; start < methods.size(); start += threads) {
    const std::size_t stop = std::min(methods.size(), start + threads);
    if (threads == 1) {
      result.runs.push_back({methods[start], run_method(problem, methods[start], config)});
      continue;
    }
    std::vector<std::future<SolveReport>> batch;
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, [&, i] { return run_method(problem, methods[i], config); }));
    }
    for (std::size_t i = start; i < stop; ++i) result.runs.push_back({methods[i], batch[i - start].get()});
  }
  result.best_objective = std::numeric_limits<double>::infinity();
  for (const auto& run : result.runs) {
    for (const auto& rec : run.report.trace) {
      if (std::isfinite(rec.objective)) result.best_objective = std::min(result.best_objective, rec.objective);
    }
  }
  return result;
}

void write_trace_csv(std::ostream& out, const SolveReport& report, double best_objective) {
  const auto old_precision = out.precision(17);
  out << "iter,objective,subopt,residual,step_kind,elapsed_s\n";
  for (const auto& rec : report.trace) {
    out << rec.iter << ',' << rec.objective << ',' << (rec.objective - best_objective) << ',' << rec.residual << ','
        << to_string(rec.kind) << ',' << rec.elapsed_s << '\n';
  }
  out.precision(old_precision);
}

nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentResult& result) {
  json runs = json::array();
  const bool single = config.compare.empty();
  for (const auto& run : result.runs) {
    const auto& rep = run.report;
    json entry{{"method", to_string(run.method)},
               {"iterations", rep.iterations()},
               {"termination", std::string(to_string(rep.termination))},
               {"aa_accepted", rep.aa_accepted},
               {"aa_rejected", rep.aa_rejected},
               {"trace", single ? "trace.csv" : "trace_" + to_string(run.method) + ".csv"}};
    entry["final_objective"] = rep.trace.empty() ? json(nullptr) : json(rep.trace.back().objective);
    entry["wall_time_s"] = rep.trace.empty() ? 0.0 : rep.trace.back().elapsed_s;
    runs.push_back(std::move(entry));
  }
  json out{{"config", config}, {"runs", runs}};
  out["best_objective"] = std::isfinite(result.best_objective) ? json(result.best_objective) : json(nullptr);
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads) {
  config.validate();
  const auto data = load_data(config);
  const auto problem = assemble_problem(config, data);

  namespace fs = std::filesystem;
  const fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + config.out);

  const ExperimentResult result = run_instance(config, problem, threads);
  for (const auto& run : result.runs) {
    const fs::path file = dir / (config.compare.empty() ? "trace.csv" : "trace_" + to_string(run.method) + ".csv");
    std::ofstream csv(file);
    if (!csv) throw std::runtime_error("cannot write " + file.string());
    write_trace_csv(csv, run.report, result.best_objective);
  }
  std::ofstream summary(dir / "summary.json");
  if (!summary) throw std::runtime_error("cannot write summary.json in " + config.out);
  summary << std::setw(2) << summary_json(config, result) << '\n';
  return result;
}

std::size_t threads_from_env() {
  const char* value = std::getenv("AAPROX_THREADS");
  if (!value) return 1;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (end == value || *end != '\0' || parsed < 1) return 1;
  return static_cast<std::size_t>(parsed);
}

}  // namespace aaprox::tools
