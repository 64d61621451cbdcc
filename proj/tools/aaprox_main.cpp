#include "aaprox_tools/experiment.hpp"

#include <aaprox/counterexample.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using aaprox::tools::ExperimentConfig;

std::pair<Eigen::Index, Eigen::Index> parse_dims(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--synth", "expected M,n");
  try {
    return {std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--synth", "expected M,n with integers");
  }
}

int run_counterexample_command(double x0, std::size_t cycles, const std::string& out_dir) {
  namespace cyc = aaprox::cycle;
  const auto report = cyc::run_cycle(x0, cycles);
  if (!report.in_proven_range) {
    std::cerr << "warning: x0 = " << x0 << " is outside [2.01, 246.98]; the cycle is not guaranteed\n";
  }
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / "trace.csv";
  std::ofstream csv(path);
  if (!csv) {
    std::cerr << "error: cannot write " << path << "\n";
    return 1;
  }
  csv.precision(17);
  csv << "iter,x,closed_form,objective\n";
  for (std::size_t k = 0; k < report.iterates.size(); ++k) {
    csv << k << ',' << report.iterates[k] << ',' << report.closed_form[k] << ',' << cyc::value(report.iterates[k])
        << '\n';
  }
  std::printf("iterations           %zu\n", report.iterates.size() - 1);
  std::printf("engine vs closed form %.3e\n", report.max_gap);
  std::printf("x_{4n+3}             %.12f\n", report.last_4n3);
  std::printf("x_{4n+4}             %.12f\n", report.last_4n4);
  std::printf("x_{4n+5}             %.12f\n", report.last_4n5);
  std::printf("x_{4n+6}             %.12f\n", report.last_4n6);
  std::printf("249 (sqrt5 - 2)      %.12f\n", cyc::inner_limit());
  std::printf("trace                %s\n", path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anderson-accelerated proximal gradient experiments"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string config_path, problem, method, compare, synth, descent, gamma_text;
  double mu = 0, lambda = 0, tol = 0, condition = 0, reg = 0;
  std::size_t m = 0, max_iters = 0;
  std::uint64_t seed = 0;
  std::string data, out;
  bool csv_header = false, flush = false;

  auto* run = app.add_subcommand("run", "Solve one instance and write trace.csv and summary.json");
  run->add_option("--config", config_path, "JSON config; flags override its values")->check(CLI::ExistingFile);
  run->add_option("--problem", problem, "logreg_box | nnls | kl_l1 | quadratic | counterexample");
  run->add_option("--method", method, "pga | aa_pga | guarded_aa_pga | nesterov | bpg | guarded_aa_bpg");
  run->add_option("--compare", compare, "Comma separated methods to run on the same instance");
  run->add_option("--m", m, "History depth");
  run->add_option("--reg", reg, "Tikhonov factor of the coefficient solve");
  run->add_option("--mu", mu, "Ridge weight");
  run->add_option("--lambda", lambda, "l1 weight of kl_l1");
  run->add_option("--gamma", gamma_text, "Step size; default 1/L");
  run->add_option("--max-iters", max_iters, "Iteration budget");
  run->add_option("--tol", tol, "Relative residual tolerance");
  run->add_option("--seed", seed, "Seed of synthetic instances");
  run->add_option("--data", data, "LIBSVM file, or dense CSV when the name ends in .csv");
  run->add_option("--synth", synth, "Synthetic instance size M,n");
  run->add_option("--condition", condition, "Singular value ratio of synthetic matrices");
  run->add_option("--descent", descent, "Guard test: composite | smooth_only");
  run->add_flag("--flush-on-fallback", flush, "Clear the history after a rejected step");
  run->add_flag("--csv-has-header", csv_header, "Skip the first row of a CSV data file");
  run->add_option("--out", out, "Output directory");

  double cx0 = 2.1;
  std::size_t cycles = 50;
  std::string cout_dir = "out";
  auto* counter = app.add_subcommand("counterexample", "Plain AA gradient descent on the cycling example");
  counter->add_option("--x0", cx0, "Start point");
  counter->add_option("--cycles", cycles, "Number of four-step cycles");
  counter->add_option("--out", cout_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (counter->parsed()) return run_counterexample_command(cx0, cycles, cout_dir);

    if (!config_path.empty()) {
      std::ifstream in(config_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << config_path << ": " << e.what() << "\n";
        return 2;
      }
      aaprox::tools::from_json(j, config);
    }
    if (run->count("--problem")) config.problem = aaprox::tools::parse_problem(problem);
    if (run->count("--method")) config.method = aaprox::tools::parse_method(method);
    if (run->count("--compare")) {
      config.compare.clear();
      std::stringstream ss(compare);
      std::string name;
      while (std::getline(ss, name, ',')) config.compare.push_back(aaprox::tools::parse_method(name));
    }
    if (run->count("--m")) config.m = m;
    if (run->count("--reg")) config.reg_scale = reg;
    if (run->count("--mu")) config.mu = mu;
    if (run->count("--lambda")) config.lambda = lambda;
    if (run->count("--gamma")) config.gamma_override = std::stod(gamma_text);
    if (run->count("--max-iters")) config.max_iters = max_iters;
    if (run->count("--tol")) config.tol = tol;
    if (run->count("--seed")) config.seed = seed;
    if (run->count("--data")) {
      config.data_path = data;
      config.synth_dims.reset();
    }
    if (run->count("--synth")) {
      config.synth_dims = parse_dims(synth);
      config.data_path.reset();
    }
    if (run->count("--condition")) config.condition = condition;
    if (run->count("--descent")) {
      if (descent == "composite") {
        config.descent = aaprox::DescentTest::composite;
      } else if (descent == "smooth_only") {
        config.descent = aaprox::DescentTest::smooth_only;
      } else {
        throw aaprox::ConfigError("--descent must be composite or smooth_only");
      }
    }
    if (flush) config.flush_on_fallback = true;
    if (csv_header) config.csv_has_header = true;
    if (run->count("--out")) config.out = out;

    const auto result = aaprox::tools::run_experiment(config, aaprox::tools::threads_from_env());
    for (const auto& r : result.runs) {
      const auto& rep = r.report;
      std::printf("%-16s iters %-7zu objective %.12e  %s  aa %zu/%zu\n", aaprox::tools::to_string(r.method).c_str(),
                  rep.iterations(), rep.trace.empty() ? NAN : rep.trace.back().objective,
                  std::string(aaprox::to_string(rep.termination)).c_str(), rep.aa_accepted,
                  rep.aa_accepted + rep.aa_rejected);
    }
    std::printf("wrote %s\n", config.out.c_str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
