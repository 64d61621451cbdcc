#include <aaprox_tools/experiment.hpp>

#include <benchmark/benchmark.h>

using namespace aaprox;
using namespace aaprox::tools;

namespace {

// 200 iterations of a method on a seeded synthetic instance.
void run_solver(benchmark::State& state, ProblemKind problem, MethodKind method) {
  ExperimentConfig cfg;
  cfg.problem = problem;
  cfg.method = method;
  cfg.max_iters = 200;
  cfg.tol = 0.0;
  const auto p = assemble_problem(cfg, load_data(cfg));
  for (auto _ : state) {
    auto rep = run_method(p, method, cfg);
    benchmark::DoNotOptimize(rep.x.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(run_solver, logreg_pga, ProblemKind::logreg_box, MethodKind::pga);
BENCHMARK_CAPTURE(run_solver, logreg_guarded_aa, ProblemKind::logreg_box, MethodKind::guarded_aa_pga);
BENCHMARK_CAPTURE(run_solver, logreg_nesterov, ProblemKind::logreg_box, MethodKind::nesterov);
BENCHMARK_CAPTURE(run_solver, nnls_pga, ProblemKind::nnls, MethodKind::pga);
BENCHMARK_CAPTURE(run_solver, nnls_guarded_aa, ProblemKind::nnls, MethodKind::guarded_aa_pga);
BENCHMARK_CAPTURE(run_solver, kl_bpg, ProblemKind::kl_l1, MethodKind::bpg);
BENCHMARK_CAPTURE(run_solver, kl_guarded_aa_bpg, ProblemKind::kl_l1, MethodKind::guarded_aa_bpg);
BENCHMARK_MAIN();
