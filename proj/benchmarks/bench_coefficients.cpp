#include <aaprox/anderson.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace aaprox;

namespace {

Vector noise(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> d;
  Vector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// One accelerated step on a noisy stream; args are (n, m).
void run_engine(benchmark::State& state, CoefficientMethod method) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  AAConfig cfg;
  cfg.m = static_cast<std::size_t>(state.range(1));
  cfg.method = method;
  AndersonAccelerator engine(cfg);
  std::mt19937_64 rng(1);
  Vector y = Vector::Zero(n);
  for (std::size_t i = 0; i <= cfg.m; ++i) y = engine.step(noise(rng, n), y).y_next;
  const Vector g = noise(rng, n);
  for (auto _ : state) {
    auto step = engine.step(g + 1e-3 * y, y);
    benchmark::DoNotOptimize(step.y_next.data());
    y = std::move(step.y_next);
  }
}

void BM_NormalEquations(benchmark::State& state) { run_engine(state, CoefficientMethod::normal_equations); }
void BM_QrUpdates(benchmark::State& state) { run_engine(state, CoefficientMethod::qr_updates); }

}  // namespace

BENCHMARK(BM_NormalEquations)->ArgsProduct({{500, 5000, 50000}, {5, 10, 20}});
BENCHMARK(BM_QrUpdates)->ArgsProduct({{500, 5000, 50000}, {5, 10, 20}});
