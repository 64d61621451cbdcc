#include "oracles.hpp"

#include <aaprox/bregman.hpp>
#include <aaprox/pga.hpp>

#include <gtest/gtest.h>

using namespace aaprox;

namespace {

BregmanProblem kl_problem(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols, double lambda) {
  std::mt19937_64 rng(seed);
  const Matrix a = oracle::random_matrix(rng, rows, cols, 0.0, 1.0);
  const Vector b = oracle::random_vector(rng, rows, 0.05, 1.0);
  auto f = std::make_shared<KlLoss>(DataMatrix(a), b);
  return {f, NonnegL1{lambda}, make_kernel("shannon"), 1.0 / f->smoothness()};
}

}  // namespace

TEST(BregmanProx, ZeroRegularizerIsIdentity) {
  std::mt19937_64 rng(91);
  for (const char* name : {"energy", "shannon", "burg", "fermi_dirac", "hellinger", "polynomial"}) {
    const Vector u = oracle::random_vector(rng, 3, 0.1, 0.9);
    EXPECT_EQ(bregman_prox(NoRegularizer{}, *make_kernel(name), 0.5, u), u) << name;
  }
}

TEST(BregmanProx, ShannonL1Example) {
  Vector u(2);
  u << 1.0, 2.0;
  const Vector x = bregman_prox(NonnegL1{0.1}, *make_kernel("shannon"), 1.0, u);
  EXPECT_NEAR(x(0), std::exp(-0.1), 1e-15);
  EXPECT_NEAR(x(1), 2.0 * std::exp(-0.1), 1e-15);
}

TEST(BregmanProx, ShannonSimplexExample) {
  Vector u(2);
  u << 1.0, 3.0;
  const Vector x = bregman_prox(SimplexIndicator{1.0}, *make_kernel("shannon"), 1.0, u);
  EXPECT_NEAR(x(0), 0.25, 1e-15);
  EXPECT_NEAR(x(1), 0.75, 1e-15);
}

TEST(BregmanProx, EnergyUsesEuclideanProx) {
  Vector u(3);
  u << -2.0, 0.5, 3.0;
  EXPECT_EQ(bregman_prox(BoxIndicator{-1.0, 1.0}, *make_kernel("energy"), 0.3, u), project_box(u, -1.0, 1.0));
}

TEST(BregmanProx, UnsupportedPairsFailFast) {
  EXPECT_THROW(bregman_prox(L1Norm{0.1}, *make_kernel("hellinger"), 1.0, Vector::Constant(2, 0.1)),
               UnsupportedCombination);
  BregmanProblem p{std::make_shared<QuadraticLoss>(Matrix::Identity(2, 2), Vector::Zero(2)), BoxIndicator{},
                   make_kernel("fermi_dirac"), 0.5};
  EXPECT_THROW(p.validate(), UnsupportedCombination);
}

TEST(BpgStep, EnergyKernelIsPgaStep) {
  std::mt19937_64 rng(92);
  const Matrix a = oracle::random_matrix(rng, 12, 4);
  auto f = std::make_shared<LeastSquaresLoss>(DataMatrix(a), oracle::random_vector(rng, 12));
  const double gamma = 1.0 / f->smoothness();
  const CompositeProblem cp{f, NonnegIndicator{}};
  const BregmanProblem bp{f, NonnegIndicator{}, make_kernel("energy"), gamma};
  const Vector x = oracle::random_vector(rng, 4, 0.0, 1.0);
  EXPECT_EQ(bpg_step(bp, x).x_next, pga_step(cp, x, gamma));
}

TEST(BpgStep, ShannonLinearIsMultiplicativeWeights) {
  std::mt19937_64 rng(93);
  const Vector c = oracle::random_vector(rng, 5);
  auto f = std::make_shared<CallbackLoss>(
      5, [c](const Vector& x) { return c.dot(x); }, [c](const Vector&) { return c; }, 1.0);
  const BregmanProblem p{f, NoRegularizer{}, make_kernel("shannon"), 0.7};
  const Vector x = oracle::random_vector(rng, 5, 0.1, 2.0);
  const Vector expect = x.cwiseProduct((-0.7 * c).array().exp().matrix());
  EXPECT_LT((bpg_step(p, x).x_next - expect).norm(), 1e-14);
}

TEST(BpgStep, InteriorStationaryPointIsFixed) {
  std::mt19937_64 rng(94);
  const Matrix a = oracle::random_matrix(rng, 8, 3, 0.1, 1.0);
  const Vector xstar = oracle::random_vector(rng, 3, 0.5, 1.5);
  auto f = std::make_shared<KlLoss>(DataMatrix(a), a * xstar);
  const BregmanProblem p{f, NoRegularizer{}, make_kernel("shannon"), 1.0 / f->smoothness()};
  EXPECT_LT((bpg_step(p, xstar).x_next - xstar).norm(), 1e-13);
}

TEST(BregmanDescentCheck, PlainCandidateAlwaysPasses) {
  for (std::uint64_t seed = 95; seed < 105; ++seed) {
    const auto p = kl_problem(seed, 20, 6, 0.0);
    std::mt19937_64 rng(seed);
    const Vector x = oracle::random_vector(rng, 6, 0.1, 2.0);
    Vector grad;
    const double fx = p.f->value_and_gradient(x, grad);
    const Vector t = bpg_step(p, x).x_next;
    EXPECT_TRUE(bregman_descent_check(p.f->value(t), fx, grad, t, x, p.gamma, *p.kernel));
  }
}

TEST(BregmanDescentCheck, Examples) {
  const auto k = make_kernel("energy");
  Vector x = Vector::Zero(2), t(2), g(2);
  t << 0.1, 0.0;
  g << -1.0, 0.0;
  // Predicted value 1 - 0.1 + 0.005 / 0.1 = 0.95 < f_k.
  EXPECT_FALSE(bregman_descent_check(1.0, 1.0, g, t, x, 0.1, *k));
  EXPECT_TRUE(bregman_descent_check(0.95, 1.0, g, t, x, 0.1, *k));
}

TEST(RunBpg, EnergyKernelTraceEqualsPga) {
  std::mt19937_64 rng(106);
  const Matrix a = oracle::random_matrix(rng, 30, 10);
  auto f = std::make_shared<LeastSquaresLoss>(DataMatrix(a), oracle::random_vector(rng, 30));
  const double gamma = 1.0 / f->smoothness();
  RunOptions o;
  o.tol = 0.0;
  o.max_iters = 300;
  const auto pga = run_pga({f, NonnegIndicator{}}, Vector::Zero(10), gamma, o);
  const auto bpg = run_bpg({f, NonnegIndicator{}, make_kernel("energy"), gamma}, Vector::Zero(10), o);
  ASSERT_EQ(pga.trace.size(), bpg.trace.size());
  for (std::size_t k = 0; k < pga.trace.size(); ++k) {
    EXPECT_NEAR(pga.trace[k].objective, bpg.trace[k].objective, 1e-12 * std::abs(pga.trace[k].objective));
  }
  EXPECT_LT((pga.x - bpg.x).norm(), 1e-12);
}

TEST(RunBpg, SurrogateDescentEveryStep) {
  const auto p = kl_problem(107, 30, 8, 0.0);
  std::vector<Vector> xs;
  RunOptions o;
  o.tol = 0.0;
  o.max_iters = 200;
  o.observer = [&](std::size_t, const Vector& x, const Vector&) { xs.push_back(x); };
  run_bpg(p, Vector::Ones(8), o);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    Vector grad;
    const double fx = p.f->value_and_gradient(xs[k - 1], grad);
    EXPECT_TRUE(bregman_descent_check(p.f->value(xs[k]), fx, grad, xs[k], xs[k - 1], p.gamma, *p.kernel));
    EXPECT_LE(p.f->value(xs[k]), fx);
  }
}

TEST(GuardedAaBpg, DepthZeroMatchesBpg) {
  const auto p = kl_problem(108, 40, 10, 1e-3);
  std::vector<Vector> a, b;
  RunOptions o;
  o.tol = 0.0;
  o.max_iters = 300;
  o.aa.m = 0;
  const Vector y0 = Vector::Ones(10);
  o.observer = [&](std::size_t, const Vector& x, const Vector&) { a.push_back(x); };
  run_guarded_aa_bpg(p, y0, o);
  o.observer = [&](std::size_t, const Vector& x, const Vector&) { b.push_back(x); };
  run_bpg(p, p.primal_from_dual(y0), o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE((a[k] - b[k]).norm(), 1e-12 * b[k].norm());
}

TEST(GuardedAaBpg, EnergyKernelMatchesGuardedAaPga) {
  std::mt19937_64 rng(109);
  const Matrix a = oracle::random_matrix(rng, 40, 12);
  auto f = std::make_shared<LeastSquaresLoss>(DataMatrix(a), oracle::random_vector(rng, 40), LeastSquaresOptions{0.01});
  const double gamma = 1.0 / f->smoothness();
  RunOptions o;
  o.tol = 0.0;
  o.max_iters = 150;
  const auto e = run_guarded_aa_pga({f, NoRegularizer{}}, Vector::Zero(12), gamma, o);
  const auto b = run_guarded_aa_bpg({f, NoRegularizer{}, make_kernel("energy"), gamma}, Vector::Zero(12), o);
  ASSERT_EQ(e.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < e.trace.size(); ++k) {
    EXPECT_NEAR(e.trace[k].objective, b.trace[k].objective, 1e-12 * std::abs(e.trace[k].objective));
    EXPECT_EQ(e.trace[k].kind, b.trace[k].kind) << k;
  }
}

TEST(GuardedAaBpg, AcceptedStepsPassTheCheckAndStayInterior) {
  const auto p = kl_problem(110, 60, 20, 1e-3);
  std::vector<Vector> xs;
  RunOptions o;
  o.tol = 0.0;
  o.max_iters = 800;
  o.observer = [&](std::size_t, const Vector& x, const Vector&) { xs.push_back(x); };
  const auto rep = run_guarded_aa_bpg(p, dual_start(p, Vector::Ones(20)), o);
  EXPECT_GT(rep.aa_accepted, 0u);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    EXPECT_TRUE(p.kernel->in_interior(xs[k]));
    if (rep.trace[k].kind != StepKind::aa) continue;
    Vector grad;
    const double fx = p.f->value_and_gradient(xs[k - 1], grad);
    const Vector t = bpg_step(p, xs[k - 1]).x_next;
    EXPECT_TRUE(bregman_composite_check(p.objective(xs[k]), fx, grad, t, xs[k - 1], p.gamma, *p.kernel,
                                        regularizer_value(p.h, t)));
  }
}

TEST(GuardedAaBpg, RejectsRestrictedDualDomain) {
  auto f = std::make_shared<QuadraticLoss>(Matrix::Identity(2, 2), Vector::Zero(2));
  const BregmanProblem p{f, NoRegularizer{}, make_kernel("burg"), 0.5};
  EXPECT_THROW(run_guarded_aa_bpg(p, -Vector::Ones(2)), ConfigError);
  EXPECT_NO_THROW(run_bpg(p, Vector::Ones(2), RunOptions{1e-8, 10}));
}

TEST(BregmanProx, ShannonL1MatchesScalarOracle) {
  std::mt19937_64 rng(120);
  const auto k = make_kernel("shannon");
  for (int trial = 0; trial < 50; ++trial) {
    const Vector u = oracle::random_vector(rng, 4, 0.01, 5.0);
    const double gl = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const Vector x = bregman_prox(NonnegL1{gl}, *k, 1.0, u);
    for (Eigen::Index i = 0; i < 4; ++i) {
      // Stationarity of gl*t + t log(t/u) - t + u over t > 0.
      auto deriv = [&](double t) { return gl + std::log(t / u(i)); };
      const double t = oracle::bisect_increasing(deriv, 1e-300, 10.0);
      EXPECT_NEAR(x(i), t, 1e-8 * std::max(1.0, t));
    }
  }
}

TEST(BregmanProx, ShannonSimplexMatchesNumericOracle) {
  std::mt19937_64 rng(121);
  const auto k = make_kernel("shannon");
  for (int trial = 0; trial < 50; ++trial) {
    const Vector u = oracle::random_vector(rng, 4, 0.01, 5.0);
    const double radius = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
    const Vector x = bregman_prox(SimplexIndicator{radius}, *k, 1.0, u);
    EXPECT_LT((x - oracle::entropic_simplex_numeric(u, radius)).lpNorm<Eigen::Infinity>(), 1e-8);
  }
}
