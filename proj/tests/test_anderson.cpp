#include "oracles.hpp"

#include <aaprox/anderson.hpp>

#include <gtest/gtest.h>

#include <limits>

using namespace aaprox;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST(SolveCoefficients, SingleColumnIsOne) {
  Matrix r(3, 1);
  r << 1.0, -2.0, 0.5;
  const auto c = solve_coefficients(r, 1e-10);
  ASSERT_EQ(c.alpha.size(), 1);
  EXPECT_DOUBLE_EQ(c.alpha(0), 1.0);
  EXPECT_FALSE(c.degenerate);
}

TEST(SolveCoefficients, IdentityColumnsSplitEvenly) {
  const auto c = solve_coefficients(Matrix::Identity(2, 2), 0.0);
  EXPECT_NEAR(c.alpha(0), 0.5, 1e-15);
  EXPECT_NEAR(c.alpha(1), 0.5, 1e-15);
}

TEST(SolveCoefficients, MatchesKktOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix r = oracle::random_matrix(rng, 5, 3);
    const auto c = solve_coefficients(r, 0.0);
    const Vector ref = oracle::constrained_ls(r);
    EXPECT_LT((c.alpha - ref).norm(), 1e-10 * std::max(1.0, ref.norm()));
    EXPECT_NEAR(c.alpha.sum(), 1.0, 1e-12);
  }
}

TEST(SolveCoefficients, RegularizedMatchesKktOracle) {
  std::mt19937_64 rng(12);
  const Matrix r = oracle::random_matrix(rng, 8, 4);
  const auto c = solve_coefficients(r, 1e-3);
  EXPECT_LT((c.alpha - oracle::constrained_ls(r, 1e-3)).norm(), 1e-10);
}

TEST(SolveCoefficients, KktStationarity) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix r = oracle::random_matrix(rng, 10, 4);
    const Vector a = solve_coefficients(r, 0.0).alpha;
    const Matrix gram = r.transpose() * r;
    const Vector ga = gram * a;
    const double lambda = ga(0);
    EXPECT_LE((ga - Vector::Constant(4, lambda)).norm(), 1e-8 * gram.norm());
  }
}

TEST(SolveCoefficients, SingularGramStillSolvesConstrainedProblem) {
  // Scalar residuals: R^T R has rank one but the constrained problem has the
  // exact minimizer with zero residual.
  Matrix r(1, 2);
  r << 2.0, -1.0;
  const auto c = solve_coefficients(r, 0.0);
  EXPECT_FALSE(c.degenerate);
  EXPECT_NEAR(c.alpha.sum(), 1.0, 1e-14);
  EXPECT_NEAR((r * c.alpha).norm(), 0.0, 1e-14);
  EXPECT_NEAR(c.alpha(0), 1.0 / 3.0, 1e-14);
}

TEST(SolveCoefficients, ZeroMatrixIsDegenerate) {
  const auto c = solve_coefficients(Matrix::Zero(3, 3), 1e-10);
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.alpha, ExtrapolationCoefficients::fixed_point(3).alpha);
}

TEST(SolveCoefficients, QrPathAgreesWithNormalEquations) {
  std::mt19937_64 rng(14);
  const Matrix newest_first = oracle::random_matrix(rng, 30, 5);
  QrWindow qr(30, 5);
  for (Eigen::Index j = newest_first.cols() - 1; j >= 0; --j) ASSERT_EQ(qr.push(newest_first.col(j)), QrWindow::AppendStatus::ok);
  for (double reg : {0.0, 1e-10, 1e-4}) {
    const auto a = solve_coefficients(newest_first, reg);
    const auto b = solve_coefficients(qr, reg);
    EXPECT_LT((a.alpha - b.alpha).norm(), 1e-9) << "reg " << reg;
  }
}

TEST(CoefficientBound, KeepsFeasibleCoefficients) {
  ExtrapolationCoefficients c{vec({0.5, 0.5}), false};
  EXPECT_EQ(enforce_coefficient_bound(c, 2.0).alpha, vec({0.5, 0.5}));
}

TEST(CoefficientBound, ResetsToNewest) {
  ExtrapolationCoefficients c{vec({3.0, -2.0}), false};
  const auto out = enforce_coefficient_bound(c, 4.0);
  EXPECT_EQ(out.alpha, vec({1.0, 0.0}));
  EXPECT_LE(out.l1_norm(), 4.0);
}

TEST(CoefficientBound, SingletonUnchanged) {
  ExtrapolationCoefficients c{vec({1.0}), false};
  EXPECT_EQ(enforce_coefficient_bound(c, 1.5).alpha, vec({1.0}));
}

TEST(CoefficientBound, PropertyNeverExceedsBound) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    Vector a = oracle::random_vector(rng, 4, -5.0, 5.0);
    a(0) += 1.0 - a.sum();
    const double bound = 1.0 + 10.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) + 1e-3;
    const auto out = enforce_coefficient_bound({a, false}, bound);
    EXPECT_LE(out.l1_norm(), std::max(bound, 1.0));
    EXPECT_NEAR(out.alpha.sum(), 1.0, 1e-12);
  }
}

TEST(AAConfig, Validation) {
  AAConfig c;
  c.reg_scale = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.m_alpha = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.m_alpha = std::numeric_limits<double>::infinity();
  EXPECT_NO_THROW(c.validate());
}

TEST(ResidualHistory, EvictsOldestWhenFull) {
  ResidualHistory h(2);
  EXPECT_FALSE(h.push(vec({1}), vec({10})));
  EXPECT_FALSE(h.push(vec({2}), vec({20})));
  EXPECT_TRUE(h.push(vec({3}), vec({30})));
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h.g(0)(0), 3.0);
  EXPECT_EQ(h.g(1)(0), 2.0);
  const Matrix r = h.residual_matrix();
  EXPECT_EQ(r(0, 0), 30.0);
  EXPECT_EQ(r(0, 1), 20.0);
}

TEST(Extrapolate, Examples) {
  ResidualHistory h(3);
  h.push(vec({2}), vec({0}));
  EXPECT_EQ(extrapolate(h, vec({1.0})), vec({2}));
  h.push(vec({4}), vec({0}));
  EXPECT_EQ(extrapolate(h, vec({0.5, 0.5})), vec({3}));

  ResidualHistory h2(2);
  h2.push(vec({0, 1}), vec({0, 0}));
  h2.push(vec({1, 0}), vec({0, 0}));
  EXPECT_EQ(extrapolate(h2, vec({2.0, -1.0})), vec({2, -1}));
  EXPECT_THROW(extrapolate(h2, vec({1.0})), ConfigError);
}

TEST(AndersonIteration, DepthZeroIsFixedPointIteration) {
  std::mt19937_64 rng(16);
  const Matrix a = 0.3 * oracle::random_matrix(rng, 6, 6);
  const Vector b = oracle::random_vector(rng, 6);
  const auto map = [&](const Vector& y) -> Vector { return a * y + b; };
  AAConfig cfg;
  cfg.m = 0;
  AndersonIteration it(map, Vector::Zero(6), cfg);
  Vector y = Vector::Zero(6);
  for (int k = 0; k < 50; ++k) {
    it.step();
    y = map(y);
    EXPECT_LE((it.current() - y).norm(), 1e-12 * std::max(1.0, y.norm()));
  }
}

TEST(AndersonIteration, AffineResidualEqualsLeastSquaresResidual) {
  std::mt19937_64 rng(17);
  const Eigen::Index n = 12;
  const Matrix a = 0.9 * oracle::random_matrix(rng, n, n) / std::sqrt(static_cast<double>(n));
  const Vector b = oracle::random_vector(rng, n);
  const auto map = [&](const Vector& y) -> Vector { return a * y + b; };
  for (auto method : {CoefficientMethod::normal_equations, CoefficientMethod::qr_updates}) {
    AAConfig cfg;
    cfg.m = 100;
    cfg.reg_scale = 0.0;
    cfg.method = method;
    AndersonIteration it(map, Vector::Zero(n), cfg);
    for (int k = 0; k < 8; ++k) {
      const auto& step = it.step();
      const Matrix r = it.history().residual_matrix();
      const double predicted = (r * step.coefficients.alpha).norm();
      const Vector ybar = it.engine().averaged_point(step.coefficients.alpha);
      const double actual = (map(ybar) - ybar).norm();
      EXPECT_NEAR(actual, predicted, 1e-10) << "k " << k;
    }
  }
}

TEST(AndersonIteration, ScalarContractionBeatsPlainIteration) {
  const auto map = [](const Vector& y) -> Vector { return 0.5 * y; };
  AAConfig cfg;
  cfg.m = 1;
  AndersonIteration it(map, Vector::Ones(1), cfg);
  it.step();
  it.step();
  const double aa_res = std::abs(0.5 * it.current()(0) - it.current()(0));
  const double plain = 0.25;  // y_2 = 0.25
  EXPECT_LE(aa_res, std::abs(0.5 * plain - plain));
}

TEST(AndersonAccelerator, RankDeficientWindowFallsBack) {
  AAConfig cfg;
  cfg.m = 3;
  cfg.method = CoefficientMethod::qr_updates;
  cfg.reg_scale = 0.0;
  AndersonAccelerator engine(cfg);
  const Vector g = vec({1.0, 2.0});
  const Vector y = vec({0.0, 1.0});
  engine.step(g, y);
  const auto s = engine.step(g, y);  // identical residual
  EXPECT_NEAR(s.coefficients.alpha.sum(), 1.0, 1e-12);
  EXPECT_TRUE(all_finite(s.y_next));
}

TEST(AndersonAccelerator, HugeDepthIsSafe) {
  AAConfig cfg;
  cfg.m = std::numeric_limits<std::size_t>::max();
  AndersonAccelerator engine(cfg);
  const auto s = engine.step(vec({1.0}), vec({0.0}));
  EXPECT_EQ(s.y_next, vec({1.0}));
}

TEST(AndersonAccelerator, ResidualInWindowSpanGivesExactCombination) {
  AAConfig cfg;
  cfg.m = 10;
  cfg.reg_scale = 0.0;
  cfg.method = CoefficientMethod::qr_updates;
  AndersonAccelerator engine(cfg);
  const Vector zero = Vector::Zero(3);
  engine.step(Vector::Unit(3, 0), zero);
  engine.step(Vector::Unit(3, 1), zero);
  Vector r(3);
  r << 0.5, 0.2, 0.0;
  const auto step = engine.step(r, zero);
  Vector expect(3);
  expect << 1.0, -0.2, -0.5;
  expect /= 0.3;
  EXPECT_FALSE(step.coefficients.degenerate);
  EXPECT_LT((step.coefficients.alpha - expect).norm(), 1e-14);
  EXPECT_LT((engine.history().residual_matrix() * step.coefficients.alpha).norm(), 1e-14);
  // The factor could not take the dependent column, so the window restarts.
  engine.step(Vector::Unit(3, 2), zero);
  EXPECT_EQ(engine.history().size(), 1u);
}

TEST(AndersonIteration, FiniteTerminationOnLowRankQuadratic) {
  std::mt19937_64 rng(31);
  const Eigen::Index n = 30, rank = 10;
  Eigen::HouseholderQR<Matrix> qr(oracle::random_matrix(rng, n, n));
  const Matrix v = qr.householderQ();
  Vector eig = Vector::Zero(n);
  for (Eigen::Index i = 0; i < rank; ++i) eig(i) = std::pow(10.0, -2.0 * static_cast<double>(i) / (rank - 1));
  const Matrix h = v * eig.asDiagonal() * v.transpose();
  const Vector c = h * oracle::random_vector(rng, n);
  const auto map = [&](const Vector& y) -> Vector { return y - (h * y - c); };
  for (auto method : {CoefficientMethod::qr_updates, CoefficientMethod::normal_equations}) {
    AAConfig cfg;
    cfg.m = 50;
    cfg.reg_scale = 0.0;
    cfg.method = method;
    AndersonIteration it(map, Vector::Zero(n), cfg);
    double res = 1.0;
    for (int k = 0; k < 14 && res > 1e-8; ++k) {
      it.step();
      res = (map(it.current()) - it.current()).norm();
    }
    EXPECT_LE(res, 1e-8) << static_cast<int>(method);
  }
}
