#include "oracles.hpp"

#include <aaprox/data_matrix.hpp>
#include <aaprox/prox.hpp>

#include <gtest/gtest.h>

using namespace aaprox;

TEST(ProxL1, Examples) {
  EXPECT_DOUBLE_EQ(prox_l1(Vector::Constant(1, 2.0), 0.5)(0), 1.5);
  EXPECT_DOUBLE_EQ(prox_l1(Vector::Constant(1, 0.3), 0.5)(0), 0.0);
  EXPECT_DOUBLE_EQ(prox_l1(Vector::Constant(1, -2.0), 0.5)(0), -1.5);
}

TEST(ProxL1, SubgradientOptimality) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector y = oracle::random_vector(rng, 10, -3.0, 3.0);
    const double t = std::uniform_real_distribution<double>(0.01, 2.0)(rng);
    const Vector x = prox_l1(y, t);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double v = (y(i) - x(i)) / t;  // must lie in the subdifferential of |.|
      if (x(i) != 0.0) {
        EXPECT_NEAR(v, x(i) > 0 ? 1.0 : -1.0, 1e-8);
      } else {
        EXPECT_LE(std::abs(v), 1.0 + 1e-8);
      }
    }
  }
}

TEST(ProjectBox, ClampAndIdempotence) {
  Vector y(3);
  y << 2.0, -3.0, 0.5;
  const Vector p = project_box(y, -1.0, 1.0);
  EXPECT_EQ(p, (Vector(3) << 1.0, -1.0, 0.5).finished());
  EXPECT_EQ(project_box(p, -1.0, 1.0), p);
  EXPECT_THROW(project_box(y, 1.0, -1.0), ConfigError);
}

TEST(ProjectNonneg, ClampAndIdempotence) {
  Vector y(2);
  y << -1.0, 2.0;
  const Vector p = project_nonneg(y);
  EXPECT_EQ(p, (Vector(2) << 0.0, 2.0).finished());
  EXPECT_EQ(project_nonneg(p), p);
}

TEST(ProjectSimplex, FeasibleAndOptimal) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector y = oracle::random_vector(rng, 7, -2.0, 2.0);
    const Vector x = project_simplex(y, 1.0);
    EXPECT_NEAR(x.sum(), 1.0, 1e-12);
    EXPECT_GE(x.minCoeff(), 0.0);
    // Variational inequality <y - x, z - x> <= 0 at the vertices z.
    for (Eigen::Index i = 0; i < 7; ++i) {
      EXPECT_LE((y - x).dot(Vector::Unit(7, i) - x), 1e-10);
    }
  }
}

TEST(Regularizers, ProxIsNonexpansive) {
  std::mt19937_64 rng(33);
  const std::vector<Regularizer> all = {NoRegularizer{}, L1Norm{0.7},      BoxIndicator{-1.0, 1.0},
                                        NonnegIndicator{}, NonnegL1{0.3}, SimplexIndicator{2.0}};
  for (const auto& h : all) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vector a = oracle::random_vector(rng, 6, -3.0, 3.0);
      const Vector b = oracle::random_vector(rng, 6, -3.0, 3.0);
      const Vector pa = regularizer_prox(h, a, 0.8);
      const Vector pb = regularizer_prox(h, b, 0.8);
      EXPECT_LE((pa - pb).norm(), (a - b).norm() + 1e-12) << regularizer_name(h);
      EXPECT_TRUE(std::isfinite(regularizer_value(h, pa))) << regularizer_name(h);
    }
  }
}

TEST(Regularizers, NonnegL1Optimality) {
  std::mt19937_64 rng(34);
  const double gamma = 0.5, weight = 0.4;
  for (int trial = 0; trial < 30; ++trial) {
    const Vector y = oracle::random_vector(rng, 5, -2.0, 2.0);
    const Vector x = regularizer_prox(NonnegL1{weight}, y, gamma);
    for (Eigen::Index i = 0; i < 5; ++i) {
      const double v = (y(i) - x(i)) / gamma - weight;  // normal cone of x >= 0
      if (x(i) > 0.0) {
        EXPECT_NEAR(v, 0.0, 1e-12);
      } else {
        EXPECT_LE(v, 1e-12);
      }
    }
  }
}

TEST(Regularizers, ValuesOutsideDomain) {
  Vector x(2);
  x << -0.5, 2.0;
  EXPECT_TRUE(std::isinf(regularizer_value(BoxIndicator{-1.0, 1.0}, x)));
  EXPECT_TRUE(std::isinf(regularizer_value(NonnegIndicator{}, x)));
  EXPECT_DOUBLE_EQ(regularizer_value(L1Norm{2.0}, x), 5.0);
  EXPECT_THROW(validate(L1Norm{-1.0}), ConfigError);
}

TEST(OperatorNorm, KnownSpectra) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const auto r = operator_norm_sq(DataMatrix(d));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 9.0, 9e-5);
  EXPECT_NEAR(operator_norm_sq(DataMatrix(Matrix(Matrix::Identity(4, 4)))).value, 1.0, 1e-12);
}

TEST(OperatorNorm, MatchesSvd) {
  std::mt19937_64 rng(35);
  const Matrix a = oracle::random_matrix(rng, 20, 10);
  const double ref = oracle::spectral_norm_sq(a);
  EXPECT_NEAR(operator_norm_sq(DataMatrix(a)).value, ref, 1e-4 * ref);
  const DataMatrix sparse(DataMatrix::Sparse(a.sparseView()));
  EXPECT_NEAR(operator_norm_sq(sparse).value, ref, 1e-4 * ref);
}

TEST(DataMatrix, DenseAndSparseAgree) {
  std::mt19937_64 rng(36);
  Matrix a = oracle::random_matrix(rng, 7, 4, 0.0, 1.0);
  a(2, 1) = 0.0;
  const DataMatrix dense(a);
  const DataMatrix sparse(DataMatrix::Sparse(a.sparseView()));
  const Vector x = oracle::random_vector(rng, 4);
  const Vector v = oracle::random_vector(rng, 7);
  EXPECT_LT((dense.multiply(x) - sparse.multiply(x)).norm(), 1e-14);
  EXPECT_LT((dense.multiply_transpose(v) - sparse.multiply_transpose(v)).norm(), 1e-14);
  EXPECT_DOUBLE_EQ(dense.max_column_l1(), sparse.max_column_l1());
  EXPECT_NEAR(dense.max_column_l1(), a.colwise().sum().maxCoeff(), 1e-15);
  EXPECT_TRUE(dense.nonnegative());
  EXPECT_THROW(dense.multiply(v), ConfigError);
}
