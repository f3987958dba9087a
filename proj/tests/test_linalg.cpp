#include <gtest/gtest.h>

#include "hyfr/dense.hpp"
#include "hyfr/errors.hpp"
#include "hyfr/gmres.hpp"
#include "hyfr/sparse.hpp"

using namespace hyfr;

namespace {

CsrMatrix csr_from_dense(const Eigen::MatrixXd& m) {
  CooBuilder coo(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) coo.add(i, j, m(i, j));
  return coo.build();
}

Eigen::MatrixXd random_well_conditioned(int n, unsigned seed) {
  std::srand(seed);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
  a += n * Eigen::MatrixXd::Identity(n, n);  // diagonally dominant
  return a;
}

}  // namespace

TEST(Dense, IdentitySolve) {
  LuFactor f(Eigen::MatrixXd::Identity(3, 3));
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  EXPECT_NEAR((f.solve(b) - b).norm(), 0.0, 1e-15);
}

TEST(Dense, HandSolve2x2) {
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 3;
  Eigen::VectorXd b(2);
  b << 3, 4;
  const Eigen::VectorXd x = lu_factor(a).solve(b);
  EXPECT_NEAR(x[0], 1.0, 1e-14);
  EXPECT_NEAR(x[1], 1.0, 1e-14);
}

TEST(Dense, HilbertRoundTrip) {
  Eigen::MatrixXd h(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h(i, j) = 1.0 / (i + j + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(4);
  const Eigen::VectorXd x = lu_factor(h).solve(b);
  EXPECT_LE((h * x - b).norm(), 1e-9 * b.norm());
}

TEST(Dense, SingularThrows) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 1.0;
  EXPECT_THROW(lu_factor(a), SingularMatrix);
}

TEST(Dense, ResidualBoundModerateConditioning) {
  const Eigen::MatrixXd a = random_well_conditioned(30, 7u);
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(30, -1.0, 2.0);
  const Eigen::VectorXd x = lu_factor(a).solve(b);
  EXPECT_LE((a * x - b).norm(), 1e-12 * b.norm());
}

TEST(Sparse, BuildAndMultiply) {
  CooBuilder coo(2, 3);
  coo.add(0, 2, 1.0);
  coo.add(0, 0, 2.0);
  coo.add(1, 1, 3.0);
  coo.add(0, 0, 0.5);  // duplicate accumulates
  CsrMatrix m = coo.build();
  EXPECT_EQ(m.nnz(), 3);
  // sorted unique columns per row
  EXPECT_EQ(m.col_idx()[0], 0);
  EXPECT_EQ(m.col_idx()[1], 2);
  Eigen::VectorXd x(3);
  x << 1, 1, 1;
  const Eigen::VectorXd y = m.multiply(x);
  EXPECT_NEAR(y[0], 3.5, 1e-15);
  EXPECT_NEAR(y[1], 3.0, 1e-15);
}

TEST(Gmres, IdentityConvergesInOneIteration) {
  CsrMatrix id = csr_from_dense(Eigen::MatrixXd::Identity(5, 5));
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, 1.0, 5.0);
  KrylovConfig cfg;
  const KrylovResult r = gmres(id, b, IdentityPreconditioner(), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_NEAR((r.x - b).norm(), 0.0, 1e-12);
}

TEST(Gmres, MatchesDenseLuOnRandomSystem) {
  const Eigen::MatrixXd a = random_well_conditioned(50, 11u);
  const Eigen::VectorXd b = Eigen::VectorXd::Random(50);
  const Eigen::VectorXd xref = lu_factor(a).solve(b);
  KrylovConfig cfg;
  cfg.rtol = 1e-14;
  cfg.restart = 60;
  const KrylovResult r = gmres(csr_from_dense(a), b, IdentityPreconditioner(), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_LE((r.x - xref).norm(), 1e-10 * xref.norm());
}

TEST(Gmres, NonConvergenceThrowsWithHistory) {
  // rotation-like system that restarted GMRES(1) cannot solve in 3 iterations
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, -1, 0;
  Eigen::VectorXd b(2);
  b << 1, 0;
  KrylovConfig cfg;
  cfg.restart = 1;
  cfg.max_iters = 3;
  try {
    gmres(csr_from_dense(a), b, IdentityPreconditioner(), cfg);
    FAIL() << "expected SolverFailure";
  } catch (const SolverFailure& e) {
    EXPECT_GE(e.residual_history.size(), 2u);
  }
}

TEST(BlockJacobi, FullBlockIsDirectSolve) {
  const Eigen::MatrixXd a = random_well_conditioned(8, 3u);
  CsrMatrix m = csr_from_dense(a);
  BlockJacobi prec(m, 8);
  Eigen::VectorXd b = Eigen::VectorXd::Random(8);
  KrylovConfig cfg;
  const KrylovResult r = gmres(m, b, prec, cfg);
  EXPECT_EQ(r.iterations, 1);
}

TEST(BlockJacobi, PointJacobiAndPartialBlocks) {
  const Eigen::MatrixXd a = random_well_conditioned(7, 5u);
  CsrMatrix m = csr_from_dense(a);
  BlockJacobi point(m, 1);
  BlockJacobi partial(m, 3);  // blocks 3,3,1
  EXPECT_EQ(point.singular_blocks(), 0);
  EXPECT_EQ(partial.singular_blocks(), 0);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(7);
  KrylovConfig cfg;
  EXPECT_TRUE(gmres(m, b, point, cfg).converged);
  EXPECT_TRUE(gmres(m, b, partial, cfg).converged);
}

TEST(BlockJacobi, SingularBlockFallsBackToIdentity) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;  // 2x2 leading block [[0,1],[1,0]] is fine; make block 2 singular
  a(2, 3) = 0.0;
  a(3, 3) = 0.0;
  a(2, 2) = 0.0;
  CsrMatrix m = csr_from_dense(a);
  BlockJacobi prec(m, 2);
  EXPECT_EQ(prec.singular_blocks(), 1);
  Eigen::VectorXd r = Eigen::VectorXd::Ones(4);
  const Eigen::VectorXd z = prec.apply(r);
  EXPECT_NEAR(z[2], 1.0, 1e-15);  // identity fallback
  EXPECT_NEAR(z[3], 1.0, 1e-15);
}

TEST(Gmres, PreconditionedMatchesUnpreconditioned) {
  const Eigen::MatrixXd a = random_well_conditioned(40, 13u);
  CsrMatrix m = csr_from_dense(a);
  const Eigen::VectorXd b = Eigen::VectorXd::Random(40);
  KrylovConfig cfg;
  cfg.rtol = 1e-13;
  const KrylovResult r1 = gmres(m, b, IdentityPreconditioner(), cfg);
  BlockJacobi prec(m, 4);
  const KrylovResult r2 = gmres(m, b, prec, cfg);
  EXPECT_LE((r1.x - r2.x).norm(), 1e-10 * r1.x.norm());
  EXPECT_LE(r2.iterations, r1.iterations);
}
