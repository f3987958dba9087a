#include <gtest/gtest.h>

#include <cmath>

#include "hyfr/cases.hpp"
#include "hyfr/diagnostics.hpp"
#include "hyfr/fr_solver.hpp"
#include "hyfr/hybrid_solver.hpp"
#include "hyfr/time_integration.hpp"

using namespace hyfr;

namespace {

Eigen::VectorXd pseudo_random(int n, unsigned seed) {
  Eigen::VectorXd v(n);
  unsigned s = seed;
  for (int i = 0; i < n; ++i) {
    s = 1664525u * s + 1013904223u;
    v[i] = (s >> 8) * (1.0 / 16777216.0) - 0.5;
  }
  return v;
}

}  // namespace

TEST(FrResidual, ConstantStatePeriodicIsFreeStream) {
  const Mesh mesh = build_cartesian_mesh(3, 3, {0, 2, 0, 2}, true);
  const RefElement ref = build_ref_element(2, c_sd(2));
  const auto geoms = build_all_geometry(mesh, ref);
  AdvDiffProblem prob;
  prob.alpha = {1.4, -0.3};
  prob.beta = 0.0;
  FrSystem sys(mesh, geoms, ref, prob, 0.0);
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(sys.ndof(), 2.75);
  EXPECT_LE(sys.residual(u).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(FrResidual, FreeStreamOnCurvedMesh) {
  Mesh base = build_cartesian_mesh(4, 4, {0, 1, 0, 1}, true);
  const Mesh mesh = curve_mesh(base, 0.08, 5);
  for (int p : {1, 2, 3}) {
    const RefElement ref = build_ref_element(p, c_hu(p));
    const auto geoms = build_all_geometry(mesh, ref);
    AdvDiffProblem prob;
    prob.alpha = {1.0, 1.0};
    prob.beta = 0.3;
    FrSystem sys(mesh, geoms, ref, prob, prob.beta);
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(sys.ndof(), -1.3);
    EXPECT_LE(sys.residual(u).lpNorm<Eigen::Infinity>(), 1e-11) << "p=" << p;
  }
}

TEST(FrResidual, PolynomialExactnessSteadyMms) {
  // exact degree-p solution with matching source: residual vanishes
  const Mesh mesh = build_cartesian_mesh(3, 3, {0, 1, 0, 1}, false);
  const RefElement ref = build_ref_element(2, 0.0);
  const auto geoms = build_all_geometry(mesh, ref);
  AdvDiffProblem prob;
  prob.alpha = {2.0, 1.0};
  prob.beta = 0.5;
  auto exact = [](double x, double y) { return x * x + 0.5 * x * y - y; };
  prob.source = [&](double x, double y) {
    const double ux = 2.0 * x + 0.5 * y, uy = 0.5 * x - 1.0;
    return prob.alpha[0] * ux + prob.alpha[1] * uy - prob.beta * 2.0;
  };
  FrSystem sys(mesh, geoms, ref, prob, prob.beta);
  sys.set_boundary_values(exact);
  const Eigen::VectorXd u = sys.nodal_values(exact);
  EXPECT_LE(sys.residual(u).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(FrJacobian, ColoredAssemblyMatchesExactProbe) {
  // periodic and Dirichlet meshes large enough that colors hold >1 element
  for (bool periodic : {true, false}) {
    const Mesh mesh = build_cartesian_mesh(10, 10, {0, 1, 0, 1}, periodic);
    const RefElement ref = build_ref_element(1, c_sd(1));
    const auto geoms = build_all_geometry(mesh, ref);
    AdvDiffProblem prob;
    prob.alpha = {25.0, 25.0};
    prob.beta = 1.0;
    FrSystem sys(mesh, geoms, ref, prob, prob.beta, 0.7);
    if (!periodic)
      sys.set_boundary_values([](double x, double y) { return x - 2.0 * y; });
    const CsrMatrix a = sys.jacobian();
    const CsrMatrix b = sys.jacobian_exact_probe();
    const Eigen::MatrixXd diff = a.to_dense() - b.to_dense();
    EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-11 * b.to_dense().cwiseAbs().maxCoeff())
        << "periodic=" << periodic;
  }
}

TEST(FrJacobian, FiniteDifferenceConsistency) {
  const Mesh mesh = build_cartesian_mesh(4, 4, {0, 1, 0, 1}, true);
  const RefElement ref = build_ref_element(2, 0.0);
  const auto geoms = build_all_geometry(mesh, ref);
  AdvDiffProblem prob;
  prob.alpha = {1.0, 2.0};
  prob.beta = 0.4;
  FrSystem sys(mesh, geoms, ref, prob, prob.beta);
  const CsrMatrix jac = sys.jacobian();
  const Eigen::VectorXd u0 = pseudo_random(sys.ndof(), 9u);
  const Eigen::VectorXd r0 = sys.residual(u0);
  const double h = 1e-6;
  for (int j : {0, 17, 33, sys.ndof() - 1}) {
    Eigen::VectorXd up = u0;
    up[j] += h;
    const Eigen::VectorXd col = (sys.residual(up) - r0) / h;
    Eigen::VectorXd jcol = Eigen::VectorXd::Zero(sys.ndof());
    for (int i = 0; i < sys.ndof(); ++i)
      for (int k = jac.row_ptr()[i]; k < jac.row_ptr()[i + 1]; ++k)
        if (jac.col_idx()[k] == j) jcol[i] = jac.values()[k];
    EXPECT_LE((col - jcol).norm(), 1e-6 * (1.0 + jcol.norm()));
  }
}

// pure advection with upwind stabilization: HFR element solutions equal the
// conventional FR upwind solutions
TEST(FrEquivalence, HfrUpwindPureAdvection) {
  const Mesh mesh = build_cartesian_mesh(4, 4, {0, 2, 0, 2}, true);
  const RefElement ref = build_ref_element(2, c_sd(2));
  const auto geoms = build_all_geometry(mesh, ref);
  AdvDiffProblem prob;
  prob.alpha = {1.0, 0.7};
  prob.beta = 0.0;

  const double dt = 0.05;
  const double sigma = 1.0 / (Sdirk3::gamma_rk() * dt);

  FrSystem fr(mesh, geoms, ref, prob, 0.0, sigma);
  HybridSystem hfr(mesh, geoms, ref, prob, Stabilization::upwind(1.0, 0.0), SchemeKind::hfr,
                   sigma);

  auto ic = [](double x, double y) {
    return std::sin(M_PI * x) * std::sin(M_PI * y) + 0.3 * std::cos(M_PI * y);
  };
  FieldState sfr, shfr;
  sfr.u = fr.nodal_values(ic);
  shfr.u = sfr.u;

  FrStageSolver fr_solver(fr, sigma);
  HybridStageSolver hfr_solver(hfr);
  for (int k = 0; k < 4; ++k) {
    sfr = step_sdirk3(fr_solver, sfr, dt);
    shfr = step_sdirk3(hfr_solver, shfr, dt);
  }
  EXPECT_LE((sfr.u - shfr.u).lpNorm<Eigen::Infinity>(), 1e-12);
}

// the same equivalence at the residual level for a manufactured state
TEST(FrEquivalence, ResidualMatchesHfrWithEliminatedTrace) {
  const Mesh mesh = build_cartesian_mesh(3, 3, {0, 2, 0, 2}, true);
  const RefElement ref = build_ref_element(3, c_hu(3));
  const auto geoms = build_all_geometry(mesh, ref);
  AdvDiffProblem prob;
  prob.alpha = {1.0, -0.6};
  prob.beta = 0.0;

  FrSystem fr(mesh, geoms, ref, prob, 0.0);
  HybridSystem hfr(mesh, geoms, ref, prob, Stabilization::upwind(1.0, 0.0), SchemeKind::hfr);

  const Eigen::VectorXd u = pseudo_random(fr.ndof(), 31u);
  FieldState st;
  st.u = u;
  st.trace = hfr.trace_given_u(u);
  const Eigen::VectorXd r_hfr = -semi_discrete_rate(hfr, st);
  EXPECT_LE((fr.residual(u) - r_hfr).lpNorm<Eigen::Infinity>(), 1e-11);
}

TEST(FrSolve, SteadyLinearExactness) {
  const Mesh mesh = build_cartesian_mesh(3, 3, {0, 1, 0, 1}, false);
  const RefElement ref = build_ref_element(1, 0.0);
  const auto geoms = build_all_geometry(mesh, ref);
  AdvDiffProblem prob;
  prob.alpha = {2.0, 1.0};
  prob.beta = 0.7;
  auto lin = [](double x, double y) { return 1.3 * x + 0.4 * y - 0.2; };
  prob.source = [&](double, double) { return 2.0 * 1.3 + 1.0 * 0.4; };
  FrSystem sys(mesh, geoms, ref, prob, prob.beta);
  sys.set_boundary_values(lin);
  const FieldState st = sys.solve_steady();
  EXPECT_LE((st.u - sys.nodal_values(lin)).lpNorm<Eigen::Infinity>(), 1e-10);
}
