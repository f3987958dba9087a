#include <gtest/gtest.h>

#include <cmath>

#include "hyfr/cases.hpp"
#include "hyfr/study.hpp"
#include "hyfr/time_integration.hpp"

using namespace hyfr;

TEST(Sdirk3, OrderConditions) {
  const double g = Sdirk3::gamma_rk();
  const double b1 = Sdirk3::b1(), b2 = Sdirk3::b2();
  const double c1 = Sdirk3::c1(), c2 = Sdirk3::c2();
  EXPECT_NEAR(b1 + b2, 1.0, 1e-14);
  EXPECT_NEAR(b1 * c1 + b2 * c2, 0.5, 1e-14);
  EXPECT_NEAR(b1 * c1 * c1 + b2 * c2 * c2, 1.0 / 3.0, 1e-14);
  // sum_i b_i sum_j a_ij c_j = 1/6
  const double a21 = Sdirk3::a21();
  EXPECT_NEAR(b1 * (g * c1) + b2 * (a21 * c1 + g * c2), 1.0 / 6.0, 1e-14);
}

TEST(Sdirk3, MatchesStabilityFunction) {
  const double lambda = -1.3, dt = 0.37;
  ScalarStageSolver solver(lambda, 1.0 / (Sdirk3::gamma_rk() * dt));
  FieldState st;
  st.u = Eigen::VectorXd::Constant(1, 1.0);
  st = step_sdirk3(solver, st, dt);
  EXPECT_NEAR(st.u[0], Sdirk3::stability(lambda * dt), 1e-14);
}

TEST(Sdirk3, ThirdOrderOnScalarProblem) {
  const double lambda = -0.8, tend = 1.0;
  double prev_err = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int steps = 8 << k;
    const double dt = tend / steps;
    ScalarStageSolver solver(lambda, 1.0 / (Sdirk3::gamma_rk() * dt));
    FieldState st;
    st.u = Eigen::VectorXd::Constant(1, 1.0);
    for (int s = 0; s < steps; ++s) st = step_sdirk3(solver, st, dt);
    const double err = std::abs(st.u[0] - std::exp(lambda * tend));
    if (k > 0) EXPECT_NEAR(prev_err / err, 8.0, 1.6);
    prev_err = err;
  }
}

TEST(BackwardEuler, StabilityFunctionAndSteadyFixedPoint) {
  const double lambda = -2.0, dt = 0.21;
  ScalarStageSolver solver(lambda, 1.0 / dt);
  FieldState st;
  st.u = Eigen::VectorXd::Constant(1, 1.0);
  st = step_backward_euler(solver, st, dt);
  EXPECT_NEAR(st.u[0], 1.0 / (1.0 - lambda * dt), 1e-14);

  // steady state is a fixed point
  ScalarStageSolver zero(0.0, 1.0 / dt);
  FieldState fs;
  fs.u = Eigen::VectorXd::Constant(1, 0.77);
  fs = step_backward_euler(zero, fs, dt);
  EXPECT_NEAR(fs.u[0], 0.77, 1e-14);
}

TEST(BackwardEuler, FirstOrderSelfConvergence) {
  const double lambda = -1.1, tend = 1.0;
  double prev_err = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int steps = 16 << k;
    const double dt = tend / steps;
    ScalarStageSolver solver(lambda, 1.0 / dt);
    FieldState st;
    st.u = Eigen::VectorXd::Constant(1, 1.0);
    for (int s = 0; s < steps; ++s) st = step_backward_euler(solver, st, dt);
    const double err = std::abs(st.u[0] - std::exp(lambda * tend));
    if (k > 0) EXPECT_NEAR(prev_err / err, 2.0, 0.2);
    prev_err = err;
  }
}

TEST(Sdirk3, LinearityOfTheStep) {
  const Mesh mesh = build_cartesian_mesh(3, 3, {0, 2, 0, 2}, true);
  const RefElement ref = build_ref_element(2, c_sd(2));
  const auto geoms = build_all_geometry(mesh, ref);
  AdvDiffProblem prob;
  prob.alpha = {1.0, 0.5};
  prob.beta = 0.1;
  const double dt = 0.05, sigma = 1.0 / (Sdirk3::gamma_rk() * dt);
  HybridSystem sys(mesh, geoms, ref, prob, Stabilization::upwind(1.0, prob.beta), SchemeKind::hfr,
                   sigma);
  HybridStageSolver solver(sys);

  auto f1 = [](double x, double y) { return std::sin(M_PI * x) * std::cos(M_PI * y); };
  auto f2 = [](double x, double y) { return std::cos(M_PI * (x + y)); };
  FieldState s1, s2, s12;
  s1.u = sys.nodal_values(f1);
  s2.u = sys.nodal_values(f2);
  const double a = 1.7;
  s12.u = a * s1.u + s2.u;
  s1 = step_sdirk3(solver, s1, dt);
  s2 = step_sdirk3(solver, s2, dt);
  s12 = step_sdirk3(solver, s12, dt);
  EXPECT_LE((s12.u - a * s1.u - s2.u).lpNorm<Eigen::Infinity>(),
            1e-11 * s12.u.lpNorm<Eigen::Infinity>());
}

TEST(Sdirk3, SelfConvergenceOnSineCase) {
  // temporal order measured against a fine-step reference on a fixed mesh
  RunConfig cfg;
  cfg.case_name = "sine_wave";
  cfg.scheme = SchemeKind::hfr;
  cfg.p = 2;
  cfg.c_select = "dg";
  cfg.mesh_sizes = {5};
  cfg.horizon_tstar = 0.25;

  auto state_at = [&](double dt_star) {
    RunConfig c = cfg;
    c.dt_star = dt_star;
    return run_single(c, 5).state.u;
  };
  const Eigen::VectorXd uref = state_at(1.0 / 2048.0);
  double prev = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double dts = 1.0 / (32 << k);
    const double err = (state_at(dts) - uref).norm();
    if (k > 0) {
      const double order = std::log2(prev / err);
      EXPECT_NEAR(order, 3.0, 0.2);
    }
    prev = err;
  }
}

TEST(Sdirk3, MismatchedShiftThrows) {
  ScalarStageSolver solver(-1.0, 10.0);
  FieldState st;
  st.u = Eigen::VectorXd::Constant(1, 1.0);
  EXPECT_THROW(step_sdirk3(solver, st, 0.5), InvalidArgument);
}
