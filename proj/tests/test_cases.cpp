#include <gtest/gtest.h>

#include <cmath>

#include "hyfr/cases.hpp"
#include "hyfr/errors.hpp"
#include "hyfr/legendre.hpp"

using namespace hyfr;

TEST(SteadyCase, BoundaryValues) {
  const CaseDefinition c = steady_boundary_layer_case();
  for (double t : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(c.exact(0.0, t, 0.0), 0.0, 1e-15);
    EXPECT_NEAR(c.exact(t, 0.0, 0.0), 0.0, 1e-15);
    EXPECT_NEAR(c.exact(1.0, t, 0.0), 0.0, 1e-12);
    EXPECT_NEAR(c.exact(t, 1.0, 0.0), 0.0, 1e-12);
  }
  EXPECT_TRUE(c.error_region.has_value());
  EXPECT_THROW(steady_boundary_layer_case(1.0, 25.0), InvalidArgument);
}

TEST(SteadyCase, BoundaryLayerNearUpperCorner) {
  const CaseDefinition c = steady_boundary_layer_case();
  // gradient magnitude near (1,1) dominates the center
  const double g_layer = c.exact_grad(0.97, 0.97, 0.0).norm();
  const double g_mid = c.exact_grad(0.5, 0.5, 0.0).norm();
  EXPECT_GT(g_layer, 5.0 * g_mid);
}

TEST(SteadyCase, PdeResidualByFiniteDifferences) {
  // independent check of the manufactured source: high-order central
  // differences of the closed-form solution
  const CaseDefinition c = steady_boundary_layer_case();
  const double h = 1e-5;
  auto u = [&](double x, double y) { return c.exact(x, y, 0.0); };
  for (double x : {0.3, 0.55, 0.72})
    for (double y : {0.41, 0.66}) {
      const double ux = (u(x - 2 * h, y) - 8 * u(x - h, y) + 8 * u(x + h, y) - u(x + 2 * h, y)) /
                        (12 * h);
      const double uy = (u(x, y - 2 * h) - 8 * u(x, y - h) + 8 * u(x, y + h) - u(x, y + 2 * h)) /
                        (12 * h);
      const double uxx = (-u(x - 2 * h, y) + 16 * u(x - h, y) - 30 * u(x, y) + 16 * u(x + h, y) -
                          u(x + 2 * h, y)) /
                         (12 * h * h);
      const double uyy = (-u(x, y - 2 * h) + 16 * u(x, y - h) - 30 * u(x, y) + 16 * u(x, y + h) -
                          u(x, y + 2 * h)) /
                         (12 * h * h);
      const double resid =
          c.prob.alpha[0] * ux + c.prob.alpha[1] * uy - c.prob.beta * (uxx + uyy) -
          c.prob.source(x, y);
      EXPECT_LE(std::abs(resid), 1e-6 * (1.0 + std::abs(c.prob.source(x, y))));
    }
}

TEST(SineCase, InitialMatchesExactAtTimeZero) {
  const CaseDefinition c = sine_wave_case();
  for (double x : {0.1, 0.7, 1.3})
    for (double y : {0.2, 1.9}) EXPECT_NEAR(c.initial(x, y), c.exact(x, y, 0.0), 1e-15);
}

TEST(SineCase, OneCycleAmplitude) {
  const CaseDefinition c = sine_wave_case();
  const double t = c.t_c;  // one cycle
  const double amp = std::exp(-2.0 * 0.1 * M_PI * M_PI * t);
  for (double x : {0.31, 0.87})
    for (double y : {0.11, 1.47})
      EXPECT_NEAR(c.exact(x, y, t), amp * c.exact(x, y, 0.0), 1e-12);
}

TEST(SineCase, SatisfiesPde) {
  const CaseDefinition c = sine_wave_case();
  const double h = 1e-5;
  auto u = [&](double x, double y, double t) { return c.exact(x, y, t); };
  const double x = 0.37, y = 1.21, t = 0.4;
  const double ut = (u(x, y, t - 2 * h) - 8 * u(x, y, t - h) + 8 * u(x, y, t + h) -
                     u(x, y, t + 2 * h)) /
                    (12 * h);
  const double ux = (u(x - 2 * h, y, t) - 8 * u(x - h, y, t) + 8 * u(x + h, y, t) -
                     u(x + 2 * h, y, t)) /
                    (12 * h);
  const double uy = (u(x, y - 2 * h, t) - 8 * u(x, y - h, t) + 8 * u(x, y + h, t) -
                     u(x, y + 2 * h, t)) /
                    (12 * h);
  const double uxx = (-u(x - 2 * h, y, t) + 16 * u(x - h, y, t) - 30 * u(x, y, t) +
                      16 * u(x + h, y, t) - u(x + 2 * h, y, t)) /
                     (12 * h * h);
  const double uyy = (-u(x, y - 2 * h, t) + 16 * u(x, y - h, t) - 30 * u(x, y, t) +
                      16 * u(x, y + h, t) - u(x, y + 2 * h, t)) /
                     (12 * h * h);
  EXPECT_LE(std::abs(ut + ux + uy - 0.1 * (uxx + uyy)), 1e-7);
}

TEST(GaussianCase, InitialValues) {
  const CaseDefinition c = gaussian_pulse_case(0.0);
  EXPECT_NEAR(c.initial(0.0, 0.0), 1.0, 1e-15);
  EXPECT_LE(c.initial(5.0, 5.0), 1e-10);
  EXPECT_EQ(c.horizon_tstar, 5.0);
  EXPECT_EQ(gaussian_pulse_case(0.01).horizon_tstar, 1.0);
}

TEST(GaussianCase, ExactIsPeriodicTranslate) {
  const CaseDefinition c = gaussian_pulse_case(0.0);
  // after one full domain crossing (t = 10) the pulse returns
  for (double x : {-2.0, 0.5, 3.0})
    for (double y : {-1.0, 2.5}) EXPECT_NEAR(c.exact(x, y, 10.0), c.initial(x, y), 1e-12);
  // translate by t = 1
  EXPECT_NEAR(c.exact(1.0, 1.0, 1.0), 1.0, 1e-13);
}

TEST(GaussianCase, InitialEnergyNearHalfPi) {
  // int exp(-2 r^2) over the plane = pi / 2; the box truncation is negligible
  const CaseDefinition c = gaussian_pulse_case(0.0);
  Eigen::VectorXd x, w;
  gauss_legendre(60, x, w);
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < x.size(); ++j) {
      const double px = 5.0 * x[i], py = 5.0 * x[j];
      acc += 25.0 * w[i] * w[j] * c.initial(px, py) * c.initial(px, py);
    }
  EXPECT_NEAR(acc, M_PI / 2.0, 1e-6);
}

TEST(Cases, FactoryNames) {
  EXPECT_EQ(make_case("sine_wave").name, "sine_wave");
  EXPECT_THROW(make_case("nope"), InvalidArgument);
}
