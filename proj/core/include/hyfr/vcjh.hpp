#pragma once

#include <Eigen/Dense>

namespace hyfr {

// eta_p = c (2p+1) (a_p p!)^2 / 2. Negative c is a stability-constraint
// violation unless explicitly allowed (experimental runs).
double eta_p(int p, double c, bool allow_negative_c = false);

// c values recovering the spectral-difference and Huynh g2 schemes,
// validated by eta_p(c_sd) = p/(p+1) and eta_p(c_hu) = (p+1)/p.
double c_sd(int p);
double c_hu(int p);

// One-dimensional VCJH correction-function pair of degree p+1.
//   g_l(-1) = 1, g_l(+1) = 0, g_r(x) = g_l(-x).
struct VcjhCorrection {
  int p = 0;
  double c = 0.0;
  double eta = 0.0;
  Eigen::VectorXd gl_coeffs, gr_coeffs;  // Legendre-basis coefficients, degree p+1
  Eigen::VectorXd dgl_at_pts, dgr_at_pts;  // derivative samples at the 1D solution points

  double gl(double x) const;
  double gr(double x) const;
  double dgl(double x) const;
  double dgr(double x) const;
};

VcjhCorrection build_vcjh(int p, double c, const Eigen::VectorXd& solution_pts_1d,
                          bool allow_negative_c = false);

}  // namespace hyfr
