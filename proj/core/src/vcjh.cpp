#include "hyfr/vcjh.hpp"

#include <cmath>

#include "hyfr/errors.hpp"
#include "hyfr/legendre.hpp"

namespace hyfr {

namespace {
double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double ap_pfac_sq(int p) {
  double v = legendre_leading_coeff(p) * factorial(p);
  return v * v;
}

double eval_legendre_series(const Eigen::VectorXd& coeffs, double x) {
  double s = 0.0;
  for (int k = 0; k < coeffs.size(); ++k) s += coeffs[k] * legendre(k, x);
  return s;
}

double eval_legendre_series_deriv(const Eigen::VectorXd& coeffs, double x) {
  double s = 0.0;
  for (int k = 0; k < coeffs.size(); ++k) s += coeffs[k] * legendre_deriv(k, x);
  return s;
}
}  // namespace

double eta_p(int p, double c, bool allow_negative_c) {
  if (p < 1) throw InvalidArgument("eta_p: p must be >= 1");
  if (c < 0.0 && !allow_negative_c)
    throw StabilityConstraintViolation("eta_p: correction parameter c must be >= 0");
  return c * (2.0 * p + 1.0) * ap_pfac_sq(p) / 2.0;
}

double c_sd(int p) { return 2.0 * p / ((2.0 * p + 1.0) * (p + 1.0) * ap_pfac_sq(p)); }

double c_hu(int p) { return 2.0 * (p + 1.0) / ((2.0 * p + 1.0) * p * ap_pfac_sq(p)); }

double VcjhCorrection::gl(double x) const { return eval_legendre_series(gl_coeffs, x); }
double VcjhCorrection::gr(double x) const { return eval_legendre_series(gr_coeffs, x); }
double VcjhCorrection::dgl(double x) const { return eval_legendre_series_deriv(gl_coeffs, x); }
double VcjhCorrection::dgr(double x) const { return eval_legendre_series_deriv(gr_coeffs, x); }

VcjhCorrection build_vcjh(int p, double c, const Eigen::VectorXd& solution_pts_1d,
                          bool allow_negative_c) {
  VcjhCorrection v;
  v.p = p;
  v.c = c;
  v.eta = eta_p(p, c, allow_negative_c);

  // g_l = (-1)^p/2 [L_p - (eta L_{p-1} + L_{p+1})/(1 + eta)]
  // g_r =      1/2 [L_p + (eta L_{p-1} + L_{p+1})/(1 + eta)]
  const double k = (p % 2 == 0 ? 0.5 : -0.5);
  v.gl_coeffs = Eigen::VectorXd::Zero(p + 2);
  v.gr_coeffs = Eigen::VectorXd::Zero(p + 2);
  v.gl_coeffs[p - 1] = -k * v.eta / (1.0 + v.eta);
  v.gl_coeffs[p] = k;
  v.gl_coeffs[p + 1] = -k / (1.0 + v.eta);
  v.gr_coeffs[p - 1] = 0.5 * v.eta / (1.0 + v.eta);
  v.gr_coeffs[p] = 0.5;
  v.gr_coeffs[p + 1] = 0.5 / (1.0 + v.eta);

  const int n = static_cast<int>(solution_pts_1d.size());
  v.dgl_at_pts.resize(n);
  v.dgr_at_pts.resize(n);
  for (int i = 0; i < n; ++i) {
    v.dgl_at_pts[i] = v.dgl(solution_pts_1d[i]);
    v.dgr_at_pts[i] = v.dgr(solution_pts_1d[i]);
  }
  return v;
}

}  // namespace hyfr
