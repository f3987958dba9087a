#include "hyfr/ref_element.hpp"

#include "hyfr/errors.hpp"
#include "hyfr/legendre.hpp"

namespace hyfr {

Eigen::Vector2d RefElement::face_point(int f, int m) const {
  switch (f) {
    case 0: return {pts1d[m], -1.0};
    case 1: return {1.0, pts1d[m]};
    case 2: return {pts1d[m], 1.0};
    case 3: return {-1.0, pts1d[m]};
    default: throw InvalidArgument("face_point: bad face");
  }
}

Eigen::Vector2d RefElement::face_ref_normal(int f) {
  switch (f) {
    case 0: return {0.0, -1.0};
    case 1: return {1.0, 0.0};
    case 2: return {0.0, 1.0};
    case 3: return {-1.0, 0.0};
    default: throw InvalidArgument("face_ref_normal: bad face");
  }
}

RefElement build_ref_element(int p, double c, bool allow_negative_c) {
  if (p < 1) throw InvalidArgument("build_ref_element: p must be >= 1");
  RefElement r;
  r.p = p;
  r.n1d = p + 1;
  r.ns = r.n1d * r.n1d;
  r.nr = r.n1d;
  r.c = c;

  gauss_legendre(r.n1d, r.pts1d, r.w1d);
  Eigen::VectorXd lobw;
  gauss_lobatto(r.n1d, r.lob1d, lobw);

  r.corr = build_vcjh(p, c, r.pts1d, allow_negative_c);

  r.d1 = diff_matrix(r.pts1d);
  r.dp1d = Eigen::MatrixXd::Identity(r.n1d, r.n1d);
  for (int k = 0; k < p; ++k) r.dp1d = r.d1 * r.dp1d;

  // tensor differentiation: dxi acts along rows of constant eta
  r.dxi = Eigen::MatrixXd::Zero(r.ns, r.ns);
  r.deta = Eigen::MatrixXd::Zero(r.ns, r.ns);
  for (int b = 0; b < r.n1d; ++b)
    for (int a = 0; a < r.n1d; ++a)
      for (int k = 0; k < r.n1d; ++k) {
        r.dxi(r.node(a, b), r.node(k, b)) += r.d1(a, k);
        r.deta(r.node(a, b), r.node(a, k)) += r.d1(b, k);
      }

  const Eigen::VectorXd lm = lagrange_values(r.pts1d, -1.0);
  const Eigen::VectorXd lp = lagrange_values(r.pts1d, 1.0);

  r.face_axis = {1, 0, 1, 0};
  r.face_sign = {-1.0, 1.0, 1.0, -1.0};

  for (int f = 0; f < 4; ++f) {
    r.interp_face[f] = Eigen::MatrixXd::Zero(r.nr, r.ns);
    r.corr_div[f] = Eigen::MatrixXd::Zero(r.ns, r.nr);
    r.corr_grad[f] = Eigen::MatrixXd::Zero(r.ns, r.nr);
    r.corr_val[f] = Eigen::MatrixXd::Zero(r.ns, r.nr);
  }

  for (int m = 0; m < r.nr; ++m) {
    for (int k = 0; k < r.n1d; ++k) {
      r.interp_face[0](m, r.node(m, k)) = lm[k];  // bottom: eta = -1
      r.interp_face[1](m, r.node(k, m)) = lp[k];  // right:  xi  = +1
      r.interp_face[2](m, r.node(m, k)) = lp[k];  // top:    eta = +1
      r.interp_face[3](m, r.node(k, m)) = lm[k];  // left:   xi  = -1
    }
  }

  set_correction_fields(r, r.corr);

  r.lob_to_gauss = interp_matrix(r.lob1d, r.pts1d);
  return r;
}

void set_correction_fields(RefElement& r, const VcjhCorrection& corr) {
  for (int f = 0; f < 4; ++f) {
    r.corr_div[f].setZero(r.ns, r.nr);
    r.corr_grad[f].setZero(r.ns, r.nr);
    r.corr_val[f].setZero(r.ns, r.nr);
  }
  // Correction fields are tensor products of the 1D pair with the cardinal
  // polynomial of the matching tangential node, so each face point only
  // touches its own tensor line.
  for (int i = 0; i < r.ns; ++i) {
    const int a = r.xi_index(i), b = r.eta_index(i);
    const double xi = r.pts1d[a], eta = r.pts1d[b];
    // bottom: g = (0, -g_l(eta) l_m(xi))
    r.corr_div[0](i, a) = -corr.dgl(eta);
    r.corr_grad[0](i, a) = corr.dgl(eta);
    r.corr_val[0](i, a) = -corr.gl(eta);
    // right: g = (g_r(xi) l_m(eta), 0)
    r.corr_div[1](i, b) = corr.dgr(xi);
    r.corr_grad[1](i, b) = corr.dgr(xi);
    r.corr_val[1](i, b) = corr.gr(xi);
    // top: g = (0, g_r(eta) l_m(xi))
    r.corr_div[2](i, a) = corr.dgr(eta);
    r.corr_grad[2](i, a) = corr.dgr(eta);
    r.corr_val[2](i, a) = corr.gr(eta);
    // left: g = (-g_l(xi) l_m(eta), 0)
    r.corr_div[3](i, b) = -corr.dgl(xi);
    r.corr_grad[3](i, b) = corr.dgl(xi);
    r.corr_val[3](i, b) = -corr.gl(xi);
  }
  r.corr = corr;
}

void tensor_gauss(int n, Eigen::MatrixX2d& pts, Eigen::VectorXd& wts) {
  Eigen::VectorXd x, w;
  gauss_legendre(n, x, w);
  pts.resize(n * n, 2);
  wts.resize(n * n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      pts(b * n + a, 0) = x[a];
      pts(b * n + a, 1) = x[b];
      wts[b * n + a] = w[a] * w[b];
    }
}

}  // namespace hyfr
