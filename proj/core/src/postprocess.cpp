#include "hyfr/postprocess.hpp"

#include "hyfr/errors.hpp"
#include "hyfr/legendre.hpp"

namespace hyfr {

StarSpace build_star_space(const RefElement& ref) {
  StarSpace ss;
  ss.star = build_ref_element(ref.p + 1, ref.c);
  const int n = ref.n1d, nstar = ss.star.n1d;
  Eigen::MatrixXd interp1d = interp_matrix(ref.pts1d, ss.star.pts1d);
  ss.face_p_to_star = interp1d;
  ss.vol_p_to_star = Eigen::MatrixXd::Zero(nstar * nstar, n * n);
  for (int b = 0; b < nstar; ++b)
    for (int a = 0; a < nstar; ++a)
      for (int jb = 0; jb < n; ++jb)
        for (int ja = 0; ja < n; ++ja)
          ss.vol_p_to_star(b * nstar + a, jb * n + ja) = interp1d(a, ja) * interp1d(b, jb);
  return ss;
}

Eigen::MatrixX2d reconstruct_flux_star(const StarSpace& ss, const ElementGeometry& star_geo,
                                       double beta, const Eigen::MatrixX2d& q,
                                       const std::array<Eigen::VectorXd, 4>& phiv) {
  const RefElement& st = ss.star;
  const int ns = st.ns;

  // discontinuous viscous flux interpolated to the star points, transformed
  Eigen::MatrixX2d fstar(ns, 2);
  const Eigen::VectorXd qx = ss.vol_p_to_star * q.col(0);
  const Eigen::VectorXd qy = ss.vol_p_to_star * q.col(1);
  for (int i = 0; i < ns; ++i) {
    const double fx = -beta * qx[i], fy = -beta * qy[i];
    fstar(i, 0) = star_geo.y_eta[i] * fx - star_geo.x_eta[i] * fy;
    fstar(i, 1) = -star_geo.y_xi[i] * fx + star_geo.x_xi[i] * fy;
  }

  for (int f = 0; f < 4; ++f) {
    const Eigen::VectorXd& phi_star = phiv[f];
    const Eigen::VectorXd ft_face =
        st.interp_face[f] * (st.face_axis[f] == 0 ? fstar.col(0) : fstar.col(1)) *
        st.face_sign[f];
    Eigen::VectorXd hstar(st.nr);
    for (int m = 0; m < st.nr; ++m)
      hstar[m] = star_geo.fjac[f][m] * phi_star[m] - ft_face[m];
    fstar.col(st.face_axis[f]) += st.corr_val[f] * hstar;
  }
  return fstar;
}

Eigen::VectorXd postprocess_element(const StarSpace& ss, const ElementGeometry& star_geo,
                                    double beta, const Eigen::MatrixX2d& fstar,
                                    const std::array<Eigen::VectorXd, 4>& phiv,
                                    double mean_uh) {
  if (!(beta > 0.0)) throw InvalidArgument("postprocess_element: beta must be positive");
  const RefElement& st = ss.star;
  const int ns = st.ns, nr = st.nr;

  // FR operator for the flux -beta grad v with prescribed normal data
  auto apply = [&](const Eigen::VectorXd& v) {
    const Eigen::VectorXd qxi = st.dxi * v, qeta = st.deta * v;
    Eigen::VectorXd xtx(ns), xty(ns);
    for (int i = 0; i < ns; ++i) {
      const double inv = 1.0 / star_geo.detj[i];
      const double gx = (star_geo.y_eta[i] * qxi[i] - star_geo.y_xi[i] * qeta[i]) * inv;
      const double gy = (-star_geo.x_eta[i] * qxi[i] + star_geo.x_xi[i] * qeta[i]) * inv;
      const double fx = -beta * gx, fy = -beta * gy;
      xtx[i] = star_geo.y_eta[i] * fx - star_geo.x_eta[i] * fy;
      xty[i] = -star_geo.y_xi[i] * fx + star_geo.x_xi[i] * fy;
    }
    Eigen::VectorXd out = st.dxi * xtx + st.deta * xty;
    for (int f = 0; f < 4; ++f) {
      const Eigen::VectorXd ft_face =
          st.interp_face[f] * (st.face_axis[f] == 0 ? xtx : xty) * st.face_sign[f];
      out -= st.corr_div[f] * ft_face;
    }
    out.array() /= star_geo.detj.array();
    return out;
  };

  Eigen::MatrixXd k(ns, ns);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(ns);
  for (int j = 0; j < ns; ++j) {
    unit[j] = 1.0;
    k.col(j) = apply(unit);
    unit[j] = 0.0;
  }

  Eigen::VectorXd b = st.dxi * fstar.col(0) + st.deta * fstar.col(1);
  for (int f = 0; f < 4; ++f) {
    Eigen::VectorXd neumann(nr);
    for (int m = 0; m < nr; ++m) neumann[m] = star_geo.fjac[f][m] * phiv[f][m];
    b -= st.corr_div[f] * neumann;
  }
  b.array() /= star_geo.detj.array();

  // replace the constant-mode row by the mean constraint
  const int last = ns - 1;
  for (int b2 = 0; b2 < st.n1d; ++b2)
    for (int a = 0; a < st.n1d; ++a) {
      const int i = st.node(a, b2);
      k(last, i) = st.w1d[a] * st.w1d[b2] * star_geo.detj[i];
    }
  b[last] = mean_uh;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(k);
  const Eigen::VectorXd ustar = lu.solve(b);
  if (!ustar.allFinite() || (k * ustar - b).norm() > 1e-8 * (1.0 + b.norm()))
    throw PostProcessingFailure("postprocess_element: singular local star system");
  return ustar;
}

std::array<Eigen::VectorXd, 4> hfr_viscous_face_flux(const HybridSystem& sys,
                                                     const FieldState& state, int elem) {
  const RefElement& ref = sys.ref();
  const auto uhat = sys.trace_space().gather_gauss(elem, state.trace);
  auto flux = sys.ops()[elem].physical_flux(state.u.segment(elem * ref.ns, ref.ns), uhat);
  for (int f = 0; f < 4; ++f)
    for (int m = 0; m < ref.nr; ++m) {
      const Eigen::Vector2d n = sys.geoms()[elem].fnormal[f].row(m).transpose();
      flux[f][m] -= sys.problem().alpha.dot(n) * uhat[f][m];
    }
  return flux;
}

namespace {

double element_mean(const StarSpace& ss, const ElementGeometry& star_geo,
                    const Eigen::VectorXd& u_elem) {
  const RefElement& st = ss.star;
  const Eigen::VectorXd ustar_pts = ss.vol_p_to_star * u_elem;
  double acc = 0.0;
  for (int b = 0; b < st.n1d; ++b)
    for (int a = 0; a < st.n1d; ++a) {
      const int i = st.node(a, b);
      acc += st.w1d[a] * st.w1d[b] * star_geo.detj[i] * ustar_pts[i];
    }
  return acc;
}

}  // namespace

Eigen::VectorXd postprocess_hfr(const HybridSystem& sys, const FieldState& state,
                                const StarSpace& ss,
                                const std::vector<ElementGeometry>& star_geoms) {
  if (sys.trace_space().kind == SchemeKind::efr)
    throw UnsupportedScheme("post-processing requires single-valued fluxes; not available for efr");
  const RefElement& ref = sys.ref();
  const int ne = sys.mesh().n_elems();
  Eigen::VectorXd out(ne * ss.star.ns);
  for (int e = 0; e < ne; ++e) {
    const auto uhat = sys.trace_space().gather_gauss(e, state.trace);
    const Eigen::VectorXd ue = state.u.segment(e * ref.ns, ref.ns);
    const Eigen::MatrixX2d q = sys.ops()[e].corrected_gradient(ue, uhat);
    const auto phiv = hfr_viscous_face_flux(sys, state, e);
    std::array<Eigen::VectorXd, 4> phis;
    for (int f = 0; f < 4; ++f) phis[f] = ss.face_p_to_star * phiv[f];
    const Eigen::MatrixX2d fstar =
        reconstruct_flux_star(ss, star_geoms[e], sys.problem().beta, q, phis);
    const double mean = element_mean(ss, star_geoms[e], ue);
    out.segment(e * ss.star.ns, ss.star.ns) =
        postprocess_element(ss, star_geoms[e], sys.problem().beta, fstar, phis, mean);
  }
  return out;
}

Eigen::VectorXd postprocess_fr(const FrSystem& sys, const FieldState& state, const StarSpace& ss,
                               const std::vector<ElementGeometry>& star_geoms) {
  const RefElement& ref = sys.ref();
  const int ne = sys.mesh().n_elems();
  const FrPointData pd = sys.point_data(state.u);
  Eigen::VectorXd out(ne * ss.star.ns);
  for (int e = 0; e < ne; ++e) {
    const Eigen::VectorXd ue = state.u.segment(e * ref.ns, ref.ns);
    std::array<Eigen::VectorXd, 4> phis;
    for (int f = 0; f < 4; ++f) phis[f] = ss.face_p_to_star * pd.phiv[e][f];
    const Eigen::MatrixX2d fstar =
        reconstruct_flux_star(ss, star_geoms[e], sys.problem().beta, pd.q[e], phis);
    const double mean = element_mean(ss, star_geoms[e], ue);
    out.segment(e * ss.star.ns, ss.star.ns) =
        postprocess_element(ss, star_geoms[e], sys.problem().beta, fstar, phis, mean);
  }
  return out;
}

}  // namespace hyfr
