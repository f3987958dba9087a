#include <gtest/gtest.h>

#include <cmath>

#include "hyfr/cases.hpp"
#include "hyfr/diagnostics.hpp"
#include "hyfr/postprocess.hpp"
#include "hyfr/study.hpp"

using namespace hyfr;

TEST(StarSpace, DegreeAndCardinality) {
  const RefElement ref = build_ref_element(2, c_sd(2));
  const StarSpace ss = build_star_space(ref);
  EXPECT_EQ(ss.star.p, 3);
  EXPECT_EQ(ss.star.c, ref.c);
  // interpolation reproduces degree-p data exactly at star points
  Eigen::VectorXd v(ref.ns);
  for (int i = 0; i < ref.ns; ++i) {
    const double xi = ref.pts1d[ref.xi_index(i)], eta = ref.pts1d[ref.eta_index(i)];
    v[i] = xi * xi - 0.3 * xi * eta + eta;
  }
  const Eigen::VectorXd vs = ss.vol_p_to_star * v;
  for (int i = 0; i < ss.star.ns; ++i) {
    const double xi = ss.star.pts1d[ss.star.xi_index(i)];
    const double eta = ss.star.pts1d[ss.star.eta_index(i)];
    EXPECT_NEAR(vs[i], xi * xi - 0.3 * xi * eta + eta, 1e-13);
  }
}

TEST(PostprocessElement, RecoversPolynomialFromItsFlux) {
  // F* = -beta grad v for v in Q_{p+1}: the local solve returns v exactly
  const Mesh mesh = build_cartesian_mesh(2, 2, {0, 1, 0, 1}, false);
  const RefElement ref = build_ref_element(2, 0.0);
  const StarSpace ss = build_star_space(ref);
  const auto star_geoms = build_all_geometry(mesh, ss.star);
  const double beta = 0.7;
  const int e = 1;
  const ElementGeometry& sg = star_geoms[e];

  auto v = [](double x, double y) { return std::pow(x, 3) - 2.0 * x * y * y + 0.5 * y; };
  auto gv = [](double x, double y) {
    return Eigen::Vector2d(3.0 * x * x - 2.0 * y * y, -4.0 * x * y + 0.5);
  };

  // transformed star flux and face data from the closed form
  Eigen::MatrixX2d fstar(ss.star.ns, 2);
  for (int i = 0; i < ss.star.ns; ++i) {
    const Eigen::Vector2d f = -beta * gv(sg.xy(i, 0), sg.xy(i, 1));
    fstar(i, 0) = sg.y_eta[i] * f[0] - sg.x_eta[i] * f[1];
    fstar(i, 1) = -sg.y_xi[i] * f[0] + sg.x_xi[i] * f[1];
  }
  std::array<Eigen::VectorXd, 4> phiv;
  for (int f = 0; f < 4; ++f) {
    phiv[f].resize(ss.star.nr);
    for (int m = 0; m < ss.star.nr; ++m) {
      // physical normal flux at the star face points
      Eigen::MatrixX2d fp(1, 2);
      fp.row(0) = ss.star.face_point(f, m).transpose();
      const GeomEval ge = star_geoms[e].eval(fp);
      Eigen::Vector2d nsc;
      switch (f) {
        case 0: nsc = {ge.y_xi[0], -ge.x_xi[0]}; break;
        case 1: nsc = {ge.y_eta[0], -ge.x_eta[0]}; break;
        case 2: nsc = {-ge.y_xi[0], ge.x_xi[0]}; break;
        default: nsc = {-ge.y_eta[0], ge.x_eta[0]}; break;
      }
      phiv[f][m] = (-beta * gv(ge.xy(0, 0), ge.xy(0, 1))).dot(nsc.normalized());
    }
  }
  // mean of v over the element
  double mean = 0.0;
  for (int b = 0; b < ss.star.n1d; ++b)
    for (int a = 0; a < ss.star.n1d; ++a) {
      const int i = ss.star.node(a, b);
      mean += ss.star.w1d[a] * ss.star.w1d[b] * sg.detj[i] * v(sg.xy(i, 0), sg.xy(i, 1));
    }

  const Eigen::VectorXd ustar = postprocess_element(ss, sg, beta, fstar, phiv, mean);
  for (int i = 0; i < ss.star.ns; ++i)
    EXPECT_NEAR(ustar[i], v(sg.xy(i, 0), sg.xy(i, 1)), 1e-11);
}

TEST(PostprocessElement, RejectsZeroBeta) {
  const Mesh mesh = build_cartesian_mesh(1, 1, {0, 1, 0, 1}, false);
  const RefElement ref = build_ref_element(1, 0.0);
  const StarSpace ss = build_star_space(ref);
  const auto sg = build_all_geometry(mesh, ss.star);
  std::array<Eigen::VectorXd, 4> phiv;
  for (auto& p : phiv) p = Eigen::VectorXd::Zero(ss.star.nr);
  EXPECT_THROW(postprocess_element(ss, sg[0], 0.0, Eigen::MatrixX2d::Zero(ss.star.ns, 2), phiv,
                                   0.0),
               InvalidArgument);
}

TEST(ReconstructFluxStar, ConstantFluxHasNoCorrection) {
  // constant physical viscous flux: H-jump vanishes, F* is the constant
  const Mesh mesh = build_cartesian_mesh(2, 2, {0, 1, 0, 1}, false);
  const RefElement ref = build_ref_element(2, c_hu(2));
  const StarSpace ss = build_star_space(ref);
  const auto star_geoms = build_all_geometry(mesh, ss.star);
  const double beta = 2.0;
  const Eigen::Vector2d qconst(0.4, -0.9);
  Eigen::MatrixX2d q(ref.ns, 2);
  q.col(0).setConstant(qconst[0]);
  q.col(1).setConstant(qconst[1]);
  std::array<Eigen::VectorXd, 4> phiv;
  const int e = 0;
  // physical normal flux of the constant field at star face points
  for (int f = 0; f < 4; ++f) {
    phiv[f].resize(ss.star.nr);
    for (int m = 0; m < ss.star.nr; ++m)
      phiv[f][m] = (-beta * qconst).dot(star_geoms[e].fnormal[f].row(m).transpose());
  }

  const Eigen::MatrixX2d fstar = reconstruct_flux_star(ss, star_geoms[e], beta, q, phiv);
  // compare against adjJ * (-beta qconst) at star points
  for (int i = 0; i < ss.star.ns; ++i) {
    const Eigen::Vector2d f = -beta * qconst;
    EXPECT_NEAR(fstar(i, 0),
                star_geoms[e].y_eta[i] * f[0] - star_geoms[e].x_eta[i] * f[1], 1e-12);
    EXPECT_NEAR(fstar(i, 1),
                -star_geoms[e].y_xi[i] * f[0] + star_geoms[e].x_xi[i] * f[1], 1e-12);
  }
}

TEST(Postprocess, EfrRejected) {
  RunConfig cfg;
  cfg.scheme = SchemeKind::efr;
  cfg.postprocess = true;
  EXPECT_THROW(cfg.validate(), InvalidArgument);

  const CaseDefinition cas = steady_boundary_layer_case();
  const Mesh mesh = cas.make_mesh(3);
  const RefElement ref = build_ref_element(1, 0.0);
  const auto geoms = build_all_geometry(mesh, ref);
  HybridSystem sys(mesh, geoms, ref, cas.prob, Stabilization::upwind(1.0, cas.prob.beta),
                   SchemeKind::efr);
  sys.set_boundary_values([&](double x, double y) { return cas.exact(x, y, 0.0); });
  const FieldState st = sys.solve_steady();
  const StarSpace ss = build_star_space(ref);
  const auto sg = build_all_geometry(mesh, ss.star);
  EXPECT_THROW(postprocess_hfr(sys, st, ss, sg), UnsupportedScheme);
}

TEST(Postprocess, MeanPreservationAndSingleValuedFlux) {
  const CaseDefinition cas = steady_boundary_layer_case();
  const Mesh mesh = cas.make_mesh(10);
  const RefElement ref = build_ref_element(2, 0.0);
  const auto geoms = build_all_geometry(mesh, ref);
  HybridSystem sys(mesh, geoms, ref, cas.prob, Stabilization::upwind(1.0, cas.prob.beta),
                   SchemeKind::hfr);
  sys.set_boundary_values([&](double x, double y) { return cas.exact(x, y, 0.0); });
  const FieldState st = sys.solve_steady();
  const StarSpace ss = build_star_space(ref);
  const auto star_geoms = build_all_geometry(mesh, ss.star);
  const Eigen::VectorXd ustar = postprocess_hfr(sys, st, ss, star_geoms);

  // elementwise mean preservation to round-off
  for (int e = 0; e < mesh.n_elems(); ++e) {
    double m_h = 0.0, m_star = 0.0, vol = 0.0;
    const Eigen::VectorXd uh_star =
        ss.vol_p_to_star * st.u.segment(e * ref.ns, ref.ns);
    for (int b = 0; b < ss.star.n1d; ++b)
      for (int a = 0; a < ss.star.n1d; ++a) {
        const int i = ss.star.node(a, b);
        const double w = ss.star.w1d[a] * ss.star.w1d[b] * star_geoms[e].detj[i];
        m_h += w * uh_star[i];
        m_star += w * ustar[e * ss.star.ns + i];
        vol += w;
      }
    EXPECT_LE(std::abs(m_h - m_star), 1e-12 * (1.0 + std::abs(m_h)));
    (void)vol;
  }

  // star-flux normal trace is single-valued across interior faces
  std::vector<Eigen::MatrixX2d> fstars(mesh.n_elems());
  double scale = 0.0;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const auto uhat = sys.trace_space().gather_gauss(e, st.trace);
    const Eigen::MatrixX2d q =
        sys.ops()[e].corrected_gradient(st.u.segment(e * ref.ns, ref.ns), uhat);
    fstars[e] = reconstruct_flux_star(ss, star_geoms[e], cas.prob.beta, q,
                                      hfr_viscous_face_flux(sys, st, e));
    scale = std::max(scale, fstars[e].cwiseAbs().maxCoeff());
  }
  const RefElement& st_ref = ss.star;
  for (const auto& uf : mesh.faces) {
    if (uf.ep < 0) continue;
    const Eigen::VectorXd tm =
        st_ref.interp_face[uf.fm] *
        (st_ref.face_axis[uf.fm] == 0 ? fstars[uf.em].col(0) : fstars[uf.em].col(1)) *
        st_ref.face_sign[uf.fm];
    const Eigen::VectorXd tp =
        st_ref.interp_face[uf.fp] *
        (st_ref.face_axis[uf.fp] == 0 ? fstars[uf.ep].col(0) : fstars[uf.ep].col(1)) *
        st_ref.face_sign[uf.fp];
    for (int m = 0; m < st_ref.nr; ++m)
      EXPECT_LE(std::abs(tm[m] + tp[m]), 1e-10 * scale);  // transformed normals flip sign
  }
}

TEST(Postprocess, SuperconvergenceSpotAnchor) {
  // steady problem, p = 2, c_DG: one extra order after post-processing
  RunConfig cfg;
  cfg.case_name = "steady_boundary_layer";
  cfg.scheme = SchemeKind::hfr;
  cfg.p = 2;
  cfg.c_select = "dg";
  cfg.postprocess = true;
  cfg.mesh_sizes = {10, 20};
  const auto rows = run_convergence(cfg);
  EXPECT_GE(rows[1].order_post, 3.7);          // one full order above p+1
  EXPECT_LE(rows[1].error_post, 1.25 * 2.46e-5);  // at least as accurate as the reference data
  // post-processing must beat the plain solution on the finer mesh
  EXPECT_LT(rows[1].error_post, rows[1].error);
}
