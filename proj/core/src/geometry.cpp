#include "hyfr/geometry.hpp"

#include "hyfr/errors.hpp"
#include "hyfr/legendre.hpp"

namespace hyfr {

namespace {

// Evaluate the Lobatto-collocated geometry polynomial and its derivatives.
GeomEval eval_geo(const Eigen::MatrixX2d& geo, const Eigen::VectorXd& nodes,
                  const Eigen::MatrixX2d& ref_pts) {
  const int n1d = static_cast<int>(nodes.size());
  const int np = static_cast<int>(ref_pts.rows());
  GeomEval g;
  g.xy.resize(np, 2);
  g.x_xi.resize(np);
  g.x_eta.resize(np);
  g.y_xi.resize(np);
  g.y_eta.resize(np);
  g.detj.resize(np);
  for (int q = 0; q < np; ++q) {
    const Eigen::VectorXd la = lagrange_values(nodes, ref_pts(q, 0));
    const Eigen::VectorXd lb = lagrange_values(nodes, ref_pts(q, 1));
    const Eigen::VectorXd da = lagrange_deriv_values(nodes, ref_pts(q, 0));
    const Eigen::VectorXd db = lagrange_deriv_values(nodes, ref_pts(q, 1));
    Eigen::Vector2d x = Eigen::Vector2d::Zero(), dxi = Eigen::Vector2d::Zero(),
                    deta = Eigen::Vector2d::Zero();
    for (int b = 0; b < n1d; ++b)
      for (int a = 0; a < n1d; ++a) {
        const Eigen::Vector2d xn = geo.row(b * n1d + a).transpose();
        x += la[a] * lb[b] * xn;
        dxi += da[a] * lb[b] * xn;
        deta += la[a] * db[b] * xn;
      }
    g.xy.row(q) = x.transpose();
    g.x_xi[q] = dxi[0];
    g.y_xi[q] = dxi[1];
    g.x_eta[q] = deta[0];
    g.y_eta[q] = deta[1];
    g.detj[q] = dxi[0] * deta[1] - deta[0] * dxi[1];
  }
  return g;
}

}  // namespace

GeomEval ElementGeometry::eval(const Eigen::MatrixX2d& ref_pts) const {
  return eval_geo(geo, geo_nodes_1d, ref_pts);
}

ElementGeometry build_element_geometry(const Mesh& mesh, int elem, const RefElement& ref) {
  ElementGeometry eg;
  eg.p = ref.p;
  eg.geo_nodes_1d = ref.lob1d;

  const int n1d = ref.n1d;
  eg.geo.resize(ref.ns, 2);
  for (int b = 0; b < n1d; ++b)
    for (int a = 0; a < n1d; ++a)
      eg.geo.row(b * n1d + a) = mesh.map_point(elem, ref.lob1d[a], ref.lob1d[b]).transpose();

  Eigen::MatrixX2d sol_pts(ref.ns, 2);
  for (int b = 0; b < n1d; ++b)
    for (int a = 0; a < n1d; ++a) {
      sol_pts(b * n1d + a, 0) = ref.pts1d[a];
      sol_pts(b * n1d + a, 1) = ref.pts1d[b];
    }
  GeomEval gv = eval_geo(eg.geo, eg.geo_nodes_1d, sol_pts);
  eg.xy = gv.xy;
  eg.x_xi = gv.x_xi;
  eg.x_eta = gv.x_eta;
  eg.y_xi = gv.y_xi;
  eg.y_eta = gv.y_eta;
  eg.detj = gv.detj;
  for (int i = 0; i < ref.ns; ++i)
    if (!(eg.detj[i] > 0.0))
      throw DegenerateGeometry("element " + std::to_string(elem) +
                               ": non-positive jacobian at a solution point");

  for (int f = 0; f < 4; ++f) {
    Eigen::MatrixX2d fp(ref.nr, 2);
    for (int m = 0; m < ref.nr; ++m) fp.row(m) = ref.face_point(f, m).transpose();
    GeomEval fg = eval_geo(eg.geo, eg.geo_nodes_1d, fp);
    eg.fxy[f] = fg.xy;
    eg.f_x_xi[f] = fg.x_xi;
    eg.f_x_eta[f] = fg.x_eta;
    eg.f_y_xi[f] = fg.y_xi;
    eg.f_y_eta[f] = fg.y_eta;
    eg.fnormal[f].resize(ref.nr, 2);
    eg.fjac[f].resize(ref.nr);
    for (int m = 0; m < ref.nr; ++m) {
      // scaled outward normal adj(J)^T n_ref from the face-tangential derivative
      Eigen::Vector2d nsc;
      switch (f) {
        case 0: nsc = {fg.y_xi[m], -fg.x_xi[m]}; break;
        case 1: nsc = {fg.y_eta[m], -fg.x_eta[m]}; break;
        case 2: nsc = {-fg.y_xi[m], fg.x_xi[m]}; break;
        default: nsc = {-fg.y_eta[m], fg.x_eta[m]}; break;
      }
      const double len = nsc.norm();
      if (!(len > 0.0) || !(fg.detj[m] > 0.0))
        throw DegenerateGeometry("element " + std::to_string(elem) +
                                 ": degenerate face geometry");
      eg.fjac[f][m] = len;
      eg.fnormal[f].row(m) = (nsc / len).transpose();
    }
  }
  return eg;
}

std::vector<ElementGeometry> build_all_geometry(const Mesh& mesh, const RefElement& ref) {
  std::vector<ElementGeometry> g;
  g.reserve(mesh.n_elems());
  for (int e = 0; e < mesh.n_elems(); ++e) g.push_back(build_element_geometry(mesh, e, ref));
  return g;
}

}  // namespace hyfr
