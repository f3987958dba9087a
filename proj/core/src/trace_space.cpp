#include "hyfr/trace_space.hpp"

#include "hyfr/errors.hpp"
#include "hyfr/legendre.hpp"

namespace hyfr {

std::array<Eigen::VectorXd, 4> TraceSpace::gather(int elem, const Eigen::VectorXd& trace) const {
  std::array<Eigen::VectorXd, 4> out;
  for (int f = 0; f < 4; ++f) {
    out[f].resize(nr);
    const auto& dofs = elem_face_dofs[elem][f];
    for (int m = 0; m < nr; ++m) out[f][m] = trace[dofs[m]];
  }
  return out;
}

std::array<Eigen::VectorXd, 4> TraceSpace::gather_gauss(int elem,
                                                        const Eigen::VectorXd& trace) const {
  auto out = gather(elem, trace);
  if (kind == SchemeKind::efr)
    for (int f = 0; f < 4; ++f) out[f] = node_to_gauss * out[f];
  return out;
}

namespace {

// endpoint vertices (i, j) of a local face in tangential order
std::array<std::array<int, 2>, 2> face_vertices(int ei, int ej, int f) {
  switch (f) {
    case 0: return {{{ei, ej}, {ei + 1, ej}}};
    case 1: return {{{ei + 1, ej}, {ei + 1, ej + 1}}};
    case 2: return {{{ei, ej + 1}, {ei + 1, ej + 1}}};
    default: return {{{ei, ej}, {ei, ej + 1}}};
  }
}

}  // namespace

TraceSpace build_trace_space(const Mesh& mesh, const RefElement& ref,
                             const std::vector<ElementGeometry>& geoms, SchemeKind kind,
                             EfrQuadrature equad) {
  if (kind == SchemeKind::fr) throw InvalidArgument("build_trace_space: fr has no trace space");
  TraceSpace ts;
  ts.kind = kind;
  ts.nr = ref.nr;
  const int nf = static_cast<int>(mesh.faces.size());
  ts.elem_face_dofs.assign(mesh.n_elems(), {});

  if (kind == SchemeKind::hfr) {
    ts.n_global = nf * ref.nr;
    ts.node_to_gauss = Eigen::MatrixXd::Identity(ref.nr, ref.nr);
    ts.test_mat = ref.w1d.asDiagonal();
    ts.boundary_dof.assign(ts.n_global, 0);
    ts.dof_xy.assign(ts.n_global, Eigen::Vector2d::Zero());
    for (int e = 0; e < mesh.n_elems(); ++e)
      for (int f = 0; f < 4; ++f) {
        const int uf = mesh.elem_face_id[e][f];
        auto& dofs = ts.elem_face_dofs[e][f];
        dofs.resize(ref.nr);
        for (int m = 0; m < ref.nr; ++m) dofs[m] = uf * ref.nr + m;
      }
    for (int uf = 0; uf < nf; ++uf) {
      const auto& face = mesh.faces[uf];
      const ElementGeometry& g = geoms[face.em];
      for (int m = 0; m < ref.nr; ++m) {
        ts.dof_xy[uf * ref.nr + m] = g.fxy[face.fm].row(m).transpose();
        if (face.kind == FaceKind::dirichlet) ts.boundary_dof[uf * ref.nr + m] = 1;
      }
    }
    return ts;
  }

  // EFR: vertex dofs first, then p-1 interior Lobatto dofs per face.
  const int nvx = mesh.periodic ? mesh.nx : mesh.nx + 1;
  const int nvy = mesh.periodic ? mesh.ny : mesh.ny + 1;
  const int n_vert = nvx * nvy;
  const int n_int = ref.nr - 2;
  ts.n_global = n_vert + nf * n_int;
  ts.node_to_gauss = ref.lob_to_gauss;
  if (equad == EfrQuadrature::exact) {
    ts.test_mat = ref.lob_to_gauss.transpose() * Eigen::MatrixXd(ref.w1d.asDiagonal());
  } else {
    // collocate the transmission conditions at the Lobatto trace nodes
    Eigen::VectorXd lp, lw;
    gauss_lobatto(ref.n1d, lp, lw);
    ts.test_mat = lw.asDiagonal() * interp_matrix(ref.pts1d, ref.lob1d);
  }
  ts.boundary_dof.assign(ts.n_global, 0);
  ts.dof_xy.assign(ts.n_global, Eigen::Vector2d::Zero());

  auto vertex_id = [&](int i, int j) {
    if (mesh.periodic) {
      i = (i % nvx + nvx) % nvx;
      j = (j % nvy + nvy) % nvy;
    }
    return j * nvx + i;
  };

  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int ei = e % mesh.nx, ej = e / mesh.nx;
    for (int f = 0; f < 4; ++f) {
      const int uf = mesh.elem_face_id[e][f];
      auto verts = face_vertices(ei, ej, f);
      auto& dofs = ts.elem_face_dofs[e][f];
      dofs.resize(ref.nr);
      dofs[0] = vertex_id(verts[0][0], verts[0][1]);
      dofs[ref.nr - 1] = vertex_id(verts[1][0], verts[1][1]);
      for (int m = 1; m < ref.nr - 1; ++m) dofs[m] = n_vert + uf * n_int + (m - 1);
    }
  }

  // dof locations from the minus-side face curve at Lobatto points
  for (int uf = 0; uf < nf; ++uf) {
    const auto& face = mesh.faces[uf];
    const ElementGeometry& g = geoms[face.em];
    Eigen::MatrixX2d ref_pts(ref.nr, 2);
    for (int m = 0; m < ref.nr; ++m) {
      Eigen::Vector2d fp = ref.face_point(face.fm, m);
      // replace the Gauss tangential coordinate by the Lobatto one
      if (face.fm == 0 || face.fm == 2)
        fp[0] = ref.lob1d[m];
      else
        fp[1] = ref.lob1d[m];
      ref_pts.row(m) = fp.transpose();
    }
    GeomEval ge = g.eval(ref_pts);
    const auto& dofs = ts.elem_face_dofs[face.em][face.fm];
    for (int m = 0; m < ref.nr; ++m) {
      ts.dof_xy[dofs[m]] = ge.xy.row(m).transpose();
      if (face.kind == FaceKind::dirichlet) ts.boundary_dof[dofs[m]] = 1;
    }
  }
  return ts;
}

}  // namespace hyfr
