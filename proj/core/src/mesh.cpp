#include "hyfr/mesh.hpp"

#include <cmath>
#include <ostream>

#include "hyfr/errors.hpp"
#include "hyfr/legendre.hpp"

namespace hyfr {

namespace {

Eigen::VectorXd equispaced_nodes(int degree) {
  Eigen::VectorXd x(degree + 1);
  for (int k = 0; k <= degree; ++k) x[k] = -1.0 + 2.0 * k / degree;
  return x;
}

// Tensor connectivity shared by all structured builders.
void build_connectivity(Mesh& m) {
  const int nx = m.nx, ny = m.ny;
  m.elem_face_id.assign(m.n_elems(), {-1, -1, -1, -1});
  m.elem_face_side.assign(m.n_elems(), {0, 0, 0, 0});

  auto add_face = [&](const UniqueFace& f) {
    const int id = static_cast<int>(m.faces.size());
    m.faces.push_back(f);
    m.elem_face_id[f.em][f.fm] = id;
    m.elem_face_side[f.em][f.fm] = 0;
    if (f.ep >= 0) {
      m.elem_face_id[f.ep][f.fp] = id;
      m.elem_face_side[f.ep][f.fp] = 1;
    }
  };

  // vertical faces (normal along x): minus = left element (local face 1)
  if (m.periodic) {
    for (int j = 0; j < ny; ++j)
      for (int iv = 0; iv < nx; ++iv) {
        const int left = m.elem_index((iv + nx - 1) % nx, j);
        const int right = m.elem_index(iv, j);
        add_face({left, 1, right, 3, iv == 0 ? FaceKind::periodic : FaceKind::interior});
      }
  } else {
    for (int j = 0; j < ny; ++j)
      for (int iv = 0; iv <= nx; ++iv) {
        if (iv == 0)
          add_face({m.elem_index(0, j), 3, -1, -1, FaceKind::dirichlet});
        else if (iv == nx)
          add_face({m.elem_index(nx - 1, j), 1, -1, -1, FaceKind::dirichlet});
        else
          add_face({m.elem_index(iv - 1, j), 1, m.elem_index(iv, j), 3, FaceKind::interior});
      }
  }
  // horizontal faces (normal along y): minus = lower element (local face 2)
  if (m.periodic) {
    for (int jv = 0; jv < ny; ++jv)
      for (int i = 0; i < nx; ++i) {
        const int lower = m.elem_index(i, (jv + ny - 1) % ny);
        const int upper = m.elem_index(i, jv);
        add_face({lower, 2, upper, 0, jv == 0 ? FaceKind::periodic : FaceKind::interior});
      }
  } else {
    for (int jv = 0; jv <= ny; ++jv)
      for (int i = 0; i < nx; ++i) {
        if (jv == 0)
          add_face({m.elem_index(i, 0), 0, -1, -1, FaceKind::dirichlet});
        else if (jv == ny)
          add_face({m.elem_index(i, ny - 1), 2, -1, -1, FaceKind::dirichlet});
        else
          add_face({m.elem_index(i, jv - 1), 2, m.elem_index(i, jv), 0, FaceKind::interior});
      }
  }
}

Mesh build_tensor_mesh(const Eigen::VectorXd& xlines, const Eigen::VectorXd& ylines,
                       bool periodic) {
  Mesh m;
  m.nx = static_cast<int>(xlines.size()) - 1;
  m.ny = static_cast<int>(ylines.size()) - 1;
  m.periodic = periodic;
  m.mapping_degree = 1;
  m.map_nodes.resize(m.n_elems());
  for (int j = 0; j < m.ny; ++j)
    for (int i = 0; i < m.nx; ++i) {
      Eigen::MatrixX2d nodes(4, 2);
      nodes << xlines[i], ylines[j],          //
          xlines[i + 1], ylines[j],           //
          xlines[i], ylines[j + 1],           //
          xlines[i + 1], ylines[j + 1];
      m.map_nodes[m.elem_index(i, j)] = nodes;
    }
  build_connectivity(m);
  return m;
}

}  // namespace

Eigen::Vector2d Mesh::map_point(int e, double xi, double eta) const {
  const int g = mapping_degree;
  const Eigen::VectorXd nodes = equispaced_nodes(g);
  const Eigen::VectorXd la = lagrange_values(nodes, xi);
  const Eigen::VectorXd lb = lagrange_values(nodes, eta);
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  for (int b = 0; b <= g; ++b)
    for (int a = 0; a <= g; ++a) x += la[a] * lb[b] * map_nodes[e].row(b * (g + 1) + a).transpose();
  return x;
}

Eigen::Matrix2d Mesh::map_jacobian(int e, double xi, double eta) const {
  const int g = mapping_degree;
  const Eigen::VectorXd nodes = equispaced_nodes(g);
  const Eigen::VectorXd la = lagrange_values(nodes, xi);
  const Eigen::VectorXd lb = lagrange_values(nodes, eta);
  const Eigen::VectorXd da = lagrange_deriv_values(nodes, xi);
  const Eigen::VectorXd db = lagrange_deriv_values(nodes, eta);
  Eigen::Matrix2d jac = Eigen::Matrix2d::Zero();
  for (int b = 0; b <= g; ++b)
    for (int a = 0; a <= g; ++a) {
      const Eigen::Vector2d xn = map_nodes[e].row(b * (g + 1) + a).transpose();
      jac.col(0) += da[a] * lb[b] * xn;
      jac.col(1) += la[a] * db[b] * xn;
    }
  return jac;
}

int Mesh::n_interior_faces() const {
  int n = 0;
  for (const auto& f : faces) n += (f.ep >= 0) ? 1 : 0;
  return n;
}

int Mesh::n_boundary_faces() const { return static_cast<int>(faces.size()) - n_interior_faces(); }

void Mesh::debug_dump(std::ostream& os) const {
  os << "mesh " << nx << "x" << ny << (periodic ? " periodic" : " dirichlet")
     << " mapping_degree " << mapping_degree << "\n";
  for (int e = 0; e < n_elems(); ++e) {
    os << "elem " << e << " faces";
    for (int f = 0; f < 4; ++f)
      os << " " << elem_face_id[e][f] << (elem_face_side[e][f] == 0 ? "-" : "+");
    os << " corners";
    const Eigen::MatrixX2d& nodes = map_nodes[e];
    const int g = mapping_degree;
    const int corner[4] = {0, g, (g + 1) * g, (g + 1) * (g + 1) - 1};
    for (int k : corner) os << " (" << nodes(k, 0) << "," << nodes(k, 1) << ")";
    os << "\n";
  }
}

double stretched_coordinate(int i, int n, double a) {
  return std::tanh(static_cast<double>(i) / n * std::atanh(a)) / a;
}

Mesh build_cartesian_mesh(int nx, int ny, const Box& domain, bool periodic) {
  if (nx < 1 || ny < 1) throw InvalidArgument("build_cartesian_mesh: counts must be >= 1");
  Eigen::VectorXd xl(nx + 1), yl(ny + 1);
  for (int i = 0; i <= nx; ++i) xl[i] = domain.x0 + (domain.x1 - domain.x0) * i / nx;
  for (int j = 0; j <= ny; ++j) yl[j] = domain.y0 + (domain.y1 - domain.y0) * j / ny;
  return build_tensor_mesh(xl, yl, periodic);
}

Mesh build_stretched_mesh(int n, double a) {
  if (n < 1) throw InvalidArgument("build_stretched_mesh: n must be >= 1");
  if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("build_stretched_mesh: a must lie in (0,1)");
  Eigen::VectorXd lines(n + 1);
  for (int i = 0; i <= n; ++i) lines[i] = stretched_coordinate(i, n, a);
  lines[0] = 0.0;
  lines[n] = 1.0;  // tanh(atanh(a))/a == 1, pinned exactly
  return build_tensor_mesh(lines, lines, false);
}

Mesh curve_mesh(const Mesh& mesh, double amplitude, int degree) {
  if (mesh.mapping_degree != 1)
    throw InvalidArgument("curve_mesh: input mesh must have mapping_degree 1");
  if (!std::isfinite(amplitude)) throw InvalidArgument("curve_mesh: amplitude must be finite");
  if (degree < 1) throw InvalidArgument("curve_mesh: degree must be >= 1");

  Mesh out = mesh;
  out.mapping_degree = degree;
  const Eigen::VectorXd nodes = equispaced_nodes(degree);
  for (int e = 0; e < mesh.n_elems(); ++e) {
    Eigen::MatrixX2d pts((degree + 1) * (degree + 1), 2);
    for (int b = 0; b <= degree; ++b)
      for (int a = 0; a <= degree; ++a) {
        Eigen::Vector2d x = mesh.map_point(e, nodes[a], nodes[b]);
        const double bump = amplitude * std::sin(2.0 * M_PI * x[0]) * std::sin(M_PI * x[1]);
        pts.row(b * (degree + 1) + a) = (x + Eigen::Vector2d(bump, bump)).transpose();
      }
    out.map_nodes[e] = pts;
  }

  // re-check element orientation on a dense sample
  Eigen::VectorXd qp, qw;
  gauss_legendre(degree + 2, qp, qw);
  for (int e = 0; e < out.n_elems(); ++e)
    for (int b = 0; b < qp.size(); ++b)
      for (int a = 0; a < qp.size(); ++a) {
        if (out.map_jacobian(e, qp[a], qp[b]).determinant() <= 0.0)
          throw DegenerateGeometry("curve_mesh: non-positive jacobian in element " +
                                   std::to_string(e));
      }
  return out;
}

}  // namespace hyfr
