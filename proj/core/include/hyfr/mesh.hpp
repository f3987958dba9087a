#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace hyfr {

enum class FaceKind { interior, periodic, dirichlet };

// Unique mesh face. Boundary faces have ep = fp = -1. The minus side is the
// left/bottom element; for periodic wrap faces it is the high-index element so
// local faces 1/2 are always minus and 3/0 always plus.
struct UniqueFace {
  int em = -1, fm = -1;
  int ep = -1, fp = -1;
  FaceKind kind = FaceKind::interior;
};

struct Box {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};

// Structured quadrilateral mesh with per-element polynomial mappings on
// equispaced tensor nodes of degree `mapping_degree`. Immutable once built.
struct Mesh {
  int nx = 0, ny = 0;
  bool periodic = false;
  int mapping_degree = 1;

  std::vector<Eigen::MatrixX2d> map_nodes;          // per element, (g+1)^2 x 2
  std::vector<UniqueFace> faces;
  std::vector<std::array<int, 4>> elem_face_id;     // local face -> unique face
  std::vector<std::array<int, 4>> elem_face_side;   // 0 minus, 1 plus

  int n_elems() const { return nx * ny; }
  int elem_index(int i, int j) const { return j * nx + i; }

  Eigen::Vector2d map_point(int e, double xi, double eta) const;
  Eigen::Matrix2d map_jacobian(int e, double xi, double eta) const;

  int n_interior_faces() const;
  int n_boundary_faces() const;

  void debug_dump(std::ostream& os) const;
};

// Node coordinate of the tanh stretching: x_i = tanh((i/n) atanh(a)) / a.
double stretched_coordinate(int i, int n, double a);

Mesh build_cartesian_mesh(int nx, int ny, const Box& domain, bool periodic);
Mesh build_stretched_mesh(int n, double a);

// Displaces mapping nodes by A sin(2 pi x) sin(pi y) in both coordinates and
// raises the mapping degree. Throws DegenerateGeometry if any element inverts.
Mesh curve_mesh(const Mesh& mesh, double amplitude, int degree);

}  // namespace hyfr
