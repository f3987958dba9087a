#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "hyfr/geometry.hpp"
#include "hyfr/mesh.hpp"
#include "hyfr/ref_element.hpp"

namespace hyfr {

enum class SchemeKind { fr, hfr, efr };

// Transmission-condition quadrature for the continuous-trace scheme: full
// Gauss quadrature, or collocation at the Lobatto trace nodes. The reference
// data for the embedded scheme was produced with the latter.
enum class EfrQuadrature { exact, gll };

// Global trace degrees of freedom on the mesh skeleton.
//
// HFR: p+1 nodal values at the Gauss flux points of each unique face; both
// sides of an interior face address the same block. EFR: continuous trace on
// Lobatto nodes per face with endpoint values shared through mesh vertices.
struct TraceSpace {
  SchemeKind kind = SchemeKind::hfr;
  int nr = 0;
  int n_global = 0;

  // per element, per local face: the nr global dofs in tangential order
  std::vector<std::array<std::vector<int>, 4>> elem_face_dofs;
  std::vector<char> boundary_dof;
  std::vector<Eigen::Vector2d> dof_xy;

  // face values at the Gauss flux points from the face's nodal dofs
  Eigen::MatrixXd node_to_gauss;  // nr x nr (identity for HFR)
  // transmission test matrix: rows are trace test functions, columns Gauss points
  Eigen::MatrixXd test_mat;       // nr x nr (diag of Gauss weights for HFR)

  // gather per-face nodal trace values for one element
  std::array<Eigen::VectorXd, 4> gather(int elem, const Eigen::VectorXd& trace) const;
  // same but mapped to the face Gauss points
  std::array<Eigen::VectorXd, 4> gather_gauss(int elem, const Eigen::VectorXd& trace) const;
};

TraceSpace build_trace_space(const Mesh& mesh, const RefElement& ref,
                             const std::vector<ElementGeometry>& geoms, SchemeKind kind,
                             EfrQuadrature equad = EfrQuadrature::gll);

}  // namespace hyfr
