#pragma once

#include <array>

#include <Eigen/Dense>

#include "hyfr/mesh.hpp"
#include "hyfr/ref_element.hpp"

namespace hyfr {

// Geometry evaluated at a set of reference points.
struct GeomEval {
  Eigen::MatrixX2d xy;
  Eigen::VectorXd x_xi, x_eta, y_xi, y_eta;
  Eigen::VectorXd detj;
};

// Per-element geometric data for a degree-p discretization.
//
// The element map is collocated at (p+1)^2 tensor Gauss-Lobatto points and all
// metric terms are derivatives of that single degree-p polynomial. Lobatto
// collocation keeps shared-face geometry identical from both sides, and
// polynomial metrics make the discrete metric identities hold to round-off.
struct ElementGeometry {
  int p = 0;
  Eigen::MatrixX2d geo;  // (p+1)^2 x 2 nodal coordinates at tensor Lobatto points
  Eigen::VectorXd geo_nodes_1d;

  // at solution points
  Eigen::MatrixX2d xy;
  Eigen::VectorXd x_xi, x_eta, y_xi, y_eta;
  Eigen::VectorXd detj;

  // at face points, per local face
  std::array<Eigen::MatrixX2d, 4> fxy;
  std::array<Eigen::MatrixX2d, 4> fnormal;  // unit outward physical normal
  std::array<Eigen::VectorXd, 4> fjac;      // surface jacobian
  std::array<Eigen::VectorXd, 4> f_x_xi, f_x_eta, f_y_xi, f_y_eta;

  GeomEval eval(const Eigen::MatrixX2d& ref_pts) const;

  // adj(J) rows at solution point i: transformed flux is adjJ * F.
  Eigen::Matrix2d adjJ(int i) const {
    Eigen::Matrix2d m;
    m << y_eta[i], -x_eta[i], -y_xi[i], x_xi[i];
    return m;
  }
  Eigen::Matrix2d jac(int i) const {
    Eigen::Matrix2d m;
    m << x_xi[i], x_eta[i], y_xi[i], y_eta[i];
    return m;
  }
};

ElementGeometry build_element_geometry(const Mesh& mesh, int elem, const RefElement& ref);

std::vector<ElementGeometry> build_all_geometry(const Mesh& mesh, const RefElement& ref);

}  // namespace hyfr
