#pragma once

#include <array>

#include <Eigen/Dense>

#include "hyfr/vcjh.hpp"

namespace hyfr {

// Local face numbering is counterclockwise: 0 bottom, 1 right, 2 top, 3 left.
// Face points are ordered with the tangential reference coordinate increasing,
// so co-located points on a shared face match without index reversal.
//
// Solution points are tensor-product Gauss-Legendre; node i = b*(p+1) + a with
// a the xi index and b the eta index.
struct RefElement {
  int p = 0;
  int n1d = 0;  // p+1
  int ns = 0;   // (p+1)^2 solution points
  int nr = 0;   // p+1 flux points per face
  double c = 0.0;
  VcjhCorrection corr;

  Eigen::VectorXd pts1d, w1d;    // 1D Gauss solution points / weights
  Eigen::VectorXd lob1d;         // 1D Lobatto points (trace nodes, geometry nodes)
  Eigen::MatrixXd d1;            // 1D nodal differentiation
  Eigen::MatrixXd dp1d;          // 1D p-th derivative (d1^p)
  Eigen::MatrixXd dxi, deta;     // tensor differentiation, ns x ns

  std::array<Eigen::MatrixXd, 4> interp_face;  // nr x ns
  std::array<Eigen::MatrixXd, 4> corr_div;     // ns x nr: div g_f^m at solution points
  std::array<Eigen::MatrixXd, 4> corr_grad;    // ns x nr: gradient-correction coefficients
  std::array<Eigen::MatrixXd, 4> corr_val;     // ns x nr: axis component of g_f^m
  std::array<int, 4> face_axis{};              // reference axis the face corrections act on
  std::array<double, 4> face_sign{};           // outward sign on that axis

  Eigen::MatrixXd lob_to_gauss;  // nr x nr: face values at Gauss points from Lobatto nodes

  int node(int a, int b) const { return b * n1d + a; }
  int xi_index(int i) const { return i % n1d; }
  int eta_index(int i) const { return i / n1d; }

  // Reference coordinates of face point m on face f.
  Eigen::Vector2d face_point(int f, int m) const;
  static Eigen::Vector2d face_ref_normal(int f);

  // Tangential solution-point index matching face point m (they coincide).
  // For face axis 0 (vertical faces) this is the eta index, else the xi index.
};

RefElement build_ref_element(int p, double c, bool allow_negative_c = false);

// Rebuilds the correction fields of r from a (possibly lower-degree) 1D pair.
// The post-processing space reuses the solve-degree correction functions on
// its finer point set.
void set_correction_fields(RefElement& r, const VcjhCorrection& corr);

// n-point tensor Gauss rule on the reference square; pts is n*n x 2, row-major
// with the xi index fastest.
void tensor_gauss(int n, Eigen::MatrixX2d& pts, Eigen::VectorXd& wts);

}  // namespace hyfr
