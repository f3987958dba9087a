#pragma once

#include <Eigen/Dense>

namespace hyfr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double legendre(int n, double x);
double legendre_deriv(int n, double x);
double legendre_deriv2(int n, double x);

// Leading monomial coefficient a_n of L_n: (2n)! / (2^n (n!)^2).
double legendre_leading_coeff(int n);

// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
void gauss_legendre(int n, VectorXd& pts, VectorXd& wts);

// n-point Gauss-Lobatto-Legendre rule on [-1, 1], nodes ascending, n >= 2.
void gauss_lobatto(int n, VectorXd& pts, VectorXd& wts);

// Values of all Lagrange cardinal polynomials on `nodes` at x.
VectorXd lagrange_values(const VectorXd& nodes, double x);
VectorXd lagrange_deriv_values(const VectorXd& nodes, double x);

// Nodal differentiation matrix: D(i,j) = l_j'(x_i).
MatrixXd diff_matrix(const VectorXd& nodes);

// Interpolation matrix from `nodes` to `targets`: row i = cardinals at targets[i].
MatrixXd interp_matrix(const VectorXd& nodes, const VectorXd& targets);

}  // namespace hyfr
