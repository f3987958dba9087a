#pragma once

#include <functional>
#include <optional>

#include "hyfr/hybrid_solver.hpp"

namespace hyfr {

// Normalized L2 error sqrt( (1/|O|) sum_k int (u - u_e)^2 ), over-integrated
// with nq1d points per direction. When a region is given the integral is
// restricted to it; cut elements are integrated on a subdivided rule.
double l2_error(const Mesh& mesh, const std::vector<ElementGeometry>& geoms,
                const Eigen::VectorXd& nodal_pts_1d, const Eigen::VectorXd& data,
                const std::function<double(double, double)>& exact, int nq1d,
                const std::optional<Box>& region = std::nullopt);

// int u^2 over the mesh via solution-point quadrature (exact for affine cells).
double l2_norm_sq(const Mesh& mesh, const std::vector<ElementGeometry>& geoms,
                  const RefElement& ref, const Eigen::VectorXd& u);

// Broken Sobolev norm squared: sum_k int [ u^2 + c/2 ((d^p_xi u)^2 + (d^p_eta u)^2)
// + c^2/4 (d^2p_{xi eta} u)^2 ] dOmega, reference-space derivatives.
double broken_sobolev_sq(const Mesh& mesh, const std::vector<ElementGeometry>& geoms,
                         const RefElement& ref, const Eigen::VectorXd& u, double c);

struct FaceDissipation {
  double theta_a = 0.0;
  double theta_b = 0.0;
};

// Face dissipation sums Theta_A and Theta_B with sbar = s - alpha.n/2.
FaceDissipation face_dissipation(const HybridSystem& sys, const FieldState& state);

// |sum_k oint (F_hat . n) u_hat ds| and the p-th-derivative analogue, both
// normalized by the sum of absolute face terms.
std::pair<double, double> lemma_identities(const HybridSystem& sys, const FieldState& state);

// du/dt = -R(u, u_hat) at the solution points (mass shift excluded).
Eigen::VectorXd semi_discrete_rate(const HybridSystem& sys, const FieldState& state);

// d/dt of ||u||^2_{p,2} / 2 evaluated exactly from the semi-discrete operator.
double sobolev_energy_rate(const HybridSystem& sys, const FieldState& state);

// beta ||q||^2 with the corrected gradient.
double volume_dissipation(const HybridSystem& sys, const FieldState& state);

struct EnergyReport {
  double t_star = 0.0;
  double l2_energy = 0.0;
  double sobolev_energy = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double volume_dissipation = 0.0;
};

EnergyReport energy_report(const HybridSystem& sys, const FieldState& state, double t_star);

}  // namespace hyfr
