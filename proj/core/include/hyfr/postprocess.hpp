#pragma once

#include "hyfr/fr_solver.hpp"
#include "hyfr/hybrid_solver.hpp"

namespace hyfr {

// Degree p+1 machinery reusing the correction-function framework with the
// same c parameter.
struct StarSpace {
  RefElement star;
  Eigen::MatrixXd vol_p_to_star;   // (p+2)^2 x (p+1)^2 nodal interpolation
  Eigen::MatrixXd face_p_to_star;  // (p+2) x (p+1) tangential interpolation
};

StarSpace build_star_space(const RefElement& ref);

// Corrected viscous flux of degree p+1 in transformed components. q is the
// physical corrected gradient at the solve points; phiv the physical viscous
// common normal flux at the p+2 star face points (own outward normal).
Eigen::MatrixX2d reconstruct_flux_star(const StarSpace& ss, const ElementGeometry& star_geo,
                                       double beta, const Eigen::MatrixX2d& q,
                                       const std::array<Eigen::VectorXd, 4>& phiv);

// Element-local FR solve of -beta lap u* = div F* with Neumann data F*.n and
// the elementwise mean pinned to mean_uh.
Eigen::VectorXd postprocess_element(const StarSpace& ss, const ElementGeometry& star_geo,
                                    double beta, const Eigen::MatrixX2d& fstar,
                                    const std::array<Eigen::VectorXd, 4>& phiv,
                                    double mean_uh);

// Whole-state drivers; return element-major star nodal values.
Eigen::VectorXd postprocess_hfr(const HybridSystem& sys, const FieldState& state,
                                const StarSpace& ss,
                                const std::vector<ElementGeometry>& star_geoms);

Eigen::VectorXd postprocess_fr(const FrSystem& sys, const FieldState& state, const StarSpace& ss,
                               const std::vector<ElementGeometry>& star_geoms);

// Viscous common normal flux of the hybridized scheme at the face points:
// total common flux minus the advective trace part (single-valued).
std::array<Eigen::VectorXd, 4> hfr_viscous_face_flux(const HybridSystem& sys,
                                                     const FieldState& state, int elem);

}  // namespace hyfr
