#pragma once

#include <optional>

#include <Eigen/Dense>

#include "hyfr/geometry.hpp"
#include "hyfr/mesh.hpp"
#include "hyfr/problem.hpp"
#include "hyfr/ref_element.hpp"

namespace hyfr {

enum class StabKind { upwind_lambda, central_hfr, custom_per_side };

// Stabilization parameter policy for the common flux, s = s^(c) + s^(v).
// tau is the viscous part; make_upwind derives it as beta / ell.
struct Stabilization {
  StabKind kind = StabKind::upwind_lambda;
  double lambda = 1.0;
  double tau = 0.0;
  double gamma = 2.0;  // central-HFR parameter, gamma > 0 and not in [1/2, 1]
  std::optional<double> s_minus, s_plus;

  static Stabilization upwind(double lambda, double beta, double ell = 1.0) {
    Stabilization s;
    s.kind = StabKind::upwind_lambda;
    s.lambda = lambda;
    s.tau = beta / ell;
    return s;
  }
  static Stabilization central(double gamma) {
    Stabilization s;
    s.kind = StabKind::central_hfr;
    s.gamma = gamma;
    return s;
  }
  static Stabilization per_side(double sm, double sp) {
    Stabilization s;
    s.kind = StabKind::custom_per_side;
    s.s_minus = sm;
    s.s_plus = sp;
    return s;
  }
};

// s on one side of a face point; adn_minus = alpha . n_minus, side 0 = minus.
double stabilization_at(double adn_minus, int side, const Stabilization& stab);

// Riemann flux for advection-diffusion (vector form):
//   F_hat = alpha u_hat - beta q + s (u - u_hat) n.
Eigen::Vector2d common_flux(double u_face, const Eigen::Vector2d& q_face, double u_hat,
                            const Eigen::Vector2d& normal, double s, const AdvDiffProblem& prob);

// Pointwise trace of the discontinuous-trace scheme:
//   u_hat = {{s u}}/{{s}} - (beta/2) [[q]] / {{s}}.
double explicit_trace_hfr(double u_minus, double u_plus, const Eigen::Vector2d& q_minus,
                          const Eigen::Vector2d& q_plus, const Eigen::Vector2d& n_minus,
                          double s_minus, double s_plus, double beta);

// Explicit advective common normal flux (times n_minus orientation).
double explicit_flux_advection(double u_minus, double u_plus, double s_minus, double s_plus,
                               double adn_minus);

// LDG interface value u_hat = {{u}} - zeta (u_minus - u_plus).
double ldg_trace(double u_minus, double u_plus, double zeta);

// Under-integrated (GLL) continuous-trace value at a trace point shared by
// faces F: weighted average of the one-sided data. Diagnostic only.
double efr_trace_gll(const Eigen::VectorXd& s_times_w_u_sum, const Eigen::VectorXd& s_avg,
                     const Eigen::VectorXd& wq_jump, double beta);

// Pre-solve guard: rejects {{s}} = 0 anywhere and configurations violating
// s > alpha.n/2 on both sides of a face point.
void check_stability(const Mesh& mesh, const std::vector<ElementGeometry>& geoms,
                     const RefElement& ref, const AdvDiffProblem& prob,
                     const Stabilization& stab);

// s values on this element's side of each local face point.
struct FaceStabValues {
  std::array<Eigen::VectorXd, 4> s;
};

FaceStabValues eval_stabilization(const Mesh& mesh, int elem, const ElementGeometry& geo,
                                  const RefElement& ref, const AdvDiffProblem& prob,
                                  const Stabilization& stab);

}  // namespace hyfr
