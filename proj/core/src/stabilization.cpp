#include "hyfr/stabilization.hpp"

#include <cmath>

#include "hyfr/errors.hpp"

namespace hyfr {

namespace {
double sign_of(double x) { return x >= 0.0 ? 1.0 : -1.0; }
}  // namespace

double stabilization_at(double adn_minus, int side, const Stabilization& stab) {
  switch (stab.kind) {
    case StabKind::upwind_lambda:
      return stab.lambda * std::abs(adn_minus) + stab.tau;
    case StabKind::central_hfr: {
      const double g = stab.gamma;
      if (!(g > 0.0) || (g >= 0.5 && g <= 1.0))
        throw StabilityConstraintViolation(
            "central stabilization requires gamma > 0 outside [1/2, 1]");
      const double sg = sign_of(adn_minus);
      const double f = g * sg / (2.0 * g + sg);
      return side == 0 ? g * std::abs(adn_minus) + adn_minus
                       : f * std::abs(adn_minus) - adn_minus;
    }
    case StabKind::custom_per_side:
      if (!stab.s_minus || !stab.s_plus)
        throw InvalidArgument("custom_per_side stabilization needs both side values");
      return side == 0 ? *stab.s_minus : *stab.s_plus;
  }
  throw InvalidArgument("stabilization_at: bad kind");
}

Eigen::Vector2d common_flux(double u_face, const Eigen::Vector2d& q_face, double u_hat,
                            const Eigen::Vector2d& normal, double s, const AdvDiffProblem& prob) {
  return prob.alpha * u_hat - prob.beta * q_face + s * (u_face - u_hat) * normal;
}

double explicit_trace_hfr(double u_minus, double u_plus, const Eigen::Vector2d& q_minus,
                          const Eigen::Vector2d& q_plus, const Eigen::Vector2d& n_minus,
                          double s_minus, double s_plus, double beta) {
  const double savg = 0.5 * (s_minus + s_plus);
  if (savg == 0.0) throw UndefinedTrace("explicit_trace_hfr: {{s}} = 0");
  const double su_avg = 0.5 * (s_minus * u_minus + s_plus * u_plus);
  const double qjump = q_minus.dot(n_minus) + q_plus.dot(-n_minus);
  return su_avg / savg - 0.5 * beta * qjump / savg;
}

double explicit_flux_advection(double u_minus, double u_plus, double s_minus, double s_plus,
                               double adn_minus) {
  const double den = s_minus + s_plus;
  if (den == 0.0) throw UndefinedTrace("explicit_flux_advection: s_- + s_+ = 0");
  return ((adn_minus * s_minus + s_plus * s_minus) * u_minus +
          (adn_minus * s_plus - s_plus * s_minus) * u_plus) /
         den;
}

double ldg_trace(double u_minus, double u_plus, double zeta) {
  return 0.5 * (u_minus + u_plus) - zeta * (u_minus - u_plus);
}

double efr_trace_gll(const Eigen::VectorXd& swu_sum, const Eigen::VectorXd& s_avg,
                     const Eigen::VectorXd& wq_jump, double beta) {
  const double den = s_avg.sum();
  if (den == 0.0) throw UndefinedTrace("efr_trace_gll: vanishing stabilization sum");
  return (swu_sum.sum() - 0.5 * beta * wq_jump.sum()) / den;
}

FaceStabValues eval_stabilization(const Mesh& mesh, int elem, const ElementGeometry& geo,
                                  const RefElement& ref, const AdvDiffProblem& prob,
                                  const Stabilization& stab) {
  FaceStabValues out;
  for (int f = 0; f < 4; ++f) {
    out.s[f].resize(ref.nr);
    const int side = mesh.elem_face_side[elem][f];
    for (int m = 0; m < ref.nr; ++m) {
      const Eigen::Vector2d n = geo.fnormal[f].row(m).transpose();
      const double adn_self = prob.alpha.dot(n);
      const double adn_minus = side == 0 ? adn_self : -adn_self;
      out.s[f][m] = stabilization_at(adn_minus, side, stab);
    }
  }
  return out;
}

void check_stability(const Mesh& mesh, const std::vector<ElementGeometry>& geoms,
                     const RefElement& ref, const AdvDiffProblem& prob,
                     const Stabilization& stab) {
  const double scale = prob.alpha.norm() + stab.tau + 1e-30;
  for (const auto& uf : mesh.faces) {
    if (uf.ep < 0) continue;  // Dirichlet faces carry prescribed traces
    const ElementGeometry& gm = geoms[uf.em];
    for (int m = 0; m < ref.nr; ++m) {
      const Eigen::Vector2d n_minus = gm.fnormal[uf.fm].row(m).transpose();
      const double adn = prob.alpha.dot(n_minus);
      const double sm = stabilization_at(adn, 0, stab);
      const double sp = stabilization_at(adn, 1, stab);
      if (std::abs(0.5 * (sm + sp)) <= 1e-13 * scale)
        throw StabilityConstraintViolation("{{s}} = 0 on a face: trace undefined");
      const double sbar_m = sm - 0.5 * adn;
      const double sbar_p = sp + 0.5 * adn;  // alpha . n_plus = -adn
      if (sbar_m < -1e-13 * scale && sbar_p < -1e-13 * scale)
        throw StabilityConstraintViolation(
            "stabilization violates s > alpha.n/2 on both sides of a face");
    }
  }
}

}  // namespace hyfr
