#pragma once

#include <array>

#include <Eigen/Dense>

#include "hyfr/dense.hpp"
#include "hyfr/geometry.hpp"
#include "hyfr/problem.hpp"
#include "hyfr/ref_element.hpp"
#include "hyfr/stabilization.hpp"
#include "hyfr/trace_space.hpp"

namespace hyfr {

// Element-local discrete operator of the hybridized discretization. Given the
// element solution and the trace at the face Gauss points it produces the
// strong-form volume residual (before the source) and the transformed normal
// common flux on each face.
class ElementOperator {
 public:
  ElementOperator(const RefElement& ref, const ElementGeometry& geo, const AdvDiffProblem& prob,
                  FaceStabValues stab, double mass_shift = 0.0);

  void apply(const Eigen::VectorXd& u, const std::array<Eigen::VectorXd, 4>& uhat_gauss,
             Eigen::VectorXd& vol, std::array<Eigen::VectorXd, 4>& flux) const;

  // corrected gradient in physical space, ns x 2
  Eigen::MatrixX2d corrected_gradient(const Eigen::VectorXd& u,
                                      const std::array<Eigen::VectorXd, 4>& uhat_gauss) const;

  // physical normal common flux values per face (flux / face jacobian)
  std::array<Eigen::VectorXd, 4> physical_flux(const Eigen::VectorXd& u,
                                               const std::array<Eigen::VectorXd, 4>& uhat) const;

  const RefElement& ref;
  const ElementGeometry& geo;
  const AdvDiffProblem& prob;
  FaceStabValues stab;
  double shift = 0.0;

 private:
  void reference_gradient(const Eigen::VectorXd& u, const std::array<Eigen::VectorXd, 4>& uhat,
                          const std::array<Eigen::VectorXd, 4>& uface, Eigen::VectorXd& qxi,
                          Eigen::VectorXd& qeta) const;
};

// Dense elemental blocks of [A B; C D][u; uhat] = [r; s] and the statically
// condensed L = D - C A^{-1} B. D couples all four faces: the corrected
// gradient feeds every face's viscous flux.
struct ElementBlocks {
  Eigen::MatrixXd A, B, C, D;
  Eigen::VectorXd r;
  LuFactor Alu;
  Eigen::MatrixXd AinvB;
  Eigen::MatrixXd L;

  Eigen::VectorXd recover(const Eigen::VectorXd& r_elem, const Eigen::VectorXd& uhat_nodes) const {
    return Alu.solve(r_elem) - AinvB * uhat_nodes;
  }
};

ElementBlocks assemble_element(const ElementOperator& op, const TraceSpace& ts, int elem);

// L_k = D - C A^{-1} B and t_k = s - C A^{-1} r for given right-hand sides.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> condense(const Eigen::MatrixXd& a,
                                                     const Eigen::MatrixXd& b,
                                                     const Eigen::MatrixXd& c,
                                                     const Eigen::MatrixXd& d,
                                                     const Eigen::VectorXd& r,
                                                     const Eigen::VectorXd& s);

}  // namespace hyfr
