#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hyfr/geometry.hpp"
#include "hyfr/gmres.hpp"
#include "hyfr/hybrid_solver.hpp"
#include "hyfr/problem.hpp"
#include "hyfr/ref_element.hpp"
#include "hyfr/sparse.hpp"
#include "hyfr/stabilization.hpp"

namespace hyfr {

// Pointwise face data recomputed from a solution, for diagnostics and
// post-processing of the conventional scheme.
struct FrPointData {
  std::vector<Eigen::MatrixX2d> q;                    // corrected physical gradient
  std::vector<std::array<Eigen::VectorXd, 4>> ucom;   // common solution value at face points
  std::vector<std::array<Eigen::VectorXd, 4>> phiv;   // viscous common normal flux, own normal
};

// Conventional (non-hybridized) FR discretization with LDG viscous common
// values and upwind advective flux. The common solution is taken one-sided
// from the plus side (zeta = 1/2 under the global minus orientation) and the
// common gradient from the minus side.
class FrSystem {
 public:
  FrSystem(const Mesh& mesh, const std::vector<ElementGeometry>& geoms, const RefElement& ref,
           const AdvDiffProblem& prob, double tau, double mass_shift = 0.0,
           KrylovConfig krylov = {});

  void set_boundary_values(const std::function<double(double, double)>& g);

  int ndof() const { return mesh_.n_elems() * ref_.ns; }

  // full affine residual: d u/dt = -residual(u) before the shift term
  Eigen::VectorXd residual(const Eigen::VectorXd& u) const;

  const CsrMatrix& jacobian();
  const Eigen::VectorXd& rhs0();

  FieldState solve_steady();
  FieldState solve_stage(const Eigen::VectorXd& base, const FieldState* warm = nullptr);

  FrPointData point_data(const Eigen::VectorXd& u) const;

  Eigen::VectorXd nodal_values(const std::function<double(double, double)>& f) const;

  // exhaustive column-by-column probe, for validating the colored assembly
  CsrMatrix jacobian_exact_probe() const;

  SolveStats& stats() { return stats_; }
  const SolveStats& stats() const { return stats_; }
  const Mesh& mesh() const { return mesh_; }
  const RefElement& ref() const { return ref_; }
  const std::vector<ElementGeometry>& geoms() const { return geoms_; }
  const AdvDiffProblem& problem() const { return prob_; }
  double tau() const { return tau_; }

 private:
  void ensure_assembled();

  const Mesh& mesh_;
  const std::vector<ElementGeometry>& geoms_;
  const RefElement& ref_;
  AdvDiffProblem prob_;
  double tau_;
  double shift_;
  KrylovConfig krylov_;
  std::function<double(double, double)> bc_;

  bool assembled_ = false;
  CsrMatrix jac_;
  Eigen::VectorXd rhs0_;
  std::unique_ptr<BlockJacobi> prec_;
  SolveStats stats_;
};

}  // namespace hyfr
