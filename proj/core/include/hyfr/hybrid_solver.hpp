#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "hyfr/element_system.hpp"
#include "hyfr/gmres.hpp"
#include "hyfr/sparse.hpp"

namespace hyfr {

struct SolveStats {
  std::int64_t nnz = 0;
  int n_global = 0;
  long total_iterations = 0;
  int n_solves = 0;
  int last_iterations = 0;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
};

// Hybridized solver: element blocks, static condensation, the global trace
// system and local recovery. The mesh, geometry, reference element and problem
// must outlive the system.
class HybridSystem {
 public:
  HybridSystem(const Mesh& mesh, const std::vector<ElementGeometry>& geoms, const RefElement& ref,
               const AdvDiffProblem& prob, const Stabilization& stab, SchemeKind kind,
               double mass_shift = 0.0, KrylovConfig krylov = {},
               EfrQuadrature equad = EfrQuadrature::gll);

  void set_boundary_values(const std::function<double(double, double)>& g);

  Eigen::VectorXd nodal_source() const;
  Eigen::VectorXd nodal_values(const std::function<double(double, double)>& f) const;

  Eigen::VectorXd condensed_rhs(const Eigen::VectorXd& r_global) const;
  Eigen::VectorXd solve_trace(const Eigen::VectorXd& t, const Eigen::VectorXd* warm = nullptr);
  Eigen::VectorXd recover(const Eigen::VectorXd& r_global, const Eigen::VectorXd& trace) const;

  // steady problem: A u + B uhat = source, transmission rows closed
  FieldState solve_steady();
  // implicit stage: sigma (z - base) + R(z) = 0 with sigma = mass_shift
  FieldState solve_stage(const Eigen::VectorXd& base, const FieldState* warm = nullptr);

  // transmission-consistent trace for a given element solution
  Eigen::VectorXd trace_given_u(const Eigen::VectorXd& u);

  // dense [A B; C D] with boundary rows pinned, for equivalence oracles
  std::pair<Eigen::MatrixXd, Eigen::VectorXd> monolithic_dense(
      const Eigen::VectorXd& r_global) const;

  const TraceSpace& trace_space() const { return ts_; }
  const std::vector<ElementBlocks>& blocks() const { return blocks_; }
  const std::vector<ElementOperator>& ops() const { return ops_; }
  const CsrMatrix& trace_matrix() const { return lmat_; }
  const Mesh& mesh() const { return mesh_; }
  const RefElement& ref() const { return ref_; }
  const std::vector<ElementGeometry>& geoms() const { return geoms_; }
  const AdvDiffProblem& problem() const { return prob_; }
  const Stabilization& stabilization() const { return stab_; }
  SolveStats& stats() { return stats_; }
  const SolveStats& stats() const { return stats_; }
  double mass_shift() const { return shift_; }

 private:
  const Mesh& mesh_;
  const std::vector<ElementGeometry>& geoms_;
  const RefElement& ref_;
  AdvDiffProblem prob_;
  Stabilization stab_;
  double shift_;
  KrylovConfig krylov_;

  TraceSpace ts_;
  std::vector<ElementOperator> ops_;
  std::vector<ElementBlocks> blocks_;
  CsrMatrix lmat_;
  std::unique_ptr<BlockJacobi> prec_;
  Eigen::VectorXd bc_;

  CsrMatrix dglob_;
  std::unique_ptr<BlockJacobi> dprec_;
  bool have_dglob_ = false;

  SolveStats stats_;
};

}  // namespace hyfr
