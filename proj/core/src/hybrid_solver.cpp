#include "hyfr/hybrid_solver.hpp"

#include <chrono>

#include "hyfr/errors.hpp"

namespace hyfr {

namespace {
double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

HybridSystem::HybridSystem(const Mesh& mesh, const std::vector<ElementGeometry>& geoms,
                           const RefElement& ref, const AdvDiffProblem& prob,
                           const Stabilization& stab, SchemeKind kind, double mass_shift,
                           KrylovConfig krylov, EfrQuadrature equad)
    : mesh_(mesh),
      geoms_(geoms),
      ref_(ref),
      prob_(prob),
      stab_(stab),
      shift_(mass_shift),
      krylov_(krylov) {
  const auto t0 = std::chrono::steady_clock::now();
  ts_ = build_trace_space(mesh, ref, geoms, kind, equad);
  bc_ = Eigen::VectorXd::Zero(ts_.n_global);

  const int ne = mesh.n_elems();
  ops_.reserve(ne);
  blocks_.reserve(ne);
  const int nr = ref.nr;
  CooBuilder coo(ts_.n_global, ts_.n_global);
  coo.reserve(static_cast<std::size_t>(ne) * 16 * nr * nr);
  for (int e = 0; e < ne; ++e) {
    ops_.emplace_back(ref, geoms[e], prob_, eval_stabilization(mesh, e, geoms[e], ref, prob_, stab_),
                      mass_shift);
    blocks_.push_back(assemble_element(ops_.back(), ts_, e));
    const ElementBlocks& eb = blocks_.back();
    for (int fi = 0; fi < 4; ++fi) {
      const auto& rows = ts_.elem_face_dofs[e][fi];
      for (int m = 0; m < nr; ++m) {
        const int gi = rows[m];
        if (ts_.boundary_dof[gi]) continue;
        for (int fj = 0; fj < 4; ++fj) {
          const auto& cols = ts_.elem_face_dofs[e][fj];
          for (int n = 0; n < nr; ++n)
            coo.add(gi, cols[n], eb.L(fi * nr + m, fj * nr + n));
        }
      }
    }
  }
  for (int gi = 0; gi < ts_.n_global; ++gi)
    if (ts_.boundary_dof[gi]) coo.add(gi, gi, 1.0);
  lmat_ = coo.build();
  prec_ = std::make_unique<BlockJacobi>(lmat_, krylov_.block_size > 0 ? krylov_.block_size : nr);
  stats_.nnz = lmat_.nnz();
  stats_.n_global = ts_.n_global;
  stats_.assembly_seconds = seconds_since(t0);
}

void HybridSystem::set_boundary_values(const std::function<double(double, double)>& g) {
  for (int i = 0; i < ts_.n_global; ++i)
    if (ts_.boundary_dof[i]) bc_[i] = g(ts_.dof_xy[i][0], ts_.dof_xy[i][1]);
}

Eigen::VectorXd HybridSystem::nodal_source() const {
  if (!prob_.source) return Eigen::VectorXd::Zero(mesh_.n_elems() * ref_.ns);
  return nodal_values(prob_.source);
}

Eigen::VectorXd HybridSystem::nodal_values(const std::function<double(double, double)>& f) const {
  Eigen::VectorXd v(mesh_.n_elems() * ref_.ns);
  for (int e = 0; e < mesh_.n_elems(); ++e)
    for (int i = 0; i < ref_.ns; ++i)
      v[e * ref_.ns + i] = f(geoms_[e].xy(i, 0), geoms_[e].xy(i, 1));
  return v;
}

Eigen::VectorXd HybridSystem::condensed_rhs(const Eigen::VectorXd& r_global) const {
  Eigen::VectorXd t = Eigen::VectorXd::Zero(ts_.n_global);
  const int nr = ref_.nr;
  for (int e = 0; e < mesh_.n_elems(); ++e) {
    const Eigen::VectorXd w = blocks_[e].Alu.solve(r_global.segment(e * ref_.ns, ref_.ns));
    const Eigen::VectorXd tloc = blocks_[e].C * w;
    for (int f = 0; f < 4; ++f) {
      const auto& dofs = ts_.elem_face_dofs[e][f];
      for (int m = 0; m < nr; ++m)
        if (!ts_.boundary_dof[dofs[m]]) t[dofs[m]] -= tloc[f * nr + m];
    }
  }
  for (int i = 0; i < ts_.n_global; ++i)
    if (ts_.boundary_dof[i]) t[i] = bc_[i];
  return t;
}

Eigen::VectorXd HybridSystem::solve_trace(const Eigen::VectorXd& t, const Eigen::VectorXd* warm) {
  const auto t0 = std::chrono::steady_clock::now();
  KrylovResult res = gmres(lmat_, t, *prec_, krylov_, warm);
  stats_.solve_seconds += seconds_since(t0);
  stats_.last_iterations = res.iterations;
  stats_.total_iterations += res.iterations;
  ++stats_.n_solves;
  return std::move(res.x);
}

Eigen::VectorXd HybridSystem::recover(const Eigen::VectorXd& r_global,
                                      const Eigen::VectorXd& trace) const {
  Eigen::VectorXd u(mesh_.n_elems() * ref_.ns);
  const int nr = ref_.nr;
  Eigen::VectorXd uhat(4 * nr);
  for (int e = 0; e < mesh_.n_elems(); ++e) {
    for (int f = 0; f < 4; ++f) {
      const auto& dofs = ts_.elem_face_dofs[e][f];
      for (int m = 0; m < nr; ++m) uhat[f * nr + m] = trace[dofs[m]];
    }
    u.segment(e * ref_.ns, ref_.ns) =
        blocks_[e].recover(r_global.segment(e * ref_.ns, ref_.ns), uhat);
  }
  return u;
}

FieldState HybridSystem::solve_steady() {
  const Eigen::VectorXd r = nodal_source();
  const Eigen::VectorXd t = condensed_rhs(r);
  FieldState st;
  st.trace = solve_trace(t);
  st.u = recover(r, st.trace);
  return st;
}

FieldState HybridSystem::solve_stage(const Eigen::VectorXd& base, const FieldState* warm) {
  Eigen::VectorXd r = shift_ * base + nodal_source();
  const Eigen::VectorXd t = condensed_rhs(r);
  FieldState st;
  st.trace = solve_trace(t, warm && warm->trace.size() == ts_.n_global ? &warm->trace : nullptr);
  st.u = recover(r, st.trace);
  return st;
}

Eigen::VectorXd HybridSystem::trace_given_u(const Eigen::VectorXd& u) {
  const int nr = ref_.nr;
  if (!have_dglob_) {
    CooBuilder coo(ts_.n_global, ts_.n_global);
    for (int e = 0; e < mesh_.n_elems(); ++e) {
      const ElementBlocks& eb = blocks_[e];
      for (int fi = 0; fi < 4; ++fi) {
        const auto& rows = ts_.elem_face_dofs[e][fi];
        for (int m = 0; m < nr; ++m) {
          const int gi = rows[m];
          if (ts_.boundary_dof[gi]) continue;
          for (int fj = 0; fj < 4; ++fj) {
            const auto& cols = ts_.elem_face_dofs[e][fj];
            for (int n = 0; n < nr; ++n) coo.add(gi, cols[n], eb.D(fi * nr + m, fj * nr + n));
          }
        }
      }
    }
    for (int gi = 0; gi < ts_.n_global; ++gi)
      if (ts_.boundary_dof[gi]) coo.add(gi, gi, 1.0);
    dglob_ = coo.build();
    dprec_ =
        std::make_unique<BlockJacobi>(dglob_, krylov_.block_size > 0 ? krylov_.block_size : nr);
    have_dglob_ = true;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ts_.n_global);
  for (int e = 0; e < mesh_.n_elems(); ++e) {
    const Eigen::VectorXd cu = blocks_[e].C * u.segment(e * ref_.ns, ref_.ns);
    for (int f = 0; f < 4; ++f) {
      const auto& dofs = ts_.elem_face_dofs[e][f];
      for (int m = 0; m < nr; ++m)
        if (!ts_.boundary_dof[dofs[m]]) rhs[dofs[m]] -= cu[f * nr + m];
    }
  }
  for (int i = 0; i < ts_.n_global; ++i)
    if (ts_.boundary_dof[i]) rhs[i] = bc_[i];
  KrylovResult res = gmres(dglob_, rhs, *dprec_, krylov_);
  return std::move(res.x);
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> HybridSystem::monolithic_dense(
    const Eigen::VectorXd& r_global) const {
  const int nu = mesh_.n_elems() * ref_.ns;
  const int nh = ts_.n_global;
  const int nr = ref_.nr;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nu + nh, nu + nh);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nu + nh);
  rhs.head(nu) = r_global;
  for (int e = 0; e < mesh_.n_elems(); ++e) {
    const ElementBlocks& eb = blocks_[e];
    m.block(e * ref_.ns, e * ref_.ns, ref_.ns, ref_.ns) = eb.A;
    for (int f = 0; f < 4; ++f) {
      const auto& dofs = ts_.elem_face_dofs[e][f];
      for (int n = 0; n < nr; ++n) {
        m.block(e * ref_.ns, nu + dofs[n], ref_.ns, 1) += eb.B.col(f * nr + n);
        for (int fi = 0; fi < 4; ++fi) {
          const auto& rows = ts_.elem_face_dofs[e][fi];
          for (int q = 0; q < nr; ++q) {
            if (ts_.boundary_dof[rows[q]]) continue;
            m(nu + rows[q], nu + dofs[n]) += eb.D(fi * nr + q, f * nr + n);
          }
        }
      }
      for (int q = 0; q < nr; ++q) {
        if (ts_.boundary_dof[dofs[q]]) continue;
        m.block(nu + dofs[q], e * ref_.ns, 1, ref_.ns) += eb.C.row(f * nr + q);
      }
    }
  }
  for (int i = 0; i < nh; ++i)
    if (ts_.boundary_dof[i]) {
      m(nu + i, nu + i) = 1.0;
      rhs[nu + i] = bc_[i];
    }
  return {m, rhs};
}

}  // namespace hyfr
