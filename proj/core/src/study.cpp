#include "hyfr/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hyfr/errors.hpp"

namespace hyfr {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CaseDefinition build_case(const RunConfig& cfg) {
  CaseDefinition c;
  if (cfg.case_name == "steady_boundary_layer") {
    const double beta = cfg.case_beta.value_or(1.0);
    c = steady_boundary_layer_case(cfg.case_ax, cfg.case_ay, beta, {25.0, 25.0});
  } else if (cfg.case_name == "sine_wave") {
    c = sine_wave_case({1.0, 1.0}, cfg.case_beta.value_or(0.1));
  } else if (cfg.case_name == "gaussian_pulse") {
    c = gaussian_pulse_case(cfg.case_beta.value_or(0.0));
  } else {
    throw InvalidArgument("unknown case: " + cfg.case_name);
  }
  if (cfg.curved) {
    c.mesh.curved = true;
    c.mesh.curve_amplitude = cfg.curve_amplitude;
    c.mesh.curve_degree = cfg.curve_degree;
  }
  return c;
}

Stabilization build_stab(const RunConfig& cfg, double beta) {
  if (cfg.stab_kind == "upwind") return Stabilization::upwind(cfg.lambda, beta, cfg.ell);
  if (cfg.stab_kind == "central") return Stabilization::central(cfg.gamma);
  if (cfg.stab_kind == "per_side") return Stabilization::per_side(cfg.s_minus, cfg.s_plus);
  throw InvalidArgument("unknown stabilization kind: " + cfg.stab_kind);
}

EfrQuadrature efr_quad(const RunConfig& cfg) {
  if (cfg.efr_quadrature == "gll") return EfrQuadrature::gll;
  if (cfg.efr_quadrature == "exact") return EfrQuadrature::exact;
  throw InvalidArgument("unknown efr quadrature: " + cfg.efr_quadrature);
}

KrylovConfig build_krylov(const RunConfig& cfg, int block_size) {
  KrylovConfig k;
  k.rtol = cfg.rtol;
  k.restart = cfg.restart;
  k.max_iters = cfg.max_iters;
  k.block_size = block_size;
  return k;
}

}  // namespace

void RunConfig::validate() const {
  if (scheme == SchemeKind::efr && postprocess)
    throw InvalidArgument("config: post-processing is not defined for efr");
  if (p < 1) throw InvalidArgument("config: p must be >= 1");
  if (!allow_negative_c && resolve_c(c_select, p) < 0.0)
    throw StabilityConstraintViolation("config: c must be >= 0");
}

double resolve_c(const std::string& sel, int p) {
  if (sel == "dg") return 0.0;
  if (sel == "sd") return c_sd(p);
  if (sel == "hu") return c_hu(p);
  return std::stod(sel);
}

std::string scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::fr: return "fr";
    case SchemeKind::hfr: return "hfr";
    default: return "efr";
  }
}

SchemeKind scheme_from_name(const std::string& s) {
  if (s == "fr") return SchemeKind::fr;
  if (s == "hfr") return SchemeKind::hfr;
  if (s == "efr") return SchemeKind::efr;
  throw InvalidArgument("unknown scheme: " + s);
}

RunResult run_single(const RunConfig& cfg, int n, std::vector<EnergyReport>* energy) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const CaseDefinition cas = build_case(cfg);
  const double c = resolve_c(cfg.c_select, cfg.p);
  const RefElement ref = build_ref_element(cfg.p, c, cfg.allow_negative_c);
  const Mesh mesh = cas.make_mesh(n);
  const std::vector<ElementGeometry> geoms = build_all_geometry(mesh, ref);
  const Stabilization stab = build_stab(cfg, cas.prob.beta);

  RunResult out;
  out.n = n;

  auto exact_at = [&cas](double t) {
    return [&cas, t](double x, double y) { return cas.exact(x, y, t); };
  };

  if (!cas.unsteady) {
    if (cfg.scheme == SchemeKind::fr) {
      FrSystem sys(mesh, geoms, ref, cas.prob, cas.prob.beta / cfg.ell, 0.0,
                   build_krylov(cfg, ref.ns));
      sys.set_boundary_values(exact_at(0.0));
      FieldState st = sys.solve_steady();
      out.error = l2_error(mesh, geoms, ref.pts1d, st.u, exact_at(0.0), cfg.p + 3,
                           cas.error_region);
      if (cfg.postprocess) {
        const StarSpace ss = build_star_space(ref);
        const std::vector<ElementGeometry> sg = build_all_geometry(mesh, ss.star);
        const Eigen::VectorXd ustar = postprocess_fr(sys, st, ss, sg);
        out.error_post =
            l2_error(mesh, sg, ss.star.pts1d, ustar, exact_at(0.0), cfg.p + 4, cas.error_region);
      }
      out.stats = sys.stats();
      out.state = std::move(st);
    } else {
      check_stability(mesh, geoms, ref, cas.prob, stab);
      HybridSystem sys(mesh, geoms, ref, cas.prob, stab, cfg.scheme, 0.0,
                       build_krylov(cfg, ref.nr), efr_quad(cfg));
      sys.set_boundary_values(exact_at(0.0));
      FieldState st = sys.solve_steady();
      out.error = l2_error(mesh, geoms, ref.pts1d, st.u, exact_at(0.0), cfg.p + 3,
                           cas.error_region);
      if (cfg.postprocess) {
        const StarSpace ss = build_star_space(ref);
        const std::vector<ElementGeometry> sg = build_all_geometry(mesh, ss.star);
        const Eigen::VectorXd ustar = postprocess_hfr(sys, st, ss, sg);
        out.error_post =
            l2_error(mesh, sg, ss.star.pts1d, ustar, exact_at(0.0), cfg.p + 4, cas.error_region);
      }
      out.stats = sys.stats();
      out.state = std::move(st);
    }
    out.wall_seconds = seconds_since(t0);
    return out;
  }

  // unsteady: SDIRK3 (or backward Euler) over the requested horizon
  const double horizon = cfg.horizon_tstar.value_or(cas.horizon_tstar);
  const long steps = std::lround(horizon / cfg.dt_star);
  if (steps < 1) throw InvalidArgument("run_single: horizon shorter than one step");
  const double dt = horizon * cas.t_c / static_cast<double>(steps);
  const bool sdirk = cfg.integrator == "sdirk3";
  if (!sdirk && cfg.integrator != "backward_euler")
    throw InvalidArgument("unknown integrator: " + cfg.integrator);
  const double sigma = sdirk ? 1.0 / (Sdirk3::gamma_rk() * dt) : 1.0 / dt;

  FieldState state;
  state.time = 0.0;

  if (cfg.scheme == SchemeKind::fr) {
    FrSystem sys(mesh, geoms, ref, cas.prob, cas.prob.beta / cfg.ell, sigma,
                 build_krylov(cfg, ref.ns));
    FrStageSolver solver(sys, sigma);
    state.u = sys.nodal_values(cas.initial);
    for (long k = 0; k < steps; ++k)
      state = sdirk ? step_sdirk3(solver, state, dt) : step_backward_euler(solver, state, dt);
    if (cas.has_exact())
      out.error =
          l2_error(mesh, geoms, ref.pts1d, state.u, exact_at(state.time), cfg.p + 3,
                   cas.error_region);
    if (cfg.postprocess) {
      const StarSpace ss = build_star_space(ref);
      const std::vector<ElementGeometry> sg = build_all_geometry(mesh, ss.star);
      const Eigen::VectorXd ustar = postprocess_fr(sys, state, ss, sg);
      out.error_post = l2_error(mesh, sg, ss.star.pts1d, ustar, exact_at(state.time), cfg.p + 4,
                                cas.error_region);
    }
    out.stats = sys.stats();
  } else {
    check_stability(mesh, geoms, ref, cas.prob, stab);
    HybridSystem sys(mesh, geoms, ref, cas.prob, stab, cfg.scheme, sigma,
                     build_krylov(cfg, ref.nr), efr_quad(cfg));
    HybridStageSolver solver(sys);
    state.u = sys.nodal_values(cas.initial);
    double e0 = 0.0;
    if (energy) {
      energy->clear();
      state.trace = sys.trace_given_u(state.u);
      const EnergyReport r0 = energy_report(sys, state, 0.0);
      energy->push_back(r0);
      e0 = r0.sobolev_energy;
    }
    for (long k = 0; k < steps; ++k) {
      state = sdirk ? step_sdirk3(solver, state, dt) : step_backward_euler(solver, state, dt);
      if (energy && ((k + 1) % cfg.energy_stride == 0 || k + 1 == steps)) {
        state.trace = sys.trace_given_u(state.u);
        const EnergyReport r = energy_report(sys, state, state.time / cas.t_c);
        energy->push_back(r);
        if (r.sobolev_energy > e0 * (1.0 + 1e-6)) out.energy_grew = true;
      }
    }
    state.trace = sys.trace_given_u(state.u);
    if (cas.has_exact())
      out.error = l2_error(mesh, geoms, ref.pts1d, state.u, exact_at(state.time), cfg.p + 3,
                           cas.error_region);
    if (cfg.postprocess) {
      const StarSpace ss = build_star_space(ref);
      const std::vector<ElementGeometry> sg = build_all_geometry(mesh, ss.star);
      const Eigen::VectorXd ustar = postprocess_hfr(sys, state, ss, sg);
      out.error_post = l2_error(mesh, sg, ss.star.pts1d, ustar, exact_at(state.time), cfg.p + 4,
                                cas.error_region);
    }
    out.stats = sys.stats();
  }
  out.final_tstar = state.time / cas.t_c;
  out.state = std::move(state);
  out.wall_seconds = seconds_since(t0);
  return out;
}

std::vector<ConvergenceRow> run_convergence(const RunConfig& cfg,
                                            std::vector<RunResult>* results) {
  if (cfg.mesh_sizes.size() < 2)
    throw InvalidArgument("run_convergence: need at least two mesh sizes");
  std::vector<ConvergenceRow> rows;
  for (int n : cfg.mesh_sizes) {
    const RunResult r = run_single(cfg, n);
    ConvergenceRow row;
    row.n = n;
    row.error = r.error;
    row.error_post = r.error_post;
    row.nnz = r.stats.nnz;
    row.n_global = r.stats.n_global;
    row.iters_avg =
        r.stats.n_solves > 0 ? static_cast<double>(r.stats.total_iterations) / r.stats.n_solves
                             : 0.0;
    rows.push_back(row);
    if (results) results->push_back(r);
  }
  fill_orders(rows);
  return rows;
}

std::vector<EnergyReport> run_energy_study(const RunConfig& cfg, RunResult* result) {
  if (cfg.scheme == SchemeKind::fr)
    throw UnsupportedScheme("energy study tracks the trace dissipation terms; use hfr or efr");
  std::vector<EnergyReport> reports;
  RunResult r = run_single(cfg, cfg.mesh_sizes.front(), &reports);
  if (result) *result = std::move(r);
  return reports;
}

void fill_orders(std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = static_cast<double>(rows[i].n) / rows[i - 1].n;
    const double lr = std::log(ratio);
    if (rows[i].error > 0.0 && rows[i - 1].error > 0.0 && lr != 0.0)
      rows[i].order = std::log(rows[i - 1].error / rows[i].error) / lr;
    if (rows[i].error_post > 0.0 && rows[i - 1].error_post > 0.0 && lr != 0.0)
      rows[i].order_post = std::log(rows[i - 1].error_post / rows[i].error_post) / lr;
  }
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  std::ofstream os(path);
  os << "mesh,error,order,error_post,order_post,nnz,n_global,iters_avg\n";
  for (const auto& r : rows)
    os << r.n << ',' << format_float(r.error) << ',' << format_float(r.order) << ','
       << format_float(r.error_post) << ',' << format_float(r.order_post) << ',' << r.nnz << ','
       << r.n_global << ',' << format_float(r.iters_avg) << '\n';
}

void write_energy_csv(const std::string& path, const std::vector<EnergyReport>& reports) {
  std::ofstream os(path);
  os << "t_star,l2_energy,sobolev_energy,theta_a,theta_b,volume_dissipation\n";
  for (const auto& r : reports)
    os << format_float(r.t_star) << ',' << format_float(r.l2_energy) << ','
       << format_float(r.sobolev_energy) << ',' << format_float(r.theta_a) << ','
       << format_float(r.theta_b) << ',' << format_float(r.volume_dissipation) << '\n';
}

void write_metrics_csv(const std::string& path, const RunConfig& cfg,
                       const std::vector<RunResult>& results) {
  std::ofstream os(path);
  os << "case,scheme,p,c,mesh,n_global,nnz,n_solves,iters_avg,assembly_s,solve_s,wall_s\n";
  for (const auto& r : results) {
    const double iters =
        r.stats.n_solves > 0 ? static_cast<double>(r.stats.total_iterations) / r.stats.n_solves
                             : 0.0;
    os << cfg.case_name << ',' << scheme_name(cfg.scheme) << ',' << cfg.p << ',' << cfg.c_select
       << ',' << r.n << ',' << r.stats.n_global << ',' << r.stats.nnz << ',' << r.stats.n_solves
       << ',' << format_float(iters) << ',' << format_float(r.stats.assembly_seconds) << ','
       << format_float(r.stats.solve_seconds) << ',' << format_float(r.wall_seconds) << '\n';
  }
}

void write_summary(const std::string& path, const RunConfig& cfg,
                   const std::vector<ConvergenceRow>& rows) {
  std::ofstream os(path);
  os << "case " << cfg.case_name << " scheme " << scheme_name(cfg.scheme) << " p " << cfg.p
     << " c " << cfg.c_select << "\n";
  for (const auto& r : rows)
    os << "  " << r.n << "x" << r.n << "  error " << format_float(r.error) << "  order "
       << format_float(r.order) << "\n";
}

}  // namespace hyfr
