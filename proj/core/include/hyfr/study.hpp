#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyfr/cases.hpp"
#include "hyfr/diagnostics.hpp"
#include "hyfr/postprocess.hpp"
#include "hyfr/time_integration.hpp"

namespace hyfr {

struct RunConfig {
  std::string case_name = "steady_boundary_layer";
  SchemeKind scheme = SchemeKind::hfr;
  int p = 3;
  std::string c_select = "dg";  // dg | sd | hu | numeric literal

  std::string stab_kind = "upwind";  // upwind | central | per_side
  double lambda = 1.0;
  double ell = 1.0;
  double gamma = 2.0;
  double s_minus = 0.0, s_plus = 0.0;

  std::vector<int> mesh_sizes = {5, 10, 20, 40};
  bool curved = false;
  double curve_amplitude = 0.1;
  int curve_degree = 5;

  double case_ax = 25.0, case_ay = 25.0;
  std::optional<double> case_beta;

  std::string integrator = "sdirk3";  // sdirk3 | backward_euler
  double dt_star = 1e-3;
  std::optional<double> horizon_tstar;
  int energy_stride = 1;

  bool postprocess = false;
  bool allow_negative_c = false;
  std::string efr_quadrature = "gll";  // gll | exact

  double rtol = 1e-12;
  int restart = 60;
  int max_iters = 5000;

  std::string output_dir = "out";

  void validate() const;
};

double resolve_c(const std::string& c_select, int p);
std::string scheme_name(SchemeKind k);
SchemeKind scheme_from_name(const std::string& s);

struct RunResult {
  int n = 0;
  double error = std::numeric_limits<double>::quiet_NaN();
  double error_post = std::numeric_limits<double>::quiet_NaN();
  SolveStats stats;
  double wall_seconds = 0.0;
  bool energy_grew = false;
  double final_tstar = 0.0;
  FieldState state;
};

struct ConvergenceRow {
  int n = 0;
  double error = 0.0, order = 0.0;
  double error_post = std::numeric_limits<double>::quiet_NaN();
  double order_post = std::numeric_limits<double>::quiet_NaN();
  long long nnz = 0;
  double iters_avg = 0.0;
  long long n_global = 0;
};

RunResult run_single(const RunConfig& cfg, int n, std::vector<EnergyReport>* energy = nullptr);
std::vector<ConvergenceRow> run_convergence(const RunConfig& cfg,
                                            std::vector<RunResult>* results = nullptr);
std::vector<EnergyReport> run_energy_study(const RunConfig& cfg, RunResult* result = nullptr);

// orders from consecutive refinements: log2(e_coarse / e_fine)
void fill_orders(std::vector<ConvergenceRow>& rows);

std::string format_float(double v);  // 17 significant digits
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);
void write_energy_csv(const std::string& path, const std::vector<EnergyReport>& reports);
void write_metrics_csv(const std::string& path, const RunConfig& cfg,
                       const std::vector<RunResult>& results);
void write_summary(const std::string& path, const RunConfig& cfg,
                   const std::vector<ConvergenceRow>& rows);

}  // namespace hyfr
