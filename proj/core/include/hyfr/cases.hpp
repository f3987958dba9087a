#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "hyfr/mesh.hpp"
#include "hyfr/problem.hpp"

namespace hyfr {

enum class MeshFamily { cartesian, stretched };

struct MeshRecipe {
  MeshFamily family = MeshFamily::cartesian;
  Box domain;
  double stretch_a = 0.95;
  bool periodic = false;
  bool curved = false;
  double curve_amplitude = 0.1;
  int curve_degree = 5;
};

// One of the linear verification problems: PDE data, mesh recipe, exact
// solution and error-measurement conventions.
struct CaseDefinition {
  std::string name;
  AdvDiffProblem prob;
  MeshRecipe mesh;
  bool unsteady = false;
  double t_c = 1.0;             // convective time scale
  double horizon_tstar = 0.0;   // default run length in convective times
  std::optional<Box> error_region;

  // exact(x, y, t); steady cases ignore t. Empty when no closed form exists.
  std::function<double(double, double, double)> exact;
  std::function<Eigen::Vector2d(double, double, double)> exact_grad;
  std::function<double(double, double)> initial;

  bool has_exact() const { return static_cast<bool>(exact); }

  Mesh make_mesh(int n) const;
};

// Steady boundary-layer problem on [0,1]^2 with manufactured source,
// alpha = (25, 25), beta = 1, Dirichlet data from the exact solution.
CaseDefinition steady_boundary_layer_case(double ax = 25.0, double ay = 25.0, double beta = 1.0,
                                          const Eigen::Vector2d& alpha = {25.0, 25.0});

// Travelling sine wave on the periodic square [0,2]^2, alpha = (1,1).
CaseDefinition sine_wave_case(const Eigen::Vector2d& alpha = {1.0, 1.0}, double beta = 0.1);

// Gaussian pulse on the periodic square [-5,5]^2, alpha = (1,1).
CaseDefinition gaussian_pulse_case(double beta);

CaseDefinition make_case(const std::string& name);

}  // namespace hyfr
