#pragma once

#include <functional>

#include <Eigen/Dense>

#include "hyfr/errors.hpp"

namespace hyfr {

// Linear advection-diffusion: du/dt + div(alpha u - beta grad u) = source.
struct AdvDiffProblem {
  Eigen::Vector2d alpha{0.0, 0.0};
  double beta = 0.0;
  std::function<double(double, double)> source;  // may be empty

  void validate() const {
    if (!(beta >= 0.0)) throw InvalidArgument("AdvDiffProblem: beta must be >= 0");
    if (!alpha.allFinite()) throw InvalidArgument("AdvDiffProblem: alpha must be finite");
  }
};

// Global solution state: element-major solution coefficients plus the global
// trace vector (empty for the conventional FR path).
struct FieldState {
  Eigen::VectorXd u;
  Eigen::VectorXd trace;
  double time = 0.0;
};

}  // namespace hyfr
