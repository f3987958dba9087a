#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "hyfr/fr_solver.hpp"
#include "hyfr/hybrid_solver.hpp"

namespace hyfr {

// Implicit stage: returns z with sigma (z - base) + R(z) = 0, where sigma is
// fixed at construction of the underlying system.
class StageSolver {
 public:
  virtual ~StageSolver() = default;
  virtual FieldState solve(const Eigen::VectorXd& base, const FieldState* warm) = 0;
  virtual double sigma() const = 0;
};

class HybridStageSolver final : public StageSolver {
 public:
  explicit HybridStageSolver(HybridSystem& sys) : sys_(sys) {}
  FieldState solve(const Eigen::VectorXd& base, const FieldState* warm) override {
    return sys_.solve_stage(base, warm);
  }
  double sigma() const override { return sys_.mass_shift(); }

 private:
  HybridSystem& sys_;
};

class FrStageSolver final : public StageSolver {
 public:
  explicit FrStageSolver(FrSystem& sys, double sigma) : sys_(sys), sigma_(sigma) {}
  FieldState solve(const Eigen::VectorXd& base, const FieldState* warm) override {
    return sys_.solve_stage(base, warm);
  }
  double sigma() const override { return sigma_; }

 private:
  FrSystem& sys_;
  double sigma_;
};

// Scalar surrogate du/dt = lambda u, for stability-function tests.
class ScalarStageSolver final : public StageSolver {
 public:
  ScalarStageSolver(double lambda, double sigma) : lambda_(lambda), sigma_(sigma) {}
  FieldState solve(const Eigen::VectorXd& base, const FieldState*) override {
    FieldState st;
    st.u = sigma_ / (sigma_ - lambda_) * base;
    return st;
  }
  double sigma() const override { return sigma_; }

 private:
  double lambda_, sigma_;
};

// Two-stage, third-order SDIRK with equal diagonal gamma = (3 + sqrt(3)) / 6.
struct Sdirk3 {
  static double gamma_rk() { return (3.0 + std::sqrt(3.0)) / 6.0; }
  static double a21() { return 1.0 - 2.0 * gamma_rk(); }
  static double b1() { return 0.5; }
  static double b2() { return 0.5; }
  static double c1() { return gamma_rk(); }
  static double c2() { return 1.0 - gamma_rk(); }
  // stability function R(z)
  static double stability(double z) {
    const double g = gamma_rk();
    const double num = 1.0 + (1.0 - 2.0 * g) * z + (g * g - 2.0 * g + 0.5) * z * z;
    const double den = (1.0 - g * z) * (1.0 - g * z);
    return num / den;
  }
};

// Advances one SDIRK3 step; sigma of the solver must equal 1/(gamma dt).
FieldState step_sdirk3(StageSolver& solver, const FieldState& state, double dt);

// Backward Euler; sigma must equal 1/dt.
FieldState step_backward_euler(StageSolver& solver, const FieldState& state, double dt);

}  // namespace hyfr
