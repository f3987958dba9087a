#pragma once

#include <Eigen/Dense>

#include "hyfr/errors.hpp"

namespace hyfr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Dense LU with partial pivoting. Thin wrapper so callers do not depend on the
// backing implementation.
class LuFactor {
 public:
  LuFactor() = default;
  explicit LuFactor(const MatrixXd& a) { factor(a); }

  void factor(const MatrixXd& a);

  template <typename Derived>
  auto solve(const Eigen::MatrixBase<Derived>& b) const {
    return lu_.solve(b).eval();
  }

  bool valid() const { return n_ > 0; }
  int size() const { return n_; }

 private:
  Eigen::PartialPivLU<MatrixXd> lu_;
  int n_ = 0;
};

LuFactor lu_factor(const MatrixXd& a);
inline VectorXd lu_solve(const LuFactor& f, const VectorXd& b) { return f.solve(b); }

}  // namespace hyfr
