#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "hyfr/dense.hpp"
#include "hyfr/sparse.hpp"

namespace hyfr {

struct KrylovConfig {
  double rtol = 1e-12;
  double atol = 1e-300;
  int restart = 60;
  int max_iters = 5000;
  int block_size = 1;  // block-Jacobi block size
};

struct KrylovResult {
  Eigen::VectorXd x;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // true residual norm at each iteration
};

class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual Eigen::VectorXd apply(const Eigen::VectorXd& r) const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
 public:
  Eigen::VectorXd apply(const Eigen::VectorXd& r) const override { return r; }
};

// Per-block dense LU along the diagonal. A singular block falls back to the
// identity for that block and records a warning count.
class BlockJacobi final : public Preconditioner {
 public:
  BlockJacobi(const CsrMatrix& a, int block_size);
  Eigen::VectorXd apply(const Eigen::VectorXd& r) const override;
  int singular_blocks() const { return singular_blocks_; }

 private:
  struct Block {
    int start, size;
    Eigen::MatrixXd inv;  // empty when identity fallback
  };
  std::vector<Block> blocks_;
  int singular_blocks_ = 0;
};

// Restarted GMRES with right preconditioning and modified Gram-Schmidt.
// Deterministic for fixed inputs. Throws SolverFailure on non-convergence.
KrylovResult gmres(const CsrMatrix& a, const Eigen::VectorXd& b, const Preconditioner& prec,
                   const KrylovConfig& cfg, const Eigen::VectorXd* x0 = nullptr,
                   bool throw_on_fail = true);

}  // namespace hyfr
