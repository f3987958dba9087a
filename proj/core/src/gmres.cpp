#include "hyfr/gmres.hpp"

#include <cmath>

#include "hyfr/errors.hpp"

namespace hyfr {

void LuFactor::factor(const MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("lu_factor: matrix must be square");
  if (!a.allFinite()) throw InvalidArgument("lu_factor: non-finite entries");
  lu_.compute(a);
  n_ = static_cast<int>(a.rows());
  // Partial pivoting: exact singularity shows up as a zero pivot.
  const auto& u = lu_.matrixLU();
  double rescale = a.cwiseAbs().maxCoeff();
  if (rescale == 0.0) throw SingularMatrix("lu_factor: zero matrix");
  for (int i = 0; i < n_; ++i)
    if (std::abs(u(i, i)) <= 1e-300 * rescale) throw SingularMatrix("lu_factor: singular matrix");
}

LuFactor lu_factor(const MatrixXd& a) { return LuFactor(a); }

BlockJacobi::BlockJacobi(const CsrMatrix& a, int block_size) {
  if (block_size < 1) throw InvalidArgument("block_jacobi: block size must be >= 1");
  const int n = a.rows();
  for (int start = 0; start < n; start += block_size) {
    int size = std::min(block_size, n - start);
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i) {
      int row = start + i;
      for (int k = a.row_ptr()[row]; k < a.row_ptr()[row + 1]; ++k) {
        int j = a.col_idx()[k] - start;
        if (j >= 0 && j < size) blk(i, j) += a.values()[k];
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(blk);
    Block b{start, size, Eigen::MatrixXd()};
    if (lu.isInvertible()) {
      b.inv = lu.inverse();
    } else {
      ++singular_blocks_;  // identity fallback
    }
    blocks_.push_back(std::move(b));
  }
}

Eigen::VectorXd BlockJacobi::apply(const Eigen::VectorXd& r) const {
  Eigen::VectorXd z(r.size());
  for (const auto& b : blocks_) {
    if (b.inv.size() > 0)
      z.segment(b.start, b.size) = b.inv * r.segment(b.start, b.size);
    else
      z.segment(b.start, b.size) = r.segment(b.start, b.size);
  }
  return z;
}

KrylovResult gmres(const CsrMatrix& a, const Eigen::VectorXd& b, const Preconditioner& prec,
                   const KrylovConfig& cfg, const Eigen::VectorXd* x0, bool throw_on_fail) {
  const int n = a.rows();
  if (a.cols() != n || b.size() != n) throw InvalidArgument("gmres: shape mismatch");
  if (cfg.restart < 1 || cfg.rtol <= 0.0) throw InvalidArgument("gmres: bad config");

  KrylovResult res;
  res.x = x0 ? *x0 : Eigen::VectorXd::Zero(n);

  // left preconditioning: convergence is on ||M^{-1}(b - A x)||
  const double bnorm = prec.apply(b).norm();
  const double target = std::max(cfg.rtol * bnorm, cfg.atol);
  Eigen::VectorXd r = prec.apply(b - a.multiply(res.x));
  double rnorm = r.norm();
  res.residual_history.push_back(rnorm);
  if (rnorm <= target || bnorm == 0.0) {
    res.converged = true;
    return res;
  }

  const int m = cfg.restart;
  Eigen::MatrixXd v(n, m + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m);
  Eigen::VectorXd cs(m), sn(m), g(m + 1);

  while (res.iterations < cfg.max_iters) {
    v.col(0) = r / rnorm;
    g.setZero();
    g[0] = rnorm;
    int k = 0;
    for (; k < m && res.iterations < cfg.max_iters; ++k) {
      ++res.iterations;
      Eigen::VectorXd w = prec.apply(a.multiply(v.col(k)));
      // modified Gram-Schmidt
      for (int i = 0; i <= k; ++i) {
        h(i, k) = w.dot(v.col(i));
        w -= h(i, k) * v.col(i);
      }
      h(k + 1, k) = w.norm();
      const double subdiag = h(k + 1, k);
      if (subdiag > 0.0) v.col(k + 1) = w / subdiag;

      // apply accumulated Givens rotations to the new column
      for (int i = 0; i < k; ++i) {
        double t = cs[i] * h(i, k) + sn[i] * h(i + 1, k);
        h(i + 1, k) = -sn[i] * h(i, k) + cs[i] * h(i + 1, k);
        h(i, k) = t;
      }
      double denom = std::hypot(h(k, k), h(k + 1, k));
      if (denom == 0.0) {
        cs[k] = 1.0;
        sn[k] = 0.0;
      } else {
        cs[k] = h(k, k) / denom;
        sn[k] = h(k + 1, k) / denom;
      }
      h(k, k) = denom;
      h(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];

      res.residual_history.push_back(std::abs(g[k + 1]));
      if (std::abs(g[k + 1]) <= target || subdiag == 0.0) {
        ++k;
        break;
      }
    }
    // back-substitute and update
    Eigen::VectorXd y(k);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= h(i, j) * y[j];
      y[i] = s / h(i, i);
    }
    res.x += v.leftCols(k) * y;

    r = prec.apply(b - a.multiply(res.x));
    rnorm = r.norm();
    res.residual_history.back() = rnorm;  // replace estimate by the recomputed residual
    if (rnorm <= target) {
      res.converged = true;
      return res;
    }
  }

  if (throw_on_fail)
    throw SolverFailure("gmres: no convergence in " + std::to_string(res.iterations) +
                            " iterations (residual " + std::to_string(rnorm) + ")",
                        res.residual_history);
  return res;
}

}  // namespace hyfr
