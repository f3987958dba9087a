#include "hyfr/legendre.hpp"

#include <cmath>

#include "hyfr/errors.hpp"

namespace hyfr {

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double lm = 1.0, l = x;
  for (int k = 2; k <= n; ++k) {
    double ln = ((2 * k - 1) * x * l - (k - 1) * lm) / k;
    lm = l;
    l = ln;
  }
  return l;
}

double legendre_deriv(int n, double x) {
  // L'_n = L'_{n-2} + (2n-1) L_{n-1}, stable at the endpoints
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;
  double L0 = 1.0, L1 = x, D0 = 0.0, D1 = 1.0;
  for (int k = 2; k <= n; ++k) {
    double Lk = ((2 * k - 1) * x * L1 - (k - 1) * L0) / k;
    double Dk = D0 + (2 * k - 1) * L1;
    L0 = L1;
    L1 = Lk;
    D0 = D1;
    D1 = Dk;
  }
  return D1;
}

double legendre_deriv2(int n, double x) {
  // L''_n = L''_{n-2} + (2n-1) L'_{n-1}
  if (n <= 1) return 0.0;
  double Dp0 = 0.0, Dp1 = 1.0;    // L'_0, L'_1
  double Dpp0 = 0.0, Dpp1 = 0.0;  // L''_0, L''_1
  double L0 = 1.0, L1 = x;
  for (int k = 2; k <= n; ++k) {
    double Lk = ((2 * k - 1) * x * L1 - (k - 1) * L0) / k;
    double Dk = Dp0 + (2 * k - 1) * L1;
    double DDk = Dpp0 + (2 * k - 1) * Dp1;
    L0 = L1;
    L1 = Lk;
    Dp0 = Dp1;
    Dp1 = Dk;
    Dpp0 = Dpp1;
    Dpp1 = DDk;
  }
  return Dpp1;
}

double legendre_leading_coeff(int n) {
  double a = 1.0;
  for (int k = 1; k <= n; ++k) a *= (n + k) / (2.0 * k);
  return a;  // (2n)!/(2^n (n!)^2)
}

void gauss_legendre(int n, VectorXd& pts, VectorXd& wts) {
  if (n < 1) throw InvalidArgument("gauss_legendre: n must be >= 1");
  pts.resize(n);
  wts.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double f = legendre(n, x), df = legendre_deriv(n, x);
      double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double d = legendre_deriv(n, x);
    pts[i] = x;
    wts[i] = 2.0 / ((1.0 - x * x) * d * d);
  }
}

void gauss_lobatto(int n, VectorXd& pts, VectorXd& wts) {
  if (n < 2) throw InvalidArgument("gauss_lobatto: n must be >= 2");
  pts.resize(n);
  wts.resize(n);
  pts[0] = -1.0;
  pts[n - 1] = 1.0;
  for (int i = 1; i < n - 1; ++i) {
    // interior nodes are roots of L'_{n-1}
    double x = -std::cos(M_PI * i / (n - 1));
    for (int it = 0; it < 100; ++it) {
      double f = legendre_deriv(n - 1, x), df = legendre_deriv2(n - 1, x);
      double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    pts[i] = x;
  }
  for (int i = 0; i < n; ++i) {
    double l = legendre(n - 1, pts[i]);
    wts[i] = 2.0 / (n * (n - 1) * l * l);
  }
}

VectorXd lagrange_values(const VectorXd& nodes, double x) {
  const int n = static_cast<int>(nodes.size());
  VectorXd v(n);
  for (int j = 0; j < n; ++j) {
    double p = 1.0;
    for (int k = 0; k < n; ++k)
      if (k != j) p *= (x - nodes[k]) / (nodes[j] - nodes[k]);
    v[j] = p;
  }
  return v;
}

VectorXd lagrange_deriv_values(const VectorXd& nodes, double x) {
  const int n = static_cast<int>(nodes.size());
  VectorXd v = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      double p = 1.0 / (nodes[j] - nodes[m]);
      for (int k = 0; k < n; ++k)
        if (k != j && k != m) p *= (x - nodes[k]) / (nodes[j] - nodes[k]);
      sum += p;
    }
    v[j] = sum;
  }
  return v;
}

MatrixXd diff_matrix(const VectorXd& nodes) {
  const int n = static_cast<int>(nodes.size());
  VectorXd w(n);  // barycentric weights
  for (int j = 0; j < n; ++j) {
    double p = 1.0;
    for (int k = 0; k < n; ++k)
      if (k != j) p *= (nodes[j] - nodes[k]);
    w[j] = 1.0 / p;
  }
  MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = (w[j] / w[i]) / (nodes[i] - nodes[j]);
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

MatrixXd interp_matrix(const VectorXd& nodes, const VectorXd& targets) {
  MatrixXd m(targets.size(), nodes.size());
  for (int i = 0; i < targets.size(); ++i) m.row(i) = lagrange_values(nodes, targets[i]).transpose();
  return m;
}

}  // namespace hyfr
