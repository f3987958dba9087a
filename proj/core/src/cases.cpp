#include "hyfr/cases.hpp"

#include <complex>

#include "hyfr/errors.hpp"

namespace hyfr {

namespace {

// 1D factor of the boundary-layer solution: F(x) = x (1 - e^{a(x-1)}) / (1 - e^{1-a}).
// Templated on the scalar so tests can differentiate it by complex step.
template <typename T>
T layer_factor(T x, double a) {
  const double den = 1.0 - std::exp(1.0 - a);
  return x * (1.0 - exp(a * (x - 1.0))) / den;
}

double layer_d1(double x, double a) {
  const double den = 1.0 - std::exp(1.0 - a);
  return (1.0 - (1.0 + a * x) * std::exp(a * (x - 1.0))) / den;
}

double layer_d2(double x, double a) {
  const double den = 1.0 - std::exp(1.0 - a);
  return -a * std::exp(a * (x - 1.0)) * (2.0 + a * x) / den;
}

// complex-step first derivative, exact to round-off for analytic f
template <typename F>
double cstep(F&& f, double x) {
  const double h = 1e-100;
  return std::imag(f(std::complex<double>(x, h))) / h;
}

void self_check_steady(const CaseDefinition& c, double ax, double ay) {
  // Verify the stored derivative formulas against complex-step differentiation
  // and the PDE residual at deterministic sample points.
  unsigned state = 12345u;
  auto next = [&state]() {
    state = 1664525u * state + 1013904223u;
    return (state >> 8) * (1.0 / 16777216.0);
  };
  for (int k = 0; k < 100; ++k) {
    const double x = next(), y = next();
    const double fx = layer_factor(x, ax), fy = layer_factor(y, ay);
    const double dfx = cstep([&](std::complex<double> z) { return layer_factor(z, ax); }, x);
    const double dfy = cstep([&](std::complex<double> z) { return layer_factor(z, ay); }, y);
    if (std::abs(dfx - layer_d1(x, ax)) > 1e-10 * (1.0 + std::abs(dfx)) ||
        std::abs(dfy - layer_d1(y, ay)) > 1e-10 * (1.0 + std::abs(dfy)))
      throw InternalConsistencyError("steady case: gradient formula check failed");
    const Eigen::Vector2d g = c.exact_grad(x, y, 0.0);
    if (std::abs(g[0] - dfx * fy) > 1e-10 * (1.0 + std::abs(g[0])))
      throw InternalConsistencyError("steady case: exact_grad inconsistent");
    const double lap = layer_d2(x, ax) * fy + fx * layer_d2(y, ay);
    const double resid = c.prob.alpha[0] * g[0] + c.prob.alpha[1] * g[1] - c.prob.beta * lap -
                         c.prob.source(x, y);
    if (std::abs(resid) > 1e-10 * (1.0 + std::abs(c.prob.source(x, y))))
      throw InternalConsistencyError("steady case: PDE residual self-check failed");
  }
}

}  // namespace

Mesh CaseDefinition::make_mesh(int n) const {
  Mesh m;
  if (mesh.family == MeshFamily::stretched)
    m = build_stretched_mesh(n, mesh.stretch_a);
  else
    m = build_cartesian_mesh(n, n, mesh.domain, mesh.periodic);
  if (mesh.curved) m = curve_mesh(m, mesh.curve_amplitude, mesh.curve_degree);
  return m;
}

CaseDefinition steady_boundary_layer_case(double ax, double ay, double beta,
                                          const Eigen::Vector2d& alpha) {
  if (!(std::abs(1.0 - std::exp(1.0 - ax)) > 1e-12) ||
      !(std::abs(1.0 - std::exp(1.0 - ay)) > 1e-12))
    throw InvalidArgument("steady_boundary_layer_case: degenerate denominator (a = 1)");

  CaseDefinition c;
  c.name = "steady_boundary_layer";
  c.prob.alpha = alpha;
  c.prob.beta = beta;
  c.mesh.family = MeshFamily::stretched;
  c.mesh.domain = {0.0, 1.0, 0.0, 1.0};
  c.mesh.periodic = false;
  c.error_region = Box{0.1, 0.9, 0.1, 0.9};

  c.exact = [ax, ay](double x, double y, double) {
    return layer_factor(x, ax) * layer_factor(y, ay);
  };
  c.exact_grad = [ax, ay](double x, double y, double) {
    return Eigen::Vector2d(layer_d1(x, ax) * layer_factor(y, ay),
                           layer_factor(x, ax) * layer_d1(y, ay));
  };
  c.prob.source = [ax, ay, beta, alpha](double x, double y) {
    const double fx = layer_factor(x, ax), fy = layer_factor(y, ay);
    const double gx = layer_d1(x, ax) * fy, gy = fx * layer_d1(y, ay);
    const double lap = layer_d2(x, ax) * fy + fx * layer_d2(y, ay);
    return alpha[0] * gx + alpha[1] * gy - beta * lap;
  };
  c.prob.validate();
  self_check_steady(c, ax, ay);
  return c;
}

CaseDefinition sine_wave_case(const Eigen::Vector2d& alpha, double beta) {
  CaseDefinition c;
  c.name = "sine_wave";
  c.prob.alpha = alpha;
  c.prob.beta = beta;
  c.unsteady = true;
  c.mesh.family = MeshFamily::cartesian;
  c.mesh.domain = {0.0, 2.0, 0.0, 2.0};  // L = 2 so 2*pi/L matches the exact wavenumber pi
  c.mesh.periodic = true;
  c.t_c = 2.0 / alpha[0];  // one cycle
  c.horizon_tstar = 1.0;

  const double ax = alpha[0], ay = alpha[1];
  c.exact = [beta, ax, ay](double x, double y, double t) {
    return std::exp(-2.0 * beta * M_PI * M_PI * t) * std::sin(M_PI * (x - ax * t)) *
           std::sin(M_PI * (y - ay * t));
  };
  c.exact_grad = [beta, ax, ay](double x, double y, double t) {
    const double amp = std::exp(-2.0 * beta * M_PI * M_PI * t);
    return Eigen::Vector2d(
        amp * M_PI * std::cos(M_PI * (x - ax * t)) * std::sin(M_PI * (y - ay * t)),
        amp * M_PI * std::sin(M_PI * (x - ax * t)) * std::cos(M_PI * (y - ay * t)));
  };
  auto exact = c.exact;
  c.initial = [exact](double x, double y) { return exact(x, y, 0.0); };
  c.prob.validate();
  return c;
}

CaseDefinition gaussian_pulse_case(double beta) {
  CaseDefinition c;
  c.name = "gaussian_pulse";
  c.prob.alpha = {1.0, 1.0};
  c.prob.beta = beta;
  c.unsteady = true;
  c.mesh.family = MeshFamily::cartesian;
  c.mesh.domain = {-5.0, 5.0, -5.0, 5.0};
  c.mesh.periodic = true;
  c.t_c = 10.0;  // domain length over advection speed component
  c.horizon_tstar = beta == 0.0 ? 5.0 : 1.0;

  c.initial = [](double x, double y) { return std::exp(-(x * x + y * y)); };
  if (beta == 0.0) {
    auto wrap = [](double v) { return v - 10.0 * std::floor((v + 5.0) / 10.0); };
    c.exact = [wrap](double x, double y, double t) {
      const double xs = wrap(x - t), ys = wrap(y - t);
      return std::exp(-(xs * xs + ys * ys));
    };
    c.exact_grad = [wrap](double x, double y, double t) {
      const double xs = wrap(x - t), ys = wrap(y - t);
      const double u = std::exp(-(xs * xs + ys * ys));
      return Eigen::Vector2d(-2.0 * xs * u, -2.0 * ys * u);
    };
  }
  c.prob.validate();
  return c;
}

CaseDefinition make_case(const std::string& name) {
  if (name == "steady_boundary_layer") return steady_boundary_layer_case();
  if (name == "sine_wave") return sine_wave_case();
  if (name == "gaussian_pulse") return gaussian_pulse_case(0.0);
  if (name == "gaussian_pulse_diffusive") return gaussian_pulse_case(0.01);
  throw InvalidArgument("unknown case: " + name);
}

}  // namespace hyfr
