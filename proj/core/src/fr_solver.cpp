#include "hyfr/fr_solver.hpp"

#include <chrono>
#include <cmath>

#include "hyfr/errors.hpp"

namespace hyfr {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int color_stride(int n, bool periodic) {
  if (!periodic || n <= 1) return 5;
  for (int c = 5; c <= n; ++c)
    if (n % c == 0) return c;
  return n;
}

}  // namespace

FrSystem::FrSystem(const Mesh& mesh, const std::vector<ElementGeometry>& geoms,
                   const RefElement& ref, const AdvDiffProblem& prob, double tau,
                   double mass_shift, KrylovConfig krylov)
    : mesh_(mesh),
      geoms_(geoms),
      ref_(ref),
      prob_(prob),
      tau_(tau),
      shift_(mass_shift),
      krylov_(krylov) {}

void FrSystem::set_boundary_values(const std::function<double(double, double)>& g) {
  bc_ = g;
  assembled_ = false;
}

Eigen::VectorXd FrSystem::nodal_values(const std::function<double(double, double)>& f) const {
  Eigen::VectorXd v(ndof());
  for (int e = 0; e < mesh_.n_elems(); ++e)
    for (int i = 0; i < ref_.ns; ++i)
      v[e * ref_.ns + i] = f(geoms_[e].xy(i, 0), geoms_[e].xy(i, 1));
  return v;
}

FrPointData FrSystem::point_data(const Eigen::VectorXd& u) const {
  const int ne = mesh_.n_elems(), ns = ref_.ns, nr = ref_.nr;
  const double beta = prob_.beta;
  FrPointData pd;
  pd.q.resize(ne);
  pd.ucom.resize(ne);
  pd.phiv.resize(ne);

  std::vector<std::array<Eigen::VectorXd, 4>> uface(ne);
  for (int e = 0; e < ne; ++e)
    for (int f = 0; f < 4; ++f) uface[e][f] = ref_.interp_face[f] * u.segment(e * ns, ns);

  // common solution value: one-sided from the plus element; boundary data on
  // Dirichlet faces
  for (const auto& uf : mesh_.faces) {
    Eigen::VectorXd ucom(nr);
    if (uf.ep >= 0) {
      ucom = uface[uf.ep][uf.fp];
    } else {
      if (!bc_) throw InvalidArgument("FrSystem: boundary values required for Dirichlet faces");
      for (int m = 0; m < nr; ++m)
        ucom[m] = bc_(geoms_[uf.em].fxy[uf.fm](m, 0), geoms_[uf.em].fxy[uf.fm](m, 1));
    }
    pd.ucom[uf.em][uf.fm] = ucom;
    if (uf.ep >= 0) pd.ucom[uf.ep][uf.fp] = ucom;
  }

  // corrected gradients, stored in reference components per element
  std::vector<Eigen::VectorXd> qxi(ne), qeta(ne);
  for (int e = 0; e < ne; ++e) {
    const Eigen::VectorXd ue = u.segment(e * ns, ns);
    qxi[e] = ref_.dxi * ue;
    qeta[e] = ref_.deta * ue;
    for (int f = 0; f < 4; ++f) {
      const Eigen::VectorXd jump = pd.ucom[e][f] - uface[e][f];
      if (ref_.face_axis[f] == 0)
        qxi[e] += ref_.corr_grad[f] * jump;
      else
        qeta[e] += ref_.corr_grad[f] * jump;
    }
    const ElementGeometry& g = geoms_[e];
    pd.q[e].resize(ns, 2);
    for (int i = 0; i < ns; ++i) {
      const double inv = 1.0 / g.detj[i];
      pd.q[e](i, 0) = (g.y_eta[i] * qxi[e][i] - g.y_xi[i] * qeta[e][i]) * inv;
      pd.q[e](i, 1) = (-g.x_eta[i] * qxi[e][i] + g.x_xi[i] * qeta[e][i]) * inv;
    }
  }

  auto face_gradient = [&](int e, int f) {
    const ElementGeometry& g = geoms_[e];
    const Eigen::VectorXd qxi_f = ref_.interp_face[f] * qxi[e];
    const Eigen::VectorXd qeta_f = ref_.interp_face[f] * qeta[e];
    Eigen::MatrixX2d q(nr, 2);
    for (int m = 0; m < nr; ++m) {
      const double det =
          g.f_x_xi[f][m] * g.f_y_eta[f][m] - g.f_x_eta[f][m] * g.f_y_xi[f][m];
      const double inv = 1.0 / det;
      q(m, 0) = (g.f_y_eta[f][m] * qxi_f[m] - g.f_y_xi[f][m] * qeta_f[m]) * inv;
      q(m, 1) = (-g.f_x_eta[f][m] * qxi_f[m] + g.f_x_xi[f][m] * qeta_f[m]) * inv;
    }
    return q;
  };

  // viscous common flux: gradient from the minus side, jump penalty tau
  for (const auto& uf : mesh_.faces) {
    const Eigen::MatrixX2d qhat = face_gradient(uf.em, uf.fm);
    Eigen::VectorXd phim(nr);
    for (int m = 0; m < nr; ++m) {
      const Eigen::Vector2d nm = geoms_[uf.em].fnormal[uf.fm].row(m).transpose();
      double jump;
      if (uf.ep >= 0)
        jump = uface[uf.em][uf.fm][m] - uface[uf.ep][uf.fp][m];
      else
        jump = uface[uf.em][uf.fm][m] - pd.ucom[uf.em][uf.fm][m];
      const Eigen::Vector2d fv = -beta * qhat.row(m).transpose() + tau_ * jump * nm;
      phim[m] = fv.dot(nm);
    }
    pd.phiv[uf.em][uf.fm] = phim;
    if (uf.ep >= 0) pd.phiv[uf.ep][uf.fp] = -phim;
  }
  return pd;
}

Eigen::VectorXd FrSystem::residual(const Eigen::VectorXd& u) const {
  const int ne = mesh_.n_elems(), ns = ref_.ns, nr = ref_.nr;
  const FrPointData pd = point_data(u);
  const double beta = prob_.beta;

  // total common normal flux per unique face, minus orientation
  std::vector<Eigen::VectorXd> phi_minus(mesh_.faces.size());
  std::vector<std::array<Eigen::VectorXd, 4>> uface(ne);
  for (int e = 0; e < ne; ++e)
    for (int f = 0; f < 4; ++f) uface[e][f] = ref_.interp_face[f] * u.segment(e * ns, ns);

  for (std::size_t fid = 0; fid < mesh_.faces.size(); ++fid) {
    const auto& uf = mesh_.faces[fid];
    phi_minus[fid].resize(nr);
    for (int m = 0; m < nr; ++m) {
      const Eigen::Vector2d nm = geoms_[uf.em].fnormal[uf.fm].row(m).transpose();
      const double adn = prob_.alpha.dot(nm);
      double up;
      if (uf.ep >= 0)
        up = adn >= 0.0 ? uface[uf.em][uf.fm][m] : uface[uf.ep][uf.fp][m];
      else
        up = adn >= 0.0 ? uface[uf.em][uf.fm][m] : pd.ucom[uf.em][uf.fm][m];
      phi_minus[fid][m] = adn * up + pd.phiv[uf.em][uf.fm][m];
    }
  }

  Eigen::VectorXd res(ndof());
  for (int e = 0; e < ne; ++e) {
    const ElementGeometry& g = geoms_[e];
    Eigen::VectorXd ftx(ns), fty(ns);
    for (int i = 0; i < ns; ++i) {
      const double fx = prob_.alpha[0] * u[e * ns + i] - beta * pd.q[e](i, 0);
      const double fy = prob_.alpha[1] * u[e * ns + i] - beta * pd.q[e](i, 1);
      ftx[i] = g.y_eta[i] * fx - g.x_eta[i] * fy;
      fty[i] = -g.y_xi[i] * fx + g.x_xi[i] * fy;
    }
    Eigen::VectorXd vol = ref_.dxi * ftx + ref_.deta * fty;
    for (int f = 0; f < 4; ++f) {
      const int fid = mesh_.elem_face_id[e][f];
      const int side = mesh_.elem_face_side[e][f];
      const Eigen::VectorXd ft_f =
          ref_.interp_face[f] * (ref_.face_axis[f] == 0 ? ftx : fty) * ref_.face_sign[f];
      Eigen::VectorXd hcorr(nr);
      for (int m = 0; m < nr; ++m) {
        const double phi = side == 0 ? phi_minus[fid][m] : -phi_minus[fid][m];
        hcorr[m] = g.fjac[f][m] * phi - ft_f[m];
      }
      vol += ref_.corr_div[f] * hcorr;
    }
    vol.array() /= g.detj.array();
    res.segment(e * ns, ns) = vol;
  }

  if (prob_.source) res -= nodal_values(prob_.source);
  if (shift_ != 0.0) res += shift_ * u;
  return res;
}

void FrSystem::ensure_assembled() {
  if (assembled_) return;
  const auto t0 = std::chrono::steady_clock::now();
  const int ne = mesh_.n_elems(), ns = ref_.ns;
  const int nx = mesh_.nx, ny = mesh_.ny;
  const int cx = color_stride(nx, mesh_.periodic);
  const int cy = color_stride(ny, mesh_.periodic);

  rhs0_ = -residual(Eigen::VectorXd::Zero(ndof()));

  // residual dependencies reach at most two element steps; same-color probes
  // are spaced so their footprints cannot overlap
  auto in_ball = [&](int ei, int ej, int pi, int pj) {
    int di = std::abs(ei - pi), dj = std::abs(ej - pj);
    if (mesh_.periodic) {
      di = std::min(di, nx - di);
      dj = std::min(dj, ny - dj);
    }
    return di <= 2 && dj <= 2;
  };

  CooBuilder coo(ndof(), ndof());
  Eigen::VectorXd probe = Eigen::VectorXd::Zero(ndof());
  std::vector<int> owner(ne);
  for (int a = 0; a < cx; ++a)
    for (int b = 0; b < cy; ++b) {
      std::vector<int> members;
      for (int j = b; j < ny; j += cy)
        for (int i = a; i < nx; i += cx) members.push_back(mesh_.elem_index(i, j));
      if (members.empty()) continue;
      std::fill(owner.begin(), owner.end(), -1);
      for (int e = 0; e < ne; ++e) {
        const int ei = e % nx, ej = e / nx;
        for (int p : members)
          if (in_ball(ei, ej, p % nx, p / nx)) {
            owner[e] = p;
            break;
          }
      }
      for (int j = 0; j < ns; ++j) {
        for (int p : members) probe[p * ns + j] = 1.0;
        const Eigen::VectorXd col = residual(probe) + rhs0_;
        for (int p : members) probe[p * ns + j] = 0.0;
        const double scale = col.cwiseAbs().maxCoeff();
        for (int e = 0; e < ne; ++e) {
          const double blockmax = col.segment(e * ns, ns).cwiseAbs().maxCoeff();
          if (blockmax <= 1e-13 * scale) continue;
          if (owner[e] < 0)
            throw InternalConsistencyError("fr jacobian: probe footprint wider than expected");
          for (int i = 0; i < ns; ++i) {
            const double v = col[e * ns + i];
            if (std::abs(v) > 1e-14 * scale) coo.add(e * ns + i, owner[e] * ns + j, v);
          }
        }
      }
    }
  jac_ = coo.build();
  prec_ = std::make_unique<BlockJacobi>(jac_, krylov_.block_size > 0 ? krylov_.block_size : ns);
  stats_.nnz = jac_.nnz();
  stats_.n_global = ndof();
  stats_.assembly_seconds = seconds_since(t0);
  assembled_ = true;
}

const CsrMatrix& FrSystem::jacobian() {
  ensure_assembled();
  return jac_;
}

const Eigen::VectorXd& FrSystem::rhs0() {
  ensure_assembled();
  return rhs0_;
}

CsrMatrix FrSystem::jacobian_exact_probe() const {
  const Eigen::VectorXd r0 = residual(Eigen::VectorXd::Zero(ndof()));
  CooBuilder coo(ndof(), ndof());
  Eigen::VectorXd probe = Eigen::VectorXd::Zero(ndof());
  for (int j = 0; j < ndof(); ++j) {
    probe[j] = 1.0;
    const Eigen::VectorXd col = residual(probe) - r0;
    probe[j] = 0.0;
    const double scale = col.cwiseAbs().maxCoeff();
    for (int i = 0; i < ndof(); ++i)
      if (std::abs(col[i]) > 1e-14 * scale) coo.add(i, j, col[i]);
  }
  return coo.build();
}

FieldState FrSystem::solve_steady() {
  ensure_assembled();
  const auto t0 = std::chrono::steady_clock::now();
  KrylovResult res = gmres(jac_, rhs0_, *prec_, krylov_);
  stats_.solve_seconds += seconds_since(t0);
  stats_.last_iterations = res.iterations;
  stats_.total_iterations += res.iterations;
  ++stats_.n_solves;
  FieldState st;
  st.u = std::move(res.x);
  return st;
}

FieldState FrSystem::solve_stage(const Eigen::VectorXd& base, const FieldState* warm) {
  ensure_assembled();
  const auto t0 = std::chrono::steady_clock::now();
  const Eigen::VectorXd b = rhs0_ + shift_ * base;
  KrylovResult res =
      gmres(jac_, b, *prec_, krylov_, warm && warm->u.size() == base.size() ? &warm->u : nullptr);
  stats_.solve_seconds += seconds_since(t0);
  stats_.last_iterations = res.iterations;
  stats_.total_iterations += res.iterations;
  ++stats_.n_solves;
  FieldState st;
  st.u = std::move(res.x);
  return st;
}

}  // namespace hyfr
