#include "hyfr/element_system.hpp"

#include "hyfr/errors.hpp"

namespace hyfr {

ElementOperator::ElementOperator(const RefElement& ref_, const ElementGeometry& geo_,
                                 const AdvDiffProblem& prob_, FaceStabValues stab_,
                                 double mass_shift)
    : ref(ref_), geo(geo_), prob(prob_), stab(std::move(stab_)), shift(mass_shift) {}

void ElementOperator::reference_gradient(const Eigen::VectorXd& u,
                                         const std::array<Eigen::VectorXd, 4>& uhat,
                                         const std::array<Eigen::VectorXd, 4>& uface,
                                         Eigen::VectorXd& qxi, Eigen::VectorXd& qeta) const {
  qxi = ref.dxi * u;
  qeta = ref.deta * u;
  for (int f = 0; f < 4; ++f) {
    const Eigen::VectorXd jump = uhat[f] - uface[f];
    if (ref.face_axis[f] == 0)
      qxi += ref.corr_grad[f] * jump;
    else
      qeta += ref.corr_grad[f] * jump;
  }
}

Eigen::MatrixX2d ElementOperator::corrected_gradient(
    const Eigen::VectorXd& u, const std::array<Eigen::VectorXd, 4>& uhat) const {
  std::array<Eigen::VectorXd, 4> uface;
  for (int f = 0; f < 4; ++f) uface[f] = ref.interp_face[f] * u;
  Eigen::VectorXd qxi, qeta;
  reference_gradient(u, uhat, uface, qxi, qeta);
  Eigen::MatrixX2d q(ref.ns, 2);
  for (int i = 0; i < ref.ns; ++i) {
    const double inv = 1.0 / geo.detj[i];
    q(i, 0) = (geo.y_eta[i] * qxi[i] - geo.y_xi[i] * qeta[i]) * inv;
    q(i, 1) = (-geo.x_eta[i] * qxi[i] + geo.x_xi[i] * qeta[i]) * inv;
  }
  return q;
}

void ElementOperator::apply(const Eigen::VectorXd& u,
                            const std::array<Eigen::VectorXd, 4>& uhat, Eigen::VectorXd& vol,
                            std::array<Eigen::VectorXd, 4>& flux) const {
  const int ns = ref.ns, nr = ref.nr;
  std::array<Eigen::VectorXd, 4> uface;
  for (int f = 0; f < 4; ++f) uface[f] = ref.interp_face[f] * u;

  Eigen::VectorXd qxi, qeta;
  reference_gradient(u, uhat, uface, qxi, qeta);

  // transformed flux at solution points
  Eigen::VectorXd ftx(ns), fty(ns);
  const double beta = prob.beta;
  for (int i = 0; i < ns; ++i) {
    const double inv = 1.0 / geo.detj[i];
    const double qx = (geo.y_eta[i] * qxi[i] - geo.y_xi[i] * qeta[i]) * inv;
    const double qy = (-geo.x_eta[i] * qxi[i] + geo.x_xi[i] * qeta[i]) * inv;
    const double fx = prob.alpha[0] * u[i] - beta * qx;
    const double fy = prob.alpha[1] * u[i] - beta * qy;
    ftx[i] = geo.y_eta[i] * fx - geo.x_eta[i] * fy;
    fty[i] = -geo.y_xi[i] * fx + geo.x_xi[i] * fy;
  }
  vol = ref.dxi * ftx + ref.deta * fty;

  for (int f = 0; f < 4; ++f) {
    flux[f].resize(nr);
    const Eigen::VectorXd qxi_f = ref.interp_face[f] * qxi;
    const Eigen::VectorXd qeta_f = ref.interp_face[f] * qeta;
    const Eigen::VectorXd ft_f =
        ref.interp_face[f] * (ref.face_axis[f] == 0 ? ftx : fty) * ref.face_sign[f];
    Eigen::VectorXd hcorr(nr);
    for (int m = 0; m < nr; ++m) {
      const double det = geo.f_x_xi[f][m] * geo.f_y_eta[f][m] - geo.f_x_eta[f][m] * geo.f_y_xi[f][m];
      const double inv = 1.0 / det;
      const double qx = (geo.f_y_eta[f][m] * qxi_f[m] - geo.f_y_xi[f][m] * qeta_f[m]) * inv;
      const double qy = (-geo.f_x_eta[f][m] * qxi_f[m] + geo.f_x_xi[f][m] * qeta_f[m]) * inv;
      const Eigen::Vector2d n = geo.fnormal[f].row(m).transpose();
      const double phys = prob.alpha.dot(n) * uhat[f][m] - beta * (qx * n[0] + qy * n[1]) +
                          stab.s[f][m] * (uface[f][m] - uhat[f][m]);
      flux[f][m] = geo.fjac[f][m] * phys;
      hcorr[m] = flux[f][m] - ft_f[m];
    }
    vol += ref.corr_div[f] * hcorr;
  }
  vol.array() /= geo.detj.array();
  if (shift != 0.0) vol += shift * u;
}

std::array<Eigen::VectorXd, 4> ElementOperator::physical_flux(
    const Eigen::VectorXd& u, const std::array<Eigen::VectorXd, 4>& uhat) const {
  Eigen::VectorXd vol;
  std::array<Eigen::VectorXd, 4> flux;
  apply(u, uhat, vol, flux);
  for (int f = 0; f < 4; ++f) flux[f].array() /= geo.fjac[f].array();
  return flux;
}

ElementBlocks assemble_element(const ElementOperator& op, const TraceSpace& ts, int elem) {
  const int ns = op.ref.ns, nr = op.ref.nr;
  const int nhat = 4 * nr;
  ElementBlocks eb;
  eb.A.resize(ns, ns);
  eb.B.resize(ns, nhat);
  eb.C.resize(nhat, ns);
  eb.D.resize(nhat, nhat);

  Eigen::VectorXd u = Eigen::VectorXd::Zero(ns);
  std::array<Eigen::VectorXd, 4> uhat;
  for (int f = 0; f < 4; ++f) uhat[f] = Eigen::VectorXd::Zero(nr);

  Eigen::VectorXd vol;
  std::array<Eigen::VectorXd, 4> flux;

  for (int j = 0; j < ns; ++j) {
    u[j] = 1.0;
    op.apply(u, uhat, vol, flux);
    u[j] = 0.0;
    eb.A.col(j) = vol;
    for (int f = 0; f < 4; ++f) eb.C.block(f * nr, j, nr, 1) = ts.test_mat * flux[f];
  }
  for (int fc = 0; fc < 4; ++fc)
    for (int m = 0; m < nr; ++m) {
      uhat[fc] = ts.node_to_gauss.col(m);
      op.apply(u, uhat, vol, flux);
      uhat[fc].setZero();
      const int col = fc * nr + m;
      eb.B.col(col) = vol;
      for (int f = 0; f < 4; ++f) eb.D.block(f * nr, col, nr, 1) = ts.test_mat * flux[f];
    }

  try {
    eb.Alu.factor(eb.A);
  } catch (const SingularMatrix&) {
    throw SingularLocalProblem("assemble_element: singular local matrix in element " +
                                   std::to_string(elem),
                               elem);
  }
  eb.AinvB = eb.Alu.solve(eb.B);
  eb.L = eb.D - eb.C * eb.AinvB;
  eb.r = Eigen::VectorXd::Zero(ns);
  return eb;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> condense(const Eigen::MatrixXd& a,
                                                     const Eigen::MatrixXd& b,
                                                     const Eigen::MatrixXd& c,
                                                     const Eigen::MatrixXd& d,
                                                     const Eigen::VectorXd& r,
                                                     const Eigen::VectorXd& s) {
  LuFactor lu(a);
  return {d - c * lu.solve(b), s - c * lu.solve(r)};
}

}  // namespace hyfr
