#include "scqc/frenet.h"

#include <cmath>
#include <string>

#include "scqc/util.h"

namespace scqc {

namespace {

std::vector<Vec3> derivative4_vec(const std::vector<Vec3>& f, double dt) {
  const int n = static_cast<int>(f.size());
  std::vector<double> x(n), y(n), z(n);
  for (int k = 0; k < n; ++k) {
    x[k] = f[k].x();
    y[k] = f[k].y();
    z[k] = f[k].z();
  }
  const auto dx = derivative4(x, dt);
  const auto dy = derivative4(y, dt);
  const auto dz = derivative4(z, dt);
  std::vector<Vec3> d(n);
  for (int k = 0; k < n; ++k) d[k] = Vec3(dx[k], dy[k], dz[k]);
  return d;
}

}  // namespace

FrenetFrame frenet_frame(const SpaceCurve& curve) {
  if (curve.param != Parameterization::ArcLength)
    throw PreconditionError("frenet_frame: curve must be arc-length tagged");
  const int n = static_cast<int>(curve.r.size());
  if (n < 5) throw PreconditionError("frenet_frame: curve too short");
  const double dt = curve.grid.dt();
  const double kappa_min = 1e-6 / curve.grid.t_end;

  const auto dr = derivative4_vec(curve.r, dt);
  std::vector<Vec3> tv(n);
  for (int k = 0; k < n; ++k) tv[k] = dr[k].normalized();

  const auto dtv = derivative4_vec(tv, dt);
  // find any low-curvature stretch before committing to normals
  int bad_lo = -1, bad_hi = -1;
  for (int k = 0; k < n; ++k) {
    const Vec3 perp = dtv[k] - dtv[k].dot(tv[k]) * tv[k];
    if (perp.norm() < kappa_min) {
      if (bad_lo < 0) bad_lo = k;
      bad_hi = k;
    }
  }
  if (bad_lo >= 0)
    throw DegenerateFrameError(
        "frenet_frame: vanishing curvature on t in [" +
        std::to_string(curve.grid.time(bad_lo)) + ", " +
        std::to_string(curve.grid.time(bad_hi)) + "]");

  std::vector<Vec3> nv(n), bv(n);
  for (int k = 0; k < n; ++k) {
    const Vec3 perp = dtv[k] - dtv[k].dot(tv[k]) * tv[k];
    nv[k] = perp.normalized();
    bv[k] = tv[k].cross(nv[k]);
  }
  return FrenetFrame{curve.grid, std::move(tv), std::move(nv), std::move(bv)};
}

std::pair<std::vector<double>, std::vector<double>> curvature_torsion(
    const FrenetFrame& frame) {
  const double dt = frame.grid.dt();
  const auto dtv = derivative4_vec(frame.t, dt);
  const auto dnv = derivative4_vec(frame.n, dt);
  const int n = static_cast<int>(frame.t.size());
  std::vector<double> kappa(n), tau(n);
  for (int k = 0; k < n; ++k) {
    kappa[k] = dtv[k].dot(frame.n[k]);
    tau[k] = dnv[k].dot(frame.b[k]);
  }
  return {std::move(kappa), std::move(tau)};
}

ControlPulse pulse_from_curve(const SpaceCurve& curve,
                              const std::vector<double>& phi) {
  const auto frame = frenet_frame(curve);
  auto [kappa, tau] = curvature_torsion(frame);
  const int n = static_cast<int>(kappa.size());
  std::vector<double> ph(n, 0.0), delta(n);
  if (!phi.empty()) {
    if (static_cast<int>(phi.size()) != n)
      throw GridError("pulse_from_curve: phi sample count mismatch");
    ph = phi;
    const auto dphi = derivative4(ph, curve.grid.dt());
    for (int k = 0; k < n; ++k) delta[k] = dphi[k] - tau[k];
  } else {
    for (int k = 0; k < n; ++k) delta[k] = -tau[k];
  }
  for (double& w : kappa) w = std::max(w, 0.0);  // clip differencing noise
  return ControlPulse(curve.grid, std::move(kappa), std::move(ph),
                      std::move(delta));
}

AdjointRep adjoint_rz(double phi) {
  AdjointRep r;
  r << std::cos(phi), -std::sin(phi), 0.0,  //
      std::sin(phi), std::cos(phi), 0.0,    //
      0.0, 0.0, 1.0;
  return r;
}

namespace {

AdjointRep frame_matrix(const FrenetFrame& f, int k) {
  AdjointRep m;
  m.row(0) = -f.b[k].transpose();
  m.row(1) = f.n[k].transpose();
  m.row(2) = f.t[k].transpose();
  return m;
}

}  // namespace

AdjointRep implemented_gate(const FrenetFrame& frame, double phi_final) {
  const int last = static_cast<int>(frame.t.size()) - 1;
  return adjoint_rz(phi_final) * frame_matrix(frame, last) *
         frame_matrix(frame, 0).transpose();
}

AdjointRep adjoint_of(const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2)
    throw DimensionError("adjoint_of: expected a 2x2 unitary");
  AdjointRep r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = 0.5 * std::real((u.adjoint() * pauli(i) * u * pauli(j)).trace());
  return r;
}

Matrix su2_from_adjoint(const AdjointRep& r) {
  // axis-angle from the rotation matrix; theta in [0, pi]
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const double theta = std::acos(c);
  Vec3 axis(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  if (axis.norm() > 1e-12) {
    axis.normalize();
  } else if (theta > 1.0) {
    // theta = pi: axis from the symmetric part
    Eigen::Matrix3d s = 0.5 * (r + Eigen::Matrix3d::Identity());
    int imax = 0;
    s.diagonal().maxCoeff(&imax);
    axis = s.col(imax).normalized();
  } else {
    axis = Vec3(0, 0, 1);  // identity rotation
  }
  // adjoint_of(exp(-i theta/2 n.sigma)) reproduces r for this sign choice
  Matrix u = std::cos(0.5 * theta) * identity(2) -
             kI * std::sin(0.5 * theta) *
                 (axis.x() * pauli_x() + axis.y() * pauli_y() +
                  axis.z() * pauli_z());
  if (std::real(u(0, 0)) < 0.0) u = -u;
  return u;
}

double frenet_residual(const FrenetFrame& frame,
                       const std::vector<double>& kappa,
                       const std::vector<double>& tau) {
  const double dt = frame.grid.dt();
  const auto dtv = derivative4_vec(frame.t, dt);
  const auto dnv = derivative4_vec(frame.n, dt);
  const auto dbv = derivative4_vec(frame.b, dt);
  double worst = 0.0;
  const int n = static_cast<int>(frame.t.size());
  for (int k = 0; k < n; ++k) {
    const Vec3 r1 = dtv[k] - kappa[k] * frame.n[k];
    const Vec3 r2 = dnv[k] + kappa[k] * frame.t[k] - tau[k] * frame.b[k];
    const Vec3 r3 = dbv[k] + tau[k] * frame.n[k];
    worst = std::max({worst, r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff(),
                      r3.cwiseAbs().maxCoeff()});
  }
  return worst;
}

}  // namespace scqc
