#pragma once

#include <utility>
#include <vector>

#include "scqc/curve.h"

namespace scqc {

// Orthonormal right-handed frame samples: B = T x N exactly, pairwise
// orthogonality at roundoff (N is Gram-Schmidt projected against T).
struct FrenetFrame {
  TimeGrid grid;
  std::vector<Vec3> t, n, b;
};

using AdjointRep = Eigen::Matrix3d;

// Frame from an arc-length curve. Throws DegenerateFrameError naming the
// offending time interval when the curvature drops below
// kappa_min = 1e-6 / t_end.
FrenetFrame frenet_frame(const SpaceCurve& curve);

// kappa = T' . N (non-negative), tau = N' . B, finite differences.
std::pair<std::vector<double>, std::vector<double>> curvature_torsion(
    const FrenetFrame& frame);

// Omega = kappa, Delta = dPhi/dt - tau for the supplied phase gauge
// (phi empty means Phi == 0, so Delta = -tau).
ControlPulse pulse_from_curve(const SpaceCurve& curve,
                              const std::vector<double>& phi = {});

// R_Z(phi_final) R_F(T) R_F(0)^T with R_F rows (-B, N, T): the rotation the
// noiseless evolution implements, read from the frame alone.
AdjointRep implemented_gate(const FrenetFrame& frame, double phi_final);

// R_ij = (1/2) Tr(U^dag sigma_i U sigma_j) for a 2x2 unitary.
AdjointRep adjoint_of(const Matrix& u);

// Inverse of adjoint_of up to the two-fold sign ambiguity, fixed by
// Re(U(0,0)) >= 0.
Matrix su2_from_adjoint(const AdjointRep& r);

// Rotation about z by angle phi (acting on Bloch vectors).
AdjointRep adjoint_rz(double phi);

// Max residual of the frame equations T' = kappa N, N' = -kappa T + tau B,
// B' = -tau N over all samples.
double frenet_residual(const FrenetFrame& frame,
                       const std::vector<double>& kappa,
                       const std::vector<double>& tau);

}  // namespace scqc
