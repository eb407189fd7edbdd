#pragma once

#include "scqc/curve.h"
#include "scqc/sweep.h"
#include "scqc/unitary.h"

namespace scqc {

// M_ij = Int_0^1 T1^i(t) T2^j(t) dt for the unit error-curve tangents of two
// time-normalized pulses. ||M|| = 0 certifies first-order ZZ-crosstalk
// cancellation. Components are expressed in the frame-aligned basis where the
// initial tangent points along x (a fixed axis relabel of the curve basis, in
// which the tangent starts along z); a square pulse of rate kappa then has
// tangent (cos kappa t, sin kappa t, 0).
struct CrosstalkMatrix {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  double norm() const { return m.norm(); }  // Frobenius
};

// Two pulses, each time-normalized to T_g = 1 with rate fields rescaled by
// their own gate time, resampled onto a common grid.
struct PulsePair {
  ControlPulse pulse1;
  ControlPulse pulse2;

  // Normalizes both inputs; the common grid is the finer of the two.
  static PulsePair normalized(const ControlPulse& a, const ControlPulse& b);
};

// Constant Omega_i = kappa_i, Phi = 0, Delta = 0 over [0, 1].
PulsePair square_pulse_pair(double kappa1, double kappa2,
                            int n_steps = kDefaultSteps);

CrosstalkMatrix tangent_overlap_matrix(const PulsePair& pair);

// H1 x I + I x H2 + xi Z x Z on the pair's common grid.
HamiltonianSampler two_qubit_crosstalk_hamiltonian(const PulsePair& pair,
                                                   double xi);

// Per-xi infidelity 1 - F(U(xi), target) and the fitted log-log slope.
SweepTable crosstalk_sweep(const PulsePair& pair, const Unitary& target,
                           const std::vector<double>& xi_grid, int threads = 1);

}  // namespace scqc
