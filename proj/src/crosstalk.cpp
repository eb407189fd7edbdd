#include "scqc/crosstalk.h"

#include <algorithm>
#include <cmath>

#include "scqc/util.h"

namespace scqc {

PulsePair PulsePair::normalized(const ControlPulse& a, const ControlPulse& b) {
  const int n = std::max(a.grid.n_steps, b.grid.n_steps);
  return PulsePair{a.time_normalized(n), b.time_normalized(n)};
}

PulsePair square_pulse_pair(double kappa1, double kappa2, int n_steps) {
  if (kappa1 == 0.0 || kappa2 == 0.0)
    throw PreconditionError("square_pulse_pair: zero curvature");
  return PulsePair{ControlPulse::constant(1.0, n_steps, kappa1),
                   ControlPulse::constant(1.0, n_steps, kappa2)};
}

namespace {

// Curve-basis tangent (starts along z) -> crosstalk basis (starts along x).
Vec3 to_crosstalk_basis(const Vec3& t) { return Vec3(t.z(), t.y(), t.x()); }

}  // namespace

CrosstalkMatrix tangent_overlap_matrix(const PulsePair& pair) {
  if (!pair.pulse1.grid.same_as(pair.pulse2.grid))
    throw GridError("tangent_overlap_matrix: mismatched grids");
  const auto t1 = error_curve_tangents(pair.pulse1);
  const auto t2 = error_curve_tangents(pair.pulse2);
  const int n = static_cast<int>(t1.size());
  const double dt = pair.pulse1.grid.dt();
  CrosstalkMatrix out;
  for (int k = 0; k < n; ++k) {
    const double w = (k == 0 || k == n - 1) ? 0.5 * dt : dt;
    out.m += w * to_crosstalk_basis(t1[k]) *
             to_crosstalk_basis(t2[k]).transpose();
  }
  return out;
}

HamiltonianSampler two_qubit_crosstalk_hamiltonian(const PulsePair& pair,
                                                   double xi) {
  if (!pair.pulse1.grid.same_as(pair.pulse2.grid))
    throw GridError("two_qubit_crosstalk_hamiltonian: mismatched grids");
  const auto h1 = pulse_hamiltonian(pair.pulse1, 0.0);
  const auto h2 = pulse_hamiltonian(pair.pulse2, 0.0);
  const Matrix zz = kron(pauli_z(), pauli_z());
  return HamiltonianSampler{4, [h1, h2, zz, xi](double t) -> Matrix {
                              return kron(h1.at(t), identity(2)) +
                                     kron(identity(2), h2.at(t)) + xi * zz;
                            }};
}

SweepTable crosstalk_sweep(const PulsePair& pair, const Unitary& target,
                           const std::vector<double>& xi_grid, int threads) {
  if (static_cast<int>(xi_grid.size()) < 4)
    throw FitError("crosstalk_sweep: need at least 4 grid points");
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    if (!(xi_grid[i] > 0.0))
      throw FitError("crosstalk_sweep: grid must be positive");
    if (i > 0 && !(xi_grid[i] > xi_grid[i - 1]))
      throw FitError("crosstalk_sweep: grid must be ascending");
  }
  if (xi_grid.back() / xi_grid.front() < 100.0 * (1.0 - 1e-9))
    throw FitError("crosstalk_sweep: grid must span at least 2 decades");
  if (target.dim() != 4)
    throw DimensionError("crosstalk_sweep: target must be 4x4");
  std::vector<double> infid(xi_grid.size());
  parallel_for(static_cast<int>(xi_grid.size()), threads, [&](int i) {
    const auto h = two_qubit_crosstalk_hamiltonian(pair, xi_grid[i]);
    const Unitary u = propagate(h, pair.pulse1.grid);
    infid[i] = 1.0 - average_gate_fidelity(u, target);
  });
  return fit_sweep("xi", xi_grid, std::move(infid));
}

}  // namespace scqc
