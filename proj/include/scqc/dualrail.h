#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "scqc/pulse.h"

namespace scqc {

// Two bosonic modes (Fock levels 0..n_max each) dispersively coupled to a
// two-level ancilla on its g-f manifold.
struct DualRailParams {
  double chi = 1.0;  // dispersive strength, > 0
  int n_max = 4;     // per-cavity Fock cutoff, >= 2

  DualRailParams(double chi_, int n_max_) : chi(chi_), n_max(n_max_) {
    if (!(chi > 0.0)) throw PreconditionError("DualRailParams: chi must be > 0");
    if (n_max < 2) throw PreconditionError("DualRailParams: n_max must be >= 2");
  }

  int cavity_dim() const { return n_max + 1; }
  int full_dim() const { return cavity_dim() * cavity_dim() * 2; }
};

// Beam-splitter drive samples: coupling g(t), phase varphi(t), mode detuning
// delta(t); fields interpolate linearly like pulse fields.
struct BeamSplitterDrive {
  TimeGrid grid;
  std::vector<double> g;
  std::vector<double> varphi;
  std::vector<double> delta;

  BeamSplitterDrive(TimeGrid grid_, std::vector<double> g_,
                    std::vector<double> varphi_, std::vector<double> delta_);
  static BeamSplitterDrive constant(double t_end, int n_steps, double g,
                                    double varphi = 0.0, double delta = 0.0);

  double g_at(double t) const;
  double varphi_at(double t) const;
  double delta_at(double t) const;
  double g_area() const;  // trapezoidal Int g dt
};

// Quasi-static noise: ancilla dephasing gamma, and an optional replacement
// value for the dispersive strength (crosstalk of uncertain magnitude).
struct NoiseSample {
  double gamma = 0.0;
  std::optional<double> xi;  // dispersive strength used instead of chi
};

// Fixed for the whole artifact and serialized into output headers:
// ordering cavity_a (x) cavity_b (x) ancilla, ancilla basis (|g>, |f>) with
// Z2 = |g><g| - |f><f|, codewords |0>_L = |10>, |1>_L = |01>,
// q4 block order (|00>, |01>, |10>, |11>) (x) (g, f).
struct BasisConvention {
  static std::string header();
};

struct ModeOps {
  Matrix a, b, na, nb, z2;
};

// Truncated ladder operators embedded by the Kronecker ordering above.
ModeOps mode_operators(const DualRailParams& params);

// H = (g/2)(e^{i varphi} a^dag b + h.c.) + delta a^dag a - (chi/2) a^dag a Z2
//     + ancilla drive (Omega2, Phi2, Delta2 on g-f) + (gamma/2) Z2,
// with chi replaced by noise.xi when set. ancilla_pulse may be null.
HamiltonianSampler native_hamiltonian(const DualRailParams& params,
                                      const BeamSplitterDrive& drive,
                                      const ControlPulse* ancilla_pulse,
                                      const NoiseSample& noise);

// 2x2 projections of I1 = a^dag a + b^dag b, X1 = a^dag b + a b^dag,
// Y1 = -i(a^dag b - a b^dag), Z1 = a^dag a - b^dag b onto (|10>, |01>);
// they satisfy the Pauli algebra there.
std::array<Matrix, 4> schwinger_operators(const DualRailParams& params);

// Projection of a full-space Hamiltonian sample onto the single-photon
// subspace (x) ancilla: 4x4 in basis (|10>, |01>) (x) (g, f).
Matrix project_single_photon(const Matrix& h_full, const DualRailParams& params);

// Projection onto span{|00>, |01>, |10>, |11>} (x) ancilla: 8x8.
Matrix project_q4(const Matrix& h_full, const DualRailParams& params);

enum class StateClass { Codespace, LeakageEven };

// Odd joint parity (one photon) -> codespace; even (0 or 2) -> leakage.
// Throws PreconditionError beyond two photons total.
StateClass classify_state(int n_a, int n_b);

// Index helpers for the fixed Kronecker ordering.
int cavity_index(const DualRailParams& params, int n_a, int n_b);
int full_index(const DualRailParams& params, int n_a, int n_b, int ancilla);

}  // namespace scqc
