#pragma once

#include <string>
#include <vector>

#include "scqc/grid.h"
#include "scqc/propagate.h"

namespace scqc {

// Sampled control fields on a uniform grid: Rabi rate omega(t) >= 0, phase
// phi(t), detuning delta(t). Fields between samples are linearly interpolated.
struct ControlPulse {
  TimeGrid grid;
  std::vector<double> omega;
  std::vector<double> phi;
  std::vector<double> delta;

  ControlPulse(TimeGrid g, std::vector<double> om, std::vector<double> ph,
               std::vector<double> de);

  static ControlPulse constant(double t_gate, int n_steps, double omega,
                               double phi = 0.0, double delta = 0.0);

  double omega_at(double t) const;
  double phi_at(double t) const;
  double delta_at(double t) const;

  // Same waveform on [0, 1] with rate-like fields scaled by t_end
  // (omega -> omega * T, delta -> delta * T, phi unchanged).
  ControlPulse time_normalized(int n_steps) const;
};

// H(t) = (omega/2)(cos(phi) X + sin(phi) Y) + ((delta + gamma)/2) Z with the
// quasi-static dephasing offset gamma.
HamiltonianSampler pulse_hamiltonian(const ControlPulse& pulse, double gamma);

// CSV format: optional '#' comment lines, then a "t,omega,phi,delta" header,
// then one row per sample. Parse errors carry the offending line number.
ControlPulse read_pulse_csv(const std::string& path);
void write_pulse_csv(const std::string& path, const ControlPulse& pulse,
                     const std::vector<std::string>& header_comments = {});

}  // namespace scqc
