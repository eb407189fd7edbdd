#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scqc/crosstalk.h"
#include "scqc/curve.h"
#include "scqc/protocols.h"

namespace scqc {

// ----------------------------------------------------------------------
// Derivative-free search
// ----------------------------------------------------------------------

using CostFn = std::function<double(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double cost = 0.0;
  long evals = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  long max_evals = 5000;
  double f_spread_tol = 1e-15;
  double x_spread_tol = 1e-13;
};

// Adaptive Nelder-Mead (reflection/expansion/contraction scaled with the
// dimension). Throws OptimizerError on a non-finite cost value.
OptimResult nelder_mead(const CostFn& cost, const std::vector<double>& x0,
                        const std::vector<double>& step,
                        const NelderMeadOptions& options = {});

// Seeded multistart: restart 0 begins at `initial`, later restarts jitter it
// deterministically from mt19937_64(seed, restart). Results merge in restart
// order, so the outcome is identical whether restarts run serially or in
// parallel. A final polish stage re-runs from the best point with small
// steps. converged <=> best cost < 1e-8.
OptimResult optimize(const CostFn& cost, const std::vector<double>& initial,
                     std::uint64_t seed, long budget, int restarts = 8,
                     double jitter = 1.0, int threads = 1);

// ----------------------------------------------------------------------
// Conditional-phase (ZZ(pi/2) step) pulse synthesis
// ----------------------------------------------------------------------

// Omega2(t) = sum_k c_k sin(k pi t / t_gate): vanishes at both endpoints.
// Negative excursions are legal inside the search and are exported as
// (|Omega|, phi = pi) stretches.
struct PulseAnsatz {
  double t_gate = 1.0;
  std::vector<double> coeffs;

  double omega(double t) const;
  int order() const { return static_cast<int>(coeffs.size()); }
};

struct CostWeights {
  double gate = 1.0;
  double closure = 10.0;
  double area = 0.0;
  double ortho = 10.0;

  void validate() const {
    if (gate < 0 || closure < 0 || area < 0 || ortho < 0)
      throw PreconditionError("CostWeights: weights must be non-negative");
    if (gate == 0 && closure == 0 && area == 0 && ortho == 0)
      throw PreconditionError("CostWeights: at least one weight must be > 0");
  }
};

// w_gate [ (1-F(U+, e^{-i pi/4 Z})) + (1-F(U-, e^{+i pi/4 Z})) ]
//  + w_closure [ gap+^2 + gap-^2 ] + w_area [ |A+|^2 + |A-|^2 ],
// where U+- propagates (Omega/2) X +- (chi/4) Z at gamma = 0.
double cost_zz_half(const PulseAnsatz& ansatz, double chi,
                    const CostWeights& weights, int n_steps = 600);

struct SynthesisReport {
  std::uint64_t seed = 0;
  long budget = 0;
  bool converged = false;
  double final_cost = 0.0;
  std::vector<double> coefficients;
  double t_gate = 0.0;
  // verifier outputs (propagation + geometry re-check, never optimizer state)
  double fidelity_plus = 0.0;
  double fidelity_minus = 0.0;
  double gap_plus = 0.0;
  double gap_minus = 0.0;
  double ortho_norm = 0.0;   // swap-ancilla only
  std::string to_json() const;
};

struct SynthesizedPulse {
  ControlPulse pulse;
  SynthesisReport report;
};

// Closed error curves of constant torsion -+ chi/2 whose conditional phases
// realize the ZZ(pi/2) step. Returns report.converged = false (with
// diagnostics, no throw) when the verifiers fail.
SynthesizedPulse synthesize_zz_half_pulse(double chi, double t_gate, int order,
                                          std::uint64_t seed,
                                          long budget = 5000, int restarts = 8,
                                          const CostWeights& weights = {});

// Re-run of the independent verifiers on an arbitrary candidate pulse
// (delta field must be the effective-detuning-free waveform; the +- chi/2
// block shifts are applied internally).
struct ZzHalfVerification {
  double fidelity_plus, fidelity_minus;
  double gap_plus, gap_minus;
  bool pass(double fid_floor = 1e-6, double gap_ceil = 1e-6) const {
    return fidelity_plus > 1.0 - fid_floor && fidelity_minus > 1.0 - fid_floor &&
           gap_plus < gap_ceil && gap_minus < gap_ceil;
  }
};
ZzHalfVerification verify_zz_half(const ControlPulse& pulse, double chi);

// ----------------------------------------------------------------------
// Swap-step ancilla synthesis (Z2 gate, crosstalk-orthogonal, closed curve)
// ----------------------------------------------------------------------

// Co-rotating-phase family: Omega2 = dtheta/dt with
// theta(t) = 2 pi loops u + sum_m beta_m sin(2 pi m u), u = t / t_gate,
// Phi2 = pi u, effective detuning pi / t_gate. The gate is exactly Z up to a
// phase for any beta; beta shapes the tangent winding so the error curve
// closes and is tangent-orthogonal to the swap curve. beta = 0 is the
// constant-curvature member of the family.
struct WindingAnsatz {
  double t_gate = 1.0;
  int loops = 3;
  std::vector<double> beta;

  double theta(double t) const;
  double omega(double t) const;
};

ControlPulse winding_pulse(const WindingAnsatz& ansatz,
                           int n_steps = kDefaultSteps);

SynthesizedPulse synthesize_swap_ancilla_pulse(const BeamSplitterDrive& swap,
                                               double chi, double t_gate,
                                               int order, std::uint64_t seed,
                                               long budget = 4000,
                                               int restarts = 4, int loops = 3);

struct SwapAncillaVerification {
  double gate_fidelity;  // vs Z2 up to phase
  double ortho_norm;     // Frobenius norm of the tangent-overlap matrix
  double closure_gap;
  bool pass(double tol = 1e-6) const {
    return gate_fidelity > 1.0 - tol && ortho_norm < tol;
  }
};
SwapAncillaVerification verify_swap_ancilla(const BeamSplitterDrive& swap,
                                            const ControlPulse& ancilla);

}  // namespace scqc
