#include "scqc/optimizer.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "scqc/util.h"

namespace scqc {

// ----------------------------------------------------------------------
// Nelder-Mead
// ----------------------------------------------------------------------

namespace {

double checked_eval(const CostFn& cost, const std::vector<double>& x,
                    long& evals) {
  const double f = cost(x);
  ++evals;
  if (!std::isfinite(f)) {
    std::ostringstream oss;
    oss << "optimizer: non-finite cost at x = (";
    for (std::size_t i = 0; i < x.size(); ++i)
      oss << (i ? ", " : "") << x[i];
    oss << ")";
    throw OptimizerError(oss.str());
  }
  return f;
}

}  // namespace

OptimResult nelder_mead(const CostFn& cost, const std::vector<double>& x0,
                        const std::vector<double>& step,
                        const NelderMeadOptions& options) {
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw OptimizerError("nelder_mead: empty parameter vector");
  if (static_cast<int>(step.size()) != n)
    throw OptimizerError("nelder_mead: step size mismatch");

  // adaptive coefficients (Gao & Han)
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / n;
  const double gamma = 0.75 - 0.5 / n;
  const double delta = 1.0 - 1.0 / n;

  long evals = 0;
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> f(n + 1);
  for (int i = 1; i <= n; ++i) simplex[i][i - 1] += step[i - 1];
  for (int i = 0; i <= n; ++i) f[i] = checked_eval(cost, simplex[i], evals);

  std::vector<int> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return f[a] < f[b]; });
  };

  while (evals < options.max_evals) {
    sort_simplex();
    const int best = order[0], worst = order[n], second = order[n - 1];

    // convergence: collapsed in both value and extent
    double fspread = std::abs(f[worst] - f[best]);
    double xspread = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int d = 0; d < n; ++d)
        xspread = std::max(xspread,
                           std::abs(simplex[i][d] - simplex[best][d]));
    if (fspread <= options.f_spread_tol * (1.0 + std::abs(f[best])) &&
        xspread <= options.x_spread_tol)
      break;

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < n; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= n;

    auto blend = [&](double coef) {
      std::vector<double> x(n);
      for (int d = 0; d < n; ++d)
        x[d] = centroid[d] + coef * (centroid[d] - simplex[worst][d]);
      return x;
    };

    const std::vector<double> xr = blend(alpha);
    const double fr = checked_eval(cost, xr, evals);
    if (fr < f[best]) {
      const std::vector<double> xe = blend(alpha * beta);
      const double fe = checked_eval(cost, xe, evals);
      if (fe < fr) {
        simplex[worst] = xe;
        f[worst] = fe;
      } else {
        simplex[worst] = xr;
        f[worst] = fr;
      }
    } else if (fr < f[second]) {
      simplex[worst] = xr;
      f[worst] = fr;
    } else {
      const bool outside = fr < f[worst];
      const std::vector<double> xc = blend(outside ? alpha * gamma : -gamma);
      const double fc = checked_eval(cost, xc, evals);
      if (fc < std::min(fr, f[worst])) {
        simplex[worst] = xc;
        f[worst] = fc;
      } else {
        // shrink toward the best vertex
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int d = 0; d < n; ++d)
            simplex[i][d] =
                simplex[best][d] + delta * (simplex[i][d] - simplex[best][d]);
          f[i] = checked_eval(cost, simplex[i], evals);
          if (evals >= options.max_evals) break;
        }
      }
    }
  }

  sort_simplex();
  OptimResult result;
  result.x = simplex[order[0]];
  result.cost = f[order[0]];
  result.evals = evals;
  result.converged = result.cost < 1e-8;
  return result;
}

OptimResult optimize(const CostFn& cost, const std::vector<double>& initial,
                     std::uint64_t seed, long budget, int restarts,
                     double jitter, int threads) {
  if (budget < 1) throw OptimizerError("optimize: budget must be >= 1");
  if (restarts < 1) throw OptimizerError("optimize: restarts must be >= 1");
  const int n = static_cast<int>(initial.size());

  std::vector<double> step(n);
  for (int d = 0; d < n; ++d)
    step[d] = std::max(0.25 * std::abs(initial[d]), 0.3);

  NelderMeadOptions options;
  options.max_evals = budget;

  std::vector<OptimResult> results(restarts);
  auto run_restart = [&](int r) {
    std::vector<double> x0 = initial;
    if (r > 0) {
      Rng rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(r));
      for (int d = 0; d < n; ++d) x0[d] += jitter * rng.uniform(-1.0, 1.0);
    }
    results[r] = nelder_mead(cost, x0, step, options);
  };
  parallel_for(restarts, threads, run_restart);

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[r].cost < results[best].cost) best = r;

  // polish from the best point with a tight simplex
  long total_evals = 0;
  for (const auto& r : results) total_evals += r.evals;
  std::vector<double> polish_step(n);
  for (int d = 0; d < n; ++d)
    polish_step[d] = std::max(1e-4 * std::abs(results[best].x[d]), 1e-5);
  NelderMeadOptions polish_options;
  polish_options.max_evals = budget;
  OptimResult polished =
      nelder_mead(cost, results[best].x, polish_step, polish_options);
  if (polished.cost > results[best].cost) polished = results[best];
  polished.evals += total_evals;
  polished.converged = polished.cost < 1e-8;
  return polished;
}

// ----------------------------------------------------------------------
// ZZ(pi/2)-step cost and synthesis
// ----------------------------------------------------------------------

double PulseAnsatz::omega(double t) const {
  double w = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    w += coeffs[k] * std::sin((k + 1) * kPi * t / t_gate);
  return w;
}

namespace {

struct Cplx2 {
  Complex u00, u01, u10, u11;
};

// exp(-i (mx X + my Y + mz Z)) * U, closed form
inline void apply_pauli_exp(Cplx2& u, double mx, double my, double mz) {
  const double m = std::sqrt(mx * mx + my * my + mz * mz);
  const double c = std::cos(m);
  const double snc = (m < 1e-12) ? 1.0 : std::sin(m) / m;
  const Complex a(c, -snc * mz);                  // diag term
  const Complex b(-snc * my, -snc * mx);          // off-diag (0,1)
  const Complex bc(snc * my, -snc * mx);          // off-diag (1,0)
  const Complex n00 = a * u.u00 + b * u.u10;
  const Complex n01 = a * u.u01 + b * u.u11;
  const Complex n10 = bc * u.u00 + std::conj(a) * u.u10;
  const Complex n11 = bc * u.u01 + std::conj(a) * u.u11;
  u = {n00, n01, n10, n11};
}

struct SectorEval {
  double infidelity = 0.0;
  double gap2 = 0.0;
  double area2 = 0.0;
};

// Sine basis evaluated once at the two Gauss nodes of every step, so the
// search loop reduces to a small mat-vec per cost call.
struct ZzCostCache {
  double t_gate;
  int order;
  int n_steps;
  double dt;
  std::vector<double> basis;  // (2 n_steps) x order, row-major

  ZzCostCache(double t_gate_, int order_, int n_steps_)
      : t_gate(t_gate_), order(order_), n_steps(n_steps_),
        dt(t_gate_ / n_steps_) {
    const double node = std::sqrt(3.0) / 6.0;
    basis.resize(static_cast<std::size_t>(2 * n_steps) * order);
    for (int k = 0; k < n_steps; ++k) {
      const double t1 = (k + 0.5 - node) * dt;
      const double t2 = (k + 0.5 + node) * dt;
      for (int j = 0; j < order; ++j) {
        basis[(2 * k) * order + j] = std::sin((j + 1) * kPi * t1 / t_gate);
        basis[(2 * k + 1) * order + j] = std::sin((j + 1) * kPi * t2 / t_gate);
      }
    }
  }

  // half Rabi rate at node index (0 .. 2 n_steps - 1)
  double half_omega(const std::vector<double>& c, int node) const {
    const double* row = &basis[static_cast<std::size_t>(node) * order];
    double w = 0.0;
    for (int j = 0; j < order; ++j) w += c[j] * row[j];
    return 0.5 * w;
  }
};

// Evolve H = (omega(t)/2) X + b Z with the 4th-order two-node scheme while
// accumulating the error-curve closure gap and signed area.
SectorEval eval_sector(const ZzCostCache& cache, const std::vector<double>& c,
                       double b) {
  const double dt = cache.dt;
  Cplx2 u{1.0, 0.0, 0.0, 1.0};

  Vec3 r = Vec3::Zero();
  Vec3 area = Vec3::Zero();
  Vec3 tangent_prev(0.0, 0.0, 1.0);  // U = I at t = 0

  for (int k = 0; k < cache.n_steps; ++k) {
    const double a1 = cache.half_omega(c, 2 * k);
    const double a2 = cache.half_omega(c, 2 * k + 1);
    const double mx = 0.5 * dt * (a1 + a2);
    const double my = -(std::sqrt(3.0) / 6.0) * dt * dt * b * (a2 - a1);
    const double mz = dt * b;
    apply_pauli_exp(u, mx, my, mz);

    const Complex w01 = std::conj(u.u00) * u.u01 - std::conj(u.u10) * u.u11;
    const Vec3 tangent(std::real(w01), -std::imag(w01),
                       std::norm(u.u00) - std::norm(u.u10));
    const Vec3 r_next = r + 0.5 * dt * (tangent_prev + tangent);
    area += 0.5 * r.cross(r_next);
    r = r_next;
    tangent_prev = tangent;
  }

  SectorEval out;
  out.gap2 = r.squaredNorm();
  out.area2 = area.squaredNorm();
  // target e^{-i s pi/4 Z} with s = sign(b): the conditional pair then
  // composes to the parity step
  const double s = (b >= 0.0) ? 1.0 : -1.0;
  const Complex ph = std::exp(Complex(0, s * kPi / 4.0));
  const Complex tr = ph * u.u00 + std::conj(ph) * u.u11;
  out.infidelity = 1.0 - (2.0 + std::norm(tr)) / 6.0;
  return out;
}

double cost_zz_half_cached(const ZzCostCache& cache,
                           const std::vector<double>& c, double chi,
                           const CostWeights& weights) {
  const SectorEval plus = eval_sector(cache, c, 0.25 * chi);
  const SectorEval minus = eval_sector(cache, c, -0.25 * chi);
  return weights.gate * (plus.infidelity + minus.infidelity) +
         weights.closure * (plus.gap2 + minus.gap2) +
         weights.area * (plus.area2 + minus.area2);
}

}  // namespace

double cost_zz_half(const PulseAnsatz& ansatz, double chi,
                    const CostWeights& weights, int n_steps) {
  weights.validate();
  const ZzCostCache cache(ansatz.t_gate, ansatz.order(), n_steps);
  return cost_zz_half_cached(cache, ansatz.coeffs, chi, weights);
}

namespace {

// Export the signed waveform as a valid pulse: omega = |w| with the drive
// phase flipped to pi on negative stretches (signed curvature). The dense
// grid keeps the linear-interpolation error across flip cells below the
// closure tolerance.
constexpr int kSynthesizedPulseSteps = 40000;

ControlPulse ansatz_to_pulse(const PulseAnsatz& ansatz, int n_steps) {
  TimeGrid grid(ansatz.t_gate, n_steps);
  std::vector<double> om(grid.n_samples()), ph(grid.n_samples()),
      de(grid.n_samples(), 0.0);
  for (int k = 0; k < grid.n_samples(); ++k) {
    const double w = ansatz.omega(grid.time(k));
    om[k] = std::abs(w);
    ph[k] = (w < 0.0) ? kPi : 0.0;
  }
  return ControlPulse(grid, std::move(om), std::move(ph), std::move(de));
}

}  // namespace

ZzHalfVerification verify_zz_half(const ControlPulse& pulse, double chi) {
  auto sector_pulse = [&](double shift) {
    std::vector<double> delta = pulse.delta;
    for (double& d : delta) d += shift;
    return ControlPulse(pulse.grid, pulse.omega, pulse.phi, std::move(delta));
  };
  ZzHalfVerification v{};
  const Matrix target_plus = [] {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(Complex(0, -kPi / 4.0));
    m(1, 1) = std::exp(Complex(0, kPi / 4.0));
    return m;
  }();
  const ControlPulse plus = sector_pulse(0.5 * chi);
  const ControlPulse minus = sector_pulse(-0.5 * chi);
  const Unitary u_plus = propagate(pulse_hamiltonian(plus, 0.0), pulse.grid);
  const Unitary u_minus = propagate(pulse_hamiltonian(minus, 0.0), pulse.grid);
  v.fidelity_plus = average_gate_fidelity(u_plus.matrix(), target_plus);
  v.fidelity_minus =
      average_gate_fidelity(u_minus.matrix(), Matrix(target_plus.adjoint()));
  v.gap_plus = first_order_error(plus);
  v.gap_minus = first_order_error(minus);
  return v;
}

SynthesizedPulse synthesize_zz_half_pulse(double chi, double t_gate, int order,
                                          std::uint64_t seed, long budget,
                                          int restarts,
                                          const CostWeights& weights) {
  if (!(chi > 0.0))
    throw PreconditionError("synthesize_zz_half_pulse: chi must be > 0");
  if (order < 1)
    throw PreconditionError("synthesize_zz_half_pulse: order must be >= 1");

  weights.validate();
  auto make_cost = [&](int n_steps) {
    auto cache = std::make_shared<ZzCostCache>(t_gate, order, n_steps);
    return [cache, chi, weights](const std::vector<double>& c) {
      return cost_zz_half_cached(*cache, c, chi, weights);
    };
  };

  // search on a coarse grid, then re-polish against the fine one
  std::vector<double> initial(order, 0.0);
  const double scale = 2.0 * kPi / t_gate;
  for (int k = 0; k < order && k < 4; ++k) initial[k] = scale / (k + 1);
  OptimResult coarse =
      optimize(make_cost(600), initial, seed, budget, restarts, 2.0 * scale);

  const auto fine_cost = make_cost(kDefaultSteps);
  OptimResult fine;
  fine.x = coarse.x;
  fine.cost = fine_cost(coarse.x);
  for (double step_scale : {3e-2, 1e-3, 1e-5}) {
    NelderMeadOptions polish_options;
    polish_options.max_evals = budget;
    const std::vector<double> step(order, step_scale * scale);
    OptimResult round = nelder_mead(fine_cost, fine.x, step, polish_options);
    if (round.cost < fine.cost) fine = round;
  }

  PulseAnsatz ansatz{t_gate, fine.x};
  ControlPulse pulse = ansatz_to_pulse(ansatz, kSynthesizedPulseSteps);
  const ZzHalfVerification check = verify_zz_half(pulse, chi);

  SynthesisReport report;
  report.seed = seed;
  report.budget = budget;
  report.final_cost = fine.cost;
  report.coefficients = fine.x;
  report.t_gate = t_gate;
  report.fidelity_plus = check.fidelity_plus;
  report.fidelity_minus = check.fidelity_minus;
  report.gap_plus = check.gap_plus;
  report.gap_minus = check.gap_minus;
  report.converged = fine.cost < 1e-8 && check.pass();
  return SynthesizedPulse{std::move(pulse), std::move(report)};
}

// ----------------------------------------------------------------------
// Swap-step ancilla
// ----------------------------------------------------------------------

double WindingAnsatz::theta(double t) const {
  const double u = t / t_gate;
  double th = 2.0 * kPi * loops * u;
  for (std::size_t m = 0; m < beta.size(); ++m)
    th += beta[m] * std::sin(2.0 * kPi * (m + 1) * u);
  return th;
}

double WindingAnsatz::omega(double t) const {
  const double u = t / t_gate;
  double w = 2.0 * kPi * loops;
  for (std::size_t m = 0; m < beta.size(); ++m)
    w += beta[m] * 2.0 * kPi * (m + 1) * std::cos(2.0 * kPi * (m + 1) * u);
  return w / t_gate;
}

ControlPulse winding_pulse(const WindingAnsatz& ansatz, int n_steps) {
  TimeGrid grid(ansatz.t_gate, n_steps);
  std::vector<double> om(grid.n_samples()), ph(grid.n_samples()),
      de(grid.n_samples(), kPi / ansatz.t_gate);
  for (int k = 0; k < grid.n_samples(); ++k) {
    const double t = grid.time(k);
    om[k] = ansatz.omega(t);
    ph[k] = kPi * t / ansatz.t_gate;
    if (om[k] < 0.0)
      throw PreconditionError("winding_pulse: negative Rabi rate; reduce beta");
  }
  return ControlPulse(grid, std::move(om), std::move(ph), std::move(de));
}

SwapAncillaVerification verify_swap_ancilla(const BeamSplitterDrive& swap,
                                            const ControlPulse& ancilla) {
  SwapAncillaVerification v{};
  const Unitary u =
      propagate(pulse_hamiltonian(ancilla, 0.0), ancilla.grid);
  v.gate_fidelity = average_gate_fidelity(u.matrix(), pauli_z());
  ControlPulse swap_pulse(swap.grid, swap.g,
                          std::vector<double>(swap.grid.n_samples(), 0.0),
                          std::vector<double>(swap.grid.n_samples(), 0.0));
  const PulsePair pair = PulsePair::normalized(swap_pulse, ancilla);
  v.ortho_norm = tangent_overlap_matrix(pair).norm();
  v.closure_gap = closure_gap(error_curve(ancilla));
  return v;
}

SynthesizedPulse synthesize_swap_ancilla_pulse(const BeamSplitterDrive& swap,
                                               double chi, double t_gate,
                                               int order, std::uint64_t seed,
                                               long budget, int restarts,
                                               int loops) {
  if (std::abs(swap.grid.t_end - t_gate) > 1e-9 * (1.0 + t_gate))
    throw PreconditionError(
        "synthesize_swap_ancilla_pulse: t_gate must match the swap window");
  if (order < 1 || loops < 1)
    throw PreconditionError(
        "synthesize_swap_ancilla_pulse: order and loops must be >= 1");
  (void)chi;  // the family cancels the chi/2 shift by construction

  // Swap-curve tangents on a verification-grade grid: the overlap integrands
  // oscillate at the winding rate, and a 2e3-point trapezoid alone biases M
  // by ~1e-5, which the independent verifier (rightly) rejects.
  const int n = kSynthesizedPulseSteps / 2;
  const double t_total = swap.grid.t_end;
  TimeGrid fine(t_total, n);
  std::vector<double> g_fine(fine.n_samples()), zero(fine.n_samples(), 0.0);
  for (int k = 0; k < fine.n_samples(); ++k)
    g_fine[k] = swap.g_at(fine.time(k));
  ControlPulse swap_pulse(fine, std::move(g_fine), zero, zero);
  const auto t1 = error_curve_tangents(swap_pulse);
  const double dt = fine.dt();

  // Cached bases per node. The consumer of the exported pulse integrates the
  // linearly interpolated Rabi samples, so the winding phase it actually
  // accumulates is the cumulative trapezoid of the sampled rate; the cost
  // uses exactly that phase (it is still linear in beta, so one basis pass
  // suffices). The full-period trapezoid of every cosine harmonic vanishes
  // identically, so the end-point phase - and with it the exact Z gate - is
  // untouched by the modulations.
  const int n_samples = fine.n_samples();
  std::vector<double> rate_basis(static_cast<std::size_t>(n_samples) * order);
  std::vector<double> theta_basis(static_cast<std::size_t>(n_samples) * order,
                                  0.0);
  for (int k = 0; k < n_samples; ++k) {
    const double u = fine.time(k) / t_total;
    for (int m = 0; m < order; ++m)
      rate_basis[static_cast<std::size_t>(k) * order + m] =
          2.0 * kPi * (m + 1) / t_total * std::cos(2.0 * kPi * (m + 1) * u);
  }
  for (int k = 1; k < n_samples; ++k)
    for (int m = 0; m < order; ++m)
      theta_basis[static_cast<std::size_t>(k) * order + m] =
          theta_basis[static_cast<std::size_t>(k - 1) * order + m] +
          0.5 * dt *
              (rate_basis[static_cast<std::size_t>(k - 1) * order + m] +
               rate_basis[static_cast<std::size_t>(k) * order + m]);

  auto cost = [&, n_samples, dt, t_total](const std::vector<double>& beta) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    Vec3 closure = Vec3::Zero();
    double neg_penalty = 0.0;
    const double base_rate = 2.0 * kPi * loops / t_total;
    for (int k = 0; k < n_samples; ++k) {
      const double* trow = &theta_basis[static_cast<std::size_t>(k) * order];
      const double* rrow = &rate_basis[static_cast<std::size_t>(k) * order];
      double th = base_rate * fine.time(k);
      double rate = base_rate;
      for (int j = 0; j < order; ++j) {
        th += beta[j] * trow[j];
        rate += beta[j] * rrow[j];
      }
      const Vec3 t2(0.0, std::sin(th), std::cos(th));
      const double w =
          ((k == 0 || k == n_samples - 1) ? 0.5 : 1.0) * dt / t_total;
      m += w * t1[k] * t2.transpose();
      closure += w * t2;
      if (rate < 0.0) neg_penalty += rate * rate;
    }
    return m.squaredNorm() + closure.squaredNorm() + 100.0 * neg_penalty;
  };

  OptimResult best = optimize(cost, std::vector<double>(order, 0.0), seed,
                              budget, restarts, 0.5);

  WindingAnsatz ansatz{t_total, loops, best.x};
  ControlPulse pulse = winding_pulse(ansatz, kSynthesizedPulseSteps / 2);
  const SwapAncillaVerification check = verify_swap_ancilla(swap, pulse);

  SynthesisReport report;
  report.seed = seed;
  report.budget = budget;
  report.final_cost = best.cost;
  report.coefficients = best.x;
  report.t_gate = t_total;
  report.fidelity_plus = check.gate_fidelity;
  report.fidelity_minus = check.gate_fidelity;
  report.gap_plus = check.closure_gap;
  report.gap_minus = check.closure_gap;
  report.ortho_norm = check.ortho_norm;
  report.converged = best.cost < 1e-8 && check.pass();
  return SynthesizedPulse{std::move(pulse), std::move(report)};
}

std::string SynthesisReport::to_json() const {
  std::ostringstream oss;
  oss << "{\n";
  oss << "  \"seed\": " << seed << ",\n";
  oss << "  \"budget\": " << budget << ",\n";
  oss << "  \"converged\": " << (converged ? "true" : "false") << ",\n";
  oss << "  \"final_cost\": " << format_double(final_cost) << ",\n";
  oss << "  \"t_gate\": " << format_double(t_gate) << ",\n";
  oss << "  \"coefficients\": [";
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    oss << (i ? ", " : "") << format_double(coefficients[i]);
  oss << "],\n";
  oss << "  \"fidelity_plus\": " << format_double(fidelity_plus) << ",\n";
  oss << "  \"fidelity_minus\": " << format_double(fidelity_minus) << ",\n";
  oss << "  \"gap_plus\": " << format_double(gap_plus) << ",\n";
  oss << "  \"gap_minus\": " << format_double(gap_minus) << ",\n";
  oss << "  \"ortho_norm\": " << format_double(ortho_norm) << "\n";
  oss << "}\n";
  return oss.str();
}

}  // namespace scqc
