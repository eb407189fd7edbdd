// Acceptance suite: every release criterion with its tolerance pinned in
// code, one pass/fail line per criterion. Returns nonzero when any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "scqc/crosstalk.h"
#include "scqc/frenet.h"
#include "scqc/optimizer.h"
#include "scqc/protocols.h"
#include "scqc/util.h"

using namespace scqc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  std::string name;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ----------------------------------------------------------------------
// shared fixtures
// ----------------------------------------------------------------------

constexpr double kChi = 1.0;
constexpr double kZzGateTime = 5.0 * kPi / kChi;
constexpr double kSwapWindow = 0.5 * kPi / kChi;
constexpr std::uint64_t kSeed = 42;

const SynthesizedPulse& zz_half_design() {
  static const SynthesizedPulse design =
      synthesize_zz_half_pulse(kChi, kZzGateTime, 6, kSeed);
  return design;
}

const BeamSplitterDrive& swap_drive() {
  static const BeamSplitterDrive drive = gaussian_swap_drive(kSwapWindow, 0.2);
  return drive;
}

const SynthesizedPulse& swap_ancilla_design() {
  static const SynthesizedPulse design = synthesize_swap_ancilla_pulse(
      swap_drive(), kChi, kSwapWindow, 4, kSeed);
  return design;
}

Matrix photon_sector(const Matrix& u, const DualRailParams& p, int n) {
  std::vector<int> idx;
  for (int na = 0; na <= n; ++na) {
    const int nb = n - na;
    if (na > p.n_max || nb > p.n_max) continue;
    idx.push_back(full_index(p, na, nb, 0));
    idx.push_back(full_index(p, na, nb, 1));
  }
  Matrix out(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = u(idx[r], idx[c]);
  return out;
}

// ----------------------------------------------------------------------
// criteria
// ----------------------------------------------------------------------

Outcome crosstalk_scaling() {
  const auto grid = log_grid(1e-3, 1e-1, 10);
  const Unitary xx(kron(pauli_x(), pauli_x()));
  const auto robust =
      crosstalk_sweep(square_pulse_pair(kPi, 3.0 * kPi), xx, grid);
  const auto baseline =
      crosstalk_sweep(square_pulse_pair(3.0 * kPi, 3.0 * kPi), xx, grid);
  Outcome out;
  out.pass = std::abs(robust.slope - 4.0) <= 0.2 &&
             std::abs(baseline.slope - 2.0) <= 0.1;
  out.detail = "dcg slope " + fmt(robust.slope) + " (4.0 +- 0.2), baseline " +
               fmt(baseline.slope) + " (2.0 +- 0.1)";
  return out;
}

Outcome single_shot_parity() {
  const DualRailParams p4(kChi, 4);
  const DualRailParams p6(kChi, 6);
  const Unitary u4 = single_shot_joint_parity(p4);
  const Unitary u6 = single_shot_joint_parity(p6);

  Matrix target = Matrix::Zero(p4.full_dim(), p4.full_dim());
  for (int na = 0; na <= p4.n_max; ++na)
    for (int nb = 0; nb <= p4.n_max; ++nb) {
      target(full_index(p4, na, nb, 0), full_index(p4, na, nb, 0)) = 1.0;
      target(full_index(p4, na, nb, 1), full_index(p4, na, nb, 1)) =
          std::exp(Complex(0, kPi * (na + nb)));
    }

  double worst_sector = 0.0, worst_trunc = 0.0;
  for (int n = 0; n <= 2; ++n) {
    const Matrix b4 = photon_sector(u4.matrix(), p4, n);
    const Matrix bt = photon_sector(target, p4, n);
    const Complex phase = relative_phase(b4, bt);
    worst_sector = std::max(worst_sector, max_abs(Matrix(b4 - phase * bt)));
    const Matrix b6 = photon_sector(u6.matrix(), p6, n);
    worst_trunc = std::max(worst_trunc, max_abs(Matrix(b4 - b6)));
  }
  Outcome out;
  out.pass = worst_sector < 1e-6 && worst_trunc < 1e-8;
  out.detail = "sector residual " + fmt(worst_sector) +
               " (< 1e-6), truncation drift " + fmt(worst_trunc) + " (< 1e-8)";
  return out;
}

Outcome three_step_algebra() {
  const Unitary composed = three_step_joint_parity(
      Unitary(ideal_zz_half_target()), Unitary(ideal_swap_target()),
      Unitary(ideal_zz_half_target()));
  const double compose_err =
      max_abs(Matrix(composed.matrix() - ideal_joint_parity_target()));

  double identity_err = 0.0;
  const Matrix x1 = kron(pauli_x(), identity(2));
  for (double theta : {0.37, kPi / 2.0, 2.2}) {
    identity_err = std::max(
        identity_err,
        max_abs(Matrix(zz_theta(theta) * zz_theta(-theta) - identity(4))));
    identity_err = std::max(
        identity_err,
        max_abs(Matrix(x1 * zz_theta(theta) * x1 - zz_theta(-theta))));
  }
  Outcome out;
  out.pass = compose_err < 1e-13 && identity_err < 1e-12;
  out.detail = "composition residual " + fmt(compose_err) +
               " (< 1e-13), identity residual " + fmt(identity_err) +
               " (< 1e-12)";
  return out;
}

Outcome logical_zz_checks() {
  const Unitary u_jp(ideal_joint_parity_target());
  double worst_gate = 0.0;
  for (double theta : {0.0, kPi / 3.0, kPi / 2.0}) {
    const Matrix gate = logical_zz(theta, u_jp);
    Matrix expected = Matrix::Zero(4, 4);
    const Complex pre = std::exp(Complex(0, -0.5 * theta));
    expected(0, 0) = -pre;
    expected(1, 1) = pre * std::exp(Complex(0, theta));
    expected(2, 2) = pre * std::exp(Complex(0, theta));
    expected(3, 3) = -pre;
    worst_gate = std::max(worst_gate, max_abs(Matrix(gate - expected)));
  }

  const auto analysis = logical_zz_analysis(kPi / 2.0, u_jp);
  Vector expected_mid = Vector::Zero(8);
  const double a = 0.5 / std::sqrt(2.0);
  expected_mid(0) = Complex(0, a);
  expected_mid(1) = Complex(0, a);
  expected_mid(2) = a;
  expected_mid(3) = -a;
  expected_mid(4) = a;
  expected_mid(5) = -a;
  expected_mid(6) = Complex(0, -a);
  expected_mid(7) = Complex(0, -a);
  const double mid_err =
      (analysis.intermediate_state - expected_mid).cwiseAbs().maxCoeff();

  const Matrix gate = logical_zz(kPi / 2.0, u_jp);
  const double c = concurrence(Vector(gate * Vector::Constant(4, 0.5)));

  Outcome out;
  out.pass = worst_gate < 1e-8 && mid_err < 1e-8 && std::abs(c - 1.0) < 1e-6;
  out.detail = "gate residual " + fmt(worst_gate) +
               " (< 1e-8), intermediate-state residual " + fmt(mid_err) +
               " (< 1e-8), concurrence " + fmt(c) + " (1 +- 1e-6)";
  return out;
}

Outcome dephasing_robustness() {
  const auto& design = zz_half_design();
  if (!design.report.converged)
    return {false, "pulse synthesis did not converge"};

  const auto grid = log_grid(1e-3 * kChi, 1e-1 * kChi, 10);
  auto robust_step = [&](double g, double) {
    return zz_half_step(design.pulse, kChi, g);
  };
  const auto naive_pulse = naive_zz_half_pulse(kChi);
  auto naive_step = [&](double g, double) {
    return zz_half_step(naive_pulse, kChi, g);
  };
  const double robust_slope =
      noise_sweep_protocol(robust_step, robust_step(0, 0), grid, "gamma").slope;
  const double naive_slope =
      noise_sweep_protocol(naive_step, naive_step(0, 0), grid, "gamma").slope;

  // erasure-check misclassification at gamma = 0.05 chi with the dispersive
  // interaction at its nominal strength during the swap
  const double gamma = 0.05 * kChi;
  const ThreeStepPulses robust{zz_half_design().pulse, swap_drive(),
                               swap_ancilla_design().pulse};
  const ThreeStepPulses naive = naive_three_step_pulses(kChi, kSwapWindow);
  const double robust_worst =
      erasure_check_stats(three_step_protocol(robust, kChi, gamma), q4_inputs())
          .worst_case();
  const double naive_worst =
      erasure_check_stats(three_step_protocol(naive, kChi, gamma), q4_inputs())
          .worst_case();
  const DualRailParams params(kChi, 4);
  const double sshot_worst =
      erasure_check_stats(single_shot_joint_parity(params, gamma),
                          full_space_inputs(params))
          .worst_case();

  const double ratio_naive = naive_worst / robust_worst;
  const double ratio_sshot = sshot_worst / robust_worst;

  Outcome out;
  out.pass = robust_slope >= 3.7 && naive_slope <= 2.3 && ratio_naive >= 10.0 &&
             ratio_sshot >= 10.0;
  out.detail = "step slopes " + fmt(robust_slope) + " (>= 3.7) vs " +
               fmt(naive_slope) + " (<= 2.3); worst-case misclassification " +
               fmt(robust_worst) + " vs naive " + fmt(naive_worst) + " (" +
               fmt(ratio_naive) + "x) and single-shot " + fmt(sshot_worst) +
               " (" + fmt(ratio_sshot) + "x), floor 10x";
  return out;
}

Outcome geometry_suite() {
  double worst_orth = 0.0, worst_gate = 0.0, worst_round = 0.0,
         worst_gap_eq = 0.0;
  bool involution_exact = true;

  for (int i = 0; i < 50; ++i) {
    const auto pulse = oracles::random_smooth_pulse(1000 + i);
    const auto curve = error_curve(pulse);
    const auto frame = frenet_frame(curve);

    for (std::size_t k = 0; k < frame.t.size(); k += 25) {
      worst_orth = std::max(worst_orth, std::abs(frame.t[k].dot(frame.n[k])));
      worst_orth = std::max(worst_orth, std::abs(frame.t[k].norm() - 1.0));
      worst_orth = std::max(worst_orth, std::abs(frame.n[k].norm() - 1.0));
      worst_orth = std::max(
          worst_orth, (frame.b[k] - frame.t[k].cross(frame.n[k])).norm());
    }

    const AdjointRep geometric = implemented_gate(frame, 0.0);
    const AdjointRep dynamic = adjoint_of(
        propagate(pulse_hamiltonian(pulse, 0.0), pulse.grid).matrix());
    worst_gate =
        std::max(worst_gate, (geometric - dynamic).cwiseAbs().maxCoeff());

    const auto back = pulse_from_curve(curve);
    for (int k = 100; k + 100 <= pulse.grid.n_steps; k += 50) {
      worst_round = std::max(
          worst_round, std::abs(back.omega[k] - pulse.omega[k]) /
                           std::max(1.0, std::abs(pulse.omega[k])));
      worst_round = std::max(
          worst_round, std::abs(back.delta[k] - pulse.delta[k]) /
                           std::max(1.0, std::abs(pulse.delta[k])));
    }

    worst_gap_eq = std::max(worst_gap_eq, std::abs(first_order_error(pulse) -
                                                   closure_gap(curve)));

    const auto twice = point_reflection(point_reflection(curve));
    for (std::size_t k = 0; k < curve.r.size(); k += 101)
      involution_exact =
          involution_exact && (twice.r[k] - curve.r[k]).norm() == 0.0;
  }

  // reflection conjugates the gate: the synthesized conditional-phase pulse
  // implements Z(pi/2); its reflected curve implements Z(-pi/2)
  const auto& design = zz_half_design();
  std::vector<double> dp(design.pulse.delta), dm(design.pulse.delta);
  for (auto& d : dp) d += 0.5 * kChi;
  for (auto& d : dm) d -= 0.5 * kChi;
  const Matrix up = propagate(pulse_hamiltonian(ControlPulse(design.pulse.grid,
                                                             design.pulse.omega,
                                                             design.pulse.phi,
                                                             dp),
                                                0.0),
                              design.pulse.grid)
                        .matrix();
  const Matrix um = propagate(pulse_hamiltonian(ControlPulse(design.pulse.grid,
                                                             design.pulse.omega,
                                                             design.pulse.phi,
                                                             dm),
                                                0.0),
                              design.pulse.grid)
                        .matrix();
  const bool reflect_dynamic =
      equal_up_to_global_phase(um, Matrix(pauli_x() * up * pauli_x()), 1e-6);

  Outcome out;
  out.pass = worst_orth < 1e-8 && worst_gate < 1e-6 && worst_round < 1e-3 &&
             worst_gap_eq < 1e-8 && involution_exact && reflect_dynamic;
  out.detail = "orthonormality " + fmt(worst_orth) + " (< 1e-8), gate vs adjoint " +
               fmt(worst_gate) + " (< 1e-6), round trip " + fmt(worst_round) +
               " (< 1e-3), gap equality " + fmt(worst_gap_eq) +
               " (< 1e-8), involution " +
               (involution_exact ? "exact" : "BROKEN") + ", reflected gate " +
               (reflect_dynamic ? "conjugated" : "WRONG");
  return out;
}

Outcome projection_equivalence() {
  const DualRailParams params(1.7, 4);
  Rng rng(2024);
  double worst_single = 0.0, worst_q4 = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const double g = rng.uniform(0.0, 2.0);
    const double phi = rng.uniform(-kPi, kPi);
    const double delta = rng.uniform(-1.0, 1.0);
    const double om2 = rng.uniform(0.0, 2.0);
    const double phi2 = rng.uniform(-kPi, kPi);
    const double d2 = rng.uniform(-1.0, 1.0);
    const double gamma = rng.uniform(-0.3, 0.3);

    TimeGrid grid(1.0, 100);
    const int n = grid.n_samples();
    const BeamSplitterDrive drive(grid, std::vector<double>(n, g),
                                  std::vector<double>(n, phi),
                                  std::vector<double>(n, delta));
    const ControlPulse ancilla(grid, std::vector<double>(n, om2),
                               std::vector<double>(n, phi2),
                               std::vector<double>(n, d2));
    const auto h =
        native_hamiltonian(params, drive, &ancilla, NoiseSample{gamma, {}});
    worst_single = std::max(
        worst_single,
        max_abs(Matrix(project_single_photon(h.at(0.5), params) -
                       oracles::projected_single_photon_oracle(
                           params.chi, g, phi, delta, om2, phi2, d2, gamma))));

    const ControlPulse ancilla_q4(grid, std::vector<double>(n, om2),
                                  std::vector<double>(n, 0.0),
                                  std::vector<double>(n, 0.5 * params.chi));
    const auto h_q4 = native_hamiltonian(params, BeamSplitterDrive::constant(1.0, 100, 0.0),
                                         &ancilla_q4, NoiseSample{gamma, {}});
    worst_q4 = std::max(
        worst_q4, max_abs(Matrix(project_q4(h_q4.at(0.5), params) -
                                 oracles::projected_q4_oracle(
                                     params.chi, om2, 0.0, 0.5 * params.chi,
                                     gamma))));
  }

  // full-space vs projected propagation on one-photon states
  const DualRailParams small(1.0, 3);
  TimeGrid grid(2.0, 1000);
  const int n = grid.n_samples();
  std::vector<double> g(n), zero(n, 0.0), om(n), dl(n, 0.5 * small.chi);
  for (int k = 0; k < n; ++k) {
    g[k] = 0.9 * std::sin(kPi * grid.time(k) / grid.t_end);
    om[k] = 0.35 * (1.0 - std::cos(2.0 * kPi * grid.time(k) / grid.t_end));
  }
  const BeamSplitterDrive drive(grid, g, zero, zero);
  const ControlPulse ancilla(grid, om, zero, dl);
  const auto h_full =
      native_hamiltonian(small, drive, &ancilla, NoiseSample{0.07, {}});
  const Unitary u_full = propagate(h_full, grid);
  HamiltonianSampler h_proj{
      4, [&](double t) { return project_single_photon(h_full.at(t), small); }};
  const Unitary u_proj = propagate(h_proj, grid);
  const std::array<int, 4> idx = {
      full_index(small, 1, 0, 0), full_index(small, 1, 0, 1),
      full_index(small, 0, 1, 0), full_index(small, 0, 1, 1)};
  double worst_prop = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      worst_prop = std::max(
          worst_prop, std::abs(u_full.matrix()(idx[r], idx[c]) -
                               u_proj.matrix()(r, c)));

  Outcome out;
  out.pass = worst_single < 1e-12 && worst_q4 < 1e-12 && worst_prop < 1e-8;
  out.detail = "single-photon form " + fmt(worst_single) +
               " (< 1e-12), q4 blocks " + fmt(worst_q4) +
               " (< 1e-12), propagation agreement " + fmt(worst_prop) +
               " (< 1e-8)";
  return out;
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "scqc_acceptance";
  fs::create_directories(dir);
  const fs::path cfg = dir / "sweep.json";
  {
    std::ofstream out(cfg);
    out << R"({"kappa1_pi": 1, "kappa2_pi": 3, "points": 10})";
  }
  const fs::path zz_cfg = dir / "zz.json";
  {
    std::ofstream out(zz_cfg);
    out << R"({"theta_pi": 0.5, "mode": "ideal"})";
  }

  auto run = [&](const std::string& args) {
    const std::string cmd =
        std::string(SCQC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  bool ok = true;
  ok = ok && run("crosstalk-sweep --config " + cfg.string() + " --out " +
                 (dir / "a").string());
  ok = ok && run("crosstalk-sweep --config " + cfg.string() + " --out " +
                 (dir / "b").string());
  ok = ok && run("zz --config " + zz_cfg.string() + " --out " +
                 (dir / "za").string());
  ok = ok && run("zz --config " + zz_cfg.string() + " --out " +
                 (dir / "zb").string());
  const bool sweep_same =
      slurp(dir / "a" / "crosstalk_sweep.csv") ==
          slurp(dir / "b" / "crosstalk_sweep.csv") &&
      slurp(dir / "a" / "crosstalk_sweep.json") ==
          slurp(dir / "b" / "crosstalk_sweep.json");
  const bool zz_same = slurp(dir / "za" / "zz_summary.json") ==
                       slurp(dir / "zb" / "zz_summary.json");

  Outcome out;
  out.pass = ok && sweep_same && zz_same;
  out.detail = std::string("reruns byte-identical: sweep ") +
               (sweep_same ? "yes" : "NO") + ", zz " + (zz_same ? "yes" : "NO");
  return out;
}

}  // namespace

int main() {
  std::vector<Check> checks = {
      {"crosstalk scaling dichotomy", crosstalk_scaling},
      {"single-shot joint parity", single_shot_parity},
      {"three-step composition algebra", three_step_algebra},
      {"logical ZZ construction", logical_zz_checks},
      {"dephasing robustness of the synthesized step", dephasing_robustness},
      {"geometry suite on 50 random pulses", geometry_suite},
      {"projection equivalence", projection_equivalence},
      {"CLI determinism", cli_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = checks[i].run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %zu. %s: %s  (%.1f s)\n",
                outcome.pass ? "PASS" : "FAIL", i + 1, checks[i].name.c_str(),
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", checks.size() - failures,
              checks.size());
  return failures == 0 ? 0 : 1;
}
