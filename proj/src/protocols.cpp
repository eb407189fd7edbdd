#include "scqc/protocols.h"

#include <algorithm>
#include <cmath>

#include "scqc/util.h"

namespace scqc {

namespace {

Matrix block_diag4(const Matrix& b0, const Matrix& b1, const Matrix& b2,
                   const Matrix& b3) {
  Matrix out = Matrix::Zero(8, 8);
  out.block(0, 0, 2, 2) = b0;
  out.block(2, 2, 2, 2) = b1;
  out.block(4, 4, 2, 2) = b2;
  out.block(6, 6, 2, 2) = b3;
  return out;
}

Matrix rot_z(double angle) {  // exp(-i angle/2 Z)
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(Complex(0, -0.5 * angle));
  m(1, 1) = std::exp(Complex(0, 0.5 * angle));
  return m;
}

Matrix rot_y(double angle) {  // exp(-i angle/2 Y)
  Matrix m(2, 2);
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  m << c, -s, s, c;
  return m;
}

Matrix rot_x(double angle) {  // exp(-i angle/2 X)
  Matrix m(2, 2);
  const double c = std::cos(0.5 * angle);
  const Complex ms = Complex(0, -std::sin(0.5 * angle));
  m << c, ms, ms, c;
  return m;
}

}  // namespace

Matrix q4_x1() {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 2) = m(2, 1) = 1.0;
  return m;
}

Matrix q4_z1() {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 1) = -1.0;
  m(2, 2) = 1.0;
  return m;
}

Matrix q4_za() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 2) = m(3, 3) = -1.0;
  return m;
}

Matrix q4_number_a() {
  Matrix m = Matrix::Zero(4, 4);
  m(2, 2) = m(3, 3) = 1.0;
  return m;
}

Matrix zz_theta(double theta) {
  Matrix m = Matrix::Zero(4, 4);
  const Complex same = std::exp(Complex(0, -0.5 * theta));
  const Complex diff = std::exp(Complex(0, 0.5 * theta));
  m(0, 0) = m(3, 3) = same;
  m(1, 1) = m(2, 2) = diff;
  return m;
}

Matrix ideal_zz_half_target() {
  // ZZ(pi/2) on (Z1 = +1 on |10>, -1 on |01>) plus the stated leakage blocks
  // groups the q4 blocks by n_a: (|00>, |01>) -> e^{+i pi/4 Z},
  // (|10>, |11>) -> e^{-i pi/4 Z}.
  const Matrix m = rot_z(-0.5 * kPi);  // e^{+i pi/4 Z}
  const Matrix p = rot_z(0.5 * kPi);   // e^{-i pi/4 Z}
  return block_diag4(m, m, p, p);
}

Matrix simulated_zz_half_target() {
  // What free evolution under H_{+-} realizes: the adjoint of the ideal
  // target (conditional angles flipped); composes to the adjoint of the
  // joint-parity target and yields the same parity contrast.
  return ideal_zz_half_target().adjoint();
}

Matrix ideal_swap_target() {
  Matrix cav = Matrix::Zero(4, 4);
  cav(0, 0) = cav(3, 3) = 1.0;
  cav(1, 2) = cav(2, 1) = 1.0;
  return kron(cav, pauli_z());
}

Matrix ideal_joint_parity_target() {
  Matrix m = kron(q4_x1(), pauli_z());
  Matrix leak = Matrix::Zero(4, 4);
  leak(0, 0) = Complex(0, 1);
  leak(3, 3) = Complex(0, -1);
  return m + kron(leak, identity(2));
}

Unitary single_shot_joint_parity(const DualRailParams& params, double gamma,
                                 int n_steps) {
  const double t_jp = 2.0 * kPi / params.chi;
  const double g = 0.5 * std::sqrt(3.0) * params.chi;
  const BeamSplitterDrive drive =
      BeamSplitterDrive::constant(t_jp, n_steps, g);
  NoiseSample noise;
  noise.gamma = gamma;
  const auto h = native_hamiltonian(params, drive, nullptr, noise);
  Unitary u = propagate(h, drive.grid);
  if (gamma == 0.0) {
    // contract: on each total-photon sector <= 2 the noiseless result is the
    // parity kick 1 (x) |g><g| + e^{i pi n} (x) |f><f| up to a sector phase
    for (int n = 0; n <= 2; ++n) {
      double defect = 0.0;
      for (int na = 0; na <= n; ++na) {
        const int nb = n - na;
        if (na > params.n_max || nb > params.n_max) continue;
        const int ig = full_index(params, na, nb, 0);
        const int iff = full_index(params, na, nb, 1);
        const Complex ratio =
            u.matrix()(iff, iff) / u.matrix()(ig, ig);
        defect = std::max(defect,
                          std::abs(ratio - std::exp(Complex(0, kPi * n))));
      }
      if (defect > 1e-6)
        throw ModelError(
            "single_shot_joint_parity: truncation too small, parity defect " +
            std::to_string(defect) + " on the " + std::to_string(n) +
            "-photon sector");
    }
  }
  return u;
}

Unitary zz_half_step(const ControlPulse& ancilla, double chi, double gamma,
                     int sign, Scheme scheme) {
  auto block_pulse = [&](double shift) {
    std::vector<double> delta = ancilla.delta;
    for (double& d : delta) d += shift;
    return ControlPulse(ancilla.grid, ancilla.omega, ancilla.phi,
                        std::move(delta));
  };
  const double shift = 0.5 * chi * sign;
  const Unitary u_plus =
      propagate(pulse_hamiltonian(block_pulse(shift), gamma), ancilla.grid,
                scheme);
  const Unitary u_minus =
      propagate(pulse_hamiltonian(block_pulse(-shift), gamma), ancilla.grid,
                scheme);
  // n_a = 0 blocks (|00>, |01>) see +chi/4, n_a = 1 blocks see -chi/4
  return Unitary(block_diag4(u_plus.matrix(), u_plus.matrix(),
                             u_minus.matrix(), u_minus.matrix()));
}

ControlPulse naive_zz_half_pulse(double chi, int n_steps) {
  return ControlPulse::constant(kPi / chi, n_steps, 0.0, 0.0, 0.0);
}

BeamSplitterDrive gaussian_swap_drive(double t_end, double sigma_ratio,
                                      int n_steps) {
  if (!(t_end > 0.0))
    throw PreconditionError("gaussian_swap_drive: t_end must be positive");
  if (!(sigma_ratio > 0.0) || sigma_ratio > 0.5)
    throw PreconditionError(
        "gaussian_swap_drive: sigma_ratio must lie in (0, 0.5]");
  TimeGrid grid(t_end, n_steps);
  const double sigma = sigma_ratio * t_end;
  const double center = 0.5 * t_end;
  const double floor = std::exp(-0.5 * center * center / (sigma * sigma));
  std::vector<double> g(grid.n_samples());
  for (int k = 0; k < grid.n_samples(); ++k) {
    const double dt0 = grid.time(k) - center;
    g[k] = std::exp(-0.5 * dt0 * dt0 / (sigma * sigma)) - floor;
  }
  // normalize the trapezoidal area to pi
  double area = 0.0;
  for (int k = 0; k + 1 < grid.n_samples(); ++k)
    area += 0.5 * grid.dt() * (g[k] + g[k + 1]);
  for (double& v : g) v *= kPi / area;
  return BeamSplitterDrive(grid, std::move(g),
                           std::vector<double>(grid.n_samples(), 0.0),
                           std::vector<double>(grid.n_samples(), 0.0));
}

Unitary swap_step(const BeamSplitterDrive& drive, const ControlPulse& ancilla,
                  double chi_or_xi, double gamma, Scheme scheme) {
  if (std::abs(drive.g_area() - kPi) > 1e-6)
    throw PreconditionError("swap_step: Int g dt must equal pi (one-photon swap)");
  if (std::abs(drive.grid.t_end - ancilla.grid.t_end) >
      1e-9 * (1.0 + drive.grid.t_end))
    throw GridError("swap_step: drive and ancilla pulse durations differ");

  const Matrix x1 = q4_x1();
  const Matrix y1 = [] {
    Matrix m = Matrix::Zero(4, 4);
    m(1, 2) = Complex(0, 1);
    m(2, 1) = Complex(0, -1);
    return m;
  }();
  const Matrix na = q4_number_a();
  const Matrix za_z2 = kron(q4_za(), pauli_z());
  const Matrix id4 = identity(4);
  const auto h2 = pulse_hamiltonian(ancilla, gamma);

  HamiltonianSampler h{
      8, [=, drive = drive](double t) -> Matrix {
        const double g = drive.g_at(t);
        const double ph = drive.varphi_at(t);
        const double dl = drive.delta_at(t);
        Matrix cav = 0.5 * g * (std::cos(ph) * x1 - std::sin(ph) * y1) + dl * na;
        return kron(cav, identity(2)) + kron(id4, h2.at(t)) +
               0.25 * chi_or_xi * za_z2;
      }};
  return propagate(h, TimeGrid(drive.grid.t_end, kDefaultSteps), scheme);
}

ControlPulse naive_swap_ancilla_pulse(double t_end, int n_steps) {
  return ControlPulse::constant(t_end, n_steps, 0.0, 0.0, kPi / t_end);
}

Unitary three_step_joint_parity(const Unitary& v1, const Unitary& v2,
                                const Unitary& v3) {
  if (v1.dim() != v2.dim() || v2.dim() != v3.dim())
    throw DimensionError("three_step_joint_parity: dimension mismatch");
  return v3 * v2 * v1;
}

void ProtocolStep::validate() const {
  if (std::abs(drive.grid.t_end - ancilla_pulse.grid.t_end) >
      1e-9 * (1.0 + drive.grid.t_end))
    throw PreconditionError("ProtocolStep: drive and pulse durations differ");
  if (label == StepLabel::Swap) {
    if (std::abs(drive.g_area() - kPi) > 1e-6)
      throw PreconditionError(
          "ProtocolStep: swap drive must integrate to pi (one-photon swap)");
  } else {
    for (double g : drive.g)
      if (g != 0.0)
        throw PreconditionError(
            "ProtocolStep: conditional-phase steps carry no beam splitter");
  }
}

Unitary protocol_step_unitary(const ProtocolStep& step, double chi,
                              double gamma,
                              std::optional<double> xi_during_swap) {
  step.validate();
  if (step.label == StepLabel::Swap) {
    return swap_step(step.drive, step.ancilla_pulse,
                     xi_during_swap.value_or(chi), gamma);
  }
  return zz_half_step(step.ancilla_pulse, chi, gamma);
}

Unitary three_step_protocol(const ThreeStepPulses& pulses, double chi,
                            double gamma,
                            std::optional<double> xi_during_swap) {
  const int n = pulses.zz_half.grid.n_samples();
  const BeamSplitterDrive idle(pulses.zz_half.grid,
                               std::vector<double>(n, 0.0),
                               std::vector<double>(n, 0.0),
                               std::vector<double>(n, 0.0));
  const ProtocolStep first{StepLabel::ZzHalf1, pulses.zz_half, idle};
  const ProtocolStep swap{StepLabel::Swap, pulses.swap_ancilla, pulses.swap};
  const ProtocolStep third{StepLabel::ZzHalf3, pulses.zz_half, idle};
  const Unitary v1 = protocol_step_unitary(first, chi, gamma, xi_during_swap);
  const Unitary v2 = protocol_step_unitary(swap, chi, gamma, xi_during_swap);
  const Unitary v3 = protocol_step_unitary(third, chi, gamma, xi_during_swap);
  return three_step_joint_parity(v1, v2, v3);
}

ThreeStepPulses naive_three_step_pulses(double chi, double t_swap,
                                        int n_steps) {
  return ThreeStepPulses{naive_zz_half_pulse(chi, n_steps),
                         gaussian_swap_drive(t_swap, 0.2, n_steps),
                         naive_swap_ancilla_pulse(t_swap, n_steps)};
}

ErasureCheckStats erasure_check_stats(const Unitary& protocol,
                                      const std::vector<ErasureInput>& inputs,
                                      bool erase_on_g) {
  const int dim = protocol.dim();
  if (dim % 2 != 0)
    throw DimensionError("erasure_check_stats: expected cavity (x) ancilla");
  const int cav_dim = dim / 2;
  const Matrix ry_pre = kron(identity(cav_dim), rot_y(0.5 * kPi));
  const Matrix ry_post = kron(identity(cav_dim), rot_y(-0.5 * kPi));
  const Matrix circuit = ry_post * protocol.matrix() * ry_pre;

  double false_erase = 0.0, missed_leak = 0.0;
  int n_odd = 0, n_even = 0;
  for (const auto& input : inputs) {
    if (input.cavity_state < 0 || input.cavity_state >= cav_dim)
      throw DimensionError("erasure_check_stats: input outside cavity space");
    Vector psi = Vector::Zero(dim);
    psi(input.cavity_state * 2 + 0) = 1.0;  // ancilla starts in |g>
    const Vector out = circuit * psi;
    double p_g = 0.0;
    for (int c = 0; c < cav_dim; ++c) p_g += std::norm(out(2 * c));
    p_g = std::clamp(p_g, 0.0, 1.0);
    const double p_erase = erase_on_g ? p_g : 1.0 - p_g;
    if (input.odd_parity) {
      false_erase += p_erase;
      ++n_odd;
    } else {
      missed_leak += 1.0 - p_erase;
      ++n_even;
    }
  }
  ErasureCheckStats stats;
  if (n_odd > 0) stats.false_erase_prob = false_erase / n_odd;
  if (n_even > 0) stats.missed_leak_prob = missed_leak / n_even;
  return stats;
}

std::vector<ErasureInput> q4_inputs() {
  return {{0, false}, {1, true}, {2, true}, {3, false}};
}

std::vector<ErasureInput> full_space_inputs(const DualRailParams& params) {
  std::vector<ErasureInput> inputs;
  for (int n_a = 0; n_a <= 2; ++n_a) {
    for (int n_b = 0; n_b + n_a <= 2; ++n_b) {
      if (n_a > params.n_max || n_b > params.n_max) continue;
      inputs.push_back({cavity_index(params, n_a, n_b),
                        classify_state(n_a, n_b) == StateClass::Codespace});
    }
  }
  return inputs;
}

LogicalZzResult logical_zz_analysis(double theta, const Unitary& u_jp,
                                    const ControlPulse* ancilla_x_pulse) {
  if (u_jp.dim() != 8)
    throw DimensionError("logical_zz: U_JP must act on q4 (x) ancilla");
  const Matrix id4 = identity(4);
  const Matrix pre = kron(id4, rot_y(0.5 * kPi));     // e^{-i pi/4 Y2}
  const Matrix post = kron(id4, rot_y(-0.5 * kPi));   // e^{+i pi/4 Y2}
  Matrix mid;
  if (ancilla_x_pulse) {
    mid = kron(id4, propagate(pulse_hamiltonian(*ancilla_x_pulse, 0.0),
                              ancilla_x_pulse->grid)
                        .matrix());
  } else {
    mid = kron(id4, rot_x(theta));  // e^{-i theta/2 X2}
  }
  const Matrix seq = post * u_jp.matrix() * mid * u_jp.matrix() * pre;

  LogicalZzResult result;
  result.cavity_unitary = Matrix(4, 4);
  Matrix off(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      result.cavity_unitary(r, c) = seq(2 * r + 0, 2 * c + 0);
      off(r, c) = seq(2 * r + 1, 2 * c + 0);
    }
  result.off_block_norm = max_abs(off);

  // state after the first U_JP on the uniform cavity superposition
  Vector psi = Vector::Zero(8);
  for (int c = 0; c < 4; ++c) psi(2 * c) = 0.5;
  result.intermediate_state = u_jp.matrix() * (pre * psi);
  return result;
}

Matrix logical_zz(double theta, const Unitary& u_jp,
                  const ControlPulse* ancilla_x_pulse) {
  LogicalZzResult result = logical_zz_analysis(theta, u_jp, ancilla_x_pulse);
  if (result.off_block_norm > 1e-6)
    throw Error("logical_zz: ancilla not disentangled (off-block norm = " +
                std::to_string(result.off_block_norm) + ")");
  return result.cavity_unitary;
}

SweepTable noise_sweep_protocol(
    const std::function<Unitary(double, double)>& builder,
    const Unitary& target, const std::vector<double>& grid,
    const std::string& axis, int threads) {
  if (static_cast<int>(grid.size()) < 4)
    throw FitError("noise_sweep_protocol: need at least 4 grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0))
      throw FitError("noise_sweep_protocol: grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw FitError("noise_sweep_protocol: grid must be ascending");
  }
  if (grid.back() / grid.front() < 100.0 * (1.0 - 1e-9))
    throw FitError("noise_sweep_protocol: grid must span at least 2 decades");
  std::vector<double> infid(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    const Unitary u = (axis == "xi") ? builder(0.0, grid[i])
                                     : builder(grid[i], 0.0);
    infid[i] = 1.0 - average_gate_fidelity(u, target);
  });
  return fit_sweep(axis, grid, std::move(infid));
}

double concurrence(const Vector& state) {
  if (state.size() != 4)
    throw DimensionError("concurrence: expected a 4-component pure state");
  return 2.0 * std::abs(state(0) * state(3) - state(1) * state(2));
}

}  // namespace scqc
