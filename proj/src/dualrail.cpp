#include "scqc/dualrail.h"

#include <cmath>

namespace scqc {

namespace {

double lerp(const TimeGrid& grid, const std::vector<double>& v, double t) {
  const double x = t / grid.dt();
  const int last = grid.n_steps;
  if (x <= 0.0) return v[0];
  if (x >= last) return v[last];
  const int k = static_cast<int>(x);
  const double u = x - k;
  return v[k] * (1.0 - u) + v[k + 1] * u;
}

}  // namespace

BeamSplitterDrive::BeamSplitterDrive(TimeGrid grid_, std::vector<double> g_,
                                     std::vector<double> varphi_,
                                     std::vector<double> delta_)
    : grid(grid_), g(std::move(g_)), varphi(std::move(varphi_)),
      delta(std::move(delta_)) {
  const int n = grid.n_samples();
  if (static_cast<int>(g.size()) != n ||
      static_cast<int>(varphi.size()) != n ||
      static_cast<int>(delta.size()) != n)
    throw GridError("BeamSplitterDrive: sample count does not match grid");
}

BeamSplitterDrive BeamSplitterDrive::constant(double t_end, int n_steps,
                                              double g0, double varphi0,
                                              double delta0) {
  TimeGrid grid(t_end, n_steps);
  const int n = grid.n_samples();
  return BeamSplitterDrive(grid, std::vector<double>(n, g0),
                           std::vector<double>(n, varphi0),
                           std::vector<double>(n, delta0));
}

double BeamSplitterDrive::g_at(double t) const { return lerp(grid, g, t); }
double BeamSplitterDrive::varphi_at(double t) const {
  return lerp(grid, varphi, t);
}
double BeamSplitterDrive::delta_at(double t) const {
  return lerp(grid, delta, t);
}

double BeamSplitterDrive::g_area() const {
  double area = 0.0;
  for (int k = 0; k + 1 < grid.n_samples(); ++k)
    area += 0.5 * grid.dt() * (g[k] + g[k + 1]);
  return area;
}

std::string BasisConvention::header() {
  return "basis=cavity_a(x)cavity_b(x)ancilla; ancilla=(g,f); "
         "Z2=|g><g|-|f><f|; codewords 0L=|10>, 1L=|01>; "
         "q4=(|00>,|01>,|10>,|11>)(x)(g,f)";
}

int cavity_index(const DualRailParams& params, int n_a, int n_b) {
  if (n_a < 0 || n_b < 0 || n_a > params.n_max || n_b > params.n_max)
    throw PreconditionError("cavity_index: photon number beyond truncation");
  return n_a * params.cavity_dim() + n_b;
}

int full_index(const DualRailParams& params, int n_a, int n_b, int ancilla) {
  if (ancilla != 0 && ancilla != 1)
    throw PreconditionError("full_index: ancilla level must be 0 (g) or 1 (f)");
  return cavity_index(params, n_a, n_b) * 2 + ancilla;
}

ModeOps mode_operators(const DualRailParams& params) {
  const int d = params.cavity_dim();
  Matrix ladder = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) ladder(n - 1, n) = std::sqrt(double(n));
  const Matrix idc = identity(d);
  const Matrix id2 = identity(2);
  ModeOps ops;
  ops.a = kron(kron(ladder, idc), id2);
  ops.b = kron(kron(idc, ladder), id2);
  ops.na = ops.a.adjoint() * ops.a;
  ops.nb = ops.b.adjoint() * ops.b;
  ops.z2 = kron(kron(idc, idc), pauli_z());
  return ops;
}

HamiltonianSampler native_hamiltonian(const DualRailParams& params,
                                      const BeamSplitterDrive& drive,
                                      const ControlPulse* ancilla_pulse,
                                      const NoiseSample& noise) {
  if (ancilla_pulse &&
      std::abs(ancilla_pulse->grid.t_end - drive.grid.t_end) >
          1e-9 * (1.0 + drive.grid.t_end))
    throw GridError("native_hamiltonian: drive and ancilla pulse durations differ");

  const ModeOps ops = mode_operators(params);
  const int d = params.cavity_dim();
  const double chi_eff = noise.xi.value_or(params.chi);
  const Matrix adag_b = ops.a.adjoint() * ops.b;
  const Matrix na_z2 = ops.na * ops.z2;
  const Matrix idc2 = identity(d * d);
  const Matrix x2 = kron(idc2, pauli_x());
  const Matrix y2 = kron(idc2, pauli_y());
  const Matrix na = ops.na;
  const Matrix z2 = ops.z2;
  const double gamma = noise.gamma;

  std::optional<ControlPulse> pulse;
  if (ancilla_pulse) pulse = *ancilla_pulse;

  return HamiltonianSampler{
      params.full_dim(),
      [=, drive = drive](double t) -> Matrix {
        const double g = drive.g_at(t);
        const double ph = drive.varphi_at(t);
        const double dl = drive.delta_at(t);
        const Complex c = 0.5 * g * std::exp(kI * ph);
        Matrix h = c * adag_b + std::conj(c) * adag_b.adjoint() + dl * na -
                   0.5 * chi_eff * na_z2 + 0.5 * gamma * z2;
        if (pulse) {
          const double om = pulse->omega_at(t);
          const double p2 = pulse->phi_at(t);
          const double d2 = pulse->delta_at(t);
          h += 0.5 * om * (std::cos(p2) * x2 + std::sin(p2) * y2) +
               0.5 * d2 * z2;
        }
        return h;
      }};
}

std::array<Matrix, 4> schwinger_operators(const DualRailParams& params) {
  const ModeOps ops = mode_operators(params);
  const Matrix i1 = ops.na + ops.nb;
  const Matrix adag_b = ops.a.adjoint() * ops.b;
  const Matrix x1 = adag_b + adag_b.adjoint();
  const Matrix y1 = -kI * (adag_b - adag_b.adjoint());
  const Matrix z1 = ops.na - ops.nb;
  // project onto (|10>, |01>) in the g sector (cavity operators are
  // ancilla-diagonal, so either sector gives the same 2x2)
  const int i10 = full_index(params, 1, 0, 0);
  const int i01 = full_index(params, 0, 1, 0);
  const std::array<int, 2> idx = {i10, i01};
  auto proj = [&](const Matrix& m) {
    Matrix out(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out(r, c) = m(idx[r], idx[c]);
    return out;
  };
  return {proj(i1), proj(x1), proj(y1), proj(z1)};
}

namespace {

Matrix project_onto(const Matrix& h_full, const std::vector<int>& indices) {
  const int n = static_cast<int>(indices.size());
  Matrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = h_full(indices[r], indices[c]);
  return out;
}

}  // namespace

Matrix project_single_photon(const Matrix& h_full,
                             const DualRailParams& params) {
  if (h_full.rows() != params.full_dim())
    throw DimensionError("project_single_photon: dimension mismatch");
  std::vector<int> idx = {
      full_index(params, 1, 0, 0), full_index(params, 1, 0, 1),
      full_index(params, 0, 1, 0), full_index(params, 0, 1, 1)};
  return project_onto(h_full, idx);
}

Matrix project_q4(const Matrix& h_full, const DualRailParams& params) {
  if (h_full.rows() != params.full_dim())
    throw DimensionError("project_q4: dimension mismatch");
  std::vector<int> idx = {
      full_index(params, 0, 0, 0), full_index(params, 0, 0, 1),
      full_index(params, 0, 1, 0), full_index(params, 0, 1, 1),
      full_index(params, 1, 0, 0), full_index(params, 1, 0, 1),
      full_index(params, 1, 1, 0), full_index(params, 1, 1, 1)};
  return project_onto(h_full, idx);
}

StateClass classify_state(int n_a, int n_b) {
  if (n_a < 0 || n_b < 0)
    throw PreconditionError("classify_state: negative photon number");
  const int total = n_a + n_b;
  if (total > 2)
    throw PreconditionError("classify_state: photon number beyond truncation");
  return (total == 1) ? StateClass::Codespace : StateClass::LeakageEven;
}

}  // namespace scqc
