#include "scqc/propagate.h"

#include <cmath>
#include <string>

namespace scqc {

namespace {

constexpr double kHermTol = 1e-10;

Matrix sample_checked(const HamiltonianSampler& h, double t) {
  Matrix m = h.at(t);
  if (m.rows() != h.dim || m.cols() != h.dim)
    throw DimensionError("propagate: sampler returned wrong dimension at t = " +
                         std::to_string(t));
  if (!is_hermitian(m, kHermTol))
    throw ModelError("propagate: non-Hermitian sample at t = " +
                     std::to_string(t));
  return m;
}

// One-step unitary over [t, t + dt].
Matrix step_unitary(const HamiltonianSampler& h, double t, double dt,
                    Scheme scheme) {
  if (scheme == Scheme::Midpoint) {
    const Matrix hm = sample_checked(h, t + 0.5 * dt);
    return hermitian_evolution(hm, dt);
  }
  // Gauss nodes at (1/2 -+ sqrt(3)/6) dt.
  const double offset = std::sqrt(3.0) / 6.0;
  const Matrix h1 = sample_checked(h, t + (0.5 - offset) * dt);
  const Matrix h2 = sample_checked(h, t + (0.5 + offset) * dt);
  // Hermitian effective generator M with U = exp(-i M).
  const Matrix comm = h2 * h1 - h1 * h2;
  const Matrix m =
      0.5 * dt * (h1 + h2) - (std::sqrt(3.0) / 12.0) * dt * dt * kI * comm;
  return hermitian_evolution(m, 1.0);
}

void check_grid(const HamiltonianSampler& h, const TimeGrid& grid) {
  if (h.dim < 1) throw DimensionError("propagate: sampler dim must be >= 1");
  if (grid.n_steps < kMinSteps)
    throw GridError("propagate: n_steps must be >= " +
                    std::to_string(kMinSteps));
}

}  // namespace

Unitary propagate(const HamiltonianSampler& h, const TimeGrid& grid,
                  Scheme scheme) {
  check_grid(h, grid);
  const double dt = grid.dt();
  Matrix u = Matrix::Identity(h.dim, h.dim);
  for (int k = 0; k < grid.n_steps; ++k) {
    u = step_unitary(h, grid.time(k), dt, scheme) * u;
  }
  return Unitary(std::move(u));
}

std::vector<Unitary> propagate_checkpointed(const HamiltonianSampler& h,
                                            const TimeGrid& grid,
                                            Scheme scheme) {
  check_grid(h, grid);
  const double dt = grid.dt();
  std::vector<Unitary> out;
  out.reserve(grid.n_samples());
  Matrix u = Matrix::Identity(h.dim, h.dim);
  out.emplace_back(u);
  for (int k = 0; k < grid.n_steps; ++k) {
    u = step_unitary(h, grid.time(k), dt, scheme) * u;
    out.emplace_back(u);
  }
  return out;
}

}  // namespace scqc
