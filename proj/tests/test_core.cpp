#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.h"
#include "scqc/propagate.h"
#include "scqc/unitary.h"

using namespace scqc;

namespace {

HamiltonianSampler constant_sampler(const Matrix& h) {
  return HamiltonianSampler{static_cast<int>(h.rows()),
                            [h](double) { return h; }};
}

}  // namespace

TEST_CASE("matrix_exp basics") {
  CHECK(max_abs(Matrix(matrix_exp(Matrix::Zero(2, 2)) - identity(2))) < 1e-14);

  // exp(-i pi/2 X) = -iX
  const Matrix a = -kI * (kPi / 2.0) * pauli_x();
  CHECK(max_abs(Matrix(matrix_exp(a) + kI * pauli_x())) < 1e-13);

  const Matrix b = -kI * (kPi / 4.0) * pauli_z();
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = std::exp(Complex(0, -kPi / 4.0));
  expected(1, 1) = std::exp(Complex(0, kPi / 4.0));
  CHECK(max_abs(Matrix(matrix_exp(b) - expected)) < 1e-13);

  CHECK_THROWS_AS(matrix_exp(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("matrix_exp accuracy against the spectral route") {
  // random Hermitian generator with norm of order 10
  Rng rng(7);
  Matrix h(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h(i, j) = Complex(rng.uniform(-2, 2), rng.uniform(-2, 2));
  h = 0.5 * (h + h.adjoint()).eval();
  const Matrix via_pade = matrix_exp(Matrix(-kI * h));
  const Matrix via_eig = hermitian_evolution(h, 1.0);
  CHECK(max_abs(Matrix(via_pade - via_eig)) < 1e-12);
}

TEST_CASE("propagate constant Hamiltonians") {
  const double omega = 2.0;
  const Matrix h = 0.5 * omega * pauli_x();
  const Unitary u = propagate(constant_sampler(h), TimeGrid(kPi / omega, 400));
  CHECK(max_abs(Matrix(u.matrix() + kI * pauli_x())) < 1e-8);  // Rabi pi-pulse

  const Unitary id =
      propagate(constant_sampler(Matrix::Zero(2, 2)), TimeGrid(1.0, 200));
  CHECK(max_abs(Matrix(id.matrix() - identity(2))) < 1e-13);

  // ZZ generator against the direct matrix exponential
  const double chi = 1.3;
  const double t_end = 2.0 * kPi / chi;
  const Matrix hzz = 0.25 * chi * kron(pauli_z(), pauli_z());
  const Unitary u2 = propagate(constant_sampler(hzz), TimeGrid(t_end, 2000));
  const Matrix ref = matrix_exp(Matrix(-kI * hzz * t_end));
  CHECK(max_abs(Matrix(u2.matrix() - ref)) < 1e-10);
}

TEST_CASE("propagate rejects bad inputs") {
  const Matrix not_hermitian = (Matrix(2, 2) << 0, 1, 0, 0).finished();
  CHECK_THROWS_AS(propagate(constant_sampler(not_hermitian), TimeGrid(1.0, 200)),
                  ModelError);
  CHECK_THROWS_AS(propagate(constant_sampler(pauli_z()), TimeGrid(1.0, 50)),
                  GridError);
  CHECK_THROWS_AS(TimeGrid(1.0, 0), GridError);
}

TEST_CASE("propagate_checkpointed") {
  const Matrix h = 0.4 * pauli_x() + 0.3 * pauli_z();
  const TimeGrid grid(2.0, 500);

  SUBCASE("identity for H = 0") {
    const auto us =
        propagate_checkpointed(constant_sampler(Matrix::Zero(2, 2)), grid);
    CHECK(us.size() == 501);
    for (const auto& u : us)
      CHECK(max_abs(Matrix(u.matrix() - identity(2))) < 1e-12);
  }

  SUBCASE("closed form for constant H") {
    const auto us = propagate_checkpointed(constant_sampler(h), grid);
    for (int k = 0; k <= 500; k += 50) {
      const Matrix ref = hermitian_evolution(h, grid.time(k));
      CHECK(max_abs(Matrix(us[k].matrix() - ref)) < 1e-9);
    }
  }

  SUBCASE("final checkpoint equals propagate") {
    const auto us = propagate_checkpointed(constant_sampler(h), grid);
    const Unitary direct = propagate(constant_sampler(h), grid);
    CHECK(max_abs(Matrix(us.back().matrix() - direct.matrix())) == 0.0);
  }
}

TEST_CASE("average gate fidelity") {
  const Unitary id(identity(2));
  const Unitary x(pauli_x());
  CHECK(average_gate_fidelity(id, id) == doctest::Approx(1.0).epsilon(1e-12));
  const Unitary phased(Matrix(std::exp(Complex(0, 0.7)) * identity(2)));
  CHECK(average_gate_fidelity(id, phased) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(average_gate_fidelity(id, x) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(average_gate_fidelity(identity(2), identity(4)),
                  DimensionError);
}

TEST_CASE("equal up to global phase") {
  const Matrix u = hermitian_evolution(0.3 * pauli_x() + 0.1 * pauli_y(), 1.0);
  CHECK(equal_up_to_global_phase(u, Matrix(u * std::exp(Complex(0, kPi / 7.0))),
                                 1e-10));
  CHECK_FALSE(equal_up_to_global_phase(identity(2), pauli_x(), 1e-10));
  CHECK(equal_up_to_global_phase(Matrix(-kI * pauli_x()), pauli_x(), 1e-10));
}

TEST_CASE("unitarity preserved for a random Hermitian sampler") {
  Rng rng(11);
  Matrix h0(3, 3), h1(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      h0(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      h1(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
  h0 = 0.5 * (h0 + h0.adjoint()).eval();
  h1 = 0.5 * (h1 + h1.adjoint()).eval();
  HamiltonianSampler sampler{3, [h0, h1](double t) -> Matrix {
                               return h0 + std::sin(3.0 * t) * h1;
                             }};
  const Unitary u = propagate(sampler, TimeGrid(2.0, 1000));
  CHECK(max_abs(Matrix(u.matrix().adjoint() * u.matrix() - identity(3))) <
        1e-10);
}

TEST_CASE("midpoint scheme is at least second order") {
  // deliberately asymmetric in time so no error cancellation hides the order
  HamiltonianSampler sampler{2, [](double t) -> Matrix {
                               return std::sin(2.3 * t + 0.4) * pauli_x() +
                                      0.7 * std::cos(1.7 * t) * pauli_z() +
                                      0.3 * std::sin(t) * pauli_y();
                             }};
  auto run = [&](int n) {
    return propagate(sampler, TimeGrid(2.0, n), Scheme::Midpoint).matrix();
  };
  const double e1 = max_abs(Matrix(run(128) - run(256)));
  const double e2 = max_abs(Matrix(run(256) - run(512)));
  CHECK(e1 / e2 >= 3.5);

  // the commutator-corrected scheme converges much faster still
  auto run4 = [&](int n) {
    return propagate(sampler, TimeGrid(2.0, n), Scheme::Magnus4).matrix();
  };
  const double f1 = max_abs(Matrix(run4(128) - run4(256)));
  const double f2 = max_abs(Matrix(run4(256) - run4(512)));
  CHECK(f1 / f2 >= 3.5);
}

TEST_CASE("propagation composes over subintervals") {
  HamiltonianSampler sampler{2, [](double t) -> Matrix {
                               return std::sin(t) * pauli_x() +
                                      0.4 * std::cos(2.0 * t) * pauli_y() +
                                      0.2 * pauli_z();
                             }};
  const double t_mid = 1.0, t_end = 2.0;
  const Unitary full = propagate(sampler, TimeGrid(t_end, 2000));
  HamiltonianSampler second_half{
      2, [&sampler, t_mid](double t) { return sampler.at(t + t_mid); }};
  const Unitary a = propagate(sampler, TimeGrid(t_mid, 1000));
  const Unitary b = propagate(second_half, TimeGrid(t_end - t_mid, 1000));
  CHECK(max_abs(Matrix(full.matrix() - (b * a).matrix())) < 1e-9);
}

TEST_CASE("Unitary validates") {
  CHECK_THROWS_AS(Unitary(Matrix(2.0 * identity(2))), ModelError);
  CHECK_THROWS_AS(Unitary(identity(2)) * Unitary(identity(4)), DimensionError);
}
