#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.h"
#include "scqc/crosstalk.h"
#include "scqc/sweep.h"
#include "scqc/util.h"

using namespace scqc;

TEST_CASE("tangent overlap matrix for square pulse pairs") {
  SUBCASE("(pi, 3pi) cancels exactly") {
    const auto m = tangent_overlap_matrix(square_pulse_pair(kPi, 3.0 * kPi));
    CHECK(m.m.cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("(3pi, 3pi) has the analytic half overlaps") {
    const auto m =
        tangent_overlap_matrix(square_pulse_pair(3.0 * kPi, 3.0 * kPi));
    CHECK(m.m(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(m.m(1, 1) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(m.m(0, 1)) < 1e-10);
    CHECK(std::abs(m.m(1, 0)) < 1e-10);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(m.m(2, i)) < 1e-10);
      CHECK(std::abs(m.m(i, 2)) < 1e-10);
    }
  }

  SUBCASE("(2pi, 4pi) cancels and both curves close") {
    const auto pair = square_pulse_pair(2.0 * kPi, 4.0 * kPi);
    CHECK(tangent_overlap_matrix(pair).m.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(is_closed(error_curve(pair.pulse1), 1e-6));
    CHECK(is_closed(error_curve(pair.pulse2), 1e-6));
  }

  SUBCASE("(pi, pi) implements X twice but does not cancel") {
    const auto pair = square_pulse_pair(kPi, kPi);
    const auto m = tangent_overlap_matrix(pair);
    CHECK(m.m(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(m.m(1, 1) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(m.norm() > 0.1);
  }

  SUBCASE("entries never exceed one in magnitude") {
    const auto m = tangent_overlap_matrix(square_pulse_pair(1.7, 5.3));
    CHECK(m.m.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
  }
}

TEST_CASE("square pulses implement the expected single-qubit gates") {
  auto gate_of = [](const ControlPulse& pulse) {
    return propagate(pulse_hamiltonian(pulse, 0.0), pulse.grid).matrix();
  };
  const auto dcg = square_pulse_pair(kPi, 3.0 * kPi);
  CHECK(equal_up_to_global_phase(gate_of(dcg.pulse1), pauli_x(), 1e-8));
  CHECK(equal_up_to_global_phase(gate_of(dcg.pulse2), pauli_x(), 1e-8));

  const auto idle = square_pulse_pair(2.0 * kPi, 4.0 * kPi);
  CHECK(equal_up_to_global_phase(gate_of(idle.pulse1), identity(2), 1e-8));
  CHECK(equal_up_to_global_phase(gate_of(idle.pulse2), identity(2), 1e-8));

  CHECK_THROWS_AS(square_pulse_pair(0.0, kPi), PreconditionError);
}

TEST_CASE("crosstalk Hamiltonian") {
  const auto pair = square_pulse_pair(kPi, 3.0 * kPi);

  SUBCASE("xi = 0 is the plain tensor sum") {
    const auto h = two_qubit_crosstalk_hamiltonian(pair, 0.0);
    const auto h1 = pulse_hamiltonian(pair.pulse1, 0.0);
    const auto h2 = pulse_hamiltonian(pair.pulse2, 0.0);
    const Matrix expected = kron(h1.at(0.37), identity(2)) +
                            kron(identity(2), h2.at(0.37));
    CHECK(max_abs(Matrix(h.at(0.37) - expected)) < 1e-14);
  }

  SUBCASE("the (pi, 3pi) pair propagates to X (x) X") {
    const Unitary u =
        propagate(two_qubit_crosstalk_hamiltonian(pair, 0.0), pair.pulse1.grid);
    CHECK(equal_up_to_global_phase(u.matrix(),
                                   kron(pauli_x(), pauli_x()), 1e-8));
  }

  SUBCASE("pure crosstalk on idle qubits") {
    const auto zero = square_pulse_pair(1e-30, 1e-30);  // effectively idle
    const double xi = 0.37;
    const Unitary u =
        propagate(two_qubit_crosstalk_hamiltonian(zero, xi), zero.pulse1.grid);
    const Matrix expected =
        matrix_exp(Matrix(-kI * xi * kron(pauli_z(), pauli_z())));
    CHECK(max_abs(Matrix(u.matrix() - expected)) < 1e-9);
  }
}

TEST_CASE("first-order crosstalk term matches the overlap matrix") {
  // || Int U0^dag (Z x Z) U0 dt ||_F = 2 ||M||_F over normalized time
  for (auto [k1, k2] : {std::pair{kPi, 3.0 * kPi}, {3.0 * kPi, 3.0 * kPi},
                        {1.3, 4.7}}) {
    const auto pair = square_pulse_pair(k1, k2);
    const auto m = tangent_overlap_matrix(pair);
    const auto u1 = propagate_checkpointed(pulse_hamiltonian(pair.pulse1, 0.0),
                                           pair.pulse1.grid);
    const auto u2 = propagate_checkpointed(pulse_hamiltonian(pair.pulse2, 0.0),
                                           pair.pulse2.grid);
    const Matrix zz = kron(pauli_z(), pauli_z());
    Matrix acc = Matrix::Zero(4, 4);
    const double dt = pair.pulse1.grid.dt();
    for (std::size_t k = 0; k < u1.size(); ++k) {
      const Matrix u = kron(u1[k].matrix(), u2[k].matrix());
      const double w = (k == 0 || k + 1 == u1.size()) ? 0.5 * dt : dt;
      acc += w * (u.adjoint() * zz * u);
    }
    CHECK(std::abs(acc.norm() - 2.0 * m.m.norm()) < 1e-6);
  }
}

TEST_CASE("overlap matrix is bilinear and transposes under swap") {
  const auto a = square_pulse_pair(1.9, 4.1);
  const auto swapped = PulsePair{a.pulse2, a.pulse1};
  const auto m = tangent_overlap_matrix(a);
  const auto mt = tangent_overlap_matrix(swapped);
  CHECK((m.m - mt.m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("crosstalk sweep slopes") {
  const auto grid = log_grid(1e-3, 1e-1, 10);
  const Unitary xx(kron(pauli_x(), pauli_x()));

  const auto robust = crosstalk_sweep(square_pulse_pair(kPi, 3.0 * kPi), xx, grid);
  CHECK(robust.slope >= 3.7);

  const auto plain =
      crosstalk_sweep(square_pulse_pair(3.0 * kPi, 3.0 * kPi), xx, grid);
  CHECK(plain.slope <= 2.3);
  CHECK(plain.slope >= 1.8);
}

TEST_CASE("sweep rejects bad grids") {
  const auto pair = square_pulse_pair(kPi, 3.0 * kPi);
  const Unitary xx(kron(pauli_x(), pauli_x()));
  CHECK_THROWS_AS(crosstalk_sweep(pair, xx, {1e-3, 1e-2, 1e-1}), FitError);
  CHECK_THROWS_AS(crosstalk_sweep(pair, xx, {0.0, 0.0, 0.0, 0.0}), FitError);
  CHECK_THROWS_AS(crosstalk_sweep(pair, xx, {1e-3, 2e-3, 4e-3, 8e-3}),
                  FitError);  // under two decades
}

TEST_CASE("parallel sweeps aggregate deterministically") {
  const auto pair = square_pulse_pair(kPi, 3.0 * kPi, 400);
  const Unitary xx(kron(pauli_x(), pauli_x()));
  const auto grid = log_grid(1e-3, 1e-1, 8);
  const auto serial = crosstalk_sweep(pair, xx, grid, 1);
  const auto threaded = crosstalk_sweep(pair, xx, grid, 3);
  CHECK(serial.slope == threaded.slope);
  for (std::size_t i = 0; i < serial.y.size(); ++i)
    CHECK(serial.y[i] == threaded.y[i]);
}

TEST_CASE("sweep table export") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "scqc_sweep_test";
  fs::create_directories(dir);
  const auto pair = square_pulse_pair(3.0 * kPi, 3.0 * kPi, 400);
  const Unitary xx(kron(pauli_x(), pauli_x()));
  const auto table = crosstalk_sweep(pair, xx, log_grid(1e-3, 1e-1, 8));

  const auto csv = (dir / "sweep.csv").string();
  const auto sidecar = (dir / "sweep.json").string();
  write_sweep_csv(csv, table, {"demo"});
  write_sweep_json(sidecar, table);

  std::ifstream in_csv(csv);
  std::string line;
  std::getline(in_csv, line);
  CHECK(line == "# demo");
  std::getline(in_csv, line);
  CHECK(line == "xi,infidelity");

  std::ifstream in_json(sidecar);
  std::stringstream buffer;
  buffer << in_json.rdbuf();
  CHECK(buffer.str().find("\"slope\"") != std::string::npos);
  CHECK(buffer.str().find("\"window\"") != std::string::npos);
}

TEST_CASE("pulse pair normalization rescales rate fields") {
  const auto fast = ControlPulse::constant(0.5, 700, 4.0, 0.0, 1.0);
  const auto slow = ControlPulse::constant(2.0, 900, 1.0, 0.0, -0.5);
  const auto pair = PulsePair::normalized(fast, slow);
  CHECK(pair.pulse1.grid.same_as(pair.pulse2.grid));
  CHECK(pair.pulse1.grid.t_end == 1.0);
  CHECK(pair.pulse1.omega[10] == doctest::Approx(2.0));   // 4.0 * 0.5
  CHECK(pair.pulse2.omega[10] == doctest::Approx(2.0));   // 1.0 * 2.0
  CHECK(pair.pulse1.delta[10] == doctest::Approx(0.5));
  CHECK(pair.pulse2.delta[10] == doctest::Approx(-1.0));
}
