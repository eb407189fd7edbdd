#pragma once

#include <eigen3/Eigen/Dense>

#include <complex>

#include "scqc/errors.h"

namespace scqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
const Matrix& pauli(int k);  // 0 -> X, 1 -> Y, 2 -> Z

Matrix identity(int dim);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix dagger(const Matrix& m);

// Largest absolute entry.
double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-10);

// exp(A) for a general square complex matrix, Pade(13) with scaling and
// squaring. Accurate to ~1e-13 for ||A|| <= 10.
Matrix matrix_exp(const Matrix& a);

// exp(-i*scale*H) for Hermitian H; spectral for dim > 2, closed form for 2x2.
// Unitary to roundoff by construction.
Matrix hermitian_evolution(const Matrix& h, double scale);

}  // namespace scqc
