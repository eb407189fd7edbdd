#include "scqc/matrix.h"

#include <eigen3/Eigen/Eigenvalues>

#include <array>
#include <cmath>

namespace scqc {

const Matrix& pauli_x() {
  static const Matrix x = [] {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
  }();
  return x;
}

const Matrix& pauli_y() {
  static const Matrix y = [] {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
  }();
  return y;
}

const Matrix& pauli_z() {
  static const Matrix z = [] {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
  }();
  return z;
}

const Matrix& pauli(int k) {
  switch (k) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    case 2: return pauli_z();
    default: throw DimensionError("pauli: index must be 0, 1 or 2");
  }
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(Matrix(m - m.adjoint())) <= tol;
}

Matrix matrix_exp(const Matrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError("matrix_exp: input must be square");
  const Eigen::Index n = a.rows();

  // Pade(13) coefficients.
  static const std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const double theta13 = 5.371920351148152;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const Matrix as = a / std::pow(2.0, squarings);

  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                         b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * id;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

namespace {

// Closed-form exp(-i*s*H) for Hermitian 2x2 via the Pauli decomposition.
Matrix evolution_2x2(const Matrix& h, double s) {
  const double c0 = 0.5 * std::real(h(0, 0) + h(1, 1));
  const double vx = std::real(h(1, 0));
  const double vy = std::imag(h(1, 0));
  const double vz = 0.5 * std::real(h(0, 0) - h(1, 1));
  const double v = std::sqrt(vx * vx + vy * vy + vz * vz);
  const double ang = s * v;
  const double c = std::cos(ang);
  // sin(x)/x, stable near zero
  const double snc = (std::abs(ang) < 1e-8) ? 1.0 - ang * ang / 6.0
                                            : std::sin(ang) / ang;
  const Complex phase = std::exp(Complex(0, -s * c0));
  Matrix u(2, 2);
  const Complex mis = Complex(0, -s) * snc;
  u(0, 0) = phase * (c + mis * vz);
  u(0, 1) = phase * (mis * Complex(vx, -vy));
  u(1, 0) = phase * (mis * Complex(vx, vy));
  u(1, 1) = phase * (c - mis * vz);
  return u;
}

}  // namespace

Matrix hermitian_evolution(const Matrix& h, double scale) {
  if (h.rows() != h.cols())
    throw DimensionError("hermitian_evolution: input must be square");
  if (h.rows() == 2) return evolution_2x2(h, scale);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    phases(k) = std::exp(Complex(0, -scale * w(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace scqc
