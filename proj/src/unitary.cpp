#include "scqc/unitary.h"

#include <cmath>
#include <string>

namespace scqc {

Unitary::Unitary(Matrix u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols())
    throw DimensionError("Unitary: matrix must be square");
  if (u_.rows() < 1) throw DimensionError("Unitary: empty matrix");
  const double defect =
      max_abs(Matrix(u_.adjoint() * u_ - Matrix::Identity(u_.rows(), u_.cols())));
  if (defect >= kUnitarityTol)
    throw ModelError("Unitary: unitarity defect " + std::to_string(defect));
}

Unitary Unitary::dagger() const { return Unitary(Matrix(u_.adjoint())); }

Unitary Unitary::operator*(const Unitary& rhs) const {
  if (dim() != rhs.dim())
    throw DimensionError("Unitary: dimension mismatch in product");
  return Unitary(Matrix(u_ * rhs.u_));
}

double average_gate_fidelity(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw DimensionError("average_gate_fidelity: dimension mismatch");
  const double d = static_cast<double>(u.rows());
  const Complex tr = (v.adjoint() * u).trace();
  return (d + std::norm(tr)) / (d * (d + 1.0));
}

double average_gate_fidelity(const Unitary& u, const Unitary& v) {
  return average_gate_fidelity(u.matrix(), v.matrix());
}

Complex relative_phase(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimensionError("relative_phase: dimension mismatch");
  const Matrix w = v.adjoint() * u;
  Eigen::Index imax = 0, jmax = 0;
  w.cwiseAbs().maxCoeff(&imax, &jmax);
  const Complex entry = w(imax, jmax);
  const double mag = std::abs(entry);
  if (mag == 0.0) return Complex(1, 0);
  return entry / mag;
}

bool equal_up_to_global_phase(const Matrix& u, const Matrix& v, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimensionError("equal_up_to_global_phase: dimension mismatch");
  const Complex phase = relative_phase(u, v);
  return max_abs(Matrix(u - phase * v)) <= tol;
}

bool equal_up_to_global_phase(const Unitary& u, const Unitary& v, double tol) {
  return equal_up_to_global_phase(u.matrix(), v.matrix(), tol);
}

}  // namespace scqc
