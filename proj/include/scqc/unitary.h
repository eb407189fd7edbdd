#pragma once

#include "scqc/matrix.h"

namespace scqc {

// Dense unitary with its dimension; validates ||U^dag U - I||_max < 1e-10 on
// construction so downstream code never has to re-check.
class Unitary {
 public:
  static constexpr double kUnitarityTol = 1e-10;

  explicit Unitary(Matrix u);

  int dim() const { return static_cast<int>(u_.rows()); }
  const Matrix& matrix() const { return u_; }

  Unitary dagger() const;
  Unitary operator*(const Unitary& rhs) const;

 private:
  Matrix u_;
};

// F = (d + |Tr(V^dag U)|^2) / (d (d + 1)); invariant under global phases.
double average_gate_fidelity(const Unitary& u, const Unitary& v);
double average_gate_fidelity(const Matrix& u, const Matrix& v);

// Phase alpha (from the largest-magnitude entry of V^dag U) that best aligns
// V with U.
Complex relative_phase(const Matrix& u, const Matrix& v);

// min_alpha ||U - e^{i alpha} V||_max <= tol, with alpha from relative_phase.
bool equal_up_to_global_phase(const Matrix& u, const Matrix& v, double tol);
bool equal_up_to_global_phase(const Unitary& u, const Unitary& v, double tol);

}  // namespace scqc
