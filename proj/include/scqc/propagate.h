#pragma once

#include <functional>
#include <vector>

#include "scqc/grid.h"
#include "scqc/matrix.h"
#include "scqc/unitary.h"

namespace scqc {

// Callable contract: Hermitian dim x dim matrix at every t in [0, t_end].
struct HamiltonianSampler {
  int dim = 0;
  std::function<Matrix(double)> at;
};

// Time stepping scheme for the time-ordered exponential.
//  Midpoint - piecewise-constant exponential at the cell midpoint, order 2.
//  Magnus4  - two-point Gauss collocation with commutator correction, order 4.
// Both are exactly unitary per step. Magnus4 is the default; the midpoint
// scheme is kept for its simplicity and as the convergence-order baseline.
enum class Scheme { Midpoint, Magnus4 };

inline constexpr int kDefaultSteps = 2000;
inline constexpr int kMinSteps = 100;

// U(t_end) ~ Texp{-i Int_0^t_end H dt}. Throws ModelError on a non-Hermitian
// sample and GridError when n_steps < 100.
Unitary propagate(const HamiltonianSampler& h, const TimeGrid& grid,
                  Scheme scheme = Scheme::Magnus4);

// U(t_k) at every grid sample; element n_steps equals propagate exactly.
std::vector<Unitary> propagate_checkpointed(const HamiltonianSampler& h,
                                            const TimeGrid& grid,
                                            Scheme scheme = Scheme::Magnus4);

}  // namespace scqc
