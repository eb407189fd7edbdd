#pragma once

#include <cmath>

#include "scqc/errors.h"

namespace scqc {

// Uniform time grid on [0, t_end] with n_steps cells (n_steps + 1 samples).
struct TimeGrid {
  double t_end = 0.0;
  int n_steps = 0;

  TimeGrid(double t_end_, int n_steps_) : t_end(t_end_), n_steps(n_steps_) {
    if (!(t_end > 0.0)) throw GridError("TimeGrid: t_end must be positive");
    if (n_steps < 1) throw GridError("TimeGrid: n_steps must be >= 1");
  }

  double dt() const { return t_end / n_steps; }
  int n_samples() const { return n_steps + 1; }
  double time(int k) const { return t_end * static_cast<double>(k) / n_steps; }

  bool same_as(const TimeGrid& other, double tol = 1e-12) const {
    return n_steps == other.n_steps &&
           std::abs(t_end - other.t_end) <= tol * (1.0 + std::abs(t_end));
  }
};

}  // namespace scqc
