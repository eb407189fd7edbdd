#pragma once

#include <string>
#include <vector>

#include "scqc/errors.h"

namespace scqc {

// Grid of noise strengths with per-point results and a log-log slope fitted
// over the asymptotic (small-noise) window.
struct SweepTable {
  std::string axis;  // "xi" or "gamma"
  std::vector<double> x;
  std::vector<double> y;
  double slope = 0.0;
  double intercept = 0.0;
  int window_first = 0;
  int window_last = 0;
};

// Least-squares log-log fit over the asymptotic window: the lowest decade of
// points that resolve above the numerical noise floor (1e-11; the roundoff
// of a few thousand accumulated unitary products), widened upward to at
// least 5 points. Throws FitError when fewer than 4 grid points exist or
// fewer than 4 rise above the floor.
SweepTable fit_sweep(const std::string& axis, std::vector<double> x,
                     std::vector<double> y);

void write_sweep_csv(const std::string& path, const SweepTable& table,
                     const std::vector<std::string>& header_comments = {});
void write_sweep_json(const std::string& path, const SweepTable& table,
                      const std::vector<std::string>& extra_fields = {});

}  // namespace scqc
