#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace scqc {

// Deterministic uniform doubles from the standardised mt19937_64 stream.
// std::uniform_real_distribution is avoided on purpose: its output is not
// pinned across standard library implementations; (x >> 11) * 2^-53 is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next_u64() { return engine_(); }
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

// Index-parallel loop with deterministic, slot-based aggregation: body(i)
// writes only to its own output slot. threads <= 1 runs serially.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

// n log-spaced values over [lo, hi] inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

// Locale-independent float formatting used by every writer ("%.16e").
std::string format_double(double x);

// FNV-1a over a string; used to stamp output files with a config hash.
std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

// Fourth-order finite-difference derivative of uniformly sampled values.
// Needs at least 5 samples; one-sided stencils of the same order at the ends.
std::vector<double> derivative4(const std::vector<double>& f, double dt);

}  // namespace scqc
