#include "scqc/util.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "scqc/errors.h"

namespace scqc {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (n <= 0) return;
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([=, &body] {
      for (int i = w; i < n; i += threads) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo))
    throw FitError("log_grid: need 0 < lo < hi");
  if (n < 2) throw FitError("log_grid: need at least 2 points");
  std::vector<double> out(n);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < n; ++i)
    out[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<double> derivative4(const std::vector<double>& f, double dt) {
  const int n = static_cast<int>(f.size());
  if (n < 5) throw GridError("derivative4: need at least 5 samples");
  std::vector<double> d(n);
  const double inv12h = 1.0 / (12.0 * dt);
  d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) * inv12h;
  d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) * inv12h;
  for (int k = 2; k < n - 2; ++k)
    d[k] = (-f[k + 2] + 8 * f[k + 1] - 8 * f[k - 1] + f[k - 2]) * inv12h;
  d[n - 2] =
      (3 * f[n - 1] + 10 * f[n - 2] - 18 * f[n - 3] + 6 * f[n - 4] - f[n - 5]) *
      inv12h;
  d[n - 1] = (25 * f[n - 1] - 48 * f[n - 2] + 36 * f[n - 3] - 16 * f[n - 4] +
              3 * f[n - 5]) *
             inv12h;
  return d;
}

}  // namespace scqc
