#include "scqc/sweep.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "scqc/util.h"

namespace scqc {

// Values at or below this are treated as numerical noise (roundoff of a few
// thousand unitary products sits near 1e-12) and never enter the fit window.
constexpr double kFitNoiseFloor = 1e-11;

SweepTable fit_sweep(const std::string& axis, std::vector<double> x,
                     std::vector<double> y) {
  const int n = static_cast<int>(x.size());
  if (n != static_cast<int>(y.size()))
    throw FitError("fit_sweep: x/y size mismatch");
  if (n < 4) throw FitError("fit_sweep: need at least 4 grid points");
  for (int i = 0; i < n; ++i)
    if (!(x[i] > 0.0)) throw FitError("fit_sweep: grid must be positive");
  for (int i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) throw FitError("fit_sweep: grid must be ascending");

  // asymptotic window: the lowest decade of resolvable points, widened
  // upward until it holds at least 5 (or all that exist)
  int first = 0;
  while (first < n && y[first] <= kFitNoiseFloor) ++first;
  if (n - first < 4)
    throw FitError("fit_sweep: fewer than 4 points above the noise floor");
  int last = first;
  while (last + 1 < n && x[last + 1] <= 10.0 * x[first] * (1.0 + 1e-12))
    ++last;
  const int min_points = std::min(5, n - first);
  while (last - first + 1 < min_points) ++last;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = last - first + 1;
  for (int i = first; i <= last; ++i) {
    const double lx = std::log10(x[i]);
    const double ly = std::log10(std::max(y[i], kFitNoiseFloor));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) throw FitError("fit_sweep: degenerate abscissa");
  SweepTable table;
  table.axis = axis;
  table.slope = (m * sxy - sx * sy) / denom;
  table.intercept = (sy * sxx - sx * sxy) / denom;
  table.window_first = first;
  table.window_last = last;
  table.x = std::move(x);
  table.y = std::move(y);
  return table;
}

void write_sweep_csv(const std::string& path, const SweepTable& table,
                     const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw ParseError("sweep csv: cannot write " + path);
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << table.axis << ",infidelity\n";
  for (std::size_t i = 0; i < table.x.size(); ++i)
    out << format_double(table.x[i]) << ',' << format_double(table.y[i])
        << "\n";
}

void write_sweep_json(const std::string& path, const SweepTable& table,
                      const std::vector<std::string>& extra_fields) {
  std::ofstream out(path);
  if (!out) throw ParseError("sweep json: cannot write " + path);
  out << "{\n";
  out << "  \"axis\": \"" << table.axis << "\",\n";
  out << "  \"slope\": " << format_double(table.slope) << ",\n";
  out << "  \"intercept\": " << format_double(table.intercept) << ",\n";
  out << "  \"window\": {\"first\": " << table.window_first
      << ", \"last\": " << table.window_last
      << ", \"min\": " << format_double(table.x[table.window_first])
      << ", \"max\": " << format_double(table.x[table.window_last]) << "}";
  for (const auto& field : extra_fields) out << ",\n  " << field;
  out << "\n}\n";
}

}  // namespace scqc
