#include "scqc/pulse.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "scqc/util.h"

namespace scqc {

namespace {

double lerp_sample(const TimeGrid& grid, const std::vector<double>& v,
                   double t) {
  const double dt = grid.dt();
  double x = t / dt;
  const int last = grid.n_steps;
  if (x <= 0.0) return v[0];
  if (x >= last) return v[last];
  const int k = static_cast<int>(x);
  const double u = x - k;
  return v[k] * (1.0 - u) + v[k + 1] * u;
}

void check_samples(const TimeGrid& grid, const std::vector<double>& v,
                   const char* name) {
  if (static_cast<int>(v.size()) != grid.n_samples())
    throw GridError(std::string("ControlPulse: ") + name +
                    " sample count does not match grid");
}

}  // namespace

ControlPulse::ControlPulse(TimeGrid g, std::vector<double> om,
                           std::vector<double> ph, std::vector<double> de)
    : grid(g), omega(std::move(om)), phi(std::move(ph)), delta(std::move(de)) {
  check_samples(grid, omega, "omega");
  check_samples(grid, phi, "phi");
  check_samples(grid, delta, "delta");
  for (double w : omega)
    if (w < 0.0)
      throw PreconditionError("ControlPulse: omega must be non-negative");
}

ControlPulse ControlPulse::constant(double t_gate, int n_steps, double om,
                                    double ph, double de) {
  TimeGrid g(t_gate, n_steps);
  const int n = g.n_samples();
  return ControlPulse(g, std::vector<double>(n, om), std::vector<double>(n, ph),
                      std::vector<double>(n, de));
}

double ControlPulse::omega_at(double t) const {
  return lerp_sample(grid, omega, t);
}
double ControlPulse::phi_at(double t) const { return lerp_sample(grid, phi, t); }
double ControlPulse::delta_at(double t) const {
  return lerp_sample(grid, delta, t);
}

ControlPulse ControlPulse::time_normalized(int n_steps) const {
  const double t = grid.t_end;
  TimeGrid g(1.0, n_steps);
  std::vector<double> om(g.n_samples()), ph(g.n_samples()), de(g.n_samples());
  for (int k = 0; k < g.n_samples(); ++k) {
    const double u = g.time(k) * t;
    om[k] = omega_at(u) * t;
    ph[k] = phi_at(u);
    de[k] = delta_at(u) * t;
  }
  return ControlPulse(g, std::move(om), std::move(ph), std::move(de));
}

HamiltonianSampler pulse_hamiltonian(const ControlPulse& pulse, double gamma) {
  ControlPulse p = pulse;  // sampler owns a copy; safe to share across threads
  return HamiltonianSampler{
      2, [p = std::move(p), gamma](double t) -> Matrix {
        const double om = p.omega_at(t);
        const double ph = p.phi_at(t);
        const double dz = 0.5 * (p.delta_at(t) + gamma);
        const double hx = 0.5 * om * std::cos(ph);
        const double hy = 0.5 * om * std::sin(ph);
        Matrix h(2, 2);
        h(0, 0) = dz;
        h(0, 1) = Complex(hx, -hy);
        h(1, 0) = Complex(hx, hy);
        h(1, 1) = -dz;
        return h;
      }};
}

namespace {

double parse_field(const std::string& token, int line_no) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("pulse csv: bad number '" + token + "' on line " +
                     std::to_string(line_no));
  return value;
}

}  // namespace

ControlPulse read_pulse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("pulse csv: cannot open " + path);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<double> t, om, ph, de;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "t,omega,phi,delta")
        throw ParseError("pulse csv: expected header 't,omega,phi,delta' on line " +
                         std::to_string(line_no));
      header_seen = true;
      continue;
    }
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      tokens.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (tokens.size() != 4)
      throw ParseError("pulse csv: expected 4 columns on line " +
                       std::to_string(line_no));
    t.push_back(parse_field(tokens[0], line_no));
    om.push_back(parse_field(tokens[1], line_no));
    ph.push_back(parse_field(tokens[2], line_no));
    de.push_back(parse_field(tokens[3], line_no));
  }
  if (!header_seen) throw ParseError("pulse csv: missing header in " + path);
  if (t.size() < 2)
    throw ParseError("pulse csv: need at least 2 samples in " + path);
  const int n_steps = static_cast<int>(t.size()) - 1;
  if (!(t.front() == 0.0))
    throw ParseError("pulse csv: time must start at 0 in " + path);
  TimeGrid grid(t.back(), n_steps);
  for (int k = 0; k <= n_steps; ++k)
    if (std::abs(t[k] - grid.time(k)) > 1e-9 * (1.0 + grid.t_end))
      throw ParseError("pulse csv: non-uniform time grid near line " +
                       std::to_string(k + 2));
  return ControlPulse(grid, std::move(om), std::move(ph), std::move(de));
}

void write_pulse_csv(const std::string& path, const ControlPulse& pulse,
                     const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw ParseError("pulse csv: cannot write " + path);
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "t,omega,phi,delta\n";
  for (int k = 0; k < pulse.grid.n_samples(); ++k) {
    out << format_double(pulse.grid.time(k)) << ','
        << format_double(pulse.omega[k]) << ',' << format_double(pulse.phi[k])
        << ',' << format_double(pulse.delta[k]) << "\n";
  }
}

}  // namespace scqc
