#include "scqc/curve.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "scqc/util.h"

namespace scqc {

namespace {

// Component-wise 4th-order derivative of vector samples.
std::vector<Vec3> derivative4_vec(const std::vector<Vec3>& f, double dt) {
  const int n = static_cast<int>(f.size());
  std::vector<double> x(n), y(n), z(n);
  for (int k = 0; k < n; ++k) {
    x[k] = f[k].x();
    y[k] = f[k].y();
    z[k] = f[k].z();
  }
  const auto dx = derivative4(x, dt);
  const auto dy = derivative4(y, dt);
  const auto dz = derivative4(z, dt);
  std::vector<Vec3> d(n);
  for (int k = 0; k < n; ++k) d[k] = Vec3(dx[k], dy[k], dz[k]);
  return d;
}

}  // namespace

SpaceCurve::SpaceCurve(TimeGrid g, std::vector<Vec3> points, Parameterization p)
    : grid(g), r(std::move(points)), param(p) {
  if (static_cast<int>(r.size()) != grid.n_samples())
    throw GridError("SpaceCurve: sample count does not match grid");
  const Vec3 origin = r[0];
  for (auto& v : r) v -= origin;  // gauge: r(0) = 0
}

double max_speed_deviation(const SpaceCurve& curve) {
  if (curve.r.size() < 5) return 0.0;
  const auto d = derivative4_vec(curve.r, curve.grid.dt());
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < d.size(); ++k)
    worst = std::max(worst, std::abs(d[k].norm() - 1.0));
  return worst;
}

SpaceCurve SpaceCurve::degenerate_point() {
  TimeGrid g(1.0, 1);
  return SpaceCurve(g, std::vector<Vec3>(2, Vec3::Zero()),
                    Parameterization::General);
}

double SpaceCurve::length() const {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) s += (r[k + 1] - r[k]).norm();
  return s;
}

std::vector<Vec3> error_curve_tangents(const ControlPulse& pulse,
                                       Scheme scheme) {
  const auto checkpoints =
      propagate_checkpointed(pulse_hamiltonian(pulse, 0.0), pulse.grid, scheme);
  std::vector<Vec3> tangents;
  tangents.reserve(checkpoints.size());
  const Matrix& z = pauli_z();
  for (const auto& u : checkpoints) {
    const Matrix w = u.matrix().adjoint() * z * u.matrix();
    tangents.emplace_back(0.5 * std::real((pauli_x() * w).trace()),
                          0.5 * std::real((pauli_y() * w).trace()),
                          0.5 * std::real((pauli_z() * w).trace()));
  }
  return tangents;
}

SpaceCurve error_curve(const ControlPulse& pulse, Scheme scheme) {
  const auto tangents = error_curve_tangents(pulse, scheme);
  const double dt = pulse.grid.dt();
  std::vector<Vec3> r(tangents.size());
  r[0] = Vec3::Zero();
  for (std::size_t k = 0; k + 1 < tangents.size(); ++k)
    r[k + 1] = r[k] + 0.5 * dt * (tangents[k] + tangents[k + 1]);
  return SpaceCurve(pulse.grid, std::move(r), Parameterization::ArcLength);
}

double closure_gap(const SpaceCurve& curve) {
  return (curve.r.back() - curve.r.front()).norm();
}

bool is_closed(const SpaceCurve& curve, double tol) {
  if (curve.r.size() < 2) return true;
  return closure_gap(curve) <= tol;
}

double first_order_error(const ControlPulse& pulse, Scheme scheme) {
  const auto checkpoints =
      propagate_checkpointed(pulse_hamiltonian(pulse, 0.0), pulse.grid, scheme);
  const double dt = pulse.grid.dt();
  Matrix acc = Matrix::Zero(2, 2);
  Matrix prev = checkpoints[0].matrix().adjoint() * pauli_z() *
                checkpoints[0].matrix();
  for (std::size_t k = 1; k < checkpoints.size(); ++k) {
    const Matrix cur = checkpoints[k].matrix().adjoint() * pauli_z() *
                       checkpoints[k].matrix();
    acc += 0.5 * dt * (prev + cur);
    prev = cur;
  }
  // Hermitian 2x2: spectral norm = largest |eigenvalue|.
  Eigen::SelfAdjointEigenSolver<Matrix> es(acc);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Vec3 signed_area_unchecked(const SpaceCurve& curve) {
  Vec3 area = Vec3::Zero();
  for (std::size_t k = 0; k + 1 < curve.r.size(); ++k)
    area += 0.5 * curve.r[k].cross(curve.r[k + 1]);
  // closing chord back to r(0) = 0 contributes nothing
  return area;
}

Vec3 signed_area(const SpaceCurve& curve) {
  if (!is_closed(curve, 1e-6))
    throw PreconditionError("signed_area: curve is not closed (gap = " +
                            std::to_string(closure_gap(curve)) + ")");
  return signed_area_unchecked(curve);
}

SpaceCurve point_reflection(const SpaceCurve& curve) {
  std::vector<Vec3> r(curve.r.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = -curve.r[k];
  return SpaceCurve(curve.grid, std::move(r), curve.param);
}

namespace {

// Fritsch-Carlson monotone cubic through strictly increasing (x, y).
struct MonotoneCubic {
  std::vector<double> x, y, m;

  MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
      : x(std::move(xs)), y(std::move(ys)) {
    const int n = static_cast<int>(x.size());
    std::vector<double> d(n - 1);
    for (int k = 0; k < n - 1; ++k) d[k] = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    m.resize(n);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (int k = 1; k < n - 1; ++k)
      m[k] = (d[k - 1] * d[k] <= 0.0) ? 0.0 : 0.5 * (d[k - 1] + d[k]);
    for (int k = 0; k < n - 1; ++k) {
      if (d[k] == 0.0) {
        m[k] = m[k + 1] = 0.0;
        continue;
      }
      const double a = m[k] / d[k], b = m[k + 1] / d[k];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        m[k] = tau * a * d[k];
        m[k + 1] = tau * b * d[k];
      }
    }
  }

  double eval(double xq) const {
    const int n = static_cast<int>(x.size());
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (x[mid] <= xq ? lo : hi) = mid;
    }
    const double h = x[lo + 1] - x[lo];
    const double t = (xq - x[lo]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y[lo] * (2 * t3 - 3 * t2 + 1) + h * m[lo] * (t3 - 2 * t2 + t) +
           y[lo + 1] * (-2 * t3 + 3 * t2) + h * m[lo + 1] * (t3 - t2);
  }
};

// Catmull-Rom on uniform samples; query x in index units.
Vec3 catmull_uniform(const std::vector<Vec3>& f, double x) {
  const int n = static_cast<int>(f.size());
  int k = static_cast<int>(std::floor(x));
  k = std::clamp(k, 0, n - 2);
  const double u = x - k;
  const Vec3& p1 = f[k];
  const Vec3& p2 = f[k + 1];
  const Vec3 m1 =
      (k > 0) ? Vec3(0.5 * (f[k + 1] - f[k - 1])) : Vec3(f[k + 1] - f[k]);
  const Vec3 m2 =
      (k + 2 < n) ? Vec3(0.5 * (f[k + 2] - f[k])) : Vec3(f[k + 1] - f[k]);
  const double u2 = u * u, u3 = u2 * u;
  return p1 * (2 * u3 - 3 * u2 + 1) + m1 * (u3 - 2 * u2 + u) +
         p2 * (-2 * u3 + 3 * u2) + m2 * (u3 - u2);
}

}  // namespace

SpaceCurve arc_length_reparametrize(const SpaceCurve& curve) {
  const int n = static_cast<int>(curve.r.size());
  if (n < 5)
    throw ReparameterizationError("arc_length_reparametrize: curve too short");
  const double dt = curve.grid.dt();

  // cumulative length by integrating the speed (trapezoid over 4th-order
  // difference norms)
  const auto dr = derivative4_vec(curve.r, dt);
  std::vector<double> s(n, 0.0);
  for (int k = 0; k < n - 1; ++k)
    s[k + 1] = s[k] + 0.5 * dt * (dr[k].norm() + dr[k + 1].norm());
  const double total = s.back();
  if (!(total > 0.0))
    throw ReparameterizationError(
        "arc_length_reparametrize: curve has zero length");

  // a single stalled cell is tolerated; longer plateaus are an error
  const double eps = 1e-12 * total;
  int run = 0;
  for (int k = 0; k < n - 1; ++k) {
    if (s[k + 1] - s[k] <= eps) {
      if (++run >= 2)
        throw ReparameterizationError(
            "arc_length_reparametrize: zero-speed plateau near t = " +
            std::to_string(curve.grid.time(k)));
    } else {
      run = 0;
    }
  }

  // strictly increasing subset for the inverse map t(s)
  std::vector<double> sk, tk;
  sk.reserve(n);
  tk.reserve(n);
  sk.push_back(s[0]);
  tk.push_back(0.0);
  for (int k = 1; k < n; ++k) {
    if (s[k] - sk.back() > eps) {
      sk.push_back(s[k]);
      tk.push_back(curve.grid.time(k));
    }
  }
  if (sk.size() < 2)
    throw ReparameterizationError("arc_length_reparametrize: degenerate curve");
  sk.back() = total;
  const MonotoneCubic inverse(std::move(sk), std::move(tk));

  std::vector<Vec3> out(n);
  for (int j = 0; j < n; ++j) {
    const double sj = total * static_cast<double>(j) / (n - 1);
    const double tj = inverse.eval(sj);
    out[j] = catmull_uniform(curve.r, tj / dt);
  }
  TimeGrid grid(total, n - 1);
  return SpaceCurve(grid, std::move(out), Parameterization::ArcLength);
}

void write_curve_csv(const std::string& path, const SpaceCurve& curve,
                     const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw ParseError("curve csv: cannot write " + path);
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "t,rx,ry,rz\n";
  for (int k = 0; k < curve.grid.n_samples(); ++k) {
    out << format_double(curve.grid.time(k)) << ','
        << format_double(curve.r[k].x()) << ',' << format_double(curve.r[k].y())
        << ',' << format_double(curve.r[k].z()) << "\n";
  }
}

}  // namespace scqc
