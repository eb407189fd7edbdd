#pragma once

#include <string>
#include <vector>

#include "scqc/matrix.h"
#include "scqc/pulse.h"

namespace scqc {

enum class Parameterization { ArcLength, General };

// Sampled 3D curve with the gauge r(0) = 0 (the constructor translates).
// Curves derived from qubit evolutions are unit speed by construction, since
// the tangent U0^dag Z U0 is a unit Pauli vector; those carry the ArcLength
// tag, which is validated against the samples.
struct SpaceCurve {
  TimeGrid grid;
  std::vector<Vec3> r;
  Parameterization param = Parameterization::General;

  SpaceCurve(TimeGrid g, std::vector<Vec3> points, Parameterization p);

  // All-zero curve; stands in for the zero-duration edge case.
  static SpaceCurve degenerate_point();

  double length() const;  // trapezoidal arc length of the polyline
};

// Largest |speed - 1| over interior samples (4th-order differences); the
// arc-length invariant check used by tests and frame construction.
double max_speed_deviation(const SpaceCurve& curve);

// Unit tangents T(t) = coefficients of U0^dag Z U0 in (X, Y, Z); the noiseless
// propagation uses gamma = 0.
std::vector<Vec3> error_curve_tangents(const ControlPulse& pulse,
                                       Scheme scheme = Scheme::Magnus4);

// r_k(t) = (1/2) Tr[sigma_k Int_0^t U0^dag Z U0 dt'] by trapezoidal
// accumulation of the tangents. Always arc-length tagged.
SpaceCurve error_curve(const ControlPulse& pulse,
                       Scheme scheme = Scheme::Magnus4);

// ||r(T) - r(0)|| <= tol. Coincides with the first-order dephasing
// cancellation criterion.
bool is_closed(const SpaceCurve& curve, double tol);
double closure_gap(const SpaceCurve& curve);

// Spectral norm of Int_0^T U0^dag Z U0 dt; equals the closure gap of the
// error curve (asserted in tests via the independent operator route).
double first_order_error(const ControlPulse& pulse,
                         Scheme scheme = Scheme::Magnus4);

// Vector area A = (1/2) Oint r x dr; second-order dephasing diagnostic.
// Requires closure within 1e-6.
Vec3 signed_area(const SpaceCurve& curve);

// Same, without the closure precondition: the polygon is closed by the final
// chord. Used as an optimizer penalty on nearly-closed curves.
Vec3 signed_area_unchecked(const SpaceCurve& curve);

// beta(t) = -alpha(t); curvature preserved, torsion negated, implemented gate
// conjugated by X.
SpaceCurve point_reflection(const SpaceCurve& curve);

// Resample onto a uniform arc-length grid over [0, L]: output is unit speed
// with the point set and the total length preserved. Inverse map t(s) via
// monotone (Fritsch-Carlson) cubic interpolation, positions via Catmull-Rom.
SpaceCurve arc_length_reparametrize(const SpaceCurve& curve);

// CSV export/import: '#' comments, "t,rx,ry,rz" header.
void write_curve_csv(const std::string& path, const SpaceCurve& curve,
                     const std::vector<std::string>& header_comments = {});

}  // namespace scqc
