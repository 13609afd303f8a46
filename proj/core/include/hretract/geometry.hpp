#pragma once

#include <array>
#include <cstdint>

#include "hretract/space.hpp"

namespace hretract {

/// Geodesic distance between two points of `space`.
///
/// Euclidean: norm of the difference. Hyperboloid: arcosh(-<p,q>), evaluated
/// as 2*asinh(|p-q|_M / 2) for accuracy at short range. Tree: length of the
/// unique path, which leaves each edge through exactly one endpoint.
double distance(const Space& space, const Point& p, const Point& q);

/// The point x_t on the geodesic [p, q] with d(p, x_t) = t * d(p, q).
/// t = 0 and t = 1 return the endpoints exactly.
Point geodesic_point(const Space& space, const Point& p, const Point& q, double t);

/// Point at distance min(step, d(p,q)) from p toward q.
Point move_toward(const Space& space, const Point& p, const Point& q, double step);

using Planar = std::array<double, 2>;

/// Comparison triangle for side lengths d(p,q), d(q,r), d(p,r): p at the
/// origin, q on the positive horizontal axis, r in the closed upper half
/// plane. Returns false for degenerate input (a zero side).
bool comparison_triangle(double pq, double qr, double pr, Planar& p, Planar& q, Planar& r);

struct Cat0AuditReport {
  int trials = 0;
  int skipped_degenerate = 0;
  /// Positive values mean the inequality is broken by that amount.
  double cat0_inequality = -1e300;
  double comparison_inequality = -1e300;
  double joint_convexity = -1e300;

  double max_violation() const;
};

/// Randomized check of the CAT(0) inequality, the comparison-triangle form and
/// joint convexity of the metric along pairs of geodesics.
Cat0AuditReport cat0_audit(const Space& space, std::uint64_t seed, int trials);

}  // namespace hretract
