#include "hretract/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hretract/sampling.hpp"

namespace hretract {

namespace {

void check_pair(const Space& space, const Point& p, const Point& q) {
  if (p.kind() != space.kind() || q.kind() != space.kind()) {
    throw ValidationError("backend mismatch between point and space (" + std::string(to_string(space.kind())) + ")");
  }
  if (space.kind() != SpaceKind::tree &&
      (p.coords().size() != space.coordinate_count() || q.coords().size() != space.coordinate_count())) {
    throw ValidationError("point dimension does not match space");
  }
}

// Cheapest way to leave p's edge and enter q's edge: through which endpoint
// of each, and the partial lengths on both edges.
struct TreeRoute {
  std::size_t exit_node;
  std::size_t entry_node;
  double exit_cost;
  double entry_cost;
  double total;
};

TreeRoute tree_route(const MetricTree& tree, std::size_t kp, double s, std::size_t kq, double t) {
  const double lp = tree.edge(kp).length;
  const double lq = tree.edge(kq).length;
  const std::array<std::pair<std::size_t, double>, 2> exits{
      {{tree.edge_from(kp), s}, {tree.edge_to(kp), lp - s}}};
  const std::array<std::pair<std::size_t, double>, 2> entries{
      {{tree.edge_from(kq), t}, {tree.edge_to(kq), lq - t}}};
  TreeRoute best{0, 0, 0.0, 0.0, INFINITY};
  for (auto [u, cu] : exits) {
    for (auto [w, cw] : entries) {
      const double total = cu + tree.node_distance(u, w) + cw;
      if (total < best.total) best = {u, w, cu, cw, total};
    }
  }
  return best;
}

double tree_distance(const Space& space, const Point& p, const Point& q) {
  const MetricTree& tree = space.metric_tree();
  const std::size_t kp = tree.edge_index(p.location().edge);
  const std::size_t kq = tree.edge_index(q.location().edge);
  const double s = p.location().offset;
  const double t = q.location().offset;
  if (kp == kq) return std::abs(s - t);
  return tree_route(tree, kp, s, kq, t).total;
}

// Point at distance `along` from node `start` on edge k.
Point on_edge_from(const Space& space, std::size_t k, std::size_t start, double along) {
  const MetricTree& tree = space.metric_tree();
  const TreeEdge& e = tree.edge(k);
  along = std::clamp(along, 0.0, e.length);
  return tree_point(space, e.id, tree.edge_from(k) == start ? along : e.length - along);
}

Point tree_geodesic(const Space& space, const Point& p, const Point& q, double t) {
  const MetricTree& tree = space.metric_tree();
  const std::size_t kp = tree.edge_index(p.location().edge);
  const std::size_t kq = tree.edge_index(q.location().edge);
  const double sp = p.location().offset;
  const double sq = q.location().offset;
  if (kp == kq) {
    const double off = std::clamp(sp + t * (sq - sp), 0.0, tree.edge(kp).length);
    return tree_point(space, p.location().edge, off);
  }
  const TreeRoute route = tree_route(tree, kp, sp, kq, sq);
  double remaining = t * route.total;

  if (remaining <= route.exit_cost) {
    const TreeEdge& e = tree.edge(kp);
    const double off = tree.edge_from(kp) == route.exit_node ? sp - remaining : sp + remaining;
    return tree_point(space, e.id, std::clamp(off, 0.0, e.length));
  }
  remaining -= route.exit_cost;

  std::size_t node = route.exit_node;
  for (std::size_t k : tree.edge_path(route.exit_node, route.entry_node)) {
    const double len = tree.edge(k).length;
    if (remaining <= len) return on_edge_from(space, k, node, remaining);
    remaining -= len;
    node = tree.edge_from(k) == node ? tree.edge_to(k) : tree.edge_from(k);
  }
  return on_edge_from(space, kq, route.entry_node, remaining);
}

double hyperboloid_distance(const Point& p, const Point& q) {
  // <p-q, p-q> = 4 sinh^2(d/2) on the sheet.
  const auto a = p.coords();
  const auto b = q.coords();
  double m = -(a[0] - b[0]) * (a[0] - b[0]);
  for (std::size_t i = 1; i < a.size(); ++i) m += (a[i] - b[i]) * (a[i] - b[i]);
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(m, 0.0)));
}

Point hyperboloid_geodesic(const Space& space, const Point& p, const Point& q, double t) {
  const double theta = hyperboloid_distance(p, q);
  if (theta == 0.0) return p;
  double a = 1.0 - t;
  double b = t;
  if (theta > 1e-8) {
    const double sh = std::sinh(theta);
    a = std::sinh((1.0 - t) * theta) / sh;
    b = std::sinh(t * theta) / sh;
  }
  std::vector<double> c(p.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a * p[i] + b * q[i];
  return reproject(space, Point::raw_vector(SpaceKind::hyperboloid, std::move(c)));
}

}  // namespace

double distance(const Space& space, const Point& p, const Point& q) {
  check_pair(space, p, q);
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.coords().size(); ++i) {
        const double d = p[i] - q[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case SpaceKind::hyperboloid:
      return hyperboloid_distance(p, q);
    case SpaceKind::tree:
      return tree_distance(space, p, q);
  }
  return 0.0;
}

Point geodesic_point(const Space& space, const Point& p, const Point& q, double t) {
  check_pair(space, p, q);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ValidationError("geodesic_point: t = " + std::to_string(t) + " outside [0, 1]");
  }
  if (t == 0.0) return p;
  if (t == 1.0) return q;
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      std::vector<double> c(p.coords().size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i] + t * (q[i] - p[i]);
      return Point::raw_vector(SpaceKind::euclidean, std::move(c));
    }
    case SpaceKind::hyperboloid:
      return hyperboloid_geodesic(space, p, q, t);
    case SpaceKind::tree:
      return tree_geodesic(space, p, q, t);
  }
  return p;
}

Point move_toward(const Space& space, const Point& p, const Point& q, double step) {
  const double d = distance(space, p, q);
  if (d == 0.0 || step <= 0.0) return p;
  if (step >= d) return q;
  return geodesic_point(space, p, q, step / d);
}

bool comparison_triangle(double pq, double qr, double pr, Planar& p, Planar& q, Planar& r) {
  constexpr double kDegenerate = 1e-12;
  if (pq <= kDegenerate || qr <= kDegenerate || pr <= kDegenerate) return false;
  p = {0.0, 0.0};
  q = {pq, 0.0};
  const double x = (pq * pq + pr * pr - qr * qr) / (2.0 * pq);
  r = {x, std::sqrt(std::max(0.0, pr * pr - x * x))};
  return true;
}

double Cat0AuditReport::max_violation() const {
  return std::max({cat0_inequality, comparison_inequality, joint_convexity});
}

Cat0AuditReport cat0_audit(const Space& space, std::uint64_t seed, int trials) {
  if (trials < 1) throw ValidationError("cat0_audit: trials must be >= 1");
  Cat0AuditReport report;
  report.trials = trials;
  for (int i = 0; i < trials; ++i) {
    Rng rng = make_rng(seed, 0xCA70, static_cast<std::uint64_t>(i));

    {
      const Point z = sample_point(space, rng);
      const Point x0 = sample_point(space, rng);
      const Point x1 = sample_point(space, rng);
      const double t = uniform01(rng);
      const Point xt = geodesic_point(space, x0, x1, t);
      const double lhs = std::pow(distance(space, z, xt), 2);
      const double rhs = (1.0 - t) * std::pow(distance(space, z, x0), 2) +
                         t * std::pow(distance(space, z, x1), 2) -
                         t * (1.0 - t) * std::pow(distance(space, x0, x1), 2);
      report.cat0_inequality = std::max(report.cat0_inequality, lhs - rhs);
    }

    {
      const Point p = sample_point(space, rng);
      const Point q = sample_point(space, rng);
      const Point r = sample_point(space, rng);
      const double t = uniform01(rng);
      const double s = uniform01(rng);
      Planar pb{}, qb{}, rb{};
      if (comparison_triangle(distance(space, p, q), distance(space, q, r), distance(space, p, r), pb, qb, rb)) {
        const Point x = geodesic_point(space, p, q, t);
        const Point y = geodesic_point(space, p, r, s);
        const Planar xb{(1.0 - t) * pb[0] + t * qb[0], (1.0 - t) * pb[1] + t * qb[1]};
        const Planar yb{(1.0 - s) * pb[0] + s * rb[0], (1.0 - s) * pb[1] + s * rb[1]};
        const double planar = std::hypot(xb[0] - yb[0], xb[1] - yb[1]);
        report.comparison_inequality = std::max(report.comparison_inequality, distance(space, x, y) - planar);
      } else {
        ++report.skipped_degenerate;
      }
    }

    {
      const Point x0 = sample_point(space, rng);
      const Point x1 = sample_point(space, rng);
      const Point y0 = sample_point(space, rng);
      const Point y1 = sample_point(space, rng);
      const double t = uniform01(rng);
      const double lhs = distance(space, geodesic_point(space, x0, x1, t), geodesic_point(space, y0, y1, t));
      const double rhs = (1.0 - t) * distance(space, x0, y0) + t * distance(space, x1, y1);
      report.joint_convexity = std::max(report.joint_convexity, lhs - rhs);
    }
  }
  return report;
}

}  // namespace hretract
