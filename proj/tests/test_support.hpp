#pragma once

// Fixtures and independent reference computations shared by the test
// binaries. Nothing here calls into the library's distance or resolvent code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "hretract/geometry.hpp"
#include "hretract/space.hpp"
#include "hretract/subset_space.hpp"

namespace hretract::test {

/// Star with center node 0 and unit edges A = 0, B = 1, C = 2 to leaves 1..3.
inline Space star_tree() {
  TreeTopology topo;
  topo.edges = {{0, 0, 1, 1.0}, {1, 0, 2, 1.0}, {2, 0, 3, 1.0}};
  return Space::tree(topo);
}

/// Caterpillar with uneven edge lengths and a branch point away from node 0.
inline Space caterpillar_tree() {
  TreeTopology topo;
  for (int e = 0; e < 5; ++e) topo.edges.push_back({e, e, e + 1, 1.0 + 0.3 * e});
  topo.edges.push_back({5, 2, 6, 0.7});
  topo.edges.push_back({6, 2, 7, 1.1});
  return Space::tree(topo);
}

inline std::vector<Space> all_backends() {
  return {Space::euclidean(2), Space::hyperboloid(2), caterpillar_tree()};
}

inline Tuple line_tuple(std::initializer_list<double> xs) {
  const Space s = Space::euclidean(1);
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(euclidean_point(s, {x}));
  return Tuple(s, std::move(pts));
}

inline FiniteSubset line_set(std::initializer_list<double> xs) {
  const Space s = Space::euclidean(1);
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(euclidean_point(s, {x}));
  return FiniteSubset(s, std::move(pts));
}

/// Tree distance by Dijkstra on the graph where both points are inserted as
/// extra vertices that split their edges.
inline double tree_distance_oracle(const TreeTopology& topo, const TreeLocation& p, const TreeLocation& q) {
  std::map<int, std::vector<std::pair<int, double>>> adj;
  const int np = -1, nq = -2;
  auto link = [&](int a, int b, double w) {
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  };
  for (const auto& e : topo.edges) {
    std::vector<std::pair<double, int>> cuts;
    if (e.id == p.edge) cuts.push_back({p.offset, np});
    if (e.id == q.edge) cuts.push_back({q.offset, nq});
    std::sort(cuts.begin(), cuts.end());
    int prev = e.from;
    double prev_off = 0.0;
    for (const auto& [off, node] : cuts) {
      link(prev, node, off - prev_off);
      prev = node;
      prev_off = off;
    }
    link(prev, e.to, e.length - prev_off);
  }
  std::map<int, double> dist;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0.0, np});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (dist.count(u)) continue;
    dist[u] = d;
    if (u == nq) return d;
    for (const auto& [v, w] : adj[u]) {
      if (!dist.count(v)) heap.push({d + w, v});
    }
  }
  return std::numeric_limits<double>::infinity();
}

/// Hyperboloid distance straight from arcosh(-<p,q>).
inline double hyperboloid_distance_oracle(std::span<const double> p, std::span<const double> q) {
  double m = -p[0] * q[0];
  for (std::size_t i = 1; i < p.size(); ++i) m += p[i] * q[i];
  return std::acosh(std::max(1.0, -m));
}

/// Golden-section minimization of a convex function on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double width = 1e-12) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Brute-force minimizer of |u - v| + (|u - a|^2 + |v - b|^2) / (2 lambda)
/// over u, v in R^dim (dim 1 or 2). With m = (u+v)/2 and w = u - v the
/// objective splits into 2|m - (a+b)/2|^2 / (2 lambda), minimized at
/// m = (a+b)/2, plus the convex |w| + |w - (a-b)|^2 / (4 lambda), which is
/// minimized by nested golden-section search.
inline std::pair<std::vector<double>, std::vector<double>> pair_prox_oracle(const std::vector<double>& a,
                                                                            const std::vector<double>& b,
                                                                            double lambda) {
  const std::size_t dim = a.size();
  std::vector<double> e(dim);
  double radius = 1.0;
  for (std::size_t c = 0; c < dim; ++c) {
    e[c] = a[c] - b[c];
    radius += std::abs(e[c]);
  }
  auto g = [&](double w0, double w1) {
    const double n = std::hypot(w0, w1);
    const double q = (w0 - e[0]) * (w0 - e[0]) + (dim > 1 ? (w1 - e[1]) * (w1 - e[1]) : w1 * w1);
    return n + q / (4.0 * lambda);
  };
  std::vector<double> w(dim);
  if (dim == 1) {
    w[0] = golden_min([&](double w0) { return g(w0, 0.0); }, -radius, radius);
  } else {
    auto inner = [&](double w0) { return golden_min([&](double w1) { return g(w0, w1); }, -radius, radius); };
    w[0] = golden_min([&](double w0) { return g(w0, inner(w0)); }, -radius, radius);
    w[1] = inner(w[0]);
  }
  std::vector<double> u(dim), v(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const double m = 0.5 * (a[c] + b[c]);
    u[c] = m + 0.5 * w[c];
    v[c] = m - 0.5 * w[c];
  }
  return {u, v};
}

inline double max_abs_diff(std::span<const double> x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace hretract::test
