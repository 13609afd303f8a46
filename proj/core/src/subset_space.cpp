#include "hretract/subset_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hretract/geometry.hpp"
#include "hretract/serialization.hpp"

namespace hretract {

namespace {

// Distances this close (relative) count as a tie in order_tuple.
constexpr double kTieTolerance = 1e-12;

void require_same_space(const Space& a, const Space& b, const char* what) {
  if (!(a == b)) throw ValidationError(std::string(what) + ": space mismatch");
}

// Single-linkage clustering in discovery order, each cluster reduced to its
// running midpoint.
std::vector<Point> cluster_representatives(const Space& space, const std::vector<Point>& pts, double tol) {
  const std::size_t n = pts.size();
  std::vector<bool> assigned(n, false);
  std::vector<Point> reps;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (assigned[seed]) continue;
    assigned[seed] = true;
    std::vector<std::size_t> members{seed};
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!assigned[k] && distance(space, pts[members[head]], pts[k]) <= tol) {
          assigned[k] = true;
          members.push_back(k);
        }
      }
    }
    Point rep = pts[members.front()];
    for (std::size_t m = 1; m < members.size(); ++m) rep = geodesic_point(space, rep, pts[members[m]], 0.5);
    reps.push_back(std::move(rep));
  }
  return reps;
}

bool has_close_pair(const Space& space, const std::vector<Point>& pts, double tol) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (distance(space, pts[i], pts[j]) <= tol) return true;
    }
  }
  return false;
}

template <typename Reduce>
double pairwise_extreme(const Tuple& x, const char* what, Reduce reduce, double init) {
  if (x.size() < 2) throw ValidationError(std::string(what) + ": tuple needs at least 2 coordinates");
  double v = init;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) v = reduce(v, distance(x.space(), x[i], x[j]));
  }
  return v;
}

}  // namespace

Tuple::Tuple(Space space, std::vector<Point> coords) : space_(std::move(space)), coords_(std::move(coords)) {
  if (coords_.empty()) throw ValidationError("tuple: at least one coordinate is required");
  for (const auto& p : coords_) validate(space_, p);
}

FiniteSubset::FiniteSubset(Space space, std::vector<Point> points, double dedup_tolerance)
    : space_(std::move(space)), dedup_tolerance_(dedup_tolerance) {
  if (!(dedup_tolerance >= 0.0)) throw ValidationError("finite subset: dedup tolerance must be >= 0");
  if (points.empty()) throw ValidationError("empty set");
  for (auto& p : points) {
    validate(space_, p);
    const bool duplicate = std::any_of(points_.begin(), points_.end(), [&](const Point& kept) {
      return distance(space_, kept, p) <= dedup_tolerance_;
    });
    if (!duplicate) points_.push_back(std::move(p));
  }
}

double hausdorff_distance(const FiniteSubset& a, const FiniteSubset& b) {
  require_same_space(a.space(), b.space(), "hausdorff_distance");
  const Space& space = a.space();
  auto directed = [&space](const FiniteSubset& from, const FiniteSubset& to) {
    double worst = 0.0;
    for (const auto& p : from.points()) {
      double nearest = INFINITY;
      for (const auto& q : to.points()) nearest = std::min(nearest, distance(space, p, q));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double product_distance(const Tuple& x, const Tuple& y) {
  require_same_space(x.space(), y.space(), "product_distance");
  if (x.size() != y.size()) {
    throw ValidationError("product_distance: tuple lengths " + std::to_string(x.size()) + " and " +
                          std::to_string(y.size()) + " differ");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += std::pow(distance(x.space(), x[j], y[j]), 2);
  return std::sqrt(s);
}

double min_gap(const Tuple& x) {
  return pairwise_extreme(x, "min_gap", [](double a, double b) { return std::min(a, b); }, INFINITY);
}

double max_spread(const Tuple& x) {
  return pairwise_extreme(x, "max_spread", [](double a, double b) { return std::max(a, b); }, 0.0);
}

FiniteSubset to_set(const Tuple& x, double tol) {
  if (!(tol >= 0.0)) throw ValidationError("to_set: tolerance must be >= 0");
  std::vector<Point> reps = cluster_representatives(x.space(), x.coords(), tol);
  // Midpoints of separate clusters can still land within tol of each other.
  while (reps.size() > 1 && has_close_pair(x.space(), reps, tol)) {
    reps = cluster_representatives(x.space(), reps, tol);
  }
  return FiniteSubset(x.space(), std::move(reps), tol);
}

FiniteSubset embed(const FiniteSubset& a) { return a; }

std::string serialize_key(const Point& p) { return point_to_json(p).dump(); }

Tuple order_tuple(const FiniteSubset& a, std::size_t n) {
  if (a.size() > n) {
    throw ValidationError("order_tuple: set of size " + std::to_string(a.size()) + " does not fit in " +
                          std::to_string(n) + " coordinates");
  }
  const Space& space = a.space();
  std::vector<std::pair<std::string, Point>> keyed;
  keyed.reserve(a.size());
  for (const auto& p : a.points()) keyed.emplace_back(serialize_key(p), p);
  std::sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

  std::vector<Point> coords;
  coords.reserve(n);
  if (keyed.size() >= 2) {
    // keyed is sorted, so (i, j) with i < j is already the (smaller, larger)
    // key order and iteration order is lexicographic in the pair key.
    std::size_t bi = 0, bj = 1;
    double best = distance(space, keyed[0].second, keyed[1].second);
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      for (std::size_t j = i + 1; j < keyed.size(); ++j) {
        const double d = distance(space, keyed[i].second, keyed[j].second);
        if (d < best * (1.0 - kTieTolerance)) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    coords.push_back(keyed[bi].second);
    coords.push_back(keyed[bj].second);
    for (std::size_t k = 0; k < keyed.size(); ++k) {
      if (k != bi && k != bj) coords.push_back(keyed[k].second);
    }
  } else {
    coords.push_back(keyed.front().second);
  }
  while (coords.size() < n) coords.push_back(coords.back());
  return Tuple(space, std::move(coords));
}

}  // namespace hretract
