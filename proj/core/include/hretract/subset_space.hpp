#pragma once

#include <cstddef>
#include <vector>

#include "hretract/space.hpp"

namespace hretract {

/// Ordered n-tuple of points: an element of the product space H^n with the
/// l2 product metric.
class Tuple {
 public:
  Tuple(Space space, std::vector<Point> coords);

  const Space& space() const { return space_; }
  std::size_t size() const { return coords_.size(); }
  const Point& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Point>& coords() const { return coords_; }

  /// Replaces one coordinate. The caller guarantees `p` belongs to space().
  void set(std::size_t i, Point p) { coords_[i] = std::move(p); }

 private:
  Space space_;
  std::vector<Point> coords_;
};

/// Canonical finite subset of a space: non-empty, and no two stored points
/// lie within `dedup_tolerance` of each other (points closer than that to an
/// earlier point are dropped on construction).
class FiniteSubset {
 public:
  FiniteSubset(Space space, std::vector<Point> points, double dedup_tolerance = 0.0);

  const Space& space() const { return space_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  double dedup_tolerance() const { return dedup_tolerance_; }

 private:
  Space space_;
  std::vector<Point> points_;
  double dedup_tolerance_;
};

double hausdorff_distance(const FiniteSubset& a, const FiniteSubset& b);

/// sqrt(sum_j d(x_j, y_j)^2).
double product_distance(const Tuple& x, const Tuple& y);

/// delta(x): smallest pairwise coordinate distance. Requires n >= 2.
double min_gap(const Tuple& x);
/// Delta(x): largest pairwise coordinate distance. Requires n >= 2.
double max_spread(const Tuple& x);

/// The set {x} of a tuple. Coordinates within `tol` of each other are chained
/// into single-linkage clusters, and each cluster collapses to the running
/// midpoint of its members in discovery order.
FiniteSubset to_set(const Tuple& x, double tol);

/// Canonical inclusion H(n-1) -> H(n); the set itself is unchanged.
FiniteSubset embed(const FiniteSubset& a);

/// Deterministic numbering of a set as an n-tuple. When the set has at least
/// two points, coordinates 0 and 1 realize its minimum gap; the remaining
/// points follow in the order of their canonical JSON serialization, and ties
/// are broken on that serialization too. Sets smaller than n are padded by
/// repeating the last coordinate.
Tuple order_tuple(const FiniteSubset& a, std::size_t n);

/// Canonical JSON text of a point; the sort key used by order_tuple.
std::string serialize_key(const Point& p);

}  // namespace hretract
