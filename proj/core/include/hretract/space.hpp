#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hretract {

/// Raised for any input that violates a documented precondition: malformed
/// points, mismatched spaces, bad indices, out-of-range parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SpaceKind { euclidean, hyperboloid, tree };

std::string_view to_string(SpaceKind kind);

struct TreeEdge {
  int id = 0;
  int from = 0;
  int to = 0;
  double length = 1.0;
};

/// Raw description of a metric tree as read from input. Node ids are taken
/// from the edge endpoints when `nodes` is empty.
struct TreeTopology {
  std::vector<int> nodes;
  std::vector<TreeEdge> edges;
};

/// A validated metric tree with precomputed node-to-node distances.
///
/// Construction checks that the graph is connected and acyclic and that every
/// edge has a strictly positive length. Node and edge ids are arbitrary
/// integers; internally everything is addressed by dense indices.
class MetricTree {
 public:
  explicit MetricTree(TreeTopology topology);

  const TreeTopology& topology() const { return topology_; }
  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t edge_count() const { return topology_.edges.size(); }

  /// Dense index of an edge id; throws ValidationError for unknown ids.
  std::size_t edge_index(int edge_id) const;
  const TreeEdge& edge(std::size_t index) const { return topology_.edges[index]; }
  std::size_t edge_from(std::size_t index) const { return edge_nodes_[index].first; }
  std::size_t edge_to(std::size_t index) const { return edge_nodes_[index].second; }

  double node_distance(std::size_t u, std::size_t v) const { return node_dist_[u * node_count() + v]; }

  /// Edge indices along the unique node path u -> v, in walking order.
  std::vector<std::size_t> edge_path(std::size_t u, std::size_t v) const;

  /// Lowest-id edge incident to a node (canonical home of a vertex point).
  std::size_t canonical_edge(std::size_t node) const { return canonical_edge_[node]; }

  double total_length() const { return total_length_; }

 private:
  TreeTopology topology_;
  std::vector<int> node_ids_;
  std::unordered_map<int, std::size_t> node_index_;
  std::unordered_map<int, std::size_t> edge_index_;
  std::vector<std::pair<std::size_t, std::size_t>> edge_nodes_;
  std::vector<std::size_t> parent_edge_;
  std::vector<std::size_t> parent_node_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> canonical_edge_;
  std::vector<double> node_dist_;
  double total_length_ = 0.0;
};

/// Which Hadamard space a computation lives in. Cheap to copy; tree data is
/// shared and immutable.
class Space {
 public:
  static Space euclidean(int dim);
  static Space hyperboloid(int dim);
  static Space tree(TreeTopology topology);

  SpaceKind kind() const { return kind_; }
  /// Intrinsic dimension (euclidean/hyperboloid); 1 for trees.
  int dim() const { return dim_; }
  const MetricTree& metric_tree() const;

  /// Number of stored coordinates per point (dim for euclidean, dim+1 for
  /// hyperboloid, 0 for trees).
  std::size_t coordinate_count() const;

  friend bool operator==(const Space& a, const Space& b);

 private:
  Space(SpaceKind kind, int dim, std::shared_ptr<const MetricTree> tree)
      : kind_(kind), dim_(dim), tree_(std::move(tree)) {}

  SpaceKind kind_;
  int dim_;
  std::shared_ptr<const MetricTree> tree_;
};

struct TreeLocation {
  int edge = 0;
  double offset = 0.0;

  friend bool operator==(const TreeLocation&, const TreeLocation&) = default;
};

/// A point of one of the backends. Vector backends store coordinates; tree
/// points store an edge id and the arclength offset from the edge's `from`
/// node. Use the factory functions below to obtain validated points.
class Point {
 public:
  Point() = default;

  SpaceKind kind() const { return kind_; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  const TreeLocation& location() const { return location_; }

  static Point raw_vector(SpaceKind kind, std::vector<double> coords);
  static Point raw_tree(TreeLocation loc);

  friend bool operator==(const Point&, const Point&) = default;

 private:
  SpaceKind kind_ = SpaceKind::euclidean;
  std::vector<double> coords_;
  TreeLocation location_;
};

inline constexpr double kHyperboloidTolerance = 1e-9;

/// Minkowski bilinear form -x0*y0 + sum_{i>=1} xi*yi.
double minkowski_dot(std::span<const double> x, std::span<const double> y);

Point euclidean_point(const Space& space, std::vector<double> coords);
Point hyperboloid_point(const Space& space, std::vector<double> coords);
/// Lifts spatial coordinates (x1..xd) onto the upper sheet.
Point hyperboloid_lift(const Space& space, std::span<const double> spatial);
Point tree_point(const Space& space, int edge_id, double offset);
/// Tree point sitting on a vertex, in canonical form.
Point tree_vertex(const Space& space, int node_id);

/// Throws ValidationError if `p` is not a valid point of `space`.
void validate(const Space& space, const Point& p);

/// Rescales onto the hyperboloid sheet; identity for other backends.
Point reproject(const Space& space, Point p);

}  // namespace hretract
