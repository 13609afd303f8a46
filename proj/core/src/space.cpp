#include "hretract/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

namespace hretract {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Offsets this close to an edge end (relative to edge length) are treated as
// the vertex itself.
constexpr double kVertexSnap = 1e-14;

}  // namespace

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean:
      return "euclidean";
    case SpaceKind::hyperboloid:
      return "hyperboloid";
    case SpaceKind::tree:
      return "tree";
  }
  return "unknown";
}

MetricTree::MetricTree(TreeTopology topology) : topology_(std::move(topology)) {
  if (topology_.edges.empty()) {
    throw ValidationError("tree: at least one edge is required");
  }

  auto add_node = [this](int id) {
    if (node_index_.emplace(id, node_ids_.size()).second) node_ids_.push_back(id);
  };
  for (int id : topology_.nodes) add_node(id);
  for (const auto& e : topology_.edges) {
    add_node(e.from);
    add_node(e.to);
  }
  if (topology_.nodes.empty()) topology_.nodes = node_ids_;
  else if (topology_.nodes.size() != node_ids_.size()) {
    throw ValidationError("tree: edge endpoint not listed in nodes");
  }

  const std::size_t n_nodes = node_ids_.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(n_nodes);
  for (std::size_t k = 0; k < topology_.edges.size(); ++k) {
    const auto& e = topology_.edges[k];
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw ValidationError("tree: edge " + std::to_string(e.id) + " must have a positive finite length");
    }
    if (e.from == e.to) {
      throw ValidationError("tree: edge " + std::to_string(e.id) + " is a loop");
    }
    if (!edge_index_.emplace(e.id, k).second) {
      throw ValidationError("tree: duplicate edge id " + std::to_string(e.id));
    }
    const std::size_t u = node_index_.at(e.from);
    const std::size_t v = node_index_.at(e.to);
    edge_nodes_.emplace_back(u, v);
    adjacency[u].emplace_back(v, k);
    adjacency[v].emplace_back(u, k);
    total_length_ += e.length;
  }
  if (topology_.edges.size() + 1 != n_nodes) {
    throw ValidationError("tree: a tree on " + std::to_string(n_nodes) + " nodes needs exactly " +
                          std::to_string(n_nodes - 1) + " edges");
  }

  // BFS from node 0 gives parent pointers; with |E| = |V|-1, connectivity
  // implies acyclicity.
  parent_edge_.assign(n_nodes, kNone);
  parent_node_.assign(n_nodes, kNone);
  depth_.assign(n_nodes, 0);
  std::vector<bool> seen(n_nodes, false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (auto [v, k] : adjacency[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      ++reached;
      parent_node_[v] = u;
      parent_edge_[v] = k;
      depth_[v] = depth_[u] + 1;
      queue.push(v);
    }
  }
  if (reached != n_nodes) throw ValidationError("tree: graph is not connected");

  canonical_edge_.assign(n_nodes, kNone);
  for (std::size_t u = 0; u < n_nodes; ++u) {
    for (auto [v, k] : adjacency[u]) {
      (void)v;
      if (canonical_edge_[u] == kNone || topology_.edges[k].id < topology_.edges[canonical_edge_[u]].id) {
        canonical_edge_[u] = k;
      }
    }
  }

  node_dist_.assign(n_nodes * n_nodes, 0.0);
  for (std::size_t s = 0; s < n_nodes; ++s) {
    std::vector<bool> visited(n_nodes, false);
    std::vector<std::size_t> stack{s};
    visited[s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (auto [v, k] : adjacency[u]) {
        if (visited[v]) continue;
        visited[v] = true;
        node_dist_[s * n_nodes + v] = node_dist_[s * n_nodes + u] + topology_.edges[k].length;
        stack.push_back(v);
      }
    }
  }
}

std::size_t MetricTree::edge_index(int edge_id) const {
  auto it = edge_index_.find(edge_id);
  if (it == edge_index_.end()) throw ValidationError("tree: unknown edge id " + std::to_string(edge_id));
  return it->second;
}

std::vector<std::size_t> MetricTree::edge_path(std::size_t u, std::size_t v) const {
  std::vector<std::size_t> up;    // edges climbed from u
  std::vector<std::size_t> down;  // edges climbed from v, reversed later
  while (depth_[u] > depth_[v]) {
    up.push_back(parent_edge_[u]);
    u = parent_node_[u];
  }
  while (depth_[v] > depth_[u]) {
    down.push_back(parent_edge_[v]);
    v = parent_node_[v];
  }
  while (u != v) {
    up.push_back(parent_edge_[u]);
    u = parent_node_[u];
    down.push_back(parent_edge_[v]);
    v = parent_node_[v];
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

Space Space::euclidean(int dim) {
  if (dim < 1) throw ValidationError("euclidean space: dim must be >= 1");
  return Space(SpaceKind::euclidean, dim, nullptr);
}

Space Space::hyperboloid(int dim) {
  if (dim < 1) throw ValidationError("hyperboloid space: dim must be >= 1");
  return Space(SpaceKind::hyperboloid, dim, nullptr);
}

Space Space::tree(TreeTopology topology) {
  return Space(SpaceKind::tree, 1, std::make_shared<const MetricTree>(std::move(topology)));
}

const MetricTree& Space::metric_tree() const {
  if (!tree_) throw ValidationError("space is not a tree");
  return *tree_;
}

std::size_t Space::coordinate_count() const {
  switch (kind_) {
    case SpaceKind::euclidean:
      return static_cast<std::size_t>(dim_);
    case SpaceKind::hyperboloid:
      return static_cast<std::size_t>(dim_) + 1;
    case SpaceKind::tree:
      return 0;
  }
  return 0;
}

bool operator==(const Space& a, const Space& b) {
  if (a.kind_ != b.kind_ || a.dim_ != b.dim_) return false;
  if (a.kind_ != SpaceKind::tree || a.tree_ == b.tree_) return true;
  const auto& ea = a.tree_->topology().edges;
  const auto& eb = b.tree_->topology().edges;
  return std::equal(ea.begin(), ea.end(), eb.begin(), eb.end(), [](const TreeEdge& x, const TreeEdge& y) {
    return x.id == y.id && x.from == y.from && x.to == y.to && x.length == y.length;
  });
}

Point Point::raw_vector(SpaceKind kind, std::vector<double> coords) {
  Point p;
  p.kind_ = kind;
  p.coords_ = std::move(coords);
  return p;
}

Point Point::raw_tree(TreeLocation loc) {
  Point p;
  p.kind_ = SpaceKind::tree;
  p.location_ = loc;
  return p;
}

double minkowski_dot(std::span<const double> x, std::span<const double> y) {
  double s = -x[0] * y[0];
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Point euclidean_point(const Space& space, std::vector<double> coords) {
  auto p = Point::raw_vector(SpaceKind::euclidean, std::move(coords));
  validate(space, p);
  return p;
}

Point hyperboloid_point(const Space& space, std::vector<double> coords) {
  auto p = Point::raw_vector(SpaceKind::hyperboloid, std::move(coords));
  validate(space, p);
  return reproject(space, std::move(p));
}

Point hyperboloid_lift(const Space& space, std::span<const double> spatial) {
  if (space.kind() != SpaceKind::hyperboloid || spatial.size() != static_cast<std::size_t>(space.dim())) {
    throw ValidationError("hyperboloid_lift: expected " + std::to_string(space.dim()) + " spatial coordinates");
  }
  std::vector<double> c(spatial.size() + 1);
  double sq = 0.0;
  for (std::size_t i = 0; i < spatial.size(); ++i) {
    c[i + 1] = spatial[i];
    sq += spatial[i] * spatial[i];
  }
  c[0] = std::sqrt(1.0 + sq);
  return Point::raw_vector(SpaceKind::hyperboloid, std::move(c));
}

Point tree_point(const Space& space, int edge_id, double offset) {
  const MetricTree& tree = space.metric_tree();
  const std::size_t k = tree.edge_index(edge_id);
  const double len = tree.edge(k).length;
  if (!std::isfinite(offset) || offset < -kVertexSnap * len || offset > len * (1.0 + kVertexSnap)) {
    throw ValidationError("tree point: offset " + std::to_string(offset) + " outside edge " +
                          std::to_string(edge_id) + " of length " + std::to_string(len));
  }
  std::size_t vertex = std::numeric_limits<std::size_t>::max();
  if (offset <= kVertexSnap * len) vertex = tree.edge_from(k);
  else if (offset >= len * (1.0 - kVertexSnap)) vertex = tree.edge_to(k);
  if (vertex == std::numeric_limits<std::size_t>::max()) {
    return Point::raw_tree({edge_id, offset});
  }
  const std::size_t home = tree.canonical_edge(vertex);
  const TreeEdge& e = tree.edge(home);
  return Point::raw_tree({e.id, tree.edge_from(home) == vertex ? 0.0 : e.length});
}

Point tree_vertex(const Space& space, int node_id) {
  const MetricTree& tree = space.metric_tree();
  for (std::size_t k = 0; k < tree.edge_count(); ++k) {
    const TreeEdge& e = tree.edge(k);
    if (e.from == node_id) return tree_point(space, e.id, 0.0);
    if (e.to == node_id) return tree_point(space, e.id, e.length);
  }
  throw ValidationError("tree: unknown node id " + std::to_string(node_id));
}

void validate(const Space& space, const Point& p) {
  if (p.kind() != space.kind()) {
    throw ValidationError("backend mismatch: point is " + std::string(to_string(p.kind())) + ", space is " +
                          std::string(to_string(space.kind())));
  }
  switch (space.kind()) {
    case SpaceKind::euclidean:
    case SpaceKind::hyperboloid: {
      if (p.coords().size() != space.coordinate_count()) {
        throw ValidationError("point has " + std::to_string(p.coords().size()) + " coordinates, expected " +
                              std::to_string(space.coordinate_count()));
      }
      for (double c : p.coords()) {
        if (!std::isfinite(c)) throw ValidationError("point has a non-finite coordinate");
      }
      if (space.kind() == SpaceKind::hyperboloid) {
        if (!(p[0] > 0.0)) throw ValidationError("hyperboloid point must have x0 > 0");
        if (std::abs(minkowski_dot(p.coords(), p.coords()) + 1.0) > kHyperboloidTolerance) {
          throw ValidationError("hyperboloid point violates <x,x> = -1");
        }
      }
      break;
    }
    case SpaceKind::tree: {
      const MetricTree& tree = space.metric_tree();
      const TreeEdge& e = tree.edge(tree.edge_index(p.location().edge));
      const double off = p.location().offset;
      if (!(off >= 0.0 && off <= e.length)) {
        throw ValidationError("tree point offset outside its edge");
      }
      break;
    }
  }
}

Point reproject(const Space& space, Point p) {
  if (space.kind() != SpaceKind::hyperboloid) return p;
  std::vector<double> c(p.coords().begin(), p.coords().end());
  const double q = -minkowski_dot(c, c);
  const double scale = 1.0 / std::sqrt(q);
  for (double& v : c) v *= scale;
  return Point::raw_vector(SpaceKind::hyperboloid, std::move(c));
}

}  // namespace hretract
