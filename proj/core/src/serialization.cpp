#include "hretract/serialization.hpp"

#include <string>
#include <vector>

namespace hretract {

namespace {

const Json& field(const Json& j, const char* name, const std::string& context) {
  if (!j.is_object()) throw ValidationError(context + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ValidationError(context + ": missing field \"" + name + "\"");
  return *it;
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + ": expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ValidationError(what + ": expected an integer");
  return j.get<int>();
}

}  // namespace

Json space_to_json(const Space& space) {
  Json j;
  j["kind"] = std::string(to_string(space.kind()));
  if (space.kind() != SpaceKind::tree) {
    j["dim"] = space.dim();
    return j;
  }
  const TreeTopology& topo = space.metric_tree().topology();
  j["nodes"] = topo.nodes;
  Json edges = Json::array();
  for (const auto& e : topo.edges) {
    edges.push_back({{"id", e.id}, {"from", e.from}, {"to", e.to}, {"length", e.length}});
  }
  j["edges"] = std::move(edges);
  return j;
}

Space space_from_json(const Json& j) {
  const Json& kind_j = field(j, "kind", "space");
  if (!kind_j.is_string()) throw ValidationError("space.kind: expected a string");
  const auto kind = kind_j.get<std::string>();
  if (kind == "euclidean" || kind == "hyperboloid") {
    const int dim = integer(field(j, "dim", "space"), "space.dim");
    return kind == "euclidean" ? Space::euclidean(dim) : Space::hyperboloid(dim);
  }
  if (kind != "tree") throw ValidationError("space.kind: unknown backend \"" + kind + "\"");

  TreeTopology topo;
  if (auto it = j.find("nodes"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("space.nodes: expected an array");
    for (const auto& n : *it) topo.nodes.push_back(integer(n, "space.nodes[]"));
  }
  const Json& edges = field(j, "edges", "space");
  if (!edges.is_array()) throw ValidationError("space.edges: expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string ctx = "space.edges[" + std::to_string(k) + "]";
    const Json& e = edges[k];
    topo.edges.push_back({integer(field(e, "id", ctx), ctx + ".id"), integer(field(e, "from", ctx), ctx + ".from"),
                          integer(field(e, "to", ctx), ctx + ".to"),
                          number(field(e, "length", ctx), ctx + ".length")});
  }
  return Space::tree(std::move(topo));
}

Json point_to_json(const Point& p) {
  if (p.kind() == SpaceKind::tree) {
    return Json{{"edge", p.location().edge}, {"offset", p.location().offset}};
  }
  return Json(std::vector<double>(p.coords().begin(), p.coords().end()));
}

Point point_from_json(const Space& space, const Json& j) {
  if (space.kind() == SpaceKind::tree) {
    if (!j.is_object()) throw ValidationError("point: tree points are {\"edge\":id,\"offset\":x}");
    return tree_point(space, integer(field(j, "edge", "point"), "point.edge"),
                      number(field(j, "offset", "point"), "point.offset"));
  }
  if (!j.is_array()) throw ValidationError("point: expected a coordinate array");
  std::vector<double> c;
  for (const auto& v : j) c.push_back(number(v, "point coordinate"));
  if (space.kind() == SpaceKind::euclidean) return euclidean_point(space, std::move(c));
  // Validated but not reprojected, so serialized points read back bit for bit.
  Point p = Point::raw_vector(SpaceKind::hyperboloid, std::move(c));
  validate(space, p);
  return p;
}

Json subset_to_json(const FiniteSubset& a) {
  Json pts = Json::array();
  for (const auto& p : a.points()) pts.push_back(point_to_json(p));
  return Json{{"space", space_to_json(a.space())}, {"points", std::move(pts)}};
}

FiniteSubset subset_from_points_json(const Space& space, const Json& points, double dedup_tolerance) {
  if (!points.is_array()) throw ValidationError("points: expected an array");
  if (points.empty()) throw ValidationError("empty set");
  std::vector<Point> pts;
  for (const auto& p : points) pts.push_back(point_from_json(space, p));
  return FiniteSubset(space, std::move(pts), dedup_tolerance);
}

FiniteSubset subset_from_json(const Json& j, double dedup_tolerance) {
  const Space space = space_from_json(field(j, "space", "set"));
  return subset_from_points_json(space, field(j, "points", "set"), dedup_tolerance);
}

Json tuple_to_json(const Tuple& x) {
  Json pts = Json::array();
  for (const auto& p : x.coords()) pts.push_back(point_to_json(p));
  return Json{{"space", space_to_json(x.space())}, {"coords", std::move(pts)}};
}

Tuple tuple_from_points_json(const Space& space, const Json& coords) {
  if (!coords.is_array()) throw ValidationError("coords: expected an array");
  std::vector<Point> pts;
  for (const auto& p : coords) pts.push_back(point_from_json(space, p));
  return Tuple(space, std::move(pts));
}

Tuple tuple_from_json(const Json& j) {
  const Space space = space_from_json(field(j, "space", "tuple"));
  return tuple_from_points_json(space, field(j, "coords", "tuple"));
}

}  // namespace hretract
