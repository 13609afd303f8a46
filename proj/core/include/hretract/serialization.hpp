#pragma once

#include <nlohmann/json.hpp>

#include "hretract/space.hpp"
#include "hretract/subset_space.hpp"

namespace hretract {

using Json = nlohmann::json;

// Schemas:
//   space   {"kind":"euclidean","dim":2} | {"kind":"hyperboloid","dim":2}
//           | {"kind":"tree","nodes":[...],"edges":[{"id":0,"from":0,"to":1,"length":1.0},...]}
//   point   [x0, x1, ...] for vector backends, {"edge":0,"offset":0.4} for trees
//   subset  {"space":<space>, "points":[<point>...]}
//   tuple   {"space":<space>, "coords":[<point>...]}
//
// Parsing throws ValidationError whose message names the offending field.

Json space_to_json(const Space& space);
Space space_from_json(const Json& j);

Json point_to_json(const Point& p);
Point point_from_json(const Space& space, const Json& j);

Json subset_to_json(const FiniteSubset& a);
FiniteSubset subset_from_json(const Json& j, double dedup_tolerance = 0.0);
/// Points array interpreted in an externally supplied space.
FiniteSubset subset_from_points_json(const Space& space, const Json& points, double dedup_tolerance = 0.0);

Json tuple_to_json(const Tuple& x);
Tuple tuple_from_json(const Json& j);
Tuple tuple_from_points_json(const Space& space, const Json& coords);

}  // namespace hretract
