#include "hretract/sampling.hpp"

#include <cmath>
#include <vector>

#include "hretract/geometry.hpp"

namespace hretract {

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

Point sample_point(const Space& space, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      std::vector<double> c(static_cast<std::size_t>(space.dim()));
      for (double& v : c) v = gauss(rng);
      return Point::raw_vector(SpaceKind::euclidean, std::move(c));
    }
    case SpaceKind::hyperboloid: {
      std::vector<double> v(static_cast<std::size_t>(space.dim()));
      double norm = 0.0;
      for (double& x : v) {
        x = gauss(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
      std::vector<double> c(v.size() + 1, 0.0);
      if (norm == 0.0) {
        c[0] = 1.0;
        return Point::raw_vector(SpaceKind::hyperboloid, std::move(c));
      }
      const double r = std::min(norm, kHyperboloidSampleRadius);
      c[0] = std::cosh(r);
      const double s = std::sinh(r) / norm;
      for (std::size_t i = 0; i < v.size(); ++i) c[i + 1] = s * v[i];
      return reproject(space, Point::raw_vector(SpaceKind::hyperboloid, std::move(c)));
    }
    case SpaceKind::tree: {
      const MetricTree& tree = space.metric_tree();
      double target = uniform01(rng) * tree.total_length();
      std::size_t k = 0;
      for (; k + 1 < tree.edge_count(); ++k) {
        if (target < tree.edge(k).length) break;
        target -= tree.edge(k).length;
      }
      const TreeEdge& e = tree.edge(k);
      return tree_point(space, e.id, uniform01(rng) * e.length);
    }
  }
  throw ValidationError("sample_point: unknown backend");
}

Point sample_nearby(const Space& space, const Point& p, double radius, Rng& rng) {
  const Point target = sample_point(space, rng);
  return move_toward(space, p, target, uniform01(rng) * radius);
}

}  // namespace hretract
