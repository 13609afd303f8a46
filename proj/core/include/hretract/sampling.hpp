#pragma once

#include <cstdint>
#include <random>

#include "hretract/space.hpp"

namespace hretract {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream, index). Samples drawn this way do not
/// depend on the order in which a harness evaluates them.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

double uniform01(Rng& rng);

/// Random point of a backend.
///   euclidean:   standard Gaussian per coordinate
///   hyperboloid: Gaussian tangent vector at the apex, length capped at 3,
///                pushed along the geodesic
///   tree:        edge chosen with probability proportional to its length,
///                uniform offset
Point sample_point(const Space& space, Rng& rng);

/// Point at distance at most `radius` from p: moves from p toward an
/// independently sampled point by U(0,1) * radius.
Point sample_nearby(const Space& space, const Point& p, double radius, Rng& rng);

inline constexpr double kHyperboloidSampleRadius = 3.0;

}  // namespace hretract
