#pragma once

#include <cstddef>

#include "hretract/flow.hpp"
#include "hretract/subset_space.hpp"

namespace hretract {

struct RetractReport {
  FiniteSubset input;
  FiniteSubset output;
  double merge_time_used = 0.0;
  std::size_t input_cardinality = 0;
  std::size_t output_cardinality = 0;
  /// The march hit delta/2 and force-merged the closest pair.
  bool forced_merge = false;
};

/// Lipschitz retraction H(n) -> H(n-1).
///
/// Sets with at most n-1 points are returned unchanged. A set with exactly n
/// points is numbered with order_tuple (closest pair first), flowed along the
/// gradient flow of F until two coordinates meet, and read back as a set with
/// tolerance cfg.merge_tolerance * delta.
RetractReport retract(const FiniteSubset& a, std::size_t n, const FlowConfig& cfg = {});

/// max(4 n^{3/2} + 1, 2 n^2 + n^{1/2}).
double lipschitz_constant_bound(std::size_t n);

Json retract_report_to_json(const RetractReport& report);

}  // namespace hretract
