#include "hretract/retraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hretract {

RetractReport retract(const FiniteSubset& a, std::size_t n, const FlowConfig& cfg) {
  if (n < 2) throw ValidationError("retract: n must be >= 2");
  if (a.size() > n) {
    throw ValidationError("retract: set has " + std::to_string(a.size()) + " points, more than n = " +
                          std::to_string(n));
  }
  cfg.validate();
  if (a.size() <= n - 1) return {a, a, 0.0, a.size(), a.size(), false};

  const Tuple x = order_tuple(a, n);
  const double delta = min_gap(x);
  const MergeResult merged = merge_time(x, cfg);
  FiniteSubset out = to_set(merged.merged, cfg.merge_tolerance * delta);
  const std::size_t out_size = out.size();
  return {a, std::move(out), merged.time, a.size(), out_size, merged.forced};
}

double lipschitz_constant_bound(std::size_t n) {
  if (n < 2) throw ValidationError("lipschitz_constant_bound: n must be >= 2");
  const double m = static_cast<double>(n);
  return std::max(4.0 * std::pow(m, 1.5) + 1.0, 2.0 * m * m + std::sqrt(m));
}

Json retract_report_to_json(const RetractReport& report) {
  return Json{{"input", subset_to_json(report.input)},
              {"output", subset_to_json(report.output)},
              {"merge_time", report.merge_time_used},
              {"input_cardinality", report.input_cardinality},
              {"output_cardinality", report.output_cardinality},
              {"forced_merge", report.forced_merge}};
}

}  // namespace hretract
