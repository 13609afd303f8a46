#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hretract/flow.hpp"
#include "hretract/retraction.hpp"
#include "hretract/sampling.hpp"

namespace hretract {

struct ScanConfig {
  Space space = Space::euclidean(2);
  std::size_t n = 3;
  int samples = 200;
  std::uint64_t seed = 1;
  FlowConfig flow;
  /// Perturbation radius for near pairs, as a fraction of delta(a).
  double perturbation_scale = 0.1;
  /// Sweeps used for powers of the full-resolvent oracle in convergence_study.
  int oracle_sweeps = 256;

  void validate() const;
};

/// Outcome of one named check. `worst` is the maximum observed violation
/// (lhs - rhs of an inequality) or ratio; the check passes iff
/// worst <= threshold.
struct CheckResult {
  std::string name;
  int trials = 0;
  int skipped = 0;
  double worst = 0.0;
  double threshold = 0.0;
  bool pass = true;
  Json worst_input;
  Json details;
};

struct DecaySequence {
  std::string label;
  std::vector<double> values;
};

struct ScanReport {
  std::vector<CheckResult> checks;
  std::vector<DecaySequence> sequences;

  bool pass() const;
  /// Throws std::out_of_range for unknown names.
  const CheckResult& check(const std::string& name) const;
  void append(const ScanReport& other);
};

Json scan_report_to_json(const ScanReport& report);
/// One row per check: name,trials,worst,threshold,pass.
std::string scan_report_to_csv(const ScanReport& report);

/// Random n-tuple / n-point set of a backend.
Tuple sample_tuple(const Space& space, std::size_t n, Rng& rng);
FiniteSubset sample_subset(const Space& space, std::size_t size, Rng& rng);

/// Empirical Lipschitz ratios of retract over mixed independent and
/// near-diagonal pairs. Check "lipschitz_ratio" passes iff the max ratio is at
/// most lipschitz_constant_bound(n).
ScanReport lipschitz_scan(const ScanConfig& cfg);

/// Every inequality and invariant of the geometry, flow and retraction
/// layers over fresh samples.
ScanReport bound_suite(const ScanConfig& cfg);

/// Successive-doubling distances of splitting_flow at time t, plus agreement
/// with powers of the full-resolvent oracle on small euclidean cases.
ScanReport convergence_study(const ScanConfig& cfg, double t);

struct Matching {
  /// pairs[k] = (index in a, index in b)
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double max_distance = 0.0;
};

/// Greedy closest-pair matching between equal-size sets; returned only when
/// every matched distance is at most hausdorff_distance(a, b).
std::optional<Matching> matching_diagnostic(const FiniteSubset& a, const FiniteSubset& b);

namespace checks {

// Individual checks behind bound_suite. Each draws cfg.samples trials from
// its own random stream.
std::vector<CheckResult> cat0_audit(const ScanConfig& cfg);
CheckResult geodesic_parametrization(const ScanConfig& cfg);
CheckResult hausdorff_triangle(const ScanConfig& cfg);
CheckResult hausdorff_le_product(const ScanConfig& cfg);
CheckResult f_lipschitz(const ScanConfig& cfg);
CheckResult f_convexity(const ScanConfig& cfg);
CheckResult one_step_estimate(const ScanConfig& cfg);
CheckResult nonexpansive(const ScanConfig& cfg);
CheckResult spread_bound(const ScanConfig& cfg);
CheckResult merge_time_bound(const ScanConfig& cfg);
CheckResult two_point_equality(const ScanConfig& cfg);
CheckResult pair_claims(const ScanConfig& cfg);
/// "min_attainment" and "f_trace_monotone".
std::vector<CheckResult> min_attainment(const ScanConfig& cfg);
CheckResult retraction_identity(const ScanConfig& cfg);
CheckResult retraction_cardinality(const ScanConfig& cfg);
CheckResult output_proximity(const ScanConfig& cfg);

}  // namespace checks

}  // namespace hretract
