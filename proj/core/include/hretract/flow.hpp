#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hretract/serialization.hpp"
#include "hretract/subset_space.hpp"

namespace hretract {

/// Discretization parameters for the splitting flow.
struct FlowConfig {
  /// Sweeps per run (k in the Lie-Trotter-Kato product). For merge_time this
  /// is the number of sweeps needed to reach delta(x)/2.
  int sweeps = 256;
  /// Merge threshold, relative to delta(x) of the starting tuple.
  double merge_tolerance = 1e-6;
  int max_doublings = 8;
  /// Stop doubling once successive results are this close in H^n.
  double richardson_tolerance = 1e-7;

  void validate() const;
};

struct TraceSample {
  double time = 0.0;
  double min_gap = 0.0;
  double F = 0.0;
};

struct FlowReport {
  Tuple final;
  double elapsed_time = 0.0;
  /// Sweeps of the run that produced `final`.
  int sweeps_used = 0;
  /// Product distance between each run and the previous one, one per doubling.
  std::vector<double> doubling_distances;
  bool converged = true;
  /// Per-sweep (time, delta, F) of the final run, starting at t = 0.
  std::vector<TraceSample> trace;
};

struct MergeResult {
  double time = 0.0;
  Tuple merged;
  int sweeps = 0;
  /// True when the march reached delta/2 without merging and snapped the
  /// closest pair.
  bool forced = false;
};

/// F(x) = sum_{i<j} d(x_i, x_j). Requires n >= 2.
double evaluate_F(const Tuple& x);

/// Resolvent of x -> d(x_i, x_j) on H^n with parameter lambda (0-based
/// indices). Both coordinates move toward each other by min(lambda, d/2); at
/// d <= 2 lambda they meet at the geodesic midpoint.
Tuple pair_resolvent(const Tuple& x, std::size_t i, std::size_t j, double lambda);

/// Canonical order of the pair resolvents in one sweep: sorted by j, then i,
/// starting with (0, 1).
std::vector<std::pair<std::size_t, std::size_t>> sweep_pairs(std::size_t n);

/// One sweep R_lambda: all pair resolvents in sweep_pairs() order.
Tuple sweep(const Tuple& x, double lambda);

/// (R_{t/k})^k x, the Lie-Trotter-Kato approximation of S_t x.
Tuple splitting_flow(const Tuple& x, double t, int k);

/// splitting_flow with k, 2k, 4k, ... sweeps until two successive results
/// agree to cfg.richardson_tolerance or cfg.max_doublings is exhausted.
FlowReport flow_adaptive(const Tuple& x, double t, const FlowConfig& cfg = {});

/// First time the discrete flow reaches the diagonal set D, marching with
/// lambda = delta(x) / (2 * cfg.sweeps). Never exceeds delta(x)/2 * (1 + 1e-3).
MergeResult merge_time(const Tuple& x, const FlowConfig& cfg = {});

inline constexpr double kMergeSlack = 1e-3;

/// Resolvent of the full functional F (not split into pairs), computed by
/// brute force. Euclidean backend only, n * dim <= 8. Reference oracle for
/// the splitting machinery.
Tuple oracle_full_resolvent(const Tuple& x, double lambda);

inline constexpr std::size_t kOracleMaxScalars = 8;

Json flow_report_to_json(const FlowReport& report);
/// CSV with header "time,delta,F".
std::string trace_to_csv(const std::vector<TraceSample>& trace);

}  // namespace hretract
