#include "hretract/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "hretract/geometry.hpp"

namespace hretract {

namespace {

// In-place pair resolvent; returns true when the pair was snapped together.
bool apply_pair(Tuple& y, std::size_t i, std::size_t j, double lambda) {
  const Space& space = y.space();
  const double d = distance(space, y[i], y[j]);
  if (d == 0.0) return true;
  if (d <= 2.0 * lambda) {
    Point mid = geodesic_point(space, y[i], y[j], 0.5);
    y.set(i, mid);
    y.set(j, std::move(mid));
    return true;
  }
  const double t = lambda / d;
  Point yi = geodesic_point(space, y[i], y[j], t);
  Point yj = geodesic_point(space, y[j], y[i], t);
  y.set(i, std::move(yi));
  y.set(j, std::move(yj));
  return false;
}

void check_lambda(double lambda, const char* what) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError(std::string(what) + ": lambda must be a positive finite number");
  }
}

TraceSample sample_of(const Tuple& y, double time) {
  if (y.size() < 2) return {time, 0.0, 0.0};
  return {time, min_gap(y), evaluate_F(y)};
}

Tuple run_sweeps(const Tuple& x, double t, int k, std::vector<TraceSample>* trace) {
  const double lambda = t / k;
  const auto pairs = sweep_pairs(x.size());
  Tuple y = x;
  if (trace) {
    trace->clear();
    trace->reserve(static_cast<std::size_t>(k) + 1);
    trace->push_back(sample_of(y, 0.0));
  }
  for (int s = 1; s <= k; ++s) {
    for (auto [i, j] : pairs) apply_pair(y, i, j, lambda);
    if (trace) trace->push_back(sample_of(y, s * lambda));
  }
  return y;
}

// Smallest distance among pairs that involve coordinate i or j.
double touched_min_gap(const Tuple& y, std::size_t i, std::size_t j) {
  double best = distance(y.space(), y[i], y[j]);
  for (std::size_t l = 0; l < y.size(); ++l) {
    if (l == i || l == j) continue;
    best = std::min({best, distance(y.space(), y[i], y[l]), distance(y.space(), y[j], y[l])});
  }
  return best;
}

}  // namespace

void FlowConfig::validate() const {
  if (sweeps < 1) throw ValidationError("flow config: sweeps must be >= 1");
  if (!(merge_tolerance > 0.0)) throw ValidationError("flow config: merge_tolerance must be > 0");
  if (max_doublings < 1) throw ValidationError("flow config: max_doublings must be >= 1");
  if (!(richardson_tolerance > 0.0)) throw ValidationError("flow config: richardson_tolerance must be > 0");
}

double evaluate_F(const Tuple& x) {
  if (x.size() < 2) throw ValidationError("evaluate_F: tuple needs at least 2 coordinates");
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) f += distance(x.space(), x[i], x[j]);
  }
  return f;
}

Tuple pair_resolvent(const Tuple& x, std::size_t i, std::size_t j, double lambda) {
  if (i >= x.size() || j >= x.size()) {
    throw ValidationError("pair_resolvent: index out of range for tuple of size " + std::to_string(x.size()));
  }
  if (i == j) throw ValidationError("pair_resolvent: i and j must differ");
  check_lambda(lambda, "pair_resolvent");
  Tuple y = x;
  apply_pair(y, std::min(i, j), std::max(i, j), lambda);
  return y;
}

std::vector<std::pair<std::size_t, std::size_t>> sweep_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  return pairs;
}

Tuple sweep(const Tuple& x, double lambda) {
  check_lambda(lambda, "sweep");
  Tuple y = x;
  for (auto [i, j] : sweep_pairs(x.size())) apply_pair(y, i, j, lambda);
  return y;
}

Tuple splitting_flow(const Tuple& x, double t, int k) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("splitting_flow: t must be >= 0");
  if (k < 1) throw ValidationError("splitting_flow: k must be >= 1");
  if (t == 0.0) return x;
  return run_sweeps(x, t, k, nullptr);
}

FlowReport flow_adaptive(const Tuple& x, double t, const FlowConfig& cfg) {
  cfg.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("flow_adaptive: t must be >= 0");
  FlowReport report{x, 0.0, 0, {}, true, {sample_of(x, 0.0)}};
  if (t == 0.0) return report;

  int k = cfg.sweeps;
  std::vector<TraceSample> trace;
  Tuple prev = run_sweeps(x, t, k, &trace);
  report.converged = false;
  for (int d = 0; d < cfg.max_doublings; ++d) {
    k *= 2;
    Tuple cur = run_sweeps(x, t, k, &trace);
    const double gap = product_distance(prev, cur);
    report.doubling_distances.push_back(gap);
    prev = std::move(cur);
    if (gap <= cfg.richardson_tolerance) {
      report.converged = true;
      break;
    }
  }
  report.final = std::move(prev);
  report.elapsed_time = t;
  report.sweeps_used = k;
  report.trace = std::move(trace);
  return report;
}

MergeResult merge_time(const Tuple& x, const FlowConfig& cfg) {
  cfg.validate();
  if (x.size() < 2) throw ValidationError("merge_time: tuple needs at least 2 coordinates");
  const double delta = min_gap(x);
  if (delta == 0.0) return {0.0, x, 0, false};

  const double lambda = delta / (2.0 * cfg.sweeps);
  const double threshold = cfg.merge_tolerance * delta;
  const int max_sweeps =
      std::max(cfg.sweeps, static_cast<int>(std::floor(cfg.sweeps * (1.0 + kMergeSlack) + 1e-9)));
  const auto pairs = sweep_pairs(x.size());

  Tuple y = x;
  for (int s = 1; s <= max_sweeps; ++s) {
    for (auto [i, j] : pairs) {
      const bool snapped = apply_pair(y, i, j, lambda);
      if (snapped || touched_min_gap(y, i, j) <= threshold) return {s * lambda, std::move(y), s, false};
    }
  }

  // Finite-k residual: snap the closest pair; the limit flow has merged by now.
  std::size_t bi = 0, bj = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      const double d = distance(y.space(), y[i], y[j]);
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  Point mid = geodesic_point(y.space(), y[bi], y[bj], 0.5);
  y.set(bi, mid);
  y.set(bj, std::move(mid));
  return {max_sweeps * lambda, std::move(y), max_sweeps, true};
}

Json flow_report_to_json(const FlowReport& report) {
  Json trace = Json::array();
  for (const auto& s : report.trace) trace.push_back({{"time", s.time}, {"delta", s.min_gap}, {"F", s.F}});
  return Json{{"final", tuple_to_json(report.final)},
              {"elapsed_time", report.elapsed_time},
              {"sweeps_used", report.sweeps_used},
              {"converged", report.converged},
              {"doubling_distances", report.doubling_distances},
              {"trace", std::move(trace)}};
}

std::string trace_to_csv(const std::vector<TraceSample>& trace) {
  std::string out = "time,delta,F\n";
  char buf[96];
  for (const auto& s : trace) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.time, s.min_gap, s.F);
    out += buf;
  }
  return out;
}

}  // namespace hretract
