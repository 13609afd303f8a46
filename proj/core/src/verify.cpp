#include "hretract/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "hretract/geometry.hpp"

namespace hretract {

namespace {

constexpr double kTight = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Random-stream ids, one per check, so that adding a check never shifts the
// samples of another.
enum Stream : std::uint64_t {
  kStreamGeodesic = 101,
  kStreamHausdorffTriangle,
  kStreamHausdorffProduct,
  kStreamFLipschitz,
  kStreamFConvexity,
  kStreamOneStep,
  kStreamNonexpansive,
  kStreamSpread,
  kStreamMergeTime,
  kStreamTwoPoint,
  kStreamClaims,
  kStreamMinAttainment,
  kStreamRetractIdentity,
  kStreamRetractCardinality,
  kStreamProximity,
  kStreamLipschitz,
  kStreamConvergence,
};

class Accumulator {
 public:
  Accumulator(std::string name, double threshold) : name_(std::move(name)), threshold_(threshold) {}

  template <typename MakeInput>
  void record(double value, MakeInput&& make_input) {
    ++trials_;
    if (trials_ == 1 || value > worst_ || std::isnan(value)) {
      worst_ = value;
      worst_input_ = make_input();
    }
  }

  void skip() { ++skipped_; }

  CheckResult result(Json details = nullptr) const {
    CheckResult r;
    r.name = name_;
    r.trials = trials_;
    r.skipped = skipped_;
    r.worst = trials_ > 0 ? worst_ : 0.0;
    r.threshold = threshold_;
    r.pass = trials_ == 0 || worst_ <= threshold_;
    r.worst_input = worst_input_;
    r.details = std::move(details);
    return r;
  }

 private:
  std::string name_;
  double threshold_;
  int trials_ = 0;
  int skipped_ = 0;
  double worst_ = -kInf;
  Json worst_input_;
};

Rng stream(const ScanConfig& cfg, Stream id, int index) {
  return make_rng(cfg.seed, id, static_cast<std::uint64_t>(index));
}

double sq(double v) { return v * v; }

Tuple geodesic_tuple(const Tuple& x0, const Tuple& x1, double t) {
  std::vector<Point> c;
  for (std::size_t j = 0; j < x0.size(); ++j) c.push_back(geodesic_point(x0.space(), x0[j], x1[j], t));
  return Tuple(x0.space(), std::move(c));
}

double set_min_gap(const FiniteSubset& a) {
  double best = kInf;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) best = std::min(best, distance(a.space(), a[i], a[j]));
  }
  return best;
}

}  // namespace

void ScanConfig::validate() const {
  if (n < 2) throw ValidationError("scan config: n must be >= 2");
  if (samples < 1) throw ValidationError("scan config: samples must be >= 1");
  if (!(perturbation_scale > 0.0)) throw ValidationError("scan config: perturbation_scale must be > 0");
  if (oracle_sweeps < 1) throw ValidationError("scan config: oracle_sweeps must be >= 1");
  flow.validate();
}

bool ScanReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult& ScanReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("scan report has no check named " + name);
}

void ScanReport::append(const ScanReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  sequences.insert(sequences.end(), other.sequences.begin(), other.sequences.end());
}

Json scan_report_to_json(const ScanReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j{{"name", c.name},       {"trials", c.trials}, {"skipped", c.skipped},
           {"worst", c.worst},     {"threshold", c.threshold}, {"pass", c.pass},
           {"worst_input", c.worst_input}};
    if (!c.details.is_null()) j["details"] = c.details;
    checks.push_back(std::move(j));
  }
  Json seqs = Json::array();
  for (const auto& s : report.sequences) seqs.push_back({{"label", s.label}, {"values", s.values}});
  return Json{{"pass", report.pass()}, {"checks", std::move(checks)}, {"sequences", std::move(seqs)}};
}

std::string scan_report_to_csv(const ScanReport& report) {
  std::string out = "name,trials,worst,threshold,pass\n";
  char buf[256];
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%s\n", c.name.c_str(), c.trials, c.worst, c.threshold,
                  c.pass ? "true" : "false");
    out += buf;
  }
  return out;
}

Tuple sample_tuple(const Space& space, std::size_t n, Rng& rng) {
  std::vector<Point> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(sample_point(space, rng));
  return Tuple(space, std::move(c));
}

FiniteSubset sample_subset(const Space& space, std::size_t size, Rng& rng) {
  std::vector<Point> c;
  c.reserve(size);
  for (std::size_t i = 0; i < size; ++i) c.push_back(sample_point(space, rng));
  return FiniteSubset(space, std::move(c));
}

namespace checks {

std::vector<CheckResult> cat0_audit(const ScanConfig& cfg) {
  const Cat0AuditReport audit = hretract::cat0_audit(cfg.space, cfg.seed, cfg.samples);
  const Json replay{{"seed", cfg.seed}, {"trials", cfg.samples}, {"space", space_to_json(cfg.space)}};
  auto make = [&](const char* name, double worst, int skipped) {
    CheckResult r;
    r.name = name;
    r.trials = audit.trials - skipped;
    r.skipped = skipped;
    r.worst = worst;
    r.threshold = kTight;
    r.pass = worst <= kTight;
    r.worst_input = replay;
    return r;
  };
  return {make("cat0_inequality", audit.cat0_inequality, 0),
          make("comparison_triangle", audit.comparison_inequality, audit.skipped_degenerate),
          make("joint_convexity", audit.joint_convexity, 0)};
}

CheckResult geodesic_parametrization(const ScanConfig& cfg) {
  Accumulator acc("geodesic_parametrization", kTight);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamGeodesic, s);
    const Point p = sample_point(cfg.space, rng);
    const Point q = sample_point(cfg.space, rng);
    const double a = uniform01(rng);
    const double b = uniform01(rng);
    const double d = distance(cfg.space, p, q);
    const Point xa = geodesic_point(cfg.space, p, q, a);
    const Point xb = geodesic_point(cfg.space, p, q, b);
    const double err = std::max(std::abs(distance(cfg.space, p, xa) - a * d),
                                std::abs(distance(cfg.space, xa, xb) - std::abs(a - b) * d));
    acc.record(err, [&] { return Json{{"p", point_to_json(p)}, {"q", point_to_json(q)}, {"s", a}, {"t", b}}; });
  }
  return acc.result();
}

CheckResult hausdorff_triangle(const ScanConfig& cfg) {
  Accumulator acc("hausdorff_triangle", kTight);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamHausdorffTriangle, s);
    auto size = [&] { return 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(cfg.n)); };
    const FiniteSubset a = sample_subset(cfg.space, size(), rng);
    const FiniteSubset b = sample_subset(cfg.space, size(), rng);
    const FiniteSubset c = sample_subset(cfg.space, size(), rng);
    const double ab = hausdorff_distance(a, b);
    const double v = std::max({hausdorff_distance(a, c) - ab - hausdorff_distance(b, c),
                               std::abs(ab - hausdorff_distance(b, a)), hausdorff_distance(a, a)});
    acc.record(v, [&] { return Json{{"a", subset_to_json(a)}, {"b", subset_to_json(b)}, {"c", subset_to_json(c)}}; });
  }
  return acc.result();
}

CheckResult hausdorff_le_product(const ScanConfig& cfg) {
  Accumulator acc("hausdorff_le_product", kTight);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamHausdorffProduct, s);
    const Tuple x = sample_tuple(cfg.space, cfg.n, rng);
    const Tuple y = sample_tuple(cfg.space, cfg.n, rng);
    const double v = hausdorff_distance(to_set(x, 0.0), to_set(y, 0.0)) - product_distance(x, y);
    acc.record(v, [&] { return Json{{"x", tuple_to_json(x)}, {"y", tuple_to_json(y)}}; });
  }
  return acc.result();
}

CheckResult f_lipschitz(const ScanConfig& cfg) {
  Accumulator acc("f_lipschitz", kTight);
  const double lip = std::pow(static_cast<double>(cfg.n), 1.5);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamFLipschitz, s);
    const Tuple x = sample_tuple(cfg.space, cfg.n, rng);
    const Tuple y = sample_tuple(cfg.space, cfg.n, rng);
    const double v = std::abs(evaluate_F(x) - evaluate_F(y)) - lip * product_distance(x, y);
    acc.record(v, [&] { return Json{{"x", tuple_to_json(x)}, {"y", tuple_to_json(y)}}; });
  }
  return acc.result();
}

CheckResult f_convexity(const ScanConfig& cfg) {
  Accumulator acc("f_convexity", kTight);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamFConvexity, s);
    const Tuple x0 = sample_tuple(cfg.space, cfg.n, rng);
    const Tuple x1 = sample_tuple(cfg.space, cfg.n, rng);
    const double t = uniform01(rng);
    const double v = evaluate_F(geodesic_tuple(x0, x1, t)) - ((1.0 - t) * evaluate_F(x0) + t * evaluate_F(x1));
    acc.record(v, [&] { return Json{{"x0", tuple_to_json(x0)}, {"x1", tuple_to_json(x1)}, {"t", t}}; });
  }
  return acc.result();
}

CheckResult one_step_estimate(const ScanConfig& cfg) {
  Accumulator acc("one_step_estimate", 1e-7);
  const bool applicable = cfg.space.kind() == SpaceKind::euclidean &&
                          cfg.n * static_cast<std::size_t>(cfg.space.dim()) <= kOracleMaxScalars;
  if (!applicable) {
    for (int s = 0; s < cfg.samples; ++s) acc.skip();
    return acc.result(Json{{"note", "full-resolvent oracle needs a euclidean space with n*dim <= 8"}});
  }
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamOneStep, s);
    const Tuple x = sample_tuple(cfg.space, cfg.n, rng);
    const Tuple y = sample_tuple(cfg.space, cfg.n, rng);
    // Log-uniform lambda over [1e-3, 10] covers both unfused and fully fused
    // resolvents.
    const double lambda = std::pow(10.0, -3.0 + 4.0 * uniform01(rng));
    const Tuple jx = oracle_full_resolvent(x, lambda);
    const double lhs =
        evaluate_F(jx) + sq(product_distance(x, jx)) / (2 * lambda) + sq(product_distance(jx, y)) / (2 * lambda);
    const double rhs = evaluate_F(y) + sq(product_distance(x, y)) / (2 * lambda);
    acc.record(lhs - rhs,
               [&] { return Json{{"x", tuple_to_json(x)}, {"y", tuple_to_json(y)}, {"lambda", lambda}}; });
  }
  return acc.result();
}

CheckResult nonexpansive(const ScanConfig& cfg) {
  Accumulator acc("nonexpansive", kTight);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamNonexpansive, s);
    const Tuple x = sample_tuple(cfg.space, cfg.n, rng);
    // Half the pairs are close, where rounding matters most relative to d.
    const Tuple y = s % 2 == 0 ? sample_tuple(cfg.space, cfg.n, rng) : [&] {
      std::vector<Point> c;
      for (const auto& p : x.coords()) c.push_back(sample_nearby(cfg.space, p, 0.1, rng));
      return Tuple(cfg.space, std::move(c));
    }();
    const double t = uniform01(rng) * max_spread(x);
    const int k = cfg.flow.sweeps;
    const double v = product_distance(splitting_flow(x, t, k), splitting_flow(y, t, k)) - product_distance(x, y);
    acc.record(v, [&] { return Json{{"x", tuple_to_json(x)}, {"y", tuple_to_json(y)}, {"t", t}, {"k", k}}; });
  }
  return acc.result();
}

CheckResult spread_bound(const ScanConfig& cfg) {
  Accumulator acc("spread_bound", 0.0);
  const double speed = 2.0 * std::pow(static_cast<double>(cfg.n), 1.5) * 1.01;
  const int k = std::max(cfg.flow.sweeps, 256);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamSpread, s);
    const Tuple x = sample_tuple(cfg.space, cfg.n, rng);
    const double t = uniform01(rng) * 0.5 * min_gap(x);
    const double v = product_distance(splitting_flow(x, t, k), x) - speed * t;
    acc.record(v, [&] { return Json{{"x", tuple_to_json(x)}, {"t", t}, {"k", k}}; });
  }
  return acc.result();
}

CheckResult merge_time_bound(const ScanConfig& cfg) {
  // Reported as t* / (delta/2) - (1 + slack); passes at <= 0.
  Accumulator acc("merge_time_bound", 0.0);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamMergeTime, s);
    const Tuple x = sample_tuple(cfg.space, cfg.n, rng);
    const double delta = min_gap(x);
    const MergeResult m = merge_time(x, cfg.flow);
    const double v = m.time / (0.5 * delta) - (1.0 + kMergeSlack);
    acc.record(v, [&] { return Json{{"x", tuple_to_json(x)}, {"t_star", m.time}, {"delta", delta}}; });
  }
  return acc.result();
}

CheckResult two_point_equality(const ScanConfig& cfg) {
  Accumulator acc("two_point_equality", kTight);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamTwoPoint, s);
    const Tuple x = sample_tuple(cfg.space, 2, rng);
    const double delta = min_gap(x);
    const MergeResult m = merge_time(x, cfg.flow);
    const Point mid = geodesic_point(cfg.space, x[0], x[1], 0.5);
    const double v = std::max({std::abs(m.time - 0.5 * delta), distance(cfg.space, m.merged[0], mid),
                               distance(cfg.space, m.merged[1], mid)});
    acc.record(v, [&] { return Json{{"x", tuple_to_json(x)}, {"t_star", m.time}}; });
  }
  return acc.result();
}

CheckResult pair_claims(const ScanConfig& cfg) {
  Accumulator acc("pair_claims", kTight);
  const std::size_t n = std::max<std::size_t>(cfg.n, 3);
  int near = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamClaims, s);
    const Tuple y = sample_tuple(cfg.space, n, rng);
    const std::size_t i = 2 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n - 2));
    const double d12 = distance(cfg.space, y[0], y[1]);
    // lambda in (0, 2 d12) hits both branches about equally.
    const double lambda = std::max(2.0 * uniform01(rng) * d12, 1e-12);
    const Tuple z = pair_resolvent(pair_resolvent(y, 0, i, lambda), 1, i, lambda);
    const double dz = distance(cfg.space, z[0], z[1]);
    const bool far = d12 >= lambda;
    if (!far) ++near;
    const double v = far ? dz - d12 : dz - d12 - lambda;
    acc.record(v, [&] { return Json{{"y", tuple_to_json(y)}, {"i", i}, {"lambda", lambda}}; });
  }
  return acc.result(Json{{"branch_ii_trials", near}, {"branch_i_trials", cfg.samples - near}});
}

std::vector<CheckResult> min_attainment(const ScanConfig& cfg) {
  Accumulator value("min_attainment", 1e-6);
  Accumulator trace("f_trace_monotone", kTight);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamMinAttainment, s);
    const Tuple x = sample_tuple(cfg.space, cfg.n, rng);
    const double spread = max_spread(x);
    const FlowReport report = flow_adaptive(x, 0.5 * spread, cfg.flow);
    value.record(evaluate_F(report.final) / spread, [&] { return Json{{"x", tuple_to_json(x)}}; });
    double rise = -kInf;
    for (std::size_t k = 1; k < report.trace.size(); ++k) rise = std::max(rise, report.trace[k].F - report.trace[k - 1].F);
    trace.record(rise, [&] { return Json{{"x", tuple_to_json(x)}, {"t", 0.5 * spread}}; });
  }
  return {value.result(), trace.result()};
}

CheckResult retraction_identity(const ScanConfig& cfg) {
  Accumulator acc("retraction_identity", 0.0);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamRetractIdentity, s);
    const auto size = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(cfg.n - 1));
    const FiniteSubset a = sample_subset(cfg.space, size, rng);
    const RetractReport r = retract(embed(a), cfg.n, cfg.flow);
    acc.record(hausdorff_distance(r.output, a), [&] { return Json{{"a", subset_to_json(a)}, {"n", cfg.n}}; });
  }
  return acc.result();
}

CheckResult retraction_cardinality(const ScanConfig& cfg) {
  Accumulator acc("retraction_cardinality", 0.0);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamRetractCardinality, s);
    const FiniteSubset a = sample_subset(cfg.space, cfg.n, rng);
    const RetractReport r = retract(a, cfg.n, cfg.flow);
    acc.record(static_cast<double>(r.output.size()) - static_cast<double>(cfg.n - 1),
               [&] { return Json{{"a", subset_to_json(a)}, {"n", cfg.n}}; });
  }
  return acc.result();
}

CheckResult output_proximity(const ScanConfig& cfg) {
  Accumulator acc("output_proximity", kTight);
  const double lip = std::pow(static_cast<double>(cfg.n), 1.5);
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamProximity, s);
    const FiniteSubset a = sample_subset(cfg.space, cfg.n, rng);
    const RetractReport r = retract(a, cfg.n, cfg.flow);
    const double delta = min_gap(order_tuple(a, cfg.n));
    acc.record(hausdorff_distance(a, r.output) - lip * delta,
               [&] { return Json{{"a", subset_to_json(a)}, {"n", cfg.n}}; });
  }
  return acc.result();
}

}  // namespace checks

ScanReport lipschitz_scan(const ScanConfig& cfg) {
  cfg.validate();
  const double bound = lipschitz_constant_bound(cfg.n);
  Accumulator acc("lipschitz_ratio", bound);
  int first_alternative = 0;
  int second_alternative = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamLipschitz, s);
    const FiniteSubset a = sample_subset(cfg.space, cfg.n, rng);
    const bool perturbed = s % 2 == 1;
    const FiniteSubset b = [&] {
      if (!perturbed) {
        const auto size = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(cfg.n));
        return sample_subset(cfg.space, size, rng);
      }
      const double radius = cfg.perturbation_scale * (a.size() > 1 ? set_min_gap(a) : 1.0);
      std::vector<Point> pts;
      for (const auto& p : a.points()) pts.push_back(sample_nearby(cfg.space, p, radius, rng));
      return FiniteSubset(cfg.space, std::move(pts));
    }();
    const double dh = hausdorff_distance(a, b);
    if (!(dh > 1e-12)) {
      acc.skip();
      continue;
    }
    const double da = a.size() > 1 ? set_min_gap(a) : 0.0;
    const double db = b.size() > 1 ? set_min_gap(b) : 0.0;
    (da + db <= 4.0 * dh ? first_alternative : second_alternative)++;
    const RetractReport ra = retract(a, cfg.n, cfg.flow);
    const RetractReport rb = retract(b, cfg.n, cfg.flow);
    const double ratio = hausdorff_distance(ra.output, rb.output) / dh;
    acc.record(ratio, [&] {
      return Json{{"a", subset_to_json(a)}, {"b", subset_to_json(b)}, {"n", cfg.n}, {"perturbed", perturbed}};
    });
  }
  ScanReport report;
  report.checks.push_back(acc.result(Json{{"n", cfg.n},
                                          {"bound", bound},
                                          {"first_alternative_pairs", first_alternative},
                                          {"second_alternative_pairs", second_alternative}}));
  return report;
}

ScanReport bound_suite(const ScanConfig& cfg) {
  cfg.validate();
  ScanReport report;
  for (auto& c : checks::cat0_audit(cfg)) report.checks.push_back(std::move(c));
  report.checks.push_back(checks::geodesic_parametrization(cfg));
  report.checks.push_back(checks::hausdorff_triangle(cfg));
  report.checks.push_back(checks::hausdorff_le_product(cfg));
  report.checks.push_back(checks::f_lipschitz(cfg));
  report.checks.push_back(checks::f_convexity(cfg));
  report.checks.push_back(checks::one_step_estimate(cfg));
  report.checks.push_back(checks::nonexpansive(cfg));
  report.checks.push_back(checks::spread_bound(cfg));
  report.checks.push_back(checks::merge_time_bound(cfg));
  report.checks.push_back(checks::two_point_equality(cfg));
  report.checks.push_back(checks::pair_claims(cfg));
  for (auto& c : checks::min_attainment(cfg)) report.checks.push_back(std::move(c));
  report.checks.push_back(checks::retraction_identity(cfg));
  report.checks.push_back(checks::retraction_cardinality(cfg));
  report.checks.push_back(checks::output_proximity(cfg));
  return report;
}

ScanReport convergence_study(const ScanConfig& cfg, double t) {
  cfg.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("convergence_study: t must be >= 0");
  Accumulator monotone("doubling_monotone", 0.0);
  Accumulator final_gap("doubling_final", cfg.flow.richardson_tolerance);
  Accumulator oracle("oracle_agreement", 1e-4);
  const bool oracle_ok = cfg.space.kind() == SpaceKind::euclidean &&
                         cfg.n * static_cast<std::size_t>(cfg.space.dim()) <= kOracleMaxScalars;
  ScanReport report;

  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = stream(cfg, kStreamConvergence, s);
    const Tuple x = sample_tuple(cfg.space, cfg.n, rng);
    int k = cfg.flow.sweeps;
    Tuple prev = splitting_flow(x, t, k);
    std::vector<double> dists;
    for (int d = 0; d < cfg.flow.max_doublings; ++d) {
      k *= 2;
      Tuple cur = splitting_flow(x, t, k);
      dists.push_back(product_distance(prev, cur));
      prev = std::move(cur);
      if (dists.back() <= cfg.flow.richardson_tolerance) break;
    }
    double rise = -kInf;
    for (std::size_t j = 1; j < dists.size(); ++j) rise = std::max(rise, dists[j] - dists[j - 1]);
    if (dists.size() < 2) rise = 0.0;
    auto input = [&] { return Json{{"x", tuple_to_json(x)}, {"t", t}}; };
    monotone.record(rise, input);
    final_gap.record(dists.back(), input);
    report.sequences.push_back({"sample " + std::to_string(s) + " splitting", dists});

    if (oracle_ok) {
      Tuple y = x;
      if (t > 0.0) {
        const double lambda = t / cfg.oracle_sweeps;
        for (int j = 0; j < cfg.oracle_sweeps; ++j) y = oracle_full_resolvent(y, lambda);
      }
      const double gap = product_distance(y, prev);
      oracle.record(gap, input);
      report.sequences.push_back({"sample " + std::to_string(s) + " oracle", {gap}});
    } else {
      oracle.skip();
    }
  }
  report.checks.push_back(monotone.result());
  report.checks.push_back(final_gap.result());
  report.checks.push_back(oracle.result(Json{{"oracle_sweeps", cfg.oracle_sweeps}}));
  return report;
}

std::optional<Matching> matching_diagnostic(const FiniteSubset& a, const FiniteSubset& b) {
  if (a.size() != b.size()) throw ValidationError("matching_diagnostic: sets differ in size");
  if (!(a.space() == b.space())) throw ValidationError("matching_diagnostic: space mismatch");
  const std::size_t n = a.size();
  std::vector<bool> used_a(n, false), used_b(n, false);
  Matching m;
  for (std::size_t round = 0; round < n; ++round) {
    double best = kInf;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used_a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_b[j]) continue;
        const double d = distance(a.space(), a[i], b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    m.pairs.emplace_back(bi, bj);
    m.max_distance = std::max(m.max_distance, best);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  if (m.max_distance > hausdorff_distance(a, b) * (1.0 + 1e-12)) return std::nullopt;
  return m;
}

}  // namespace hretract
