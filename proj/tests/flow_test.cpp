#include <gtest/gtest.h>

#include <cmath>

#include "hretract/flow.hpp"
#include "hretract/verify.hpp"
#include "test_support.hpp"

namespace hretract {
namespace {

using test::line_tuple;

std::vector<double> values(const Tuple& x) {
  std::vector<double> v;
  for (const auto& p : x.coords()) v.push_back(p[0]);
  return v;
}

void expect_line(const Tuple& x, std::vector<double> expected, double tol) {
  ASSERT_EQ(x.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(x[i][0], expected[i], tol) << "coordinate " << i;
}

TEST(EvaluateF, LineSums) {
  EXPECT_DOUBLE_EQ(evaluate_F(line_tuple({0, 1, 3})), 6.0);
  EXPECT_EQ(evaluate_F(line_tuple({2, 2, 2})), 0.0);
}

TEST(PairResolvent, ClosedFormMatchesBruteForceOnLine) {
  for (double lambda : {0.2, 5.0}) {
    const auto [u, v] = test::pair_prox_oracle({0.0}, {1.0}, lambda);
    const Tuple y = pair_resolvent(line_tuple({0, 1}), 0, 1, lambda);
    // A value-based search pins the minimizer down to about sqrt(eps).
    EXPECT_NEAR(y[0][0], u[0], 1e-7);
    EXPECT_NEAR(y[1][0], v[0], 1e-7);
  }
  // Frozen from the oracle above.
  expect_line(pair_resolvent(line_tuple({0, 1}), 0, 1, 0.2), {0.2, 0.8}, 1e-15);
  expect_line(pair_resolvent(line_tuple({0, 1}), 0, 1, 5.0), {0.5, 0.5}, 0.0);
}

TEST(PairResolvent, RandomPlanarInstancesMatchBruteForce) {
  const Space s = Space::euclidean(2);
  for (int k = 0; k < 100; ++k) {
    Rng rng = make_rng(41, 1, k);
    const Tuple x = sample_tuple(s, 3, rng);
    const double lambda = std::pow(10.0, -2.0 + 3.0 * uniform01(rng));
    const Tuple y = pair_resolvent(x, 0, 2, lambda);
    const std::vector<double> a(x[0].coords().begin(), x[0].coords().end());
    const std::vector<double> b(x[2].coords().begin(), x[2].coords().end());
    const auto [u, v] = test::pair_prox_oracle(a, b, lambda);
    EXPECT_LE(test::max_abs_diff(y[0].coords(), u), 1e-6) << k;
    EXPECT_LE(test::max_abs_diff(y[2].coords(), v), 1e-6) << k;
    EXPECT_EQ(y[1], x[1]);
  }
}

TEST(PairResolvent, CoincidentPairUnchanged) {
  const Tuple x = line_tuple({3, 3, 1});
  EXPECT_EQ(pair_resolvent(x, 0, 1, 0.7).coords(), x.coords());
}

TEST(PairResolvent, SymmetricInIndexOrder) {
  const Tuple x = line_tuple({0, 4, 1});
  EXPECT_EQ(pair_resolvent(x, 2, 0, 0.3).coords(), pair_resolvent(x, 0, 2, 0.3).coords());
}

TEST(PairResolvent, RejectsBadArguments) {
  const Tuple x = line_tuple({0, 1});
  EXPECT_THROW(pair_resolvent(x, 1, 1, 0.1), ValidationError);
  EXPECT_THROW(pair_resolvent(x, 0, 2, 0.1), ValidationError);
  EXPECT_THROW(pair_resolvent(x, 0, 1, 0.0), ValidationError);
  EXPECT_THROW(pair_resolvent(x, 0, 1, -1.0), ValidationError);
}

TEST(PairResolvent, SnappedPairIsExactlyEqualOnEveryBackend) {
  for (const Space& s : test::all_backends()) {
    Rng rng = make_rng(42, 1, 0);
    const Tuple x = sample_tuple(s, 2, rng);
    const Tuple y = pair_resolvent(x, 0, 1, distance(s, x[0], x[1]));
    EXPECT_EQ(y[0], y[1]);
  }
}

TEST(Sweep, PairOrder) {
  using P = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(sweep_pairs(3), (std::vector<P>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(sweep_pairs(4), (std::vector<P>{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}));
}

TEST(Sweep, HandSteppedLineExample) {
  // Same three steps through the brute-force pair prox.
  std::vector<double> x = {0, 1, 3};
  for (const auto& [i, j] : sweep_pairs(3)) {
    const auto [u, v] = test::pair_prox_oracle({x[i]}, {x[j]}, 0.1);
    x[i] = u[0];
    x[j] = v[0];
  }
  expect_line(line_tuple({x[0], x[1], x[2]}), {0.2, 1.0, 2.8}, 1e-7);
  expect_line(sweep(line_tuple({0, 1, 3}), 0.1), {0.2, 1.0, 2.8}, 1e-15);
}

TEST(SplittingFlow, TwoPointsClosedForm) {
  for (int k : {2, 3, 7, 256, 1000}) expect_line(splitting_flow(line_tuple({0, 1}), 0.3, k), {0.3, 0.7}, 1e-12);
}

TEST(SplittingFlow, ZeroTimeIsIdentity) {
  const Tuple x = line_tuple({0, 1, 5});
  EXPECT_EQ(splitting_flow(x, 0.0, 10).coords(), x.coords());
  EXPECT_THROW(splitting_flow(x, -1.0, 10), ValidationError);
  EXPECT_THROW(splitting_flow(x, 1.0, 0), ValidationError);
}

TEST(SplittingFlow, NonexpansiveOnSamples) {
  for (const Space& s : test::all_backends()) {
    for (int k = 0; k < 50; ++k) {
      Rng rng = make_rng(43, 1, k);
      const Tuple x = sample_tuple(s, 4, rng);
      const Tuple y = sample_tuple(s, 4, rng);
      const double t = uniform01(rng) * max_spread(x);
      EXPECT_LE(product_distance(splitting_flow(x, t, 64), splitting_flow(y, t, 64)), product_distance(x, y) + 1e-9);
    }
  }
}

TEST(SplittingFlow, PermutationDefectShrinksWithK) {
  // The exact flow commutes with relabeling coordinates; the splitting does so
  // only in the limit.
  const Space s = Space::euclidean(2);
  for (int k = 0; k < 5; ++k) {
    Rng rng = make_rng(44, 1, k);
    const Tuple x = sample_tuple(s, 4, rng);
    const Tuple px(s, {x[3], x[1], x[0], x[2]});
    auto defect = [&](int sweeps) {
      const Tuple a = splitting_flow(x, 0.2, sweeps);
      const Tuple b = splitting_flow(px, 0.2, sweeps);
      return product_distance(Tuple(s, {a[3], a[1], a[0], a[2]}), b);
    };
    const double coarse = defect(32);
    const double fine = defect(1024);
    EXPECT_LT(fine, 0.1 * coarse + 1e-12) << k;
  }
}

TEST(FlowAdaptive, TwoPointsNeedNoRefinement) {
  const FlowReport r = flow_adaptive(line_tuple({0, 1}), 0.3);
  expect_line(r.final, {0.3, 0.7}, 1e-12);
  EXPECT_TRUE(r.converged);
  ASSERT_FALSE(r.doubling_distances.empty());
  EXPECT_LE(r.doubling_distances.front(), 1e-12);
}

TEST(FlowAdaptive, TraceIsNonincreasingInF) {
  Rng rng = make_rng(45, 1, 0);
  const Tuple x = sample_tuple(Space::hyperboloid(2), 5, rng);
  const FlowReport r = flow_adaptive(x, 0.5, FlowConfig{64, 1e-6, 2, 1e-7});
  ASSERT_EQ(r.trace.size(), static_cast<std::size_t>(r.sweeps_used) + 1);
  EXPECT_EQ(r.trace.front().time, 0.0);
  EXPECT_NEAR(r.trace.back().time, 0.5, 1e-12);
  for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LE(r.trace[k].F, r.trace[k - 1].F + 1e-12);
  const std::string csv = trace_to_csv(r.trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "time,delta,F");
}

TEST(FlowAdaptive, ZeroTime) {
  const Tuple x = line_tuple({0, 2, 3});
  const FlowReport r = flow_adaptive(x, 0.0);
  EXPECT_EQ(r.final.coords(), x.coords());
  EXPECT_TRUE(r.converged);
}

TEST(FlowConfigTest, Validation) {
  EXPECT_THROW((FlowConfig{0, 1e-6, 8, 1e-7}.validate()), ValidationError);
  EXPECT_THROW((FlowConfig{256, -1.0, 8, 1e-7}.validate()), ValidationError);
  EXPECT_THROW((FlowConfig{256, 1e-6, -1, 1e-7}.validate()), ValidationError);
  EXPECT_NO_THROW(FlowConfig{}.validate());
}

TEST(MergeTime, TwoPointsEqualityCase) {
  const MergeResult m = merge_time(line_tuple({0, 1}));
  EXPECT_NEAR(m.time, 0.5, 1e-12);
  EXPECT_EQ(values(m.merged), (std::vector<double>{0.5, 0.5}));
}

TEST(MergeTime, AlreadyOnDiagonal) {
  const Tuple x = line_tuple({1, 4, 1});
  const MergeResult m = merge_time(x);
  EXPECT_EQ(m.time, 0.0);
  EXPECT_EQ(m.merged.coords(), x.coords());
}

TEST(MergeTime, NearPairMergesFirst) {
  const MergeResult m = merge_time(line_tuple({0, 1, 10}));
  EXPECT_LE(m.time, 0.5 + 5e-4);
  EXPECT_LE(std::abs(m.merged[0][0] - m.merged[1][0]), 1e-6);
  EXPECT_LE(std::abs(m.merged[2][0] - 10.0), 2 * m.time);
}

TEST(MergeTime, BoundOnSamples) {
  for (const Space& s : test::all_backends()) {
    for (int k = 0; k < 50; ++k) {
      Rng rng = make_rng(46, 1, k);
      const Tuple x = sample_tuple(s, 2 + k % 4, rng);
      const MergeResult m = merge_time(x);
      EXPECT_LE(m.time, 0.5 * min_gap(x) * (1 + kMergeSlack));
      EXPECT_LE(min_gap(m.merged), 1e-6 * min_gap(x) + 1e-15);
    }
  }
}

TEST(OracleFullResolvent, TwoPointsMatchPairResolvent) {
  expect_line(oracle_full_resolvent(line_tuple({0, 1}), 0.2), {0.2, 0.8}, 1e-10);
  expect_line(oracle_full_resolvent(line_tuple({0, 1}), 5.0), {0.5, 0.5}, 1e-10);
}

TEST(OracleFullResolvent, SmallLambdaIsNearIdentity) {
  const Tuple x = line_tuple({0, 1, 3});
  EXPECT_LE(product_distance(oracle_full_resolvent(x, 1e-9), x), 1e-8);
}

TEST(OracleFullResolvent, MatchesNestedSearchOnLine) {
  // Three points on a line: nested golden-section search over the convex
  // objective lambda F(y) + |y - x|^2 / 2.
  for (int k = 0; k < 10; ++k) {
    Rng rng = make_rng(47, 1, k);
    const Tuple x = sample_tuple(Space::euclidean(1), 3, rng);
    const double lambda = std::pow(10.0, -1.5 + 2.0 * uniform01(rng));
    const double a = x[0][0], b = x[1][0], c = x[2][0];
    auto obj = [&](double u, double v, double w) {
      return lambda * (std::abs(u - v) + std::abs(u - w) + std::abs(v - w)) +
             0.5 * ((u - a) * (u - a) + (v - b) * (v - b) + (w - c) * (w - c));
    };
    const double lo = std::min({a, b, c}) - 1, hi = std::max({a, b, c}) + 1;
    auto best_w = [&](double u, double v) { return test::golden_min([&](double w) { return obj(u, v, w); }, lo, hi, 1e-10); };
    auto best_v = [&](double u) {
      return test::golden_min([&](double v) { return obj(u, v, best_w(u, v)); }, lo, hi, 1e-10);
    };
    const double u = test::golden_min([&](double u) { const double v = best_v(u); return obj(u, v, best_w(u, v)); }, lo, hi, 1e-10);
    const double v = best_v(u);
    const double w = best_w(u, v);
    const Tuple y = oracle_full_resolvent(x, lambda);
    EXPECT_LE(obj(y[0][0], y[1][0], y[2][0]), obj(u, v, w) + 1e-14) << k;
    expect_line(y, {u, v, w}, 1e-5);
  }
}

TEST(OracleFullResolvent, Limits) {
  Rng rng = make_rng(48, 1, 0);
  EXPECT_THROW(oracle_full_resolvent(sample_tuple(Space::hyperboloid(1), 2, rng), 0.1), ValidationError);
  EXPECT_THROW(oracle_full_resolvent(sample_tuple(Space::euclidean(3), 3, rng), 0.1), ValidationError);
  EXPECT_THROW(oracle_full_resolvent(line_tuple({0, 1}), 0.0), ValidationError);
}

TEST(FlowReportJson, Fields) {
  const Json j = flow_report_to_json(flow_adaptive(line_tuple({0, 1}), 0.1));
  for (const char* key : {"final", "elapsed_time", "sweeps_used", "doubling_distances", "converged", "trace"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

}  // namespace
}  // namespace hretract
