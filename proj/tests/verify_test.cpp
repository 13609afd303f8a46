#include <gtest/gtest.h>

#include "hretract/verify.hpp"
#include "test_support.hpp"

namespace hretract {
namespace {

using test::line_set;

TEST(ScanConfigTest, Validation) {
  ScanConfig cfg;
  cfg.n = 1;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.n = 3;
  cfg.samples = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.samples = 1;
  cfg.perturbation_scale = 0.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(LipschitzScan, TwoPointRatioExample) {
  // d_H({0,1}, {0,1.2}) = 0.2 while the midpoints 0.5 and 0.6 are 0.1 apart.
  const FiniteSubset a = line_set({0, 1});
  const FiniteSubset b = line_set({0, 1.2});
  EXPECT_NEAR(hausdorff_distance(a, b), 0.2, 1e-15);
  const double ratio = hausdorff_distance(retract(a, 2).output, retract(b, 2).output) / hausdorff_distance(a, b);
  EXPECT_NEAR(ratio, 0.5, 1e-9);
}

TEST(LipschitzScan, PassesAndIsReplayable) {
  for (const Space& s : test::all_backends()) {
    ScanConfig cfg;
    cfg.space = s;
    cfg.n = 3;
    cfg.samples = 60;
    const ScanReport r = lipschitz_scan(cfg);
    const CheckResult& c = r.check("lipschitz_ratio");
    EXPECT_TRUE(r.pass());
    EXPECT_DOUBLE_EQ(c.threshold, lipschitz_constant_bound(3));
    EXPECT_EQ(c.trials + c.skipped, 60);
    // The worst input replays to the same ratio.
    const FiniteSubset a = subset_from_json(c.worst_input.at("a"));
    const FiniteSubset b = subset_from_json(c.worst_input.at("b"));
    const double replay = hausdorff_distance(retract(a, 3).output, retract(b, 3).output) / hausdorff_distance(a, b);
    EXPECT_NEAR(replay, c.worst, 1e-9 * c.worst);
  }
}

TEST(LipschitzScan, Deterministic) {
  ScanConfig cfg;
  cfg.samples = 20;
  EXPECT_EQ(scan_report_to_json(lipschitz_scan(cfg)).dump(), scan_report_to_json(lipschitz_scan(cfg)).dump());
  ScanConfig other = cfg;
  other.seed = 2;
  EXPECT_NE(scan_report_to_json(lipschitz_scan(cfg)).dump(), scan_report_to_json(lipschitz_scan(other)).dump());
}

TEST(BoundSuite, AllChecksPassPerBackend) {
  for (const Space& s : test::all_backends()) {
    ScanConfig cfg;
    cfg.space = s;
    cfg.samples = 40;
    const ScanReport r = bound_suite(cfg);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << to_string(s.kind()) << " " << c.name << " " << c.worst;
    for (const char* name : {"cat0_inequality", "comparison_triangle", "joint_convexity", "geodesic_parametrization",
                             "hausdorff_triangle", "hausdorff_le_product", "f_lipschitz", "f_convexity",
                             "one_step_estimate", "nonexpansive", "spread_bound", "merge_time_bound",
                             "two_point_equality", "pair_claims", "min_attainment", "f_trace_monotone",
                             "retraction_identity", "retraction_cardinality", "output_proximity"}) {
      EXPECT_NO_THROW(r.check(name)) << name;
    }
  }
}

TEST(BoundSuite, OneStepSkippedOutsideOracleRange) {
  ScanConfig cfg;
  cfg.space = Space::hyperboloid(2);
  cfg.samples = 5;
  const CheckResult c = checks::one_step_estimate(cfg);
  EXPECT_EQ(c.trials, 0);
  EXPECT_EQ(c.skipped, 5);
  EXPECT_TRUE(c.pass);
}

TEST(ConvergenceStudy, TwoPointsExact) {
  ScanConfig cfg;
  cfg.space = Space::euclidean(1);
  cfg.n = 2;
  cfg.samples = 5;
  const ScanReport r = convergence_study(cfg, 0.2);
  EXPECT_TRUE(r.pass());
  for (const auto& seq : r.sequences) {
    for (double v : seq.values) EXPECT_LE(v, 1e-12) << seq.label;
  }
}

TEST(ConvergenceStudy, ZeroTime) {
  ScanConfig cfg;
  cfg.samples = 3;
  const ScanReport r = convergence_study(cfg, 0.0);
  EXPECT_TRUE(r.pass());
  for (const auto& seq : r.sequences) {
    for (double v : seq.values) EXPECT_EQ(v, 0.0);
  }
  EXPECT_THROW(convergence_study(cfg, -1.0), ValidationError);
}

TEST(Matching, IdentityForEqualSets) {
  const FiniteSubset a = line_set({0, 2, 5});
  const auto m = matching_diagnostic(a, a);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->max_distance, 0.0);
  for (const auto& [i, j] : m->pairs) EXPECT_EQ(i, j);
}

TEST(Matching, WellSeparatedSetsMatchWithinHausdorff) {
  // delta(a) = 3 > 2 d_H = 0.6.
  const FiniteSubset a = line_set({0, 3, 7});
  const FiniteSubset b = line_set({0.3, 2.8, 7.1});
  const auto m = matching_diagnostic(a, b);
  ASSERT_TRUE(m.has_value());
  EXPECT_LE(m->max_distance, hausdorff_distance(a, b));
}

TEST(Matching, ClusteredSetsCanFail) {
  // Two points of a crowd one point of b, so any bijection stretches.
  const FiniteSubset a = line_set({0, 0.1, 10});
  const FiniteSubset b = line_set({0.05, 9.9, 10});
  EXPECT_FALSE(matching_diagnostic(a, b).has_value());
  EXPECT_THROW(matching_diagnostic(a, line_set({0})), ValidationError);
}

}  // namespace
}  // namespace hretract
