#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "lighttail/analysis.hpp"
#include "lighttail/rng.hpp"

namespace lighttail {
namespace {

TEST(Describe, SmallSample) {
  const std::vector<double> v = {1.0, 2.0, 3.0};
  const auto s = describe(v);
  EXPECT_EQ(s.mean, 2.0);
  EXPECT_EQ(s.quantiles[3], 2.0);  // median
  EXPECT_NEAR(s.std, 1.0, 1e-15);
}

TEST(Describe, SingleValueHasZeroSpread) {
  const std::vector<double> v = {4.5};
  const auto s = describe(v);
  EXPECT_EQ(s.mean, 4.5);
  EXPECT_EQ(s.std, 0.0);
  for (double q : s.quantiles) EXPECT_EQ(q, 4.5);
}

TEST(Describe, EmptyThrows) {
  EXPECT_THROW(describe(std::vector<double>{}), std::invalid_argument);
}

TEST(QuantileSorted, LinearInterpolation) {
  const std::vector<double> v = {10.0, 20.0, 30.0, 40.0, 50.0};
  EXPECT_EQ(quantile_sorted(v, 0.0), 10.0);
  EXPECT_EQ(quantile_sorted(v, 1.0), 50.0);
  EXPECT_NEAR(quantile_sorted(v, 0.1), 14.0, 1e-12);
  EXPECT_NEAR(quantile_sorted(v, 0.625), 35.0, 1e-12);
  EXPECT_THROW(quantile_sorted(v, 1.5), std::invalid_argument);
}

TEST(CompensatedSum, BeatsNaiveSummation) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}

TEST(Summarize, UsesBothRegretFunctionals) {
  std::vector<EpisodeResult> rs(2);
  rs[0].cumulative_reward = 10.0;
  rs[0].pseudo_regret = 1.0;
  rs[0].empirical_regret = 0.5;
  rs[0].noise_sum = 0.5;
  rs[1].cumulative_reward = 20.0;
  rs[1].pseudo_regret = 3.0;
  rs[1].empirical_regret = 4.0;
  rs[1].noise_sum = -1.0;
  const auto s = summarize(rs);
  EXPECT_EQ(s.paths, 2);
  EXPECT_EQ(s.reward.mean, 15.0);
  EXPECT_EQ(s.pseudo_regret.mean, 2.0);
  EXPECT_EQ(s.empirical_regret.mean, 2.25);
  EXPECT_EQ(s.mean_noise, -0.25);
}

TEST(EmpiricalTail, CountsAtOrAboveThreshold) {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> xs = {2.5, 2.0, -1.0, 10.0};
  const auto t = empirical_tail(v, xs);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].empirical_prob, 0.5);
  EXPECT_EQ(t[1].empirical_prob, 0.75);
  EXPECT_EQ(t[2].empirical_prob, 1.0);
  EXPECT_EQ(t[2].ci_high, 1.0);
  EXPECT_LT(t[2].ci_low, 1.0);
  EXPECT_EQ(t[3].empirical_prob, 0.0);
  EXPECT_EQ(t[3].ci_low, 0.0);
  for (const auto& r : t) {
    EXPECT_LE(r.ci_low, r.empirical_prob);
    EXPECT_GE(r.ci_high, r.empirical_prob);
    EXPECT_EQ(r.bound_name, BoundName::None);
    EXPECT_EQ(r.bound_clamped, 1.0);
  }
}

TEST(EmpiricalTail, SelectsFunctional) {
  std::vector<EpisodeResult> rs(3);
  for (int i = 0; i < 3; ++i) {
    rs[i].pseudo_regret = i;
    rs[i].empirical_regret = -i;
  }
  const std::vector<double> xs = {1.0};
  EXPECT_NEAR(empirical_tail(rs, TailFunctional::Pseudo, xs)[0].empirical_prob, 2.0 / 3, 1e-15);
  EXPECT_EQ(empirical_tail(rs, TailFunctional::Empirical, xs)[0].empirical_prob, 0.0);
}

TEST(Wilson, HalfOfHundred) {
  const auto ci = wilson_interval(50, 100);
  EXPECT_NEAR(ci.low, 0.404, 5e-4);
  EXPECT_NEAR(ci.high, 0.596, 5e-4);
}

TEST(Wilson, MatchesClosedForm) {
  for (Count n : {1, 7, 100, 5000}) {
    for (Count k = 0; k <= n; k += std::max<Count>(1, n / 13)) {
      const double p = static_cast<double>(k) / n;
      const double z = kZ95;
      const double denom = 1 + z * z / n;
      const double center = (p + z * z / (2.0 * n)) / denom;
      const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4.0 * n * n)) / denom;
      const auto ci = wilson_interval(k, n);
      EXPECT_NEAR(ci.low, std::max(0.0, std::min(center - half, p)), 1e-14);
      EXPECT_NEAR(ci.high, std::min(1.0, std::max(center + half, p)), 1e-14);
    }
  }
}

TEST(Wilson, RejectsBadCounts) {
  EXPECT_THROW(wilson_interval(1, 0), std::invalid_argument);
  EXPECT_THROW(wilson_interval(5, 4), std::invalid_argument);
  EXPECT_THROW(wilson_interval(-1, 4), std::invalid_argument);
}

TEST(Wilson, CoverageSanity) {
  Rng rng(123);
  for (double p : {0.01, 0.1, 0.5}) {
    int covered = 0;
    const int n = 1000;
    for (int trial = 0; trial < 1000; ++trial) {
      Count hits = 0;
      for (int i = 0; i < n; ++i) hits += rng.uniform() < p ? 1 : 0;
      const auto ci = wilson_interval(hits, n);
      if (ci.low <= p && p <= ci.high) ++covered;
    }
    EXPECT_GE(covered, 930) << "p=" << p;
  }
}

TEST(AttachBound, FillsRawAndClamped) {
  const std::vector<double> v = {0.0, 10.0};
  const std::vector<double> xs = {0.0, 100.0};
  auto t = empirical_tail(v, xs);
  attach_bound(t, BoundName::ThmK, [](double x) { return 405.0 * std::exp(-x / 10.0); });
  EXPECT_EQ(t[0].bound_name, BoundName::ThmK);
  EXPECT_EQ(t[0].bound_value, 405.0);
  EXPECT_EQ(t[0].bound_clamped, 1.0);
  EXPECT_NEAR(t[1].bound_value, 405.0 * std::exp(-10.0), 1e-15);
  EXPECT_EQ(t[1].bound_clamped, t[1].bound_value);
}

TEST(Histogram, FiftyEqualBins) {
  std::vector<double> v(1000);
  std::iota(v.begin(), v.end(), 0.0);
  const auto h = histogram(v);
  ASSERT_EQ(h.counts.size(), 50u);
  EXPECT_EQ(h.low, 0.0);
  EXPECT_EQ(h.high, 999.0);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), Count{0}), 1000);
  EXPECT_GE(h.counts.back(), 1);  // the maximum lands in the last bin
  EXPECT_NEAR(h.bin_width(), 999.0 / 50.0, 1e-12);
}

TEST(Histogram, ConstantSampleAndValidation) {
  const std::vector<double> v(10, 3.0);
  const auto h = histogram(v, 5);
  EXPECT_EQ(h.counts[0], 10);
  EXPECT_THROW(histogram(v, 0), std::invalid_argument);
  EXPECT_THROW(histogram(std::vector<double>{}, 5), std::invalid_argument);
}

}  // namespace
}  // namespace lighttail
