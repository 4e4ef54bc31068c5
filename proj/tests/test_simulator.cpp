#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "lighttail/analysis.hpp"
#include "lighttail/simulator.hpp"

namespace lighttail {
namespace {

PolicySpec bonus_policy(PolicyKind kind, BonusDesign design, double kappa) {
  PolicySpec s;
  s.kind = kind;
  s.bonus = BonusSpec::from_kappa(design, kappa);
  return s;
}

std::vector<PolicySpec> mab_policies() {
  std::vector<PolicySpec> out;
  for (PolicyKind k : {PolicyKind::SE, PolicyKind::UCB}) {
    for (BonusDesign d : {BonusDesign::Standard, BonusDesign::NewSqrtT, BonusDesign::OptimalK,
                          BonusDesign::AnyTime}) {
      out.push_back(bonus_policy(k, d, 0.3));
    }
  }
  PolicySpec ts;
  ts.kind = PolicyKind::TS;
  ts.kappa = 0.5;
  out.push_back(ts);
  PolicySpec etc;
  etc.kind = PolicyKind::ETC;
  out.push_back(etc);
  PolicySpec rnd;
  rnd.kind = PolicyKind::Random;
  out.push_back(rnd);
  return out;
}

LinearInstance small_linear(ActionSetMode mode = ActionSetMode::Fixed) {
  Eigen::VectorXd theta(3);
  theta << 0.6, -0.2, 0.4;
  return LinearInstance(theta, 8, 1.0, 200, mode);
}

PolicySpec linucb() {
  PolicySpec s;
  s.kind = PolicyKind::LinUCB;
  s.bonus = {BonusDesign::Linear, 1.0, 1.0, 0.0};
  return s;
}

TEST(RunEpisode, SameSeedSameResult) {
  const BanditInstance instance({0.2, 0.4, 0.6, 0.8}, 1.0, 300);
  for (const auto& p : mab_policies()) {
    EXPECT_EQ(run_episode(instance, p, {5, 3}, true), run_episode(instance, p, {5, 3}, true))
        << p.label();
  }
  const auto lin = small_linear(ActionSetMode::PerRound);
  EXPECT_EQ(run_episode(lin, linucb(), {5, 3}, true), run_episode(lin, linucb(), {5, 3}, true));
}

TEST(RunEpisode, DecompositionInvariants) {
  const BanditInstance instance({0.1, 0.45, 0.8, 0.8}, 1.5, 257);
  for (const auto& p : mab_policies()) {
    for (Count path = 0; path < 20; ++path) {
      const auto r = run_episode(instance, p, {11, path});
      const Count total = std::accumulate(r.pulls.begin(), r.pulls.end(), Count{0});
      ASSERT_EQ(total, instance.horizon());
      ASSERT_GE(r.pseudo_regret, 0.0);
      ASSERT_NEAR(r.empirical_regret, r.pseudo_regret - r.noise_sum, 1e-9 * 257);
      ASSERT_NEAR(r.cumulative_reward + r.empirical_regret, 0.8 * 257, 1e-9 * 257);
    }
  }
}

TEST(RunEpisode, LinearDecompositionInvariants) {
  const auto lin = small_linear(ActionSetMode::PerRound);
  PolicySpec rnd;
  rnd.kind = PolicyKind::Random;
  for (const auto& p : {linucb(), rnd}) {
    for (Count path = 0; path < 20; ++path) {
      const auto r = run_episode(lin, p, {2, path});
      ASSERT_EQ(std::accumulate(r.pulls.begin(), r.pulls.end(), Count{0}), 200);
      ASSERT_GE(r.pseudo_regret, 0.0);
      ASSERT_NEAR(r.empirical_regret, r.pseudo_regret - r.noise_sum, 1e-9 * 200);
    }
  }
}

TEST(RunEpisode, ZeroNoiseMeansZeroNoiseSum) {
  const BanditInstance instance({0.3, 0.9, 0.5}, 0.0, 120);
  for (const auto& p : mab_policies()) {
    const auto r = run_episode(instance, p, {1, 4});
    EXPECT_EQ(r.noise_sum, 0.0) << p.label();
    EXPECT_NEAR(r.empirical_regret, r.pseudo_regret, 1e-9 * 120) << p.label();
  }
}

TEST(RunEpisode, EllipticalPotentialBound) {
  const auto lin = small_linear();
  for (Count path = 0; path < 50; ++path) {
    const auto r = run_episode(lin, linucb(), {8, path});
    EXPECT_GT(r.elliptical_potential, 0.0);
    EXPECT_LE(r.elliptical_potential, 2.0 * 3 * std::log(200.0));
  }
}

TEST(RunEpisode, PolicyInstanceMismatchThrows) {
  const BanditInstance mab({0.2, 0.8}, 1.0, 10);
  EXPECT_THROW(run_episode(mab, linucb(), {1, 0}), std::invalid_argument);
  PolicySpec se = bonus_policy(PolicyKind::SE, BonusDesign::NewSqrtT, 0.2);
  EXPECT_THROW(run_episode(small_linear(), se, {1, 0}), std::invalid_argument);
}

TEST(MonteCarlo, SingleReplicationIsRunEpisode) {
  const BanditInstance instance({0.2, 0.8}, 1.0, 100);
  const auto p = bonus_policy(PolicyKind::UCB, BonusDesign::NewSqrtT, 0.2);
  const RunConfig config{instance, p, 1, 77, true};
  const auto all = run_monte_carlo(config, 3);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], run_episode(instance, p, {77, 0}, true));
}

TEST(MonteCarlo, WorkerCountDoesNotChangeResults) {
  const BanditInstance instance({0.2, 0.4, 0.6, 0.8}, 1.0, 150);
  PolicySpec ts;
  ts.kind = PolicyKind::TS;
  ts.kappa = 0.3;
  const RunConfig config{instance, ts, 333, 20240, true};
  const auto serial = run_monte_carlo(config, 1);
  for (int w : {2, 4, 16}) EXPECT_EQ(run_monte_carlo(config, w), serial) << w << " workers";

  const RunConfig lin{small_linear(ActionSetMode::PerRound), linucb(), 40, 20240, true};
  EXPECT_EQ(run_monte_carlo(lin, 5), run_monte_carlo(lin, 1));
}

TEST(MonteCarlo, SinkSeesPathOrder) {
  const BanditInstance instance({0.2, 0.8}, 1.0, 50);
  const RunConfig config{instance, bonus_policy(PolicyKind::SE, BonusDesign::Standard, 0.5), 500,
                         1, false};
  Count expected = 0;
  run_monte_carlo(config, 4, [&](Count path, const EpisodeResult&) {
    ASSERT_EQ(path, expected);
    ++expected;
  });
  EXPECT_EQ(expected, 500);
}

TEST(MonteCarlo, SinkExceptionPropagates) {
  const BanditInstance instance({0.2, 0.8}, 1.0, 50);
  const RunConfig config{instance, bonus_policy(PolicyKind::SE, BonusDesign::Standard, 0.5), 100,
                         1, false};
  EXPECT_THROW(run_monte_carlo(config, 2,
                               [](Count path, const EpisodeResult&) {
                                 if (path == 10) throw std::runtime_error("sink failure");
                               }),
               std::runtime_error);
}

TEST(MonteCarlo, RejectsBadConfig) {
  const BanditInstance instance({0.2, 0.8}, 1.0, 50);
  RunConfig config{instance, bonus_policy(PolicyKind::UCB, BonusDesign::NewSqrtT, 0.5), 0, 1,
                   false};
  EXPECT_THROW(run_monte_carlo(config, 1), std::invalid_argument);
  config.replications = 5;
  config.policy = linucb();
  EXPECT_THROW(run_monte_carlo(config, 1), std::invalid_argument);
}

TEST(MonteCarlo, NoiseTailsObeySubgaussianBound) {
  // |N(T)| >= x happens with frequency at most exp(-x^2 / (2 sigma0^2 T))
  // plus three Monte Carlo standard errors.
  const double sigma0 = 1.5;
  const Count T = 400;
  const BanditInstance instance({0.3, 0.7}, sigma0, T);
  for (const auto& policy : {bonus_policy(PolicyKind::UCB, BonusDesign::Standard, 0.2),
                             bonus_policy(PolicyKind::SE, BonusDesign::NewSqrtT, 0.4)}) {
    const RunConfig config{instance, policy, 4000, 20240, false};
    const auto results = run_monte_carlo(config, 2);
    CompensatedSum noise_mean;
    for (const auto& r : results) noise_mean.add(r.noise_sum);
    const double R = static_cast<double>(results.size());
    EXPECT_LE(std::abs(noise_mean.value() / R), 4.0 * sigma0 * std::sqrt(T / R));
    for (double c : {0.5, 1.0, 2.0}) {
      const double x = c * sigma0 * std::sqrt(static_cast<double>(T));
      double hits = 0;
      for (const auto& r : results) hits += std::abs(r.noise_sum) >= x ? 1.0 : 0.0;
      const double p = hits / R;
      const double se = std::sqrt(std::max(p * (1 - p), 1.0 / R) / R);
      EXPECT_LE(p, std::exp(-x * x / (2 * sigma0 * sigma0 * T)) + 3 * se) << policy.label();
    }
  }
}

TEST(DefaultWorkers, ReadsEnvironment) {
  ::setenv("BANDIT_WORKERS", "3", 1);
  EXPECT_EQ(default_workers(), 3);
  ::setenv("BANDIT_WORKERS", "zero", 1);
  EXPECT_GE(default_workers(), 1);
  ::unsetenv("BANDIT_WORKERS");
  EXPECT_GE(default_workers(), 1);
}

}  // namespace
}  // namespace lighttail
