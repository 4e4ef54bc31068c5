#include <gtest/gtest.h>

#include <vector>

#include "lighttail/core.hpp"

namespace lighttail {
namespace {

TEST(PseudoRegret, AllOptimalPullsGiveZero) {
  const std::vector<Count> pulls = {0, 500};
  const std::vector<double> means = {0.2, 0.8};
  EXPECT_DOUBLE_EQ(pseudo_regret(pulls, means), 0.0);
}

TEST(PseudoRegret, CountsTimesGap) {
  const std::vector<Count> pulls = {100, 400};
  const std::vector<double> means = {0.2, 0.8};
  EXPECT_NEAR(pseudo_regret(pulls, means), 60.0, 1e-12);
}

TEST(PseudoRegret, FourArmsHandEvaluation) {
  const std::vector<Count> pulls = {2, 2, 2, 2};
  const std::vector<double> means = {0.2, 0.4, 0.6, 0.8};
  EXPECT_NEAR(pseudo_regret(pulls, means), 2.4, 1e-12);
}

TEST(PseudoRegret, TiedOptimalArmsContributeNothing) {
  const std::vector<Count> pulls = {7, 9, 4};
  const std::vector<double> means = {0.8, 0.8, 0.3};
  EXPECT_NEAR(pseudo_regret(pulls, means), 4 * 0.5, 1e-12);
}

TEST(PseudoRegret, LengthMismatchThrows) {
  const std::vector<Count> pulls = {1, 2, 3};
  const std::vector<double> means = {0.2, 0.8};
  EXPECT_THROW(pseudo_regret(pulls, means), std::invalid_argument);
}

TEST(DecomposeRegret, TwoStepHandExample) {
  const BanditInstance instance({0.2, 0.8}, 1.0, 3);
  // Horizon 3 is the smallest legal instance; extend the hand example by one
  // optimal pull with zero noise so the arithmetic stays the same.
  const std::vector<Step> trace = {{0, 0.9}, {1, 0.7}, {1, 0.8}};
  const auto r = decompose_regret(trace, instance);
  EXPECT_EQ(r.pulls, (std::vector<Count>{1, 2}));
  EXPECT_NEAR(r.pseudo_regret, 0.6, 1e-12);
  EXPECT_NEAR(r.noise_sum, 0.6, 1e-12);
  EXPECT_NEAR(r.empirical_regret, 0.0, 1e-12);
  EXPECT_NEAR(r.empirical_regret, r.pseudo_regret - r.noise_sum, 1e-12);
}

TEST(DecomposeRegret, ZeroNoiseTraceHasNoNoise) {
  const BanditInstance instance({0.2, 0.5, 0.8}, 0.0, 5);
  std::vector<Step> trace;
  for (int arm : {0, 1, 2, 2, 1}) trace.push_back({arm, instance.mean(arm)});
  const auto r = decompose_regret(trace, instance);
  EXPECT_EQ(r.noise_sum, 0.0);
  EXPECT_NEAR(r.empirical_regret, r.pseudo_regret, 1e-12);
  EXPECT_NEAR(r.pseudo_regret, 0.6 + 0.3 + 0.3, 1e-12);
}

TEST(DecomposeRegret, WrongLengthThrows) {
  const BanditInstance instance({0.2, 0.8}, 1.0, 4);
  const std::vector<Step> trace = {{0, 0.9}, {1, 0.7}};
  EXPECT_THROW(decompose_regret(trace, instance), std::invalid_argument);
}

TEST(DecomposeRegret, ArmOutOfRangeThrows) {
  const BanditInstance instance({0.2, 0.8}, 1.0, 3);
  const std::vector<Step> trace = {{0, 0.9}, {2, 0.7}, {1, 0.1}};
  EXPECT_THROW(decompose_regret(trace, instance), std::invalid_argument);
}

TEST(BanditInstance, GapsAreDerivedFromMeans) {
  const BanditInstance instance({0.2, 0.4, 0.8}, 1.0, 10);
  EXPECT_DOUBLE_EQ(instance.best_mean(), 0.8);
  EXPECT_NEAR(instance.gap(0), 0.6, 1e-15);
  EXPECT_NEAR(instance.gap(1), 0.4, 1e-15);
  EXPECT_EQ(instance.gap(2), 0.0);
}

TEST(BanditInstance, RejectsInvalidInput) {
  EXPECT_THROW(BanditInstance({0.5}, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(BanditInstance({0.5, 1.2}, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(BanditInstance({-0.1, 0.5}, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(BanditInstance({0.2, 0.8}, -1.0, 10), std::invalid_argument);
  EXPECT_THROW(BanditInstance({0.2, 0.8}, 1.0, 2), std::invalid_argument);
  EXPECT_THROW(BanditInstance({0.1, 0.2, 0.3, 0.4}, 1.0, 3), std::invalid_argument);
  EXPECT_NO_THROW(BanditInstance({0.2, 0.8}, 0.0, 3));
}

TEST(LinearInstance, RejectsInvalidInput) {
  Eigen::VectorXd theta(2);
  theta << 0.5, -0.5;
  EXPECT_NO_THROW(LinearInstance(theta, 4, 1.0, 10));
  Eigen::VectorXd big(2);
  big << 1.5, 0.0;
  EXPECT_THROW(LinearInstance(big, 4, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(LinearInstance(theta, 4, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(LinearInstance(theta, 0, 1.0, 10), std::invalid_argument);
  Eigen::MatrixXd long_action(2, 1);
  long_action << 1.0, 1.0;
  EXPECT_THROW(LinearInstance(theta, long_action, 1.0, 10), std::invalid_argument);
  Eigen::MatrixXd wrong_dim = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_THROW(LinearInstance(theta, wrong_dim, 1.0, 10), std::invalid_argument);
}

}  // namespace
}  // namespace lighttail
