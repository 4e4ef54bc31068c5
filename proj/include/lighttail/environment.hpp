#pragma once

#include <vector>

#include <Eigen/Core>

#include "lighttail/core.hpp"
#include "lighttail/rng.hpp"

namespace lighttail {

/// theta_arm + N(0, sigma0^2), drawn from `rng`.
double sample_reward_mab(const BanditInstance& instance, int arm, Rng& rng);

/// theta' action + N(0, sigma0^2). Rejects actions with norm above 1.
double sample_reward_linear(const LinearInstance& instance,
                            const Eigen::Ref<const Eigen::VectorXd>& action, Rng& rng);

/// `count` i.i.d. uniform points on the unit sphere in R^d, one per column.
Eigen::MatrixXd make_action_set(int dim, int count, Rng& rng);

struct Draw {
  double reward;
  double noise;
};

/// Reward source for one MAB path.
///
/// Each arm has its own environment stream, so the n-th pull of arm k sees
/// the same noise under every policy (common random numbers), and a draw is
/// consumed only when that arm is pulled.
class MabEnvironment {
 public:
  MabEnvironment(const BanditInstance& instance, std::uint64_t master_seed, Count path);

  Draw pull(int arm);

 private:
  const BanditInstance* instance_;
  std::vector<Rng> streams_;
};

/// Reward and action-set source for one linear path. Noise and action sets
/// come from separate streams.
class LinearEnvironment {
 public:
  LinearEnvironment(const LinearInstance& instance, std::uint64_t master_seed, Count path);

  /// Action set for round t; regenerated each round in PerRound mode.
  const Eigen::MatrixXd& actions_for_round(Count t);
  Draw pull(const Eigen::Ref<const Eigen::VectorXd>& action);

 private:
  const LinearInstance* instance_;
  Rng noise_;
  Rng action_rng_;
  Eigen::MatrixXd actions_;
};

}  // namespace lighttail
