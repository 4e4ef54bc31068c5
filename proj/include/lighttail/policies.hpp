#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lighttail/bonus.hpp"
#include "lighttail/core.hpp"
#include "lighttail/rng.hpp"

namespace lighttail {

// Decision rules. Ties are broken towards the lowest arm index (or the first
// action in the list) everywhere, which keeps zero-noise traces fixed.

/// Pull counts and reward sums per arm; the mean is sum / count.
class ArmStats {
 public:
  explicit ArmStats(int arms) : counts_(arms, 0), sums_(arms, 0.0) {}

  void record(int arm, double reward) {
    ++counts_[arm];
    sums_[arm] += reward;
  }
  Count count(int arm) const { return counts_[arm]; }
  double sum(int arm) const { return sums_[arm]; }
  double mean(int arm) const {
    return counts_[arm] == 0 ? 0.0 : sums_[arm] / static_cast<double>(counts_[arm]);
  }
  int arms() const { return static_cast<int>(counts_.size()); }
  const std::vector<Count>& counts() const { return counts_; }

 private:
  std::vector<Count> counts_;
  std::vector<double> sums_;
};

/// Arms in `active` that are strictly dominated: some other active arm's
/// lower bound mean - rad exceeds their upper bound mean + rad.
std::vector<int> dominated_arms(std::span<const double> means, std::span<const double> radii,
                                std::span<const int> active);

/// Lowest index maximizing means[k] + radii[k]; an infinite radius wins.
int ucb_argmax(std::span<const double> means, std::span<const double> radii);

/// Successive elimination: sweep the active set in ascending order, then drop
/// every arm that is strictly dominated at the end of the sweep.
///
/// If the horizon ends mid-sweep the remaining pulls simply stop; the last
/// partial sweep triggers no elimination.
class SuccessiveElimination {
 public:
  explicit SuccessiveElimination(BonusSchedule schedule);

  int select(Count t) const;
  /// `t` is the round that just finished (used by the AnyTime radius).
  void update(int arm, double reward, Count t);

  const std::vector<int>& active() const noexcept { return active_; }
  const ArmStats& stats() const noexcept { return stats_; }

 private:
  void eliminate(Count t);

  BonusSchedule schedule_;
  ArmStats stats_;
  std::vector<int> active_;
  std::size_t cursor_ = 0;
};

class Ucb {
 public:
  explicit Ucb(BonusSchedule schedule);

  int select(Count t);
  void update(int arm, double reward);

  const ArmStats& stats() const noexcept { return stats_; }

 private:
  BonusSchedule schedule_;
  ArmStats stats_;
  // For horizon-dependent designs the radius changes only when an arm is
  // pulled, so it is cached per arm. AnyTime refreshes every round.
  std::vector<double> radii_;
  std::vector<double> means_;
  bool time_varying_;
};

/// Gaussian Thompson sampling with prior N(0, 1) on every mean and
/// likelihood N(mean, kappa^2).
class GaussianThompson {
 public:
  GaussianThompson(int arms, double kappa);

  int select(Rng& rng) const;
  void update(int arm, double reward);

  double posterior_mean(int arm) const;
  double posterior_variance(int arm) const;
  const ArmStats& stats() const noexcept { return stats_; }

 private:
  ArmStats stats_;
  double kappa_sq_;
};

/// Round-robin for budget * K rounds, then commit to the best empirical mean.
class ExploreThenCommit {
 public:
  ExploreThenCommit(int arms, Count budget_per_arm);

  /// ceil(T^(2/3) / K), computed exactly in integers.
  static Count default_budget(Count horizon, int arms);

  int select(Count t);
  void update(int arm, double reward);

  Count budget() const noexcept { return budget_; }
  std::optional<int> committed() const noexcept { return committed_; }
  const ArmStats& stats() const noexcept { return stats_; }

 private:
  ArmStats stats_;
  Count budget_;
  std::optional<int> committed_;
};

/// Optimistic linear policy over finite action sets. V starts at the
/// identity, V^{-1} is maintained by Sherman-Morrison and recomputed from V
/// every `reinvert_every` updates.
class LinUcb {
 public:
  explicit LinUcb(BonusSchedule schedule, int reinvert_every = 256);

  /// Column index of the maximizing action in `actions` (d x n).
  Eigen::Index select(const Eigen::MatrixXd& actions, Count t) const;
  double score(const Eigen::Ref<const Eigen::VectorXd>& action, Count t) const;
  double quadratic_form(const Eigen::Ref<const Eigen::VectorXd>& action) const;
  void update(const Eigen::Ref<const Eigen::VectorXd>& action, double reward);

  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  const Eigen::MatrixXd& gram_inverse() const noexcept { return gram_inv_; }
  const Eigen::VectorXd& theta_hat() const noexcept { return theta_hat_; }
  Count updates() const noexcept { return updates_; }

 private:
  BonusSchedule schedule_;
  int reinvert_every_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd gram_inv_;
  Eigen::VectorXd response_;
  Eigen::VectorXd theta_hat_;
  Count updates_ = 0;
};

enum class PolicyKind { SE, UCB, TS, ETC, LinUCB, Random };

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view text);

/// Serializable policy descriptor.
struct PolicySpec {
  PolicyKind kind = PolicyKind::UCB;
  BonusSpec bonus;                  // SE, UCB, LinUCB
  double kappa = 1.0;               // TS
  std::optional<Count> etc_budget;  // ETC; default budget when empty
  int reinvert_every = 256;         // LinUCB

  /// Short display name, e.g. "UCB_new", "SE", "TS".
  std::string label() const;
  /// kappa for TS, sigma * sqrt(eta) for bonus policies, NaN otherwise.
  double tuning() const;
  bool uses_bonus() const;
  void validate() const;
};

}  // namespace lighttail
