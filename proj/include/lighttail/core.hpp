#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace lighttail {

using Count = std::int64_t;

enum class NoiseFamily { Gaussian };

/// K-armed stochastic bandit with Gaussian noise of scale `noise_scale`.
///
/// `noise_scale` is the environment's true deviation. Policies carry their
/// own assumed scale, so misspecification is expressed by letting the two
/// differ. A zero scale is legal and makes every reward deterministic.
class BanditInstance {
 public:
  BanditInstance(std::vector<double> means, double noise_scale, Count horizon,
                 NoiseFamily family = NoiseFamily::Gaussian);

  const std::vector<double>& means() const noexcept { return means_; }
  double mean(int arm) const { return means_.at(static_cast<std::size_t>(arm)); }
  int arms() const noexcept { return static_cast<int>(means_.size()); }
  double noise_scale() const noexcept { return noise_scale_; }
  Count horizon() const noexcept { return horizon_; }
  NoiseFamily noise_family() const noexcept { return family_; }

  double best_mean() const noexcept;
  /// Gap of `arm` to the best mean; computed on demand.
  double gap(int arm) const;

 private:
  std::vector<double> means_;
  double noise_scale_;
  Count horizon_;
  NoiseFamily family_;
};

enum class ActionSetMode { Fixed, PerRound };

/// Linear bandit: reward = theta' a + noise over a finite action set.
///
/// The action set is either given explicitly (`actions`, one column per
/// action, reused every round) or drawn uniformly on the unit sphere with
/// `num_actions` columns, once per episode (Fixed) or every round (PerRound).
class LinearInstance {
 public:
  LinearInstance(Eigen::VectorXd theta, int num_actions, double noise_scale, Count horizon,
                 ActionSetMode mode = ActionSetMode::Fixed);
  LinearInstance(Eigen::VectorXd theta, Eigen::MatrixXd actions, double noise_scale,
                 Count horizon);

  const Eigen::VectorXd& theta() const noexcept { return theta_; }
  int dim() const noexcept { return static_cast<int>(theta_.size()); }
  int num_actions() const noexcept { return num_actions_; }
  double noise_scale() const noexcept { return noise_scale_; }
  Count horizon() const noexcept { return horizon_; }
  ActionSetMode mode() const noexcept { return mode_; }
  const std::optional<Eigen::MatrixXd>& explicit_actions() const noexcept { return actions_; }

 private:
  void validate() const;

  Eigen::VectorXd theta_;
  int num_actions_;
  double noise_scale_;
  Count horizon_;
  ActionSetMode mode_;
  std::optional<Eigen::MatrixXd> actions_;
};

/// Per-path outcome. For linear instances `pulls` counts action indices.
struct EpisodeResult {
  std::vector<Count> pulls;
  double pseudo_regret = 0.0;
  double noise_sum = 0.0;
  double empirical_regret = 0.0;
  double cumulative_reward = 0.0;
  /// Sum of a_t' V_{t-1}^{-1} a_t over the episode; zero outside LinUCB.
  double elliptical_potential = 0.0;
  std::vector<int> arm_sequence;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

/// R = sum_k pulls_k * (max(means) - means_k).
double pseudo_regret(std::span<const Count> pulls, std::span<const double> means);

struct Step {
  int arm;
  double reward;
};

/// Rebuild counts, pseudo regret, noise sum and empirical regret from a
/// reward trace. The trace must cover the whole horizon.
EpisodeResult decompose_regret(std::span<const Step> trace, const BanditInstance& instance);

}  // namespace lighttail
