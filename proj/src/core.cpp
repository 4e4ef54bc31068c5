#include "lighttail/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lighttail {

BanditInstance::BanditInstance(std::vector<double> means, double noise_scale, Count horizon,
                               NoiseFamily family)
    : means_(std::move(means)), noise_scale_(noise_scale), horizon_(horizon), family_(family) {
  const auto k = static_cast<Count>(means_.size());
  if (k < 2) throw std::invalid_argument("bandit instance needs at least 2 arms");
  if (horizon_ < 3) throw std::invalid_argument("horizon must be at least 3");
  if (horizon_ < k) throw std::invalid_argument("horizon must be at least the number of arms");
  for (double m : means_) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw std::invalid_argument("arm mean " + std::to_string(m) + " outside [0, 1]");
    }
  }
  if (!(noise_scale_ >= 0.0) || !std::isfinite(noise_scale_)) {
    throw std::invalid_argument("noise scale must be finite and non-negative");
  }
}

double BanditInstance::best_mean() const noexcept {
  return *std::max_element(means_.begin(), means_.end());
}

double BanditInstance::gap(int arm) const { return best_mean() - mean(arm); }

LinearInstance::LinearInstance(Eigen::VectorXd theta, int num_actions, double noise_scale,
                               Count horizon, ActionSetMode mode)
    : theta_(std::move(theta)),
      num_actions_(num_actions),
      noise_scale_(noise_scale),
      horizon_(horizon),
      mode_(mode) {
  validate();
}

LinearInstance::LinearInstance(Eigen::VectorXd theta, Eigen::MatrixXd actions,
                               double noise_scale, Count horizon)
    : theta_(std::move(theta)),
      num_actions_(static_cast<int>(actions.cols())),
      noise_scale_(noise_scale),
      horizon_(horizon),
      mode_(ActionSetMode::Fixed),
      actions_(std::move(actions)) {
  validate();
  if (actions_->rows() != theta_.size()) {
    throw std::invalid_argument("action dimension does not match theta");
  }
  for (Eigen::Index j = 0; j < actions_->cols(); ++j) {
    if (actions_->col(j).norm() > 1.0 + 1e-12) {
      throw std::invalid_argument("action " + std::to_string(j) + " has norm above 1");
    }
  }
}

void LinearInstance::validate() const {
  if (theta_.size() < 1) throw std::invalid_argument("theta must have dimension >= 1");
  if (theta_.cwiseAbs().maxCoeff() > 1.0) {
    throw std::invalid_argument("theta must satisfy |theta|_inf <= 1");
  }
  if (num_actions_ < 1) throw std::invalid_argument("action set must be non-empty");
  if (horizon_ < theta_.size()) throw std::invalid_argument("horizon must be at least d");
  if (!(noise_scale_ >= 0.0) || !std::isfinite(noise_scale_)) {
    throw std::invalid_argument("noise scale must be finite and non-negative");
  }
}

double pseudo_regret(std::span<const Count> pulls, std::span<const double> means) {
  if (pulls.size() != means.size()) {
    throw std::invalid_argument("pulls and means differ in length");
  }
  if (means.empty()) return 0.0;
  const double best = *std::max_element(means.begin(), means.end());
  double regret = 0.0;
  for (std::size_t k = 0; k < pulls.size(); ++k) {
    regret += static_cast<double>(pulls[k]) * (best - means[k]);
  }
  return regret;
}

EpisodeResult decompose_regret(std::span<const Step> trace, const BanditInstance& instance) {
  if (static_cast<Count>(trace.size()) != instance.horizon()) {
    throw std::invalid_argument("trace length " + std::to_string(trace.size()) +
                                " differs from horizon " + std::to_string(instance.horizon()));
  }
  EpisodeResult out;
  out.pulls.assign(static_cast<std::size_t>(instance.arms()), 0);
  out.arm_sequence.reserve(trace.size());
  for (const Step& step : trace) {
    if (step.arm < 0 || step.arm >= instance.arms()) {
      throw std::invalid_argument("arm index " + std::to_string(step.arm) + " out of range");
    }
    ++out.pulls[static_cast<std::size_t>(step.arm)];
    out.noise_sum += step.reward - instance.mean(step.arm);
    out.cumulative_reward += step.reward;
    out.arm_sequence.push_back(step.arm);
  }
  out.pseudo_regret = pseudo_regret(out.pulls, instance.means());
  out.empirical_regret =
      instance.best_mean() * static_cast<double>(instance.horizon()) - out.cumulative_reward;
  return out;
}

}  // namespace lighttail
