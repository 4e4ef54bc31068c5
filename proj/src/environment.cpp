#include "lighttail/environment.hpp"

#include <stdexcept>
#include <string>

namespace lighttail {

double sample_reward_mab(const BanditInstance& instance, int arm, Rng& rng) {
  if (arm < 0 || arm >= instance.arms()) {
    throw std::invalid_argument("arm index " + std::to_string(arm) + " out of range");
  }
  const double mean = instance.mean(arm);
  if (instance.noise_scale() == 0.0) return mean;
  return mean + instance.noise_scale() * rng.gaussian();
}

double sample_reward_linear(const LinearInstance& instance,
                            const Eigen::Ref<const Eigen::VectorXd>& action, Rng& rng) {
  if (action.size() != instance.dim()) {
    throw std::invalid_argument("action dimension does not match theta");
  }
  if (action.norm() > 1.0 + 1e-12) throw std::invalid_argument("action norm exceeds 1");
  const double mean = instance.theta().dot(action);
  if (instance.noise_scale() == 0.0) return mean;
  return mean + instance.noise_scale() * rng.gaussian();
}

Eigen::MatrixXd make_action_set(int dim, int count, Rng& rng) {
  if (dim < 1 || count < 1) throw std::invalid_argument("action set needs d >= 1 and K >= 1");
  Eigen::MatrixXd out(dim, count);
  for (int j = 0; j < count; ++j) {
    double norm = 0.0;
    do {
      for (int i = 0; i < dim; ++i) out(i, j) = rng.gaussian();
      norm = out.col(j).norm();
    } while (norm == 0.0);
    out.col(j) /= norm;
  }
  return out;
}

MabEnvironment::MabEnvironment(const BanditInstance& instance, std::uint64_t master_seed,
                               Count path)
    : instance_(&instance) {
  streams_.reserve(static_cast<std::size_t>(instance.arms()));
  for (int k = 0; k < instance.arms(); ++k) {
    streams_.emplace_back(master_seed, static_cast<std::uint64_t>(path), StreamTag::Environment,
                          static_cast<std::uint64_t>(k));
  }
}

Draw MabEnvironment::pull(int arm) {
  if (arm < 0 || arm >= instance_->arms()) {
    throw std::invalid_argument("arm index " + std::to_string(arm) + " out of range");
  }
  const double noise =
      instance_->noise_scale() == 0.0 ? 0.0 : instance_->noise_scale() * streams_[arm].gaussian();
  return {instance_->mean(arm) + noise, noise};
}

LinearEnvironment::LinearEnvironment(const LinearInstance& instance, std::uint64_t master_seed,
                                     Count path)
    : instance_(&instance),
      noise_(master_seed, static_cast<std::uint64_t>(path), StreamTag::Environment),
      action_rng_(master_seed, static_cast<std::uint64_t>(path), StreamTag::ActionSet) {
  if (instance.explicit_actions()) {
    actions_ = *instance.explicit_actions();
  } else {
    actions_ = make_action_set(instance.dim(), instance.num_actions(), action_rng_);
  }
}

const Eigen::MatrixXd& LinearEnvironment::actions_for_round(Count t) {
  if (t > 1 && instance_->mode() == ActionSetMode::PerRound && !instance_->explicit_actions()) {
    actions_ = make_action_set(instance_->dim(), instance_->num_actions(), action_rng_);
  }
  return actions_;
}

Draw LinearEnvironment::pull(const Eigen::Ref<const Eigen::VectorXd>& action) {
  const double noise =
      instance_->noise_scale() == 0.0 ? 0.0 : instance_->noise_scale() * noise_.gaussian();
  return {instance_->theta().dot(action) + noise, noise};
}

}  // namespace lighttail
