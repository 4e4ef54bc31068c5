#include "lighttail/policies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace lighttail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<int> dominated_arms(std::span<const double> means, std::span<const double> radii,
                                std::span<const int> active) {
  if (means.size() != radii.size()) throw std::invalid_argument("means/radii size mismatch");
  // k is dominated iff max_{k'} (mean - rad) > mean_k + rad_k. The arm that
  // attains the max lower bound can never dominate itself, so at least one
  // arm always survives.
  double best_lower = -kInf;
  for (int k : active) best_lower = std::max(best_lower, means[k] - radii[k]);
  std::vector<int> out;
  for (int k : active) {
    if (best_lower > means[k] + radii[k]) out.push_back(k);
  }
  return out;
}

int ucb_argmax(std::span<const double> means, std::span<const double> radii) {
  if (means.empty() || means.size() != radii.size()) {
    throw std::invalid_argument("ucb_argmax needs equal, non-empty inputs");
  }
  int best = 0;
  double best_value = -kInf;
  for (std::size_t k = 0; k < means.size(); ++k) {
    const double value = radii[k] == kInf ? kInf : means[k] + radii[k];
    if (value > best_value) {
      best_value = value;
      best = static_cast<int>(k);
      if (value == kInf) break;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

SuccessiveElimination::SuccessiveElimination(BonusSchedule schedule)
    : schedule_(std::move(schedule)), stats_(schedule_.arms()) {
  if (schedule_.design() == BonusDesign::Linear) {
    throw std::invalid_argument("successive elimination needs a count-based bonus");
  }
  active_.resize(static_cast<std::size_t>(schedule_.arms()));
  for (int k = 0; k < schedule_.arms(); ++k) active_[static_cast<std::size_t>(k)] = k;
}

int SuccessiveElimination::select(Count /*t*/) const { return active_[cursor_]; }

void SuccessiveElimination::update(int arm, double reward, Count t) {
  stats_.record(arm, reward);
  if (++cursor_ == active_.size()) {
    eliminate(t);
    cursor_ = 0;
  }
}

void SuccessiveElimination::eliminate(Count t) {
  const auto arms = static_cast<std::size_t>(stats_.arms());
  std::vector<double> means(arms, 0.0);
  std::vector<double> radii(arms, kInf);
  for (int k : active_) {
    means[k] = stats_.mean(k);
    radii[k] = schedule_.radius(stats_.count(k), t);
  }
  const auto dropped = dominated_arms(means, radii, active_);
  if (dropped.empty()) return;
  std::erase_if(active_, [&](int k) {
    return std::find(dropped.begin(), dropped.end(), k) != dropped.end();
  });
}

// ---------------------------------------------------------------------------

Ucb::Ucb(BonusSchedule schedule)
    : schedule_(std::move(schedule)),
      stats_(schedule_.arms()),
      radii_(static_cast<std::size_t>(schedule_.arms()), kInf),
      means_(static_cast<std::size_t>(schedule_.arms()), 0.0),
      time_varying_(schedule_.design() == BonusDesign::AnyTime) {
  if (schedule_.design() == BonusDesign::Linear) {
    throw std::invalid_argument("UCB needs a count-based bonus");
  }
}

int Ucb::select(Count t) {
  if (time_varying_) {
    for (int k = 0; k < stats_.arms(); ++k) radii_[k] = schedule_.radius(stats_.count(k), t);
  }
  return ucb_argmax(means_, radii_);
}

void Ucb::update(int arm, double reward) {
  stats_.record(arm, reward);
  means_[arm] = stats_.mean(arm);
  if (!time_varying_) radii_[arm] = schedule_.radius(stats_.count(arm), 0);
}

// ---------------------------------------------------------------------------

GaussianThompson::GaussianThompson(int arms, double kappa)
    : stats_(arms), kappa_sq_(kappa * kappa) {
  if (arms < 1) throw std::invalid_argument("arm count must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("Thompson kappa must be positive");
}

double GaussianThompson::posterior_mean(int arm) const {
  return stats_.sum(arm) / (kappa_sq_ + static_cast<double>(stats_.count(arm)));
}

double GaussianThompson::posterior_variance(int arm) const {
  return kappa_sq_ / (kappa_sq_ + static_cast<double>(stats_.count(arm)));
}

int GaussianThompson::select(Rng& rng) const {
  int best = 0;
  double best_value = -kInf;
  for (int k = 0; k < stats_.arms(); ++k) {
    const double draw = posterior_mean(k) + std::sqrt(posterior_variance(k)) * rng.gaussian();
    if (draw > best_value) {
      best_value = draw;
      best = k;
    }
  }
  return best;
}

void GaussianThompson::update(int arm, double reward) { stats_.record(arm, reward); }

// ---------------------------------------------------------------------------

ExploreThenCommit::ExploreThenCommit(int arms, Count budget_per_arm)
    : stats_(arms), budget_(budget_per_arm) {
  if (arms < 1) throw std::invalid_argument("arm count must be positive");
  if (budget_ < 0) throw std::invalid_argument("exploration budget must be non-negative");
}

__extension__ using Wide = __int128;

Count ExploreThenCommit::default_budget(Count horizon, int arms) {
  if (horizon < 1 || arms < 1) throw std::invalid_argument("horizon and arms must be positive");
  // Smallest m with (m K)^3 >= T^2.
  const Wide target = static_cast<Wide>(horizon) * horizon;
  auto m = static_cast<Count>(std::cbrt(static_cast<double>(target)) / arms);
  m = std::max<Count>(0, m - 2);
  auto cube = [](Wide v) { return v * v * v; };
  while (cube(static_cast<Wide>(m) * arms) < target) ++m;
  return m;
}

int ExploreThenCommit::select(Count t) {
  const Count arms = stats_.arms();
  if (t <= budget_ * arms) return static_cast<int>((t - 1) % arms);
  if (!committed_) {
    int best = 0;
    for (int k = 1; k < stats_.arms(); ++k) {
      if (stats_.mean(k) > stats_.mean(best)) best = k;
    }
    committed_ = best;
  }
  return *committed_;
}

void ExploreThenCommit::update(int arm, double reward) { stats_.record(arm, reward); }

// ---------------------------------------------------------------------------

LinUcb::LinUcb(BonusSchedule schedule, int reinvert_every)
    : schedule_(std::move(schedule)), reinvert_every_(reinvert_every) {
  if (schedule_.design() != BonusDesign::Linear) {
    throw std::invalid_argument("LinUCB needs the Linear bonus design");
  }
  if (reinvert_every_ < 1) throw std::invalid_argument("reinvert cadence must be >= 1");
  const int d = schedule_.dim();
  gram_ = Eigen::MatrixXd::Identity(d, d);
  gram_inv_ = Eigen::MatrixXd::Identity(d, d);
  response_ = Eigen::VectorXd::Zero(d);
  theta_hat_ = Eigen::VectorXd::Zero(d);
}

double LinUcb::quadratic_form(const Eigen::Ref<const Eigen::VectorXd>& action) const {
  // V^{-1} is positive definite; clip the round-off that can push a tiny
  // quadratic form below zero.
  return std::max(0.0, action.dot(gram_inv_ * action));
}

double LinUcb::score(const Eigen::Ref<const Eigen::VectorXd>& action, Count t) const {
  return theta_hat_.dot(action) + schedule_.linear_radius(quadratic_form(action), t);
}

Eigen::Index LinUcb::select(const Eigen::MatrixXd& actions, Count t) const {
  if (actions.cols() == 0) throw std::invalid_argument("action set is empty");
  if (actions.rows() != theta_hat_.size()) {
    throw std::invalid_argument("action dimension does not match the policy");
  }
  const Eigen::MatrixXd scaled = gram_inv_ * actions;
  const Eigen::RowVectorXd forms = actions.cwiseProduct(scaled).colwise().sum();
  const Eigen::RowVectorXd estimates = theta_hat_.transpose() * actions;
  Eigen::Index best = 0;
  double best_score = -kInf;
  for (Eigen::Index j = 0; j < actions.cols(); ++j) {
    const double s = estimates[j] + schedule_.linear_radius(std::max(0.0, forms[j]), t);
    if (s > best_score) {
      best_score = s;
      best = j;
    }
  }
  return best;
}

void LinUcb::update(const Eigen::Ref<const Eigen::VectorXd>& action, double reward) {
  const Eigen::VectorXd u = gram_inv_ * action;
  const double denom = 1.0 + action.dot(u);
  gram_inv_.noalias() -= (u * u.transpose()) / denom;
  gram_.noalias() += action * action.transpose();
  response_ += reward * action;
  ++updates_;
  if (updates_ % reinvert_every_ == 0) {
    const Eigen::Index d = gram_.rows();
    gram_inv_ = gram_.llt().solve(Eigen::MatrixXd::Identity(d, d));
  }
  theta_hat_.noalias() = gram_inv_ * response_;
}

// ---------------------------------------------------------------------------

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::SE: return "SE";
    case PolicyKind::UCB: return "UCB";
    case PolicyKind::TS: return "TS";
    case PolicyKind::ETC: return "ETC";
    case PolicyKind::LinUCB: return "LinUCB";
    case PolicyKind::Random: return "Random";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view text) {
  const std::string lower = lowercase(text);
  if (lower == "se") return PolicyKind::SE;
  if (lower == "ucb") return PolicyKind::UCB;
  if (lower == "ts") return PolicyKind::TS;
  if (lower == "etc") return PolicyKind::ETC;
  if (lower == "linucb") return PolicyKind::LinUCB;
  if (lower == "random") return PolicyKind::Random;
  throw std::invalid_argument("unknown policy kind '" + std::string(text) + "'");
}

bool PolicySpec::uses_bonus() const {
  return kind == PolicyKind::SE || kind == PolicyKind::UCB || kind == PolicyKind::LinUCB;
}

std::string PolicySpec::label() const {
  std::string base(to_string(kind));
  if (kind != PolicyKind::SE && kind != PolicyKind::UCB) return base;
  switch (bonus.design) {
    case BonusDesign::Standard: return base;
    case BonusDesign::NewSqrtT: return base + "_new";
    case BonusDesign::OptimalK: return base + "_opt";
    case BonusDesign::AnyTime: return base + "_any";
    case BonusDesign::Linear: return base + "_lin";
  }
  return base;
}

double PolicySpec::tuning() const {
  if (kind == PolicyKind::TS) return kappa;
  if (uses_bonus()) return bonus.kappa();
  return std::numeric_limits<double>::quiet_NaN();
}

void PolicySpec::validate() const {
  switch (kind) {
    case PolicyKind::SE:
    case PolicyKind::UCB:
      bonus.validate();
      if (bonus.design == BonusDesign::Linear) {
        throw std::invalid_argument("SE/UCB cannot use the Linear bonus design");
      }
      break;
    case PolicyKind::LinUCB:
      bonus.validate();
      if (bonus.design != BonusDesign::Linear) {
        throw std::invalid_argument("LinUCB requires the Linear bonus design");
      }
      if (reinvert_every < 1) throw std::invalid_argument("reinvert_every must be >= 1");
      break;
    case PolicyKind::TS:
      if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("TS kappa must be positive");
      }
      break;
    case PolicyKind::ETC:
      if (etc_budget && *etc_budget < 0) {
        throw std::invalid_argument("ETC budget must be non-negative");
      }
      break;
    case PolicyKind::Random: break;
  }
}

}  // namespace lighttail
