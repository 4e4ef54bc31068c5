#include "lighttail/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "lighttail/environment.hpp"

namespace lighttail {
namespace {

template <class Select, class Update>
EpisodeResult drive_mab(const BanditInstance& instance, PathSeed seed, bool record_trace,
                        Select&& select, Update&& update) {
  MabEnvironment env(instance, seed.master_seed, seed.path);
  const Count horizon = instance.horizon();
  EpisodeResult out;
  out.pulls.assign(static_cast<std::size_t>(instance.arms()), 0);
  if (record_trace) out.arm_sequence.reserve(static_cast<std::size_t>(horizon));
  for (Count t = 1; t <= horizon; ++t) {
    const int arm = select(t);
    const Draw draw = env.pull(arm);
    update(arm, draw.reward, t);
    ++out.pulls[static_cast<std::size_t>(arm)];
    out.noise_sum += draw.noise;
    out.cumulative_reward += draw.reward;
    if (record_trace) out.arm_sequence.push_back(arm);
  }
  out.pseudo_regret = pseudo_regret(out.pulls, instance.means());
  out.empirical_regret =
      instance.best_mean() * static_cast<double>(horizon) - out.cumulative_reward;
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (replications < 1) throw std::invalid_argument("replications must be at least 1");
  policy.validate();
  const bool linear = std::holds_alternative<LinearInstance>(instance);
  const bool linear_policy =
      policy.kind == PolicyKind::LinUCB || policy.kind == PolicyKind::Random;
  const bool mab_policy = policy.kind != PolicyKind::LinUCB;
  if (linear && !linear_policy) {
    throw std::invalid_argument("policy " + policy.label() + " cannot run on a linear instance");
  }
  if (!linear && !mab_policy) {
    throw std::invalid_argument("LinUCB needs a linear instance");
  }
}

EpisodeResult run_episode(const BanditInstance& instance, const PolicySpec& policy,
                          PathSeed seed, bool record_trace) {
  policy.validate();
  const int arms = instance.arms();
  const Count horizon = instance.horizon();
  switch (policy.kind) {
    case PolicyKind::SE: {
      SuccessiveElimination se(BonusSchedule(policy.bonus, horizon, arms));
      return drive_mab(
          instance, seed, record_trace, [&](Count t) { return se.select(t); },
          [&](int arm, double r, Count t) { se.update(arm, r, t); });
    }
    case PolicyKind::UCB: {
      Ucb ucb(BonusSchedule(policy.bonus, horizon, arms));
      return drive_mab(
          instance, seed, record_trace, [&](Count t) { return ucb.select(t); },
          [&](int arm, double r, Count) { ucb.update(arm, r); });
    }
    case PolicyKind::TS: {
      GaussianThompson ts(arms, policy.kappa);
      Rng rng(seed.master_seed, static_cast<std::uint64_t>(seed.path), StreamTag::Policy);
      return drive_mab(
          instance, seed, record_trace, [&](Count) { return ts.select(rng); },
          [&](int arm, double r, Count) { ts.update(arm, r); });
    }
    case PolicyKind::ETC: {
      ExploreThenCommit etc(arms, policy.etc_budget.value_or(
                                      ExploreThenCommit::default_budget(horizon, arms)));
      return drive_mab(
          instance, seed, record_trace, [&](Count t) { return etc.select(t); },
          [&](int arm, double r, Count) { etc.update(arm, r); });
    }
    case PolicyKind::Random: {
      Rng rng(seed.master_seed, static_cast<std::uint64_t>(seed.path), StreamTag::Policy);
      const auto k = static_cast<std::size_t>(arms);
      return drive_mab(
          instance, seed, record_trace, [&](Count) { return static_cast<int>(rng.index(k)); },
          [](int, double, Count) {});
    }
    case PolicyKind::LinUCB: break;
  }
  throw std::invalid_argument("LinUCB needs a linear instance");
}

EpisodeResult run_episode(const LinearInstance& instance, const PolicySpec& policy,
                          PathSeed seed, bool record_trace) {
  policy.validate();
  if (policy.kind != PolicyKind::LinUCB && policy.kind != PolicyKind::Random) {
    throw std::invalid_argument("policy " + policy.label() + " cannot run on a linear instance");
  }
  LinearEnvironment env(instance, seed.master_seed, seed.path);
  Rng policy_rng(seed.master_seed, static_cast<std::uint64_t>(seed.path), StreamTag::Policy);
  std::optional<LinUcb> linucb;
  if (policy.kind == PolicyKind::LinUCB) {
    linucb.emplace(BonusSchedule(policy.bonus, instance.horizon(), 1, instance.dim()),
                   policy.reinvert_every);
  }

  const Count horizon = instance.horizon();
  EpisodeResult out;
  out.pulls.assign(static_cast<std::size_t>(instance.num_actions()), 0);
  if (record_trace) out.arm_sequence.reserve(static_cast<std::size_t>(horizon));
  double optimal_total = 0.0;
  for (Count t = 1; t <= horizon; ++t) {
    const Eigen::MatrixXd& actions = env.actions_for_round(t);
    const Eigen::RowVectorXd values = instance.theta().transpose() * actions;
    Eigen::Index chosen = 0;
    if (linucb) {
      chosen = linucb->select(actions, t);
      out.elliptical_potential += linucb->quadratic_form(actions.col(chosen));
    } else {
      chosen = static_cast<Eigen::Index>(policy_rng.index(static_cast<std::size_t>(actions.cols())));
    }
    const Draw draw = env.pull(actions.col(chosen));
    if (linucb) linucb->update(actions.col(chosen), draw.reward);

    const double best = values.maxCoeff();
    optimal_total += best;
    out.pseudo_regret += best - values[chosen];
    ++out.pulls[static_cast<std::size_t>(chosen)];
    out.noise_sum += draw.noise;
    out.cumulative_reward += draw.reward;
    if (record_trace) out.arm_sequence.push_back(static_cast<int>(chosen));
  }
  out.empirical_regret = optimal_total - out.cumulative_reward;
  return out;
}

EpisodeResult run_episode(const Instance& instance, const PolicySpec& policy, PathSeed seed,
                          bool record_trace) {
  return std::visit(
      [&](const auto& inst) { return run_episode(inst, policy, seed, record_trace); }, instance);
}

int default_workers() {
  if (const char* env = std::getenv("BANDIT_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
      // fall through to hardware concurrency
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void run_monte_carlo(const RunConfig& config, int workers, const ResultSink& sink) {
  config.validate();
  workers = std::max(1, workers);
  const Count total = config.replications;
  const Count block = static_cast<Count>(workers) * 32;
  std::vector<EpisodeResult> buffer;

  for (Count start = 0; start < total; start += block) {
    const Count n = std::min(block, total - start);
    buffer.assign(static_cast<std::size_t>(n), EpisodeResult{});
    std::atomic<Count> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
      for (Count i = next++; i < n && !failed.load(); i = next++) {
        try {
          buffer[static_cast<std::size_t>(i)] =
              run_episode(config.instance, config.policy, PathSeed{config.master_seed, start + i},
                          config.record_trace);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    };

    const int threads = static_cast<int>(std::min<Count>(workers, n));
    {
      std::vector<std::jthread> pool;
      pool.reserve(static_cast<std::size_t>(threads - 1));
      for (int w = 1; w < threads; ++w) pool.emplace_back(work);
      work();
    }
    if (error) std::rethrow_exception(error);
    for (Count i = 0; i < n; ++i) sink(start + i, buffer[static_cast<std::size_t>(i)]);
  }
}

std::vector<EpisodeResult> run_monte_carlo(const RunConfig& config, int workers) {
  std::vector<EpisodeResult> out;
  out.reserve(static_cast<std::size_t>(std::max<Count>(0, config.replications)));
  run_monte_carlo(config, workers,
                  [&](Count, const EpisodeResult& result) { out.push_back(result); });
  return out;
}

}  // namespace lighttail
