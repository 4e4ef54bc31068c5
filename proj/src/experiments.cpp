#include "lighttail/experiments.hpp"

#include <algorithm>
#include <stdexcept>

namespace lighttail {

PolicySpec grid_policy(const std::string& label, double kappa, int arms) {
  PolicySpec spec;
  if (label == "TS") {
    spec.kind = PolicyKind::TS;
    spec.kappa = kappa;
    return spec;
  }
  const auto bonus = [&](PolicyKind kind, BonusDesign design) {
    spec.kind = kind;
    spec.bonus = BonusSpec::from_kappa(design, kappa);
    return spec;
  };
  if (label == "SE") return bonus(PolicyKind::SE, BonusDesign::Standard);
  if (label == "UCB") return bonus(PolicyKind::UCB, BonusDesign::Standard);
  if (label == "SE_new") return bonus(PolicyKind::SE, BonusDesign::NewSqrtT);
  if (label == "UCB_new") return bonus(PolicyKind::UCB, BonusDesign::NewSqrtT);
  if (label == "UCB_any") {
    bonus(PolicyKind::UCB, BonusDesign::AnyTime);
    spec.bonus.eta *= arms;
    return spec;
  }
  if (label == "SE_any") return bonus(PolicyKind::SE, BonusDesign::AnyTime);
  if (label == "UCB_opt") return bonus(PolicyKind::UCB, BonusDesign::OptimalK);
  if (label == "SE_opt") return bonus(PolicyKind::SE, BonusDesign::OptimalK);
  throw std::invalid_argument("unknown grid policy '" + label + "'");
}

BanditInstance table_instance(int table) {
  switch (table) {
    case 1: return BanditInstance({0.2, 0.8}, 1.0, 500);
    case 2: return BanditInstance({0.2, 0.4, 0.6, 0.8}, 1.0, 500);
    default: throw std::invalid_argument("table must be 1 or 2");
  }
}

std::vector<GridCell> run_grid(const BanditInstance& instance, Count replications,
                               std::uint64_t seed, int workers) {
  std::vector<GridCell> cells;
  for (const auto& label : kGridPolicies) {
    for (double kappa : kGridKappas) {
      RunConfig config{instance, grid_policy(label, kappa, instance.arms()), replications, seed, false};
      GridCell cell;
      cell.policy = label;
      cell.kappa = kappa;
      std::vector<EpisodeResult> results;
      results.reserve(static_cast<std::size_t>(replications));
      run_monte_carlo(config, workers, [&](Count, const EpisodeResult& r) {
        cell.rewards.push_back(r.cumulative_reward);
        cell.pseudo_regret.push_back(r.pseudo_regret);
        results.push_back(r);
      });
      cell.summary = summarize(results);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

BoundParams bound_params(const BonusSpec& spec, double sigma0) {
  const double sigma = std::max(spec.sigma, sigma0);
  const double scale = (spec.sigma * spec.sigma) / (sigma * sigma);
  return {sigma, spec.eta * scale, spec.eta2 * scale};
}

TheoremBound theorem_bound_for(const PolicySpec& policy, const Instance& instance) {
  if (!policy.uses_bonus()) return {};
  const BonusSpec& bonus = policy.bonus;
  if (const auto* linear = std::get_if<LinearInstance>(&instance)) {
    if (policy.kind != PolicyKind::LinUCB || bonus.design != BonusDesign::Linear) return {};
    const auto p = bound_params(bonus, linear->noise_scale());
    const int d = linear->dim();
    const Count T = linear->horizon();
    return {BoundName::ThmLinear, [=](double x) { return bound_linear(x, d, T, p.sigma, p.eta); }};
  }
  const auto& mab = std::get<BanditInstance>(instance);
  const auto p = bound_params(bonus, mab.noise_scale());
  const int K = mab.arms();
  const Count T = mab.horizon();
  switch (bonus.design) {
    case BonusDesign::NewSqrtT:
      return {BoundName::ThmK, [=](double x) { return bound_k_armed(x, K, T, p.sigma, p.eta); }};
    case BonusDesign::OptimalK:
      return {BoundName::ThmKOpt,
              [=](double x) { return bound_k_armed_optimal(x, K, T, p.sigma, p.eta, p.eta2); }};
    case BonusDesign::AnyTime:
      if (policy.kind != PolicyKind::UCB) return {};
      return {BoundName::ThmAnyTime,
              [=](double x) { return bound_anytime(x, K, T, p.sigma, p.eta); }};
    case BonusDesign::Standard:
    case BonusDesign::Linear:
      return {};
  }
  return {};
}

std::vector<double> fragility_thresholds(Count horizon) {
  const double t = static_cast<double>(horizon);
  return {t / 8.0, t / 4.0, t / 2.0};
}

std::vector<FragilityCell> run_fragility(const FragilityConfig& config, int workers) {
  if (config.replications < 1) throw std::invalid_argument("replications must be at least 1");
  const auto thresholds = fragility_thresholds(config.horizon);
  std::vector<FragilityCell> out;

  const auto run_cell = [&](const std::string& part, const std::string& label, double kappa,
                            double sigma0) {
    const BanditInstance instance({1.0, 0.0}, sigma0, config.horizon);
    const RunConfig run{instance, grid_policy(label, kappa, instance.arms()), config.replications, config.seed,
                        false};
    FragilityCell cell;
    cell.part = part;
    cell.policy = label;
    cell.kappa = kappa;
    cell.sigma0 = sigma0;
    run_monte_carlo(run, workers,
                    [&](Count, const EpisodeResult& r) { cell.pseudo_regret.push_back(r.pseudo_regret); });
    cell.tail = empirical_tail(cell.pseudo_regret, thresholds);
    if (const auto bound = theorem_bound_for(run.policy, run.instance); bound.evaluate) {
      attach_bound(cell.tail, bound.name, bound.evaluate);
    }
    out.push_back(std::move(cell));
  };

  for (const char* label : {"UCB", "UCB_new", "SE", "SE_new"}) run_cell("a", label, 0.1, 1.0);
  for (double sigma0 : config.sigma0_levels) {
    for (const char* label : {"TS", "UCB", "UCB_new"}) run_cell("b", label, 0.2, sigma0);
  }
  return out;
}

}  // namespace lighttail
