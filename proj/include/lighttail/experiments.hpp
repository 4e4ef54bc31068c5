#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lighttail/analysis.hpp"
#include "lighttail/simulator.hpp"

namespace lighttail {

/// Row order of the reproduction tables.
inline const std::vector<std::string> kGridPolicies = {"SE",     "UCB",     "TS",
                                                       "SE_new", "UCB_new", "UCB_any"};
/// Column order of the reproduction tables.
inline const std::vector<double> kGridKappas = {0.1, 0.2, 0.4, 0.8};

inline constexpr Count kReproReplications = 5000;
inline constexpr std::uint64_t kDefaultSeed = 20240;

/// Builds the policy behind a grid label at tuning kappa for a K-armed
/// instance. The bonus designs use sigma = 1 and eta = kappa^2; TS uses kappa
/// as its likelihood scale.
///
/// UCB_any is the exception: its eta is K kappa^2, which cancels the 1/sqrt(K)
/// of the any-time radius. The published table values for this policy were
/// produced under that normalization (with eta = kappa^2 the four-armed row
/// reappears shifted by exactly one kappa column).
PolicySpec grid_policy(const std::string& label, double kappa, int arms);

/// Table 1 uses means (0.2, 0.8), table 2 uses (0.2, 0.4, 0.6, 0.8); both
/// with unit Gaussian noise and T = 500.
BanditInstance table_instance(int table);

struct GridCell {
  std::string policy;
  double kappa = 0.0;
  Summary summary;
  std::vector<double> rewards;        // cumulative reward per path, path order
  std::vector<double> pseudo_regret;  // per path, path order
};

/// Every (policy, kappa) pair of the grid on one instance. All cells share
/// the master seed, hence the same per-arm noise streams.
std::vector<GridCell> run_grid(const BanditInstance& instance, Count replications,
                               std::uint64_t seed, int workers);

/// Bound parameters used when a policy's assumed noise scale may be smaller
/// than the true one. The radius sigma * sqrt(eta) is kept fixed while sigma
/// is raised to at least sigma0, so the policy is rewritten as an equivalent
/// one whose sigma dominates the noise.
struct BoundParams {
  double sigma;
  double eta;
  double eta2;
};
BoundParams bound_params(const BonusSpec& spec, double sigma0);

struct TheoremBound {
  BoundName name = BoundName::None;
  std::function<double(double)> evaluate;  // raw value at threshold x
};

/// The closed-form bound that covers `policy` on `instance`, or None when
/// no such result applies (Standard radius, SE with the AnyTime radius, TS,
/// ETC, Random).
TheoremBound theorem_bound_for(const PolicySpec& policy, const Instance& instance);

struct FragilityCell {
  std::string part;  // "a" (radius shape) or "b" (noise misspecification)
  std::string policy;
  double kappa = 0.0;
  double sigma0 = 0.0;
  std::vector<double> pseudo_regret;
  std::vector<TailReport> tail;
};

struct FragilityConfig {
  Count horizon = 500;
  Count replications = 5000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<double> sigma0_levels = {1.0, 2.0};
};

/// Separated two-arm instance with means (1, 0).
///  (a) UCB and SE, standard versus new radius, at kappa = 0.1, sigma0 = 1.
///  (b) TS at kappa = 0.2 plus UCB standard and new at kappa = 0.2, under
///      every sigma0 level.
/// Tails are reported for pseudo regret at T/8, T/4 and T/2.
std::vector<FragilityCell> run_fragility(const FragilityConfig& config, int workers);

std::vector<double> fragility_thresholds(Count horizon);

}  // namespace lighttail
