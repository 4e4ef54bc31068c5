#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "lighttail/core.hpp"

namespace lighttail {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      correction_ += (sum_ - t) + value;
    } else {
      correction_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

inline constexpr std::array<double, 7> kSummaryQuantiles = {0.01, 0.05, 0.25, 0.50,
                                                            0.75, 0.95, 0.99};

struct SampleStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1); 0 for a single value
  std::array<double, kSummaryQuantiles.size()> quantiles{};
};

/// Sample statistics with type-7 (linear interpolation) quantiles.
SampleStats describe(std::span<const double> values);

/// Type-7 quantile of an already sorted sample.
double quantile_sorted(std::span<const double> sorted, double q);

struct Summary {
  Count paths = 0;
  SampleStats reward;
  SampleStats pseudo_regret;
  SampleStats empirical_regret;
  double mean_noise = 0.0;
};

Summary summarize(std::span<const EpisodeResult> results);

struct Interval {
  double low;
  double high;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(Count successes, Count trials, double z = kZ95);

enum class TailFunctional { Pseudo, Empirical };

enum class BoundName { None, ThmK, ThmKOpt, ThmAnyTime, ThmLinear, NeatForm };

std::string_view to_string(BoundName name);
std::string_view to_string(TailFunctional functional);

struct TailReport {
  double threshold = 0.0;
  double empirical_prob = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double bound_value = 1.0;  // raw formula value, may exceed 1
  double bound_clamped = 1.0;
  BoundName bound_name = BoundName::None;

  double ci_half_width() const { return 0.5 * (ci_high - ci_low); }
};

/// Fraction of samples >= x for each threshold, with Wilson 95% intervals.
/// Bound fields are left at (None, 1, 1).
std::vector<TailReport> empirical_tail(std::span<const double> samples,
                                       std::span<const double> thresholds);

std::vector<double> extract(std::span<const EpisodeResult> results, TailFunctional functional);

std::vector<TailReport> empirical_tail(std::span<const EpisodeResult> results,
                                       TailFunctional functional,
                                       std::span<const double> thresholds);

/// Fills bound_value / bound_clamped / bound_name from `bound(x)`.
void attach_bound(std::span<TailReport> reports, BoundName name,
                  const std::function<double(double)>& bound);

// Closed-form tail bounds on P(regret >= x). All return the raw (possibly
// vacuous) value; clamp with clamp_probability. Polynomial prefactors move
// into log space whenever the direct product would overflow or underflow.

/// SE/UCB with the sqrt(T ln T)/n radius.
double bound_k_armed(double x, int arms, Count horizon, double sigma, double eta);

/// SE/UCB with the two-branch radius (eta1, eta2).
double bound_k_armed_optimal(double x, int arms, Count horizon, double sigma, double eta1,
                             double eta2);

/// UCB with the horizon-free radius.
double bound_anytime(double x, int arms, Count horizon, double sigma, double eta);

/// LinUCB with the linear radius; requires T >= d.
double bound_linear(double x, int dim, Count horizon, double sigma, double eta);

enum class NeatVariant { ThmK, ThmKOpt };

struct NeatBound {
  double y;
  double value;
};

/// Single-exponential simplification prefactor * exp(-(y^2 min y sqrt(eta ln T))),
/// prefactor 4K (ThmK) or 8K (ThmKOpt).
NeatBound neat_form_bound(double x, int arms, Count horizon, double sigma, double eta,
                          NeatVariant variant);

inline double clamp_probability(double value) { return value < 1.0 ? value : 1.0; }

struct Histogram {
  double low = 0.0;
  double high = 0.0;
  std::vector<Count> counts;

  double bin_width() const {
    return counts.empty() ? 0.0 : (high - low) / static_cast<double>(counts.size());
  }
};

/// Equal-width bins over [min, max] of the sample; the max lands in the last bin.
Histogram histogram(std::span<const double> values, int bins = 50);

}  // namespace lighttail
