#include "lighttail/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lighttail {
namespace {

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

// prefactor * exp(-exponent), falling back to exp(log_prefactor - exponent)
// when the prefactor overflows or exp(-exponent) leaves the normal range.
double scaled_exp(double prefactor, double log_prefactor, double exponent) {
  if (std::isfinite(prefactor) && exponent < 700.0) return prefactor * std::exp(-exponent);
  return std::exp(log_prefactor - exponent);
}

double scaled_exp(double prefactor, double exponent) {
  return scaled_exp(prefactor, std::log(prefactor), exponent);
}

void check_common(double x, int count, Count horizon, double sigma) {
  if (std::isnan(x)) throw std::invalid_argument("threshold is NaN");
  if (count < 1) throw std::invalid_argument("arm count / dimension must be positive");
  if (horizon < 2) throw std::invalid_argument("horizon must be at least 2");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SampleStats describe(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("cannot describe an empty sample");
  SampleStats out;
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  const double n = static_cast<double>(values.size());
  out.mean = sum.value() / n;
  if (values.size() > 1) {
    CompensatedSum squares;
    for (double v : values) squares.add((v - out.mean) * (v - out.mean));
    out.std = std::sqrt(squares.value() / (n - 1.0));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < kSummaryQuantiles.size(); ++i) {
    out.quantiles[i] = quantile_sorted(sorted, kSummaryQuantiles[i]);
  }
  return out;
}

std::vector<double> extract(std::span<const EpisodeResult> results, TailFunctional functional) {
  std::vector<double> out;
  out.reserve(results.size());
  for (const auto& r : results) {
    out.push_back(functional == TailFunctional::Pseudo ? r.pseudo_regret : r.empirical_regret);
  }
  return out;
}

Summary summarize(std::span<const EpisodeResult> results) {
  if (results.empty()) throw std::invalid_argument("cannot summarize zero results");
  Summary out;
  out.paths = static_cast<Count>(results.size());
  std::vector<double> rewards;
  rewards.reserve(results.size());
  CompensatedSum noise;
  for (const auto& r : results) {
    rewards.push_back(r.cumulative_reward);
    noise.add(r.noise_sum);
  }
  out.reward = describe(rewards);
  out.pseudo_regret = describe(extract(results, TailFunctional::Pseudo));
  out.empirical_regret = describe(extract(results, TailFunctional::Empirical));
  out.mean_noise = noise.value() / static_cast<double>(results.size());
  return out;
}

Interval wilson_interval(Count successes, Count trials, double z) {
  if (trials <= 0) throw std::invalid_argument("Wilson interval needs at least one trial");
  if (successes < 0 || successes > trials) {
    throw std::invalid_argument("successes outside [0, trials]");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // The interval always contains p; pin it against round-off at the edges.
  return {std::clamp(std::min(center - half, p), 0.0, 1.0),
          std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

std::string_view to_string(BoundName name) {
  switch (name) {
    case BoundName::None: return "None";
    case BoundName::ThmK: return "ThmK";
    case BoundName::ThmKOpt: return "ThmKOpt";
    case BoundName::ThmAnyTime: return "ThmAnyTime";
    case BoundName::ThmLinear: return "ThmLinear";
    case BoundName::NeatForm: return "NeatForm";
  }
  return "?";
}

std::string_view to_string(TailFunctional functional) {
  return functional == TailFunctional::Pseudo ? "pseudo" : "empirical";
}

std::vector<TailReport> empirical_tail(std::span<const double> samples,
                                       std::span<const double> thresholds) {
  if (samples.empty()) throw std::invalid_argument("tail of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<Count>(sorted.size());
  std::vector<TailReport> out;
  out.reserve(thresholds.size());
  for (double x : thresholds) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    const Count hits = n - static_cast<Count>(below);
    const Interval ci = wilson_interval(hits, n);
    TailReport report;
    report.threshold = x;
    report.empirical_prob = static_cast<double>(hits) / static_cast<double>(n);
    report.ci_low = ci.low;
    report.ci_high = ci.high;
    out.push_back(report);
  }
  return out;
}

std::vector<TailReport> empirical_tail(std::span<const EpisodeResult> results,
                                       TailFunctional functional,
                                       std::span<const double> thresholds) {
  const auto samples = extract(results, functional);
  return empirical_tail(samples, thresholds);
}

void attach_bound(std::span<TailReport> reports, BoundName name,
                  const std::function<double(double)>& bound) {
  for (auto& r : reports) {
    r.bound_name = name;
    r.bound_value = bound(r.threshold);
    r.bound_clamped = clamp_probability(r.bound_value);
  }
}

double bound_k_armed(double x, int arms, Count horizon, double sigma, double eta) {
  check_common(x, arms, horizon, sigma);
  const double k = arms;
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  const double s2 = sigma * sigma;

  const double noise = std::exp(-x * x / (2.0 * k * s2 * t));
  const double shift = 2.0 * k + 4.0 * k * sigma * std::sqrt(eta * t * log_t);
  const double excess = positive_part(x - shift);
  const double slow = scaled_exp(2.0 * k, excess * excess / (32.0 * s2 * k * k * t));
  const double wrong =
      scaled_exp(k * k * t, x * std::sqrt(eta * log_t) / (8.0 * sigma * k * std::sqrt(t)));
  return noise + slow + wrong;
}

double bound_k_armed_optimal(double x, int arms, Count horizon, double sigma, double eta1,
                             double eta2) {
  check_common(x, arms, horizon, sigma);
  const double k = arms;
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  const double s2 = sigma * sigma;

  const double noise = std::exp(-x * x / (8.0 * k * s2 * t));
  const double shift = 2.0 * k + 8.0 * sigma * std::sqrt(std::max(eta1, eta2) * k * t * log_t);
  const double excess = positive_part(x - shift);
  const double slow = scaled_exp(4.0 * k, excess * excess / (128.0 * s2 * k * t));
  const double wrong = scaled_exp(2.0 * k * k * t, positive_part(x - 2.0 * k) *
                                                       std::sqrt(eta1 * log_t) /
                                                       (16.0 * sigma * std::sqrt(k * t)));
  return noise + slow + wrong;
}

double bound_anytime(double x, int arms, Count horizon, double sigma, double eta) {
  check_common(x, arms, horizon, sigma);
  const double k = arms;
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  const double s2 = sigma * sigma;

  const double noise = std::exp(-x * x / (8.0 * k * s2 * t));
  const double shift = 2.0 * k + 16.0 * sigma * std::sqrt(2.0 * eta * k * t * log_t);
  const double excess = positive_part(x - shift);
  const double slow = scaled_exp(2.0 * k * t * t, excess * excess / (512.0 * s2 * k * t));
  const double wrong = scaled_exp(2.0 * k * t * t * t, positive_part(x - 2.0 * k) *
                                                           std::sqrt(eta * log_t) /
                                                           (16.0 * sigma * std::sqrt(k * t)));
  return noise + slow + wrong;
}

double bound_linear(double x, int dim, Count horizon, double sigma, double eta) {
  check_common(x, dim, horizon, sigma);
  if (horizon < dim) throw std::invalid_argument("linear bound requires T >= d");
  const double d = dim;
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  const double s2 = sigma * sigma;

  // 2d (T/d)^(2d+1), kept in log space until the final product.
  const double log_prefactor = std::log(2.0 * d) + (2.0 * d + 1.0) * std::log(t / d);
  const double prefactor = std::exp(log_prefactor);

  const double noise = std::exp(-x * x / (2.0 * s2 * d * d * t));
  const double shift = 4.0 * std::sqrt(d) + 32.0 * d * std::sqrt(t) * log_t +
                       16.0 * sigma * std::sqrt(eta * d * t) * log_t;
  const double excess = positive_part(x - shift);
  const double slow =
      scaled_exp(prefactor, log_prefactor, excess * excess / (512.0 * s2 * d * t * log_t * log_t));
  const double wrong =
      scaled_exp(prefactor, log_prefactor,
                 positive_part(x - 4.0 * std::sqrt(d)) * std::sqrt(eta) /
                     (8.0 * sigma * std::sqrt(d * t) * log_t));
  return noise + slow + wrong;
}

NeatBound neat_form_bound(double x, int arms, Count horizon, double sigma, double eta,
                          NeatVariant variant) {
  check_common(x, arms, horizon, sigma);
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  const double k = arms;
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  const double eta_wide = std::max(eta, 1.0 / eta);

  double y = 0.0;
  double prefactor = 0.0;
  if (variant == NeatVariant::ThmK) {
    y = positive_part(x - 2.0 * k - 16.0 * sigma * k * std::sqrt(eta_wide * t * log_t)) /
        (8.0 * sigma * k * std::sqrt(t));
    prefactor = 4.0 * k;
  } else {
    y = positive_part(x - 2.0 * k - 32.0 * sigma * std::sqrt(eta_wide * k * t * log_t)) /
        (16.0 * sigma * std::sqrt(k * t));
    prefactor = 8.0 * k;
  }
  const double exponent = std::min(y * y, y * std::sqrt(eta * log_t));
  return {y, scaled_exp(prefactor, exponent)};
}

Histogram histogram(std::span<const double> values, int bins) {
  if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  Histogram out;
  out.low = *lo;
  out.high = *hi;
  out.counts.assign(static_cast<std::size_t>(bins), 0);
  const double width = (out.high - out.low) / bins;
  for (double v : values) {
    std::size_t idx = 0;
    if (width > 0.0) {
      idx = static_cast<std::size_t>((v - out.low) / width);
      idx = std::min(idx, static_cast<std::size_t>(bins - 1));
    }
    ++out.counts[idx];
  }
  return out;
}

}  // namespace lighttail
