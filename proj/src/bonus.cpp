#include "lighttail/bonus.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace lighttail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double standard_kernel(Count n, double sigma, double eta_log_t) {
  return sigma * std::sqrt(eta_log_t / static_cast<double>(n));
}

double new_kernel(Count n, double scale) { return scale / static_cast<double>(n); }

double optimal_kernel(Count n, double sigma, double log_t, double eta1_t, double sqrt_eta2,
                      int arms) {
  const double dn = static_cast<double>(n);
  const double inflated = std::sqrt(eta1_t / (dn * static_cast<double>(arms)));
  return sigma * std::sqrt(log_t / dn) * std::max(inflated, sqrt_eta2);
}

double anytime_kernel(Count n, Count t, double sigma, double eta, int arms) {
  const double dt = static_cast<double>(t);
  const double dk = static_cast<double>(arms);
  const double log_term = std::max(1.0, std::log(dk * dt));
  return sigma * std::sqrt(eta * dt * log_term) / (static_cast<double>(n) * std::sqrt(dk));
}

void require_horizon(Count horizon) {
  if (horizon < 3) throw std::invalid_argument("bonus horizon must be at least 3");
}

}  // namespace

double rad_standard(Count n, double sigma, double eta, Count horizon) {
  if (n <= 0) return kInf;
  require_horizon(horizon);
  return standard_kernel(n, sigma, eta * std::log(static_cast<double>(horizon)));
}

double rad_new(Count n, double sigma, double eta, Count horizon) {
  if (n <= 0) return kInf;
  require_horizon(horizon);
  const double t = static_cast<double>(horizon);
  return new_kernel(n, sigma * std::sqrt(eta * t * std::log(t)));
}

double rad_optimal(Count n, double sigma, double eta1, double eta2, Count horizon, int arms) {
  if (n <= 0) return kInf;
  require_horizon(horizon);
  if (arms < 1) throw std::invalid_argument("arm count must be positive");
  const double t = static_cast<double>(horizon);
  return optimal_kernel(n, sigma, std::log(t), eta1 * t, std::sqrt(eta2), arms);
}

double rad_anytime(Count n, Count t, double sigma, double eta, int arms) {
  if (n <= 0) return kInf;
  if (t < 1) throw std::invalid_argument("round index must be at least 1");
  if (arms < 1) throw std::invalid_argument("arm count must be positive");
  return anytime_kernel(n, t, sigma, eta, arms);
}

double rad_linear(double z, Count t, double sigma, double eta, int dim) {
  if (z < 0.0) throw std::invalid_argument("quadratic form a'V^-1a must be non-negative");
  if (t < 1) throw std::invalid_argument("round index must be at least 1");
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  const double d = static_cast<double>(dim);
  return z * sigma * std::sqrt(eta * static_cast<double>(t) / d) + std::sqrt(d * z);
}

std::string_view to_string(BonusDesign design) {
  switch (design) {
    case BonusDesign::Standard: return "Standard";
    case BonusDesign::NewSqrtT: return "NewSqrtT";
    case BonusDesign::OptimalK: return "OptimalK";
    case BonusDesign::AnyTime: return "AnyTime";
    case BonusDesign::Linear: return "Linear";
  }
  return "?";
}

BonusDesign parse_bonus_design(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "standard") return BonusDesign::Standard;
  if (lower == "newsqrtt" || lower == "new") return BonusDesign::NewSqrtT;
  if (lower == "optimalk" || lower == "optimal") return BonusDesign::OptimalK;
  if (lower == "anytime") return BonusDesign::AnyTime;
  if (lower == "linear") return BonusDesign::Linear;
  throw std::invalid_argument("unknown bonus design '" + std::string(text) + "'");
}

BonusSpec BonusSpec::from_kappa(BonusDesign design, double kappa) {
  BonusSpec spec;
  spec.design = design;
  spec.sigma = 1.0;
  spec.eta = kappa * kappa;
  spec.eta2 = design == BonusDesign::OptimalK ? kappa * kappa : 0.0;
  spec.validate();
  return spec;
}

void BonusSpec::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("bonus sigma must be positive");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("bonus eta must be positive");
  }
  if (!(eta2 >= 0.0) || !std::isfinite(eta2)) {
    throw std::invalid_argument("bonus eta2 must be non-negative");
  }
}

BonusSchedule::BonusSchedule(const BonusSpec& spec, Count horizon, int arms, int dim)
    : spec_(spec), horizon_(horizon), arms_(arms), dim_(dim) {
  spec_.validate();
  if (arms_ < 1) throw std::invalid_argument("arm count must be positive");
  if (dim_ < 1) throw std::invalid_argument("dimension must be positive");
  if (spec_.design != BonusDesign::AnyTime && spec_.design != BonusDesign::Linear) {
    require_horizon(horizon_);
  }
}

double BonusSchedule::radius(Count n, Count t) const {
  switch (spec_.design) {
    case BonusDesign::Standard: return rad_standard(n, spec_.sigma, spec_.eta, horizon_);
    case BonusDesign::NewSqrtT: return rad_new(n, spec_.sigma, spec_.eta, horizon_);
    case BonusDesign::OptimalK:
      return rad_optimal(n, spec_.sigma, spec_.eta, spec_.eta2, horizon_, arms_);
    case BonusDesign::AnyTime: return rad_anytime(n, t, spec_.sigma, spec_.eta, arms_);
    case BonusDesign::Linear: break;
  }
  throw std::logic_error("linear bonus has no count-based radius");
}

double BonusSchedule::linear_radius(double z, Count t) const {
  if (spec_.design != BonusDesign::Linear) {
    throw std::logic_error("linear_radius requires the Linear design");
  }
  return rad_linear(z, t, spec_.sigma, spec_.eta, dim_);
}

}  // namespace lighttail
