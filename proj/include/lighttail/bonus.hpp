#pragma once

#include <cmath>
#include <limits>
#include <string_view>

#include "lighttail/core.hpp"

namespace lighttail {

// Confidence radii. Every MAB radius returns +infinity at n == 0 so that
// index policies pull each arm once before comparing estimates. ln is the
// natural log throughout.

/// sigma * sqrt(eta ln T / n)
double rad_standard(Count n, double sigma, double eta, Count horizon);

/// sigma * sqrt(eta T ln T) / n
double rad_new(Count n, double sigma, double eta, Count horizon);

/// sigma * sqrt(ln T / n) * max(sqrt(eta1 T / (n K)), sqrt(eta2))
double rad_optimal(Count n, double sigma, double eta1, double eta2, Count horizon, int arms);

/// sigma * sqrt(eta t (1 v ln(K t))) / (n sqrt(K)); horizon-free.
double rad_anytime(Count n, Count t, double sigma, double eta, int arms);

/// z sigma sqrt(eta t / d) + sqrt(d z), where z = a' V^{-1} a >= 0.
double rad_linear(double z, Count t, double sigma, double eta, int dim);

enum class BonusDesign { Standard, NewSqrtT, OptimalK, AnyTime, Linear };

std::string_view to_string(BonusDesign design);
/// Accepts the enum spelling ("NewSqrtT") case-insensitively.
BonusDesign parse_bonus_design(std::string_view text);

/// Policy-side bonus parameters, before they are bound to an instance.
///
/// `sigma` is the policy's assumed noise scale. For OptimalK `eta` is eta1
/// and `eta2` is the standard-branch weight; other designs ignore `eta2`.
struct BonusSpec {
  BonusDesign design = BonusDesign::Standard;
  double sigma = 1.0;
  double eta = 1.0;
  double eta2 = 0.0;

  /// sigma = 1, eta = kappa^2.
  static BonusSpec from_kappa(BonusDesign design, double kappa);

  double kappa() const { return sigma * std::sqrt(eta); }
  void validate() const;
};

/// A BonusSpec bound to the horizon, arm count and dimension of an instance.
class BonusSchedule {
 public:
  BonusSchedule(const BonusSpec& spec, Count horizon, int arms, int dim = 1);

  const BonusSpec& spec() const noexcept { return spec_; }
  BonusDesign design() const noexcept { return spec_.design; }
  Count horizon() const noexcept { return horizon_; }
  int arms() const noexcept { return arms_; }
  int dim() const noexcept { return dim_; }

  /// Radius for an arm pulled n times, evaluated at round t (1-based).
  /// Only AnyTime depends on t.
  double radius(Count n, Count t) const;

  /// Linear design only.
  double linear_radius(double z, Count t) const;

 private:
  BonusSpec spec_;
  Count horizon_;
  int arms_;
  int dim_;
};

}  // namespace lighttail
