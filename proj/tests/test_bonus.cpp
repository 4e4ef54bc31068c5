#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lighttail/bonus.hpp"

namespace lighttail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(RadStandard, HandValues) {
  EXPECT_NEAR(rad_standard(4, 1.0, 4.0, 100), std::sqrt(std::log(100.0)), 1e-14);
  EXPECT_NEAR(rad_standard(4, 1.0, 4.0, 100), 2.14597, 1e-5);
  EXPECT_EQ(rad_standard(0, 1.0, 4.0, 100), kInf);
}

TEST(RadStandard, UnitFactorsGiveOne) {
  // ln T = 1 cannot be hit with an integer horizon; fold it into eta instead.
  const Count T = 100;
  EXPECT_NEAR(rad_standard(1, 1.0, 1.0 / std::log(100.0), T), 1.0, 1e-15);
}

TEST(RadNew, HandValues) {
  EXPECT_NEAR(rad_new(1, 1.0, 4.0, 100), 42.9194, 1e-4);
  EXPECT_NEAR(rad_new(10, 1.0, 4.0, 500), 11.1486, 1e-4);
  EXPECT_EQ(rad_new(0, 1.0, 4.0, 100), kInf);
}

TEST(RadNew, RatioToStandardIsSqrtTOverN) {
  const Count T = 500;
  for (Count n = 1; n <= 500; n += 7) {
    const double ratio = rad_new(n, 0.7, 2.5, T) / rad_standard(n, 0.7, 2.5, T);
    EXPECT_NEAR(ratio, std::sqrt(static_cast<double>(T) / static_cast<double>(n)), 1e-12);
  }
}

TEST(RadNew, ConstantProductLaw) {
  const double sigma = 1.3;
  const double eta = 0.04;
  const Count T = 1000;
  const double target = sigma * std::sqrt(eta * 1000.0 * std::log(1000.0));
  for (Count n = 1; n <= 10000; n += 13) {
    EXPECT_NEAR(static_cast<double>(n) * rad_new(n, sigma, eta, T), target, 1e-12 * target);
  }
}

TEST(RadOptimal, HandValue) {
  EXPECT_NEAR(rad_optimal(1, 1.0, 4.0, 4.0, 100, 4), 10.0 * std::sqrt(std::log(100.0)), 1e-12);
  EXPECT_NEAR(rad_optimal(1, 1.0, 4.0, 4.0, 100, 4), 21.4597, 1e-4);
}

TEST(RadOptimal, ZeroEta2IsPureInflatedBranch) {
  for (Count n = 1; n <= 1000; n += 11) {
    const double expected =
        std::sqrt(std::log(500.0) / n) * std::sqrt(2.0 * 500.0 / (n * 3.0));
    EXPECT_NEAR(rad_optimal(n, 1.0, 2.0, 0.0, 500, 3), expected, 1e-12 * expected);
  }
}

TEST(RadOptimal, CrossoverPoint) {
  const double eta1 = 4.0;
  const double eta2 = 1.0;
  const Count T = 400;
  const int K = 4;
  const Count n_star = static_cast<Count>(eta1 * T / (eta2 * K));  // 400
  for (Count n : {Count{1}, n_star / 2, n_star}) {
    const double first = std::sqrt(std::log(400.0) / n) * std::sqrt(eta1 * T / (n * K));
    EXPECT_NEAR(rad_optimal(n, 1.0, eta1, eta2, T, K), first, 1e-12 * first);
  }
  for (Count n : {n_star + 1, 2 * n_star}) {
    const double second = std::sqrt(std::log(400.0) / n) * std::sqrt(eta2);
    EXPECT_NEAR(rad_optimal(n, 1.0, eta1, eta2, T, K), second, 1e-12 * second);
  }
}

TEST(RadOptimal, OneArmZeroEta2ReducesToNew) {
  for (Count n = 1; n <= 2000; n += 17) {
    const double a = rad_optimal(n, 0.8, 3.0, 0.0, 700, 1);
    const double b = rad_new(n, 0.8, 3.0, 700);
    EXPECT_NEAR(a, b, 1e-12 * b);
  }
}

TEST(RadAnytime, HandValues) {
  EXPECT_NEAR(rad_anytime(1, 1, 1.0, 1.0, 2), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(rad_anytime(1, 1, 1.0, 1.0, 2), 0.70711, 1e-5);
  EXPECT_NEAR(rad_anytime(1, 2, 1.0, 1.0, 2), std::sqrt(std::log(4.0)), 1e-14);
  EXPECT_NEAR(rad_anytime(1, 2, 1.0, 1.0, 2), 1.17741, 1e-5);
  EXPECT_EQ(rad_anytime(0, 5, 1.0, 1.0, 2), kInf);
}

TEST(RadAnytime, IgnoresDeclaredHorizon) {
  const BonusSpec spec{BonusDesign::AnyTime, 1.0, 2.0, 0.0};
  const BonusSchedule short_run(spec, 100, 3);
  const BonusSchedule long_run(spec, 100000, 3);
  for (Count t = 1; t <= 300; t += 7) {
    for (Count n = 1; n <= 50; n += 3) {
      EXPECT_EQ(short_run.radius(n, t), long_run.radius(n, t));
    }
  }
}

TEST(RadAnytime, MonotoneInTimeAndCount) {
  for (Count n = 1; n <= 40; ++n) {
    for (Count t = 1; t < 400; ++t) {
      EXPECT_LE(rad_anytime(n, t, 1.0, 1.0, 3), rad_anytime(n, t + 1, 1.0, 1.0, 3));
      EXPECT_GT(rad_anytime(n, t, 1.0, 1.0, 3), rad_anytime(n + 1, t, 1.0, 1.0, 3));
    }
  }
}

TEST(RadLinear, HandValues) {
  EXPECT_NEAR(rad_linear(1.0, 4, 1.0, 1.0, 4), 3.0, 1e-15);
  EXPECT_EQ(rad_linear(0.0, 9, 1.0, 1.0, 4), 0.0);
  EXPECT_NEAR(rad_linear(0.3, 50, 0.0, 1.0, 5), std::sqrt(5 * 0.3), 1e-15);
  EXPECT_THROW(rad_linear(-1e-3, 4, 1.0, 1.0, 4), std::invalid_argument);
}

TEST(RadLinear, StrictlyIncreasingInZ) {
  double prev = rad_linear(0.0, 20, 1.0, 0.5, 3);
  for (int i = 1; i <= 200; ++i) {
    const double cur = rad_linear(0.01 * i, 20, 1.0, 0.5, 3);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
}

TEST(Schedules, NonIncreasingInCount) {
  const Count T = 1000;
  const int K = 3;
  for (BonusDesign d : {BonusDesign::Standard, BonusDesign::NewSqrtT, BonusDesign::OptimalK,
                        BonusDesign::AnyTime}) {
    const BonusSchedule s({d, 1.0, 2.0, 1.5}, T, K);
    for (Count n = 1; n < 10000; ++n) {
      const double a = s.radius(n, 500);
      const double b = s.radius(n + 1, 500);
      if (d == BonusDesign::OptimalK) {
        EXPECT_GE(a, b) << to_string(d) << " n=" << n;
      } else {
        EXPECT_GT(a, b) << to_string(d) << " n=" << n;
      }
    }
  }
}

TEST(Schedules, PureAndBitIdentical) {
  const BonusSchedule a({BonusDesign::OptimalK, 0.9, 1.7, 0.3}, 321, 5);
  const BonusSchedule b({BonusDesign::OptimalK, 0.9, 1.7, 0.3}, 321, 5);
  for (Count n = 0; n < 100; ++n) EXPECT_EQ(a.radius(n, 17), b.radius(n, 17));
}

TEST(Schedules, LinearDesignHasNoCountRadius) {
  const BonusSchedule s({BonusDesign::Linear, 1.0, 1.0, 0.0}, 100, 1, 4);
  EXPECT_THROW(s.radius(1, 1), std::logic_error);
  EXPECT_NEAR(s.linear_radius(1.0, 4), 3.0, 1e-15);
  const BonusSchedule mab({BonusDesign::NewSqrtT, 1.0, 1.0, 0.0}, 100, 2);
  EXPECT_THROW(mab.linear_radius(1.0, 4), std::logic_error);
}

TEST(BonusSpec, FromKappaConvention) {
  const auto s = BonusSpec::from_kappa(BonusDesign::NewSqrtT, 0.4);
  EXPECT_EQ(s.sigma, 1.0);
  EXPECT_NEAR(s.eta, 0.16, 1e-15);
  EXPECT_NEAR(s.kappa(), 0.4, 1e-15);
  const auto o = BonusSpec::from_kappa(BonusDesign::OptimalK, 0.2);
  EXPECT_NEAR(o.eta2, 0.04, 1e-15);
}

TEST(BonusSpec, Validation) {
  EXPECT_THROW((BonusSpec{BonusDesign::Standard, 0.0, 1.0, 0.0}).validate(), std::invalid_argument);
  EXPECT_THROW((BonusSpec{BonusDesign::Standard, 1.0, -1.0, 0.0}).validate(),
               std::invalid_argument);
  EXPECT_THROW((BonusSpec{BonusDesign::OptimalK, 1.0, 1.0, -0.5}).validate(),
               std::invalid_argument);
  EXPECT_NO_THROW((BonusSpec{BonusDesign::OptimalK, 1.0, 1.0, 0.0}).validate());
}

TEST(BonusDesignNames, RoundTrip) {
  for (BonusDesign d : {BonusDesign::Standard, BonusDesign::NewSqrtT, BonusDesign::OptimalK,
                        BonusDesign::AnyTime, BonusDesign::Linear}) {
    EXPECT_EQ(parse_bonus_design(to_string(d)), d);
  }
  EXPECT_EQ(parse_bonus_design("newsqrtt"), BonusDesign::NewSqrtT);
  EXPECT_THROW(parse_bonus_design("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace lighttail
