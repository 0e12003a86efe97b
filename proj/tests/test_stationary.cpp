#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "lje/pde.hpp"
#include "lje/stationary.hpp"

namespace {

using lje::Profile;
using lje::RegimeKind;

const lje::JumpKernel& kernel3() {
  static const auto k = lje::make_kernel(3.0);
  return k;
}

lje::Regime regime(RegimeKind kind, double kappa = 1.0) { return lje::regime_coefficients(kind, kernel3(), kappa); }

TEST(Stationary, ReactionEquilibriumExamples) {
  const auto sp = lje::stationary_profile(regime(RegimeKind::ReactionOnly), 0.2, 0.8, 4);
  EXPECT_EQ(sp.form, lje::StationaryForm::ReactionEquilibrium);
  // Cell 1 of 4 is centred at q = 3/8; q = 1/4 needs M = 2 (centres 1/4, 3/4).
  const auto two = lje::stationary_profile(regime(RegimeKind::ReactionOnly), 0.2, 0.8, 2);
  EXPECT_NEAR(two.profile[0], 0.096875 / 0.4375, 1e-15);
  EXPECT_NEAR(two.profile[0], 0.221429, 1e-6);
  EXPECT_NEAR(two.profile[1], 1.0 - two.profile[0], 1e-15);
  const auto odd = lje::stationary_profile(regime(RegimeKind::ReactionOnly), 0.2, 0.8, 5);
  EXPECT_DOUBLE_EQ(odd.profile[2], 0.5);
}

TEST(Stationary, ReactionEquilibriumIsFlatAtTheBoundary) {
  const double a = 0.2, b = 0.8, gamma = 3.0;
  for (int M : {50, 200, 1000}) {
    const auto sp = lje::stationary_profile(regime(RegimeKind::ReactionOnly), a, b, M);
    const double q1 = sp.profile.center(0);
    EXPECT_LE(std::abs(sp.profile[0] - a), (b - a) * std::pow(2.0, gamma) * std::pow(q1, gamma));
    EXPECT_LE(std::abs(sp.profile[M - 1] - b), (b - a) * std::pow(2.0, gamma) * std::pow(q1, gamma));
  }
}

TEST(Stationary, DirichletAndNeumann) {
  const auto lin = lje::stationary_profile(regime(RegimeKind::HeatDirichlet), 0.1, 0.7, 10);
  EXPECT_EQ(lin.form, lje::StationaryForm::Linear);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(lin.profile[i], 0.1 + 0.6 * lin.profile.center(i), 1e-15);

  const auto g = Profile::from_function(64, [](double q) { return 0.2 + 0.5 * q * q; });
  const auto neu = lje::stationary_profile(regime(RegimeKind::HeatNeumann), 0.1, 0.7, 64, g);
  EXPECT_EQ(neu.form, lje::StationaryForm::Constant);
  EXPECT_NEAR(neu.profile[0], g.integral(), 1e-15);
  std::vector<double> reversed(g.values().rbegin(), g.values().rend());
  const auto neu_rev = lje::stationary_profile(regime(RegimeKind::HeatNeumann), 0.1, 0.7, 64, Profile(reversed));
  EXPECT_NEAR(neu_rev.profile[0], neu.profile[0], 1e-15);
  EXPECT_THROW(lje::stationary_profile(regime(RegimeKind::HeatNeumann), 0.1, 0.7, 64), std::invalid_argument);
}

TEST(Stationary, RobinBoundaryValues) {
  const auto r = regime(RegimeKind::HeatRobin);
  const double kprime = 2 * r.m_hat / (r.sigma_hat * r.sigma_hat);
  // kappa' = 2m/sigma^2 = zeta(3)/zeta(2) for gamma = 3, and rho(0) = 1/(2 + kappa').
  EXPECT_NEAR(kprime, 1.2020569031595943 / 1.6449340668482264, 1e-12);
  EXPECT_NEAR(kprime, 0.730763, 1e-6);
  const auto [left, right] = lje::robin_boundary_values(r, 0.0, 1.0);
  EXPECT_NEAR(left, 1.0 / (2.0 + kprime), 1e-14);
  EXPECT_NEAR(left, 0.366198, 1e-6);
  EXPECT_NEAR(right, 0.633802, 1e-6);
  EXPECT_NEAR(left + right, 1.0, 1e-15);
  // The line satisfies both Robin conditions: D rho' = m_hat (rho(0) - alpha) and -D rho' = m_hat (rho(1) - beta).
  const double slope = right - left;
  EXPECT_NEAR(r.diffusivity() * slope, r.m_hat * (left - 0.0), 1e-14);
  EXPECT_NEAR(-r.diffusivity() * slope, r.m_hat * (right - 1.0), 1e-14);

  const auto sp = lje::stationary_profile(r, 0.0, 1.0, 8);
  EXPECT_EQ(sp.form, lje::StationaryForm::RobinLinear);
  EXPECT_NEAR(sp.profile[0], left + slope / 16, 1e-15);
}

TEST(Stationary, RobinSymmetryAndWeakCouplingLimit) {
  const double a = 0.2, b = 0.8;
  double previous = 1.0;
  for (double kappa : {10.0, 1.0, 0.1, 0.01, 0.001}) {
    const auto [left, right] = lje::robin_boundary_values(regime(RegimeKind::HeatRobin, kappa), a, b);
    EXPECT_NEAR(left + right, a + b, 1e-14);
    const double gap = std::abs(left - 0.5 * (a + b));
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 1e-3);
  const auto [l0, r0] = lje::robin_boundary_values(regime(RegimeKind::HeatRobin, 0.0), a, b);
  EXPECT_EQ(l0, 0.5);
  EXPECT_EQ(r0, 0.5);
}

TEST(Stationary, ReactionDiffusionBvpConverges) {
  const auto r = regime(RegimeKind::ReactionDiffusionDirichlet);
  const auto coarse = lje::stationary_profile(r, 0.2, 0.8, 100);
  const auto fine = lje::stationary_profile(r, 0.2, 0.8, 200);
  EXPECT_EQ(coarse.form, lje::StationaryForm::NumericBvp);
  double diff = 0;
  for (int i = 0; i < 100; ++i) {
    diff = std::max(diff, std::abs(coarse.profile[i] - fine.profile.at(coarse.profile.center(i))));
  }
  EXPECT_LT(diff, 1e-3);
  // Strong reaction pins the profile to the reaction equilibrium away from the middle.
  const auto pinned = lje::stationary_profile(regime(RegimeKind::ReactionDiffusionDirichlet, 1e6), 0.2, 0.8, 200);
  const auto eq = lje::stationary_profile(regime(RegimeKind::ReactionOnly), 0.2, 0.8, 200);
  double gap = 0;
  for (int i = 0; i < 200; ++i) gap = std::max(gap, std::abs(pinned.profile[i] - eq.profile[i]));
  EXPECT_LT(gap, 1e-3);
}

TEST(Stationary, LongTimePdeReachesStationaryProfile) {
  const int M = 50;
  const double a = 0.2, b = 0.8;
  const auto g = Profile::constant(M, 0.5);
  const std::vector<double> times{20.0};
  for (auto kind : {RegimeKind::ReactionOnly, RegimeKind::ReactionDiffusionDirichlet, RegimeKind::HeatDirichlet,
                    RegimeKind::HeatRobin, RegimeKind::HeatNeumann}) {
    const auto r = regime(kind);
    const auto sol = lje::solve(r, g, a, b, times);
    const auto sp = lje::stationary_profile(r, a, b, M, g);
    double diff = 0;
    for (int i = 0; i < M; ++i) diff = std::max(diff, std::abs(sol.profiles[0][i] - sp.profile[i]));
    EXPECT_LT(diff, 1e-4) << to_string(kind);
  }
}

TEST(Shape, ClaimsHoldForReactionProfiles) {
  const auto reaction = lje::stationary_profile(regime(RegimeKind::ReactionOnly), 0.2, 0.8, 400);
  const auto rep = lje::shape_check(reaction, 0.2, 0.8, 1e-10);
  EXPECT_TRUE(rep.passed()) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_FALSE(rep.degenerate);
  const auto bvp = lje::stationary_profile(regime(RegimeKind::ReactionDiffusionDirichlet), 0.2, 0.8, 400);
  const auto rep2 = lje::shape_check(bvp, 0.2, 0.8, 1e-6);
  EXPECT_TRUE(rep2.passed()) << (rep2.violations.empty() ? "" : rep2.violations.front());
}

TEST(Shape, DetectsWrongShapesAndDegenerateData) {
  lje::StationaryProfile wrong;
  wrong.regime = regime(RegimeKind::ReactionOnly);
  wrong.profile = Profile::from_function(200, [](double q) { return 0.5 + 2.4 * std::pow(q - 0.5, 3); });
  EXPECT_FALSE(lje::shape_check(wrong, 0.2, 0.8, 1e-10).passed());

  lje::StationaryProfile decreasing = wrong;
  decreasing.profile = Profile::from_function(200, [](double q) { return 0.8 - 0.6 * q; });
  EXPECT_FALSE(lje::shape_check(decreasing, 0.2, 0.8, 1e-10).passed());

  const auto flat = lje::stationary_profile(regime(RegimeKind::ReactionOnly), 0.4, 0.4, 100);
  const auto rep = lje::shape_check(flat, 0.4, 0.4, 1e-10);
  EXPECT_TRUE(rep.degenerate);
  EXPECT_TRUE(rep.passed());
  EXPECT_FALSE(rep.notes.empty());
  EXPECT_THROW(lje::shape_check(flat, 0.8, 0.2, 1e-10), std::invalid_argument);
}

TEST(AppendixNorms, TrivialCases) {
  const auto p = Profile::from_function(40, [](double q) { return std::sin(q); });
  const auto n0 = lje::appendix_norms(p, p, 3.0);
  EXPECT_EQ(n0.l2, 0.0);
  EXPECT_EQ(n0.h1_semi, 0.0);
  EXPECT_EQ(n0.v1, 0.0);
  const auto shifted = Profile::from_function(40, [](double q) { return std::sin(q) - 0.3; });
  const auto n1 = lje::appendix_norms(p, shifted, 3.0);
  EXPECT_NEAR(n1.l2, 0.3, 1e-14);
  EXPECT_NEAR(n1.h1_semi, 0.0, 1e-12);
  EXPECT_THROW(lje::appendix_norms(p, Profile::constant(41, 0.0), 3.0), std::invalid_argument);
}

TEST(AppendixNorms, LinearDifferenceAgainstHandQuadrature) {
  const int M = 1000;
  const auto zero = Profile::constant(M, 0.0);
  const auto lin = Profile::from_function(M, [](double q) { return q; });
  const auto n = lje::appendix_norms(lin, zero, 3.0);
  // Midpoint sum of q^2 is 1/3 - h^2/12; forward differences of q are all h.
  const double h = 1.0 / M;
  EXPECT_NEAR(n.l2 * n.l2, 1.0 / 3.0 - h * h / 12.0, 1e-12);
  EXPECT_NEAR(n.h1_semi * n.h1_semi, (M - 1) * h, 1e-12);
}

TEST(AppendixNorms, WeightedNormAgainstQuadratureOracle) {
  const double gamma = 3.5;
  const auto d = [](double q) { return q * q * (1 - q) * (1 - q); };
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double exact = integrator.integrate(
      [&](double q) {
        return std::pow(q, 4 - gamma) * std::pow(1 - q, 4) + std::pow(q, 4) * std::pow(1 - q, 4 - gamma);
      },
      0.0, 1.0);
  const int M = 2000;
  const auto n = lje::appendix_norms(Profile::from_function(M, d), Profile::constant(M, 0.0), gamma);
  EXPECT_NEAR(n.v1 * n.v1, exact, 1e-4 * exact);
}

}  // namespace
