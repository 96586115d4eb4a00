#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/lambert_w.hpp>

#include "grids.hpp"
#include "wcg/numerics.hpp"

using namespace wcg;

TEST(SolvePhi, KnownRoots) {
  EXPECT_NEAR(solve_phi(1), std::numbers::phi, 1e-9);
  EXPECT_NEAR(solve_phi(9), 5.064, 0.01);
  EXPECT_NEAR(solve_phi(18), 8.11, 0.01);
  // Independent high-precision roots.
  EXPECT_NEAR(solve_phi(9), 5.063510766092616, 1e-12);
  EXPECT_NEAR(solve_phi(18), 8.109589341281165, 1e-12);
  EXPECT_THROW(solve_phi(0), domain_error);
}

TEST(SolvePhi, RootIdentityAndLogResidual) {
  for (int d = 1; d <= 100; ++d) {
    const double x = solve_phi(d);
    EXPECT_LE(std::abs((d + 1) * std::log(x) - d * std::log1p(x)), 1e-12) << d;
    const double lhs = std::pow(x, d + 1), rhs = std::pow(x + 1, d);
    EXPECT_LE(std::abs(lhs - rhs) / rhs, 1e-9) << d;
  }
}

TEST(LowerBoundParams, FigureCoordinates) {
  const int ds[] = {9, 10, 11, 12, 16, 20, 100};
  const int mus[] = {3, 3, 3, 4, 5, 5, 20};
  const double plotted[] = {0.417652, 0.397938, 0.38033, 0.453611, 0.466516, 0.418342, 0.490597};
  const double oracle[] = {0.41765177766, 0.39793849360, 0.38032971907, 0.45361065904,
                           0.46651593168, 0.41834151969, 0.49059723390};
  for (int k = 0; k < 7; ++k) {
    const LowerBoundParams p = lower_bound_params(ds[k]);
    EXPECT_EQ(p.mu, mus[k]) << ds[k];
    EXPECT_NEAR(p.beta, plotted[k], 1e-4) << ds[k];
    EXPECT_NEAR(p.beta, oracle[k], 1e-10) << ds[k];
  }
  EXPECT_THROW(lower_bound_params(8), domain_error);
}

TEST(LowerBoundParams, InvariantsHoldFor9To100) {
  for (int d = 9; d <= 100; ++d) {
    const LowerBoundParams p = lower_bound_params(d);
    EXPECT_GE(p.mu, 3) << d;
    EXPECT_DOUBLE_EQ(p.c * d, p.mu) << d;
    EXPECT_GE(p.beta, 0.38) << d;
    EXPECT_LE(p.beta, 0.5) << d;
    // Phi^{d+2} <= (Phi + 1/beta)^d, in logs.
    EXPECT_LE((d + 2) * std::log(p.phi), d * std::log(p.phi + 1.0 / p.beta)) << d;
    EXPECT_LE(std::abs(std::pow(p.w, d) - p.phi), 1e-9 * p.phi) << d;
    EXPECT_LE(std::abs(std::pow(p.w, -p.mu) - (1.0 - p.beta)), 1e-9) << d;
    EXPECT_LE(std::abs(std::pow(p.w, d + 1) - (p.phi + 1.0)), 1e-9 * (p.phi + 1.0)) << d;
    EXPECT_DOUBLE_EQ(p.alpha, p.beta * p.phi);
    // mu is the floor of d * ratio and satisfies the defining inequality.
    EXPECT_LE(p.mu, d * p.c_ratio + 1e-9) << d;
    EXPECT_GT(p.mu + 1, d * p.c_ratio) << d;
    EXPECT_GE(-p.c * std::log(p.phi), std::log(p.phi + 1) - std::log(2 * p.phi + 1) - 1e-12) << d;
    // beta sits between its relaxed envelopes.
    EXPECT_LE(beta_lower_envelope(p.phi, d), p.beta + 1e-12) << d;
    EXPECT_LE(p.beta, beta_upper_envelope(p.phi) + 1e-12) << d;
  }
}

TEST(STrunc, Examples) {
  EXPECT_EQ(s_trunc(0, 5), 5.0);
  EXPECT_DOUBLE_EQ(s_trunc(1, 3), 6.0);
  EXPECT_DOUBLE_EQ(s_trunc(2, 2), 14.0 / 3.0);
  EXPECT_EQ(s_trunc(3, 0), 0.0);
  EXPECT_EQ(s_trunc(0, 0), 0.0);
  EXPECT_THROW(s_trunc(-1, 1), domain_error);
  EXPECT_THROW(s_trunc(1, -1), domain_error);
}

TEST(AFn, Examples) {
  for (double x : {1.0, 2.5, 100.0}) EXPECT_EQ(a_fn(0, x), 1.0);
  EXPECT_DOUBLE_EQ(a_fn(2, 1), 1.2);
  EXPECT_DOUBLE_EQ(a_fn(40, 1), 82.0 / 43.0);
  EXPECT_THROW(a_fn(2, 0.5), domain_error);
  // A_m(x) = x^{m+1} / S_m(x)
  for (int m = 1; m <= 6; ++m)
    for (double x : {1.0, 1.7, 4.0}) EXPECT_NEAR(a_fn(m, x), std::pow(x, m + 1) / s_trunc(m, x), 1e-12 * (m + 1));
}

TEST(AFn, IncreasingWithLimit) {
  for (int m = 1; m <= 10; ++m) {
    double prev = a_fn(m, 1.0);
    for (double x = 1.01; x < 50; x *= 1.01) {
      const double v = a_fn(m, x);
      EXPECT_GT(v, prev);
      prev = v;
    }
    EXPECT_NEAR(a_fn(m, 1e9), m + 1.0, 1e-6 * (m + 1));
  }
}

TEST(AFnInverse, RoundTripAndDomain) {
  for (int m = 1; m <= 8; ++m)
    for (double x : {1.0, 2.0, 10.0}) EXPECT_NEAR(a_fn_inverse(m, a_fn(m, x)), x, 1e-12 * x);
  EXPECT_DOUBLE_EQ(a_fn_inverse(2, 1.2), 1.0);
  for (int m = 1; m <= 5; ++m) EXPECT_GT(a_fn_inverse(m, m + 1 - 1e-6), 1e5 * (m + 1) / 2.0 - 1);
  EXPECT_THROW(a_fn_inverse(2, 3.0), domain_error);
  EXPECT_THROW(a_fn_inverse(2, 1.0), domain_error);
  try {
    a_fn_inverse(2, 5.0);
  } catch (const domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("[1.2"), std::string::npos);
  }
}

TEST(PotentialInequalities, MonotonicityInM) { EXPECT_EQ(test::monotonicity_violations(), 0u); }

TEST(PotentialInequalities, IncrementAndValueBounds) { EXPECT_EQ(test::potential_bound_violations(), 0u); }

TEST(LambertW, AgreesWithReference) {
  EXPECT_NEAR(lambert_w(std::numbers::e), 1.0, 1e-15);
  for (double x = 1e-6; x < 1e12; x *= 1.7) {
    const double w = lambert_w(x);
    EXPECT_LE(std::abs(w * std::exp(w) - x), 1e-12 * x) << x;
    EXPECT_NEAR(w, boost::math::lambert_w0(x), 1e-13 * std::max(1.0, w)) << x;
  }
  EXPECT_THROW(lambert_w(0.0), domain_error);
  EXPECT_THROW(lambert_w(-1.0), domain_error);
}

TEST(LambertW, GammaBound) {
  for (double d = 2; d <= 1e6; d *= 1.05) EXPECT_LE(gamma_d(d), 1.368) << d;
  for (int d = 9; d <= 200; ++d) EXPECT_LE(solve_phi(d), gamma_d(d) * d / std::log(d)) << d;
  // sup of gamma_d is 1 + 1/e, attained at d = e^{e+1}
  EXPECT_NEAR(gamma_d(std::exp(std::numbers::e + 1)), 1 + 1 / std::numbers::e, 1e-12);
}

TEST(ExpPotential, ClosedFormAndConstantRatio) {
  EXPECT_DOUBLE_EQ(exp_potential(0), 1.0);
  EXPECT_NEAR(exp_potential(1), 1 + std::numbers::e, 1e-14);
  for (double w : {0.25, 1.0, 2.5, 7.0}) {
    const double expect = std::numbers::e / (std::numbers::e - 1) * (1 - std::exp(-w)) / w;
    EXPECT_NEAR(exp_potential_ratio(w), expect, 1e-14);
    for (double x : {0.0, 0.5, 1.0, 3.0, 7.0}) {
      const double r = (exp_potential(x + w) - exp_potential(x)) / (w * std::exp(x + w));
      EXPECT_NEAR(r, expect, 1e-12 * expect) << x << ' ' << w;
    }
  }
  EXPECT_THROW(exp_potential(-1), domain_error);
}

TEST(PredictedRatios, ClosedForms) {
  const LowerBoundParams p = lower_bound_params(9);
  EXPECT_DOUBLE_EQ(ratios::general(9), std::pow(p.beta * p.phi, 10));
  EXPECT_DOUBLE_EQ(ratios::singleton_bound(2, 1.0), 8 / (3 * std::numbers::e));
  EXPECT_THROW(ratios::singleton_bound(1, 1.0), domain_error);
  EXPECT_THROW(ratios::singleton_bound(3, 3.0), domain_error);
  EXPECT_THROW(ratios::singleton_limit(3, 1.0, 1.5), domain_error);

  // Substituting w = gamma(d+1)/(d-gamma) and letting gamma -> alpha.
  for (int d : {2, 3, 5, 8}) {
    const double alpha = 1.0;
    const double gamma = alpha + 1e-9;
    const double lim = ratios::singleton_limit(d, ratios::singleton_growth(d, gamma), gamma);
    const double expect = std::pow(1 - 1.0 / (d + 1), d) * std::pow(1 + 1 / alpha, d + 1) / (d + 1);
    EXPECT_NEAR(lim, expect, 1e-7 * expect) << d;
    EXPECT_GE(lim, ratios::singleton_bound(d, alpha)) << d;
  }

  const PredictedRatios r = predicted_ratios(3, 1.0, 1.5, 10);
  EXPECT_TRUE(std::isnan(r.general));
  EXPECT_TRUE(std::isnan(r.finite_n_general));
  EXPECT_NEAR(r.singleton_limit, 0.813802083333, 1e-11);
  const PredictedRatios g = predicted_ratios(9, 1.0, 1.5, 4);
  EXPECT_NEAR(g.finite_n_general, 0.0202243148815, 1e-12);
}
