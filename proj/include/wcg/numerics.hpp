#pragma once

// Scalar special functions used by the lower-bound constructions and the
// truncated-Faulhaber approximate potential.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "wcg/errors.hpp"

namespace wcg {

// Positive root of x^{d+1} = (x+1)^d. Works on g(x) = (d+1) ln x - d ln(x+1),
// which is strictly increasing with g(1) < 0 < g(d+1): bisect to 1e-13, then
// polish with Newton.
inline double solve_phi(int d) {
  if (d < 1) throw domain_error("solve_phi: d must be >= 1");
  const double dd = d;
  auto g = [dd](double x) { return (dd + 1.0) * std::log(x) - dd * std::log1p(x); };
  auto dg = [dd](double x) { return (dd + 1.0) / x - dd / (x + 1.0); };
  double lo = 1.0;
  double hi = dd + 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double step = g(x) / dg(x);
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return x;
}

// The (Phi_d, c_d, beta_d, mu, w, alpha) bundle behind the general lower-bound
// instance. c_d is kept as the exact fraction mu/d.
struct LowerBoundParams {
  int d = 0;
  double phi = 0.0;
  int mu = 0;        // d * c_d, an integer
  double c = 0.0;    // mu / d
  double beta = 0.0;
  double w = 0.0;    // 1 + 1/phi
  double alpha = 0.0;  // beta * phi

  // ln(2 phi + 1) - ln(phi + 1) over ln(phi): the unfloored value of c_d.
  double c_ratio = 0.0;
};

inline LowerBoundParams lower_bound_params(int d) {
  if (d < 9) throw domain_error("lower_bound_params: d must be >= 9 (got " + std::to_string(d) + ")");
  LowerBoundParams p;
  p.d = d;
  p.phi = solve_phi(d);
  const double lphi = std::log(p.phi);
  p.c_ratio = (std::log(2.0 * p.phi + 1.0) - std::log(p.phi + 1.0)) / lphi;

  const double scaled = d * p.c_ratio;
  int mu = static_cast<int>(std::floor(scaled));
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) <= 1e-9) {
    // Too close to call in doubles: take the larger candidate k that still
    // satisfies phi^{-k/d} >= (phi+1)/(2 phi+1).
    const double rhs = std::log(p.phi + 1.0) - std::log(2.0 * p.phi + 1.0);
    const int hi = static_cast<int>(nearest);
    mu = (-(hi / static_cast<double>(d)) * lphi >= rhs) ? hi : hi - 1;
  }
  p.mu = mu;
  p.c = static_cast<double>(mu) / d;
  p.beta = -std::expm1(-p.c * lphi);
  p.w = 1.0 + 1.0 / p.phi;
  p.alpha = p.beta * p.phi;
  return p;
}

// Optional envelope columns around beta_d: the floor relaxed downwards and
// upwards respectively.
inline double beta_lower_envelope(double phi, int d) {
  return 1.0 - (phi + 1.0) / (2.0 * phi + 1.0) * std::pow(phi, 1.0 / d);
}
inline double beta_upper_envelope(double phi) { return phi / (2.0 * phi + 1.0); }

// Truncated Faulhaber sum: x^{m+1}/(m+1) + x^m/2, and S_0(x) = x.
inline double s_trunc(int m, double x) {
  if (m < 0) throw domain_error("s_trunc: m must be >= 0");
  if (x < 0.0) throw domain_error("s_trunc: x must be >= 0");
  if (m == 0) return x;
  const double xm = std::pow(x, m);
  return xm * x / (m + 1) + 0.5 * xm;
}

// A_m(x) = x^{m+1} / S_m(x) = 2(m+1)x / (2x + m + 1); A_0 = 1.
inline double a_fn(int m, double x) {
  if (m < 0) throw domain_error("a_fn: m must be >= 0");
  if (!(x >= 1.0)) throw domain_error("a_fn: x must be >= 1");
  if (m == 0) return 1.0;
  return 2.0 * (m + 1) * x / (2.0 * x + m + 1);
}

// Inverse of A_m on [2(m+1)/(m+3), m+1).
inline double a_fn_inverse(int m, double y) {
  if (m < 1) throw domain_error("a_fn_inverse: m must be >= 1");
  const double lo = 2.0 * (m + 1) / (m + 3);
  const double hi = m + 1.0;
  if (!(y >= lo && y < hi))
    throw domain_error("a_fn_inverse: y must lie in [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + ")");
  return (m + 1) * y / (2.0 * (m + 1 - y));
}

// Principal branch W_0 for x > 0 by Halley iteration.
inline double lambert_w(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw domain_error("lambert_w: x must be finite and > 0");
  double w = x;
  if (x > std::numbers::e) {
    const double l = std::log(x);
    w = l - std::log(l);
  }
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

inline double gamma_d(double d) {
  if (!(d > 1.0)) throw domain_error("gamma_d: d must be > 1");
  return std::log(d) / lambert_w(d);
}

// Closed-form exponential potential (e^{x+1} - 1) / (e - 1).
inline double exp_potential(double x) {
  if (x < 0.0) throw domain_error("exp_potential: x must be >= 0");
  return std::expm1(x + 1.0) / std::expm1(1.0);
}

// (S(x+w) - S(x)) / (w e^{x+w}); independent of x.
inline double exp_potential_ratio(double w) {
  if (!(w > 0.0)) throw domain_error("exp_potential_ratio: w must be > 0");
  return std::numbers::e / std::expm1(1.0) * (-std::expm1(-w)) / w;
}

namespace ratios {

// (beta_d Phi_d)^{d+1}: the general lower bound in the limit n -> inf.
inline double general(int d) {
  const LowerBoundParams p = lower_bound_params(d);
  return std::pow(p.alpha, d + 1);
}

// alpha^{d+1} n / (n + Phi (Phi+1) beta (alpha+1)^d): C(s~)/C(s*) at finite n.
inline double finite_n_general(int d, int n) {
  if (n < 1) throw domain_error("finite_n_general: n must be >= 1");
  const LowerBoundParams p = lower_bound_params(d);
  const double num = std::pow(p.alpha, d + 1) * n;
  return num / (n + p.phi * (p.phi + 1.0) * p.beta * std::pow(p.alpha + 1.0, d));
}

// (1/(e(d+1))) (1 + 1/alpha)^{d+1}, alpha in [1, d).
inline double singleton_bound(int d, double alpha) {
  if (d < 1) throw domain_error("singleton_bound: d must be >= 1");
  if (!(alpha >= 1.0 && alpha < d))
    throw domain_error("singleton_bound: alpha must lie in [1, d)");
  return std::pow(1.0 + 1.0 / alpha, d + 1) / (std::numbers::e * (d + 1));
}

// (w/gamma - 1)(1+w)^d / w^{d+1}, requires w > gamma > 0.
inline double singleton_limit(int d, double w, double gamma) {
  if (d < 1) throw domain_error("singleton_limit: d must be >= 1");
  if (!(gamma > 0.0)) throw domain_error("singleton_limit: gamma must be > 0");
  if (!(w > gamma)) throw domain_error("singleton_limit: w must exceed gamma");
  return (w / gamma - 1.0) * std::pow(1.0 + w, d) / std::pow(w, d + 1);
}

// The weight ratio of the singleton construction: gamma (d+1)/(d-gamma).
inline double singleton_growth(int d, double gamma) {
  if (!(gamma > 0.0 && gamma < d)) throw domain_error("singleton_growth: gamma must lie in (0, d)");
  return gamma * (d + 1) / (d - gamma);
}

}  // namespace ratios

struct PredictedRatios {
  double general = 0.0;
  double singleton_bound = 0.0;
  double singleton_limit = 0.0;
  double finite_n_general = 0.0;
};

// Bundle of the closed forms above for one parameter set. general and
// finite_n_general need d >= 9; singleton values need 1 <= alpha < gamma < d.
// Entries whose domain is violated are left NaN.
inline PredictedRatios predicted_ratios(int d, double alpha, double gamma, int n) {
  PredictedRatios r;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.general = d >= 9 ? ratios::general(d) : nan;
  r.finite_n_general = (d >= 9 && n >= 1) ? ratios::finite_n_general(d, n) : nan;
  r.singleton_bound = (alpha >= 1.0 && alpha < d) ? ratios::singleton_bound(d, alpha) : nan;
  r.singleton_limit = (gamma > 0.0 && gamma < d)
                          ? ratios::singleton_limit(d, ratios::singleton_growth(d, gamma), gamma)
                          : nan;
  return r;
}

}  // namespace wcg
