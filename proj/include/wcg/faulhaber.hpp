#pragma once

// Exact Bernoulli numbers, Bernoulli polynomials and the full Faulhaber
// polynomial S^_m(x) = (B_{m+1}(x+1) - B_{m+1}) / (m+1), plus a scan of its
// behaviour on [1, 2] where large m misbehaves.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wcg/errors.hpp"

namespace wcg {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

inline bigint binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  bigint r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// B_0..B_n with the B_1 = -1/2 convention, from sum_{k<=m} C(m+1,k) B_k = 0.
struct BernoulliTable {
  std::vector<rational> b;

  std::size_t size() const noexcept { return b.size(); }
  const rational& operator[](std::size_t j) const { return b.at(j); }
};

inline BernoulliTable bernoulli_numbers(int n) {
  if (n < 0) throw domain_error("bernoulli_numbers: n must be >= 0");
  BernoulliTable t;
  t.b.reserve(static_cast<std::size_t>(n) + 1);
  t.b.emplace_back(1);
  for (int m = 1; m <= n; ++m) {
    rational acc = 0;
    for (int k = 0; k < m; ++k) acc += rational(binomial(m + 1, k)) * t.b[k];
    t.b.push_back(-acc / (m + 1));
  }
  return t;
}

namespace detail {

inline constexpr int kSharedBernoulli = 64;

// Built once on first use and read-only afterwards.
inline const BernoulliTable& shared_bernoulli() {
  static const BernoulliTable table = bernoulli_numbers(kSharedBernoulli);
  return table;
}

}  // namespace detail

// Coefficients (ascending powers of x) of S^_m(x), exact. S^_0(x) = x.
inline std::vector<rational> faulhaber_coefficients(int m) {
  if (m < 0) throw domain_error("faulhaber: m must be >= 0");
  if (m == 0) return {rational(0), rational(1)};
  const unsigned p = static_cast<unsigned>(m) + 1;
  BernoulliTable local;
  if (p > detail::kSharedBernoulli) local = bernoulli_numbers(static_cast<int>(p));
  const BernoulliTable& bern = p > detail::kSharedBernoulli ? local : detail::shared_bernoulli();
  std::vector<rational> c(p + 1, rational(0));
  // B_p(x+1) = sum_k C(p,k) B_k (x+1)^{p-k}
  for (unsigned k = 0; k <= p; ++k) {
    const rational bk = rational(binomial(p, k)) * bern[k];
    if (bk == 0) continue;
    const unsigned e = p - k;
    for (unsigned t = 0; t <= e; ++t) c[t] += bk * rational(binomial(e, t));
  }
  c[0] -= bern[p];
  for (rational& ci : c) ci /= p;
  return c;
}

inline rational faulhaber_exact(int m, const rational& x) {
  const std::vector<rational> c = faulhaber_coefficients(m);
  rational acc = 0;
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
  return acc;
}

// Double evaluation of S^_m by Horner on the exact coefficients.
class FaulhaberPolynomial {
 public:
  explicit FaulhaberPolynomial(int m) : m_(m) {
    for (const rational& c : faulhaber_coefficients(m)) coeffs_.push_back(static_cast<double>(c));
  }

  int order() const noexcept { return m_; }

  double operator()(double x) const noexcept {
    double acc = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * x + coeffs_[j];
    return acc;
  }

 private:
  int m_;
  std::vector<double> coeffs_;
};

inline double faulhaber_exact(int m, double x) {
  if (x < 0.0) throw domain_error("faulhaber_exact: x must be >= 0");
  return FaulhaberPolynomial(m)(x);
}

struct FaulhaberPathologies {
  bool monotone_on_unit_interval = true;  // A^_m nondecreasing on [1,2]
  double min_value_on_unit_interval = 0.0;  // min of S^_m on [1,2]
  double argmin = 1.0;
  double first_decrease_at = std::nan("");  // grid point where A^_m first drops
};

namespace detail {

template <class F>
double golden_section_min(F&& f, double a, double b, int iters = 80) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iters; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// Scans [1, 2] with step 1e-4. A^_m(x) = x^{m+1} / S^_m(x) is deemed non-monotone
// as soon as it drops between grid points or S^_m reaches <= 0 (A^_m then
// jumps through a pole). The minimum of S^_m is refined by golden section
// around the best grid point.
inline FaulhaberPathologies faulhaber_pathologies(int m) {
  if (m < 1) throw domain_error("faulhaber_pathologies: m must be >= 1");
  const FaulhaberPolynomial s(m);
  constexpr int kSteps = 10000;
  constexpr double kStep = 1.0 / kSteps;
  FaulhaberPathologies out;

  double best = s(1.0);
  int best_k = 0;
  double prev_a = 1.0 / s(1.0);
  bool prev_pos = s(1.0) > 0.0;
  for (int k = 1; k <= kSteps; ++k) {
    const double x = 1.0 + k * kStep;
    const double v = s(x);
    if (v < best) {
      best = v;
      best_k = k;
    }
    const bool pos = v > 0.0;
    const double a = std::pow(x, m + 1) / v;
    if (out.monotone_on_unit_interval) {
      const bool drop = !pos || !prev_pos ||
                        a < prev_a - 1e-12 * std::max(std::abs(a), std::abs(prev_a));
      if (drop) {
        out.monotone_on_unit_interval = false;
        out.first_decrease_at = x - kStep;
      }
    }
    prev_a = a;
    prev_pos = pos;
  }
  const double lo = 1.0 + std::max(0, best_k - 1) * kStep;
  const double hi = 1.0 + std::min(kSteps, best_k + 1) * kStep;
  const double x_ref = detail::golden_section_min(s, lo, hi);
  const double v_ref = s(x_ref);
  if (v_ref < best) {
    out.min_value_on_unit_interval = v_ref;
    out.argmin = x_ref;
  } else {
    out.min_value_on_unit_interval = best;
    out.argmin = 1.0 + best_k * kStep;
  }
  return out;
}

}  // namespace wcg
