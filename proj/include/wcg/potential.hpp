#pragma once

// Approximate-potential method. For a monomial resource a x^m the per-resource
// potential is a S_m(gamma x) / S_m(gamma), i.e. the truncated Faulhaber sum
// rescaled so that the approximation constants become A_m(gamma)/A_m(gamma w)
// and A_m(gamma)/(m+1). Any minimizer is then an A_d(gamma W)-approximate
// equilibrium, and the global minimizer costs at most (d+1)/A_d(gamma) OPT.
// Exponential games use scale * (e^{x+1}-1)/(e-1), an exact weighted potential.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wcg/equilibria.hpp"
#include "wcg/errors.hpp"
#include "wcg/model.hpp"
#include "wcg/numerics.hpp"
#include "wcg/profile_space.hpp"

namespace wcg {

struct PotentialConfig {
  double gamma = 1.0;
  double W = 1.0;  // max weight after canonical scaling
  int d = 0;
  double alpha_guarantee = 1.0;  // A_d(gamma W)
  double pos_guarantee = 1.0;    // (d+1) / A_d(gamma)

  static PotentialConfig for_game(const Game& g, double gamma) {
    if (!(gamma >= 1.0) || !std::isfinite(gamma))
      throw domain_error("potential: gamma must be finite and >= 1");
    PotentialConfig c;
    c.gamma = gamma;
    c.W = g.max_weight() / g.min_weight();
    c.d = g.degree();
    if (g.has_exponential()) {
      c.alpha_guarantee = c.pos_guarantee = std::numeric_limits<double>::quiet_NaN();
      return c;
    }
    c.alpha_guarantee = a_fn(c.d, gamma * c.W);
    c.pos_guarantee = (c.d + 1) / a_fn(c.d, gamma);
    return c;
  }
};

enum class PotentialKind { Polynomial, Exponential };

// Per-resource potential terms prepared once per game. Polynomial games are
// canonically scaled first; each coefficient a_j contributes
// a_j S_j(gamma x) / S_j(gamma) on the scaled load x.
class PotentialEvaluator {
 public:
  PotentialEvaluator(const Game& g, const PotentialConfig& cfg) : gamma_(cfg.gamma) {
    if (g.has_exponential() && g.has_polynomial())
      throw unsupported_error("potential: game mixes exponential and polynomial latencies");
    if (g.has_exponential()) {
      kind_ = PotentialKind::Exponential;
      for (const LatencySpec& r : g.resources()) scale_.push_back(r.is_exponential() ? r.scale() : 0.0);
      return;
    }
    const Game canon = canonical_scale(g);
    unit_ = canon.weight_unit();
    terms_.resize(canon.num_resources());
    for (std::size_t e = 0; e < canon.num_resources(); ++e) {
      const auto& c = canon.resource(e).coeffs();
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0.0) continue;
        const int m = static_cast<int>(j);
        terms_[e].push_back({m, c[j] / s_trunc(m, gamma_)});
      }
    }
  }

  PotentialKind kind() const noexcept { return kind_; }

  // Potential of one resource at load x given in the game's own weight units.
  double resource(std::size_t e, double x) const {
    x = std::max(x, 0.0);  // x - w may round just below zero
    if (kind_ == PotentialKind::Exponential) return scale_[e] == 0.0 ? 0.0 : scale_[e] * exp_potential(x);
    const double y = gamma_ * (x / unit_);
    double v = 0.0;
    for (const Term& t : terms_[e]) v += t.coeff * s_trunc(t.m, y);
    return v;
  }

  double total(const LoadVector& x) const {
    double v = 0.0;
    for (std::size_t e = 0; e < x.size(); ++e) v += resource(e, x[e]);
    return v;
  }

 private:
  struct Term {
    int m;
    double coeff;  // a_m / S_m(gamma)
  };

  PotentialKind kind_ = PotentialKind::Polynomial;
  double gamma_ = 1.0;
  double unit_ = 1.0;
  std::vector<std::vector<Term>> terms_;
  std::vector<double> scale_;
};

inline double potential_value(const Game& g, const PotentialConfig& cfg, const Profile& p) {
  return PotentialEvaluator(g, cfg).total(loads(g, p));
}

enum class MinimizeMode { GlobalEnumerate, LocalDescent };

struct PotentialResult {
  Profile profile;
  double potential = 0.0;
  double cost = 0.0;
  DeviationReport certificate;
  std::uint64_t moves = 0;      // accepted moves (local descent)
  std::uint64_t evaluated = 0;  // profiles scanned (global)
  double min_decrease = std::numeric_limits<double>::infinity();  // smallest accepted drop
};

struct MinimizeOptions {
  double cap = kDefaultProfileCap;
  unsigned threads = 0;
  std::optional<Profile> start;  // local descent only; default all zeros
  std::uint64_t max_moves = 10000000;
};

inline constexpr double kDescentFloor = 1e-12;

namespace detail {

inline PotentialResult minimize_global(const Game& g, const PotentialEvaluator& pot,
                                       const MinimizeOptions& o) {
  const double count = g.profile_count();
  check_cap(count, o.cap, "potential_minimize");
  const std::vector<std::size_t> radix = radices(g);
  struct Best {
    double v = std::numeric_limits<double>::infinity();
    Profile p;
  };
  const auto total = static_cast<std::uint64_t>(count);
  auto states = run_chunks<Best>(total, o.threads, [&](std::uint64_t b, std::uint64_t e, Best& best) {
    LoadVector x(g.num_resources());
    for_each_profile(radix, b, e, [&](const Profile& p) {
      add_loads(g, p, x);
      const double v = pot.total(x);
      if (v < best.v) {
        best.v = v;
        best.p = p;
      }
    });
  });
  PotentialResult r;
  r.potential = std::numeric_limits<double>::infinity();
  for (const Best& s : states) {
    if (s.v < r.potential) {
      r.potential = s.v;
      r.profile = s.p;
    }
  }
  r.evaluated = total;
  return r;
}

inline PotentialResult minimize_local(const Game& g, const PotentialEvaluator& pot,
                                      const MinimizeOptions& o) {
  Profile p = o.start ? *o.start : uniform_profile(g.num_players(), 0);
  g.validate(p);
  LoadVector x = loads(g, p);
  double phi = pot.total(x);
  PotentialResult r;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      const double w = g.weight(i);
      for (std::size_t k = 0; k < g.strategies(i).size(); ++k) {
        if (k == p[i]) continue;
        const Strategy& now = g.strategy(i, p[i]);
        const Strategy& next = g.strategy(i, k);
        double delta = 0.0;
        for (std::size_t e : now)
          if (!uses(next, e)) delta += pot.resource(e, x[e] - w) - pot.resource(e, x[e]);
        for (std::size_t e : next)
          if (!uses(now, e)) delta += pot.resource(e, x[e] + w) - pot.resource(e, x[e]);
        if (!(delta < -std::max(kDescentFloor, kDescentFloor * std::abs(phi)))) continue;
        p.choice[i] = k;
        // Recompute from scratch so rounding in x cannot drift.
        add_loads(g, p, x);
        phi = pot.total(x);
        r.min_decrease = std::min(r.min_decrease, -delta);
        if (++r.moves >= o.max_moves)
          throw std::runtime_error("potential_minimize: move guard reached; the potential did not settle");
        improved = true;
        break;
      }
    }
  }
  r.profile = std::move(p);
  r.potential = phi;
  return r;
}

}  // namespace detail

inline PotentialResult potential_minimize(const Game& g, const PotentialConfig& cfg, MinimizeMode mode,
                                          const MinimizeOptions& o = {}) {
  const PotentialEvaluator pot(g, cfg);
  PotentialResult r = mode == MinimizeMode::GlobalEnumerate ? detail::minimize_global(g, pot, o)
                                                             : detail::minimize_local(g, pot, o);
  r.cost = social_cost(g, r.profile);
  r.certificate = deviation_report(g, r.profile);
  return r;
}

}  // namespace wcg
