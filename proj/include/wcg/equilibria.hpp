#pragma once

// Pure-profile equilibrium analysis: deviation reports, exhaustive
// enumeration with PoS/PoA, iterated strict alpha-dominance, the Dominate
// procedure on the general lower-bound instance, the "OPT is a
// (d+1)-approximate equilibrium" check and the alpha/gamma domain of the
// potential-method upper bound.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wcg/errors.hpp"
#include "wcg/generators.hpp"
#include "wcg/model.hpp"
#include "wcg/numerics.hpp"
#include "wcg/profile_space.hpp"

namespace wcg {

inline constexpr double kQualifySlack = 1e-9;
inline constexpr double kStrictTol = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// current / best with the zero guards: 1 when current is 0, +inf when only
// the deviation is free.
inline double deviation_ratio(double current, double best) {
  if (current == 0.0) return 1.0;
  if (best == 0.0) return kInf;
  return current / best;
}

// Ratio of two social costs with the same guards (used for PoS and PoA).
inline double cost_ratio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 1.0;
  if (den == 0.0) return kInf;
  return num / den;
}

// |a - b| <= tol * max(|a|, |b|)
inline bool near(double a, double b, double tol = kStrictTol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

struct PlayerDeviation {
  std::size_t current = 0;
  std::size_t best_alternative = 0;  // == current when there is no alternative
  double current_cost = 0.0;
  double best_cost = kInf;  // min over the other strategies
  double ratio = 0.0;
};

struct DeviationReport {
  std::vector<PlayerDeviation> players;
  double alpha_star = 1.0;  // max(1, max ratio)
  std::size_t critical_player = 0;

  bool is_approx_ne(double alpha) const { return alpha_star <= alpha * (1.0 + kQualifySlack); }
  // Some player's comparison sits within the strict tolerance of alpha.
  bool marginal_at(double alpha) const {
    for (const PlayerDeviation& p : players) {
      if (p.current_cost > 0.0 && std::isfinite(p.best_cost) && near(p.current_cost, alpha * p.best_cost))
        return true;
    }
    return false;
  }
};

namespace detail {

// Report from precomputed loads; x must be the loads of p.
inline DeviationReport deviation_at_loads(const Game& g, const Profile& p, const LoadVector& x) {
  DeviationReport r;
  r.players.resize(g.num_players());
  double worst = -1.0;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    PlayerDeviation& d = r.players[i];
    d.current = d.best_alternative = p[i];
    d.current_cost = cost_at_loads(g, x, i, p[i]);
    for (std::size_t k = 0; k < g.strategies(i).size(); ++k) {
      if (k == p[i]) continue;
      const double c = cost_after_move(g, x, i, p[i], k);
      if (c < d.best_cost) {
        d.best_cost = c;
        d.best_alternative = k;
      }
    }
    d.ratio = deviation_ratio(d.current_cost, d.best_cost);
    if (d.ratio > worst) {
      worst = d.ratio;
      r.critical_player = i;
    }
  }
  r.alpha_star = std::max(1.0, worst);
  return r;
}

}  // namespace detail

inline DeviationReport deviation_report(const Game& g, const Profile& p) {
  return detail::deviation_at_loads(g, p, loads(g, p));
}

struct EquilibriumEntry {
  Profile profile;
  double cost = 0.0;
  double alpha_star = 1.0;
  bool marginal = false;
};

struct AnalysisReport {
  double alpha = 1.0;
  std::vector<EquilibriumEntry> equilibria;  // in lexicographic order, up to the keep limit
  std::uint64_t equilibrium_count = 0;
  std::vector<EquilibriumEntry> marginal;  // every profile with a comparison at the tolerance edge
  double opt_cost = kInf;
  Profile opt_profile;
  double best_eq_cost = kInf;
  double worst_eq_cost = kInf;
  std::optional<Profile> best_eq_profile;
  std::optional<Profile> worst_eq_profile;
  double pos = kInf;
  double poa = kInf;
  std::uint64_t profile_count = 0;

  bool has_equilibrium() const noexcept { return equilibrium_count > 0; }
};

struct EnumerationOptions {
  double cap = kDefaultProfileCap;
  unsigned threads = 0;  // 0: hardware concurrency
  std::size_t keep = 100000;
};

inline AnalysisReport enumerate_analysis(const Game& g, double alpha,
                                         const EnumerationOptions& opt = {}) {
  if (!(alpha >= 1.0)) throw domain_error("enumerate_analysis: alpha must be >= 1");
  const double count = g.profile_count();
  check_cap(count, opt.cap, "enumerate_analysis");
  const auto total = static_cast<std::uint64_t>(count);
  const std::vector<std::size_t> radix = radices(g);

  struct Chunk {
    double opt_cost = kInf;
    Profile opt_profile;
    std::vector<EquilibriumEntry> eq;
    std::uint64_t eq_count = 0;
    std::vector<EquilibriumEntry> marginal;
    double best = kInf, worst = -1.0;
    Profile best_p, worst_p;
  };

  auto states = run_chunks<Chunk>(total, opt.threads, [&](std::uint64_t b, std::uint64_t e, Chunk& c) {
    LoadVector x(g.num_resources());
    for_each_profile(radix, b, e, [&](const Profile& p) {
      add_loads(g, p, x);
      const double cost = social_cost_at_loads(g, x);
      if (cost < c.opt_cost) {
        c.opt_cost = cost;
        c.opt_profile = p;
      }
      const DeviationReport r = detail::deviation_at_loads(g, p, x);
      const bool marginal = r.marginal_at(alpha);
      if (marginal) c.marginal.push_back({p, cost, r.alpha_star, true});
      if (!r.is_approx_ne(alpha)) return;
      ++c.eq_count;
      if (c.eq.size() < opt.keep) c.eq.push_back({p, cost, r.alpha_star, marginal});
      if (cost < c.best) {
        c.best = cost;
        c.best_p = p;
      }
      if (cost > c.worst) {
        c.worst = cost;
        c.worst_p = p;
      }
    });
  });

  AnalysisReport out;
  out.alpha = alpha;
  out.profile_count = total;
  double worst = -1.0;
  for (Chunk& c : states) {
    if (c.opt_cost < out.opt_cost) {
      out.opt_cost = c.opt_cost;
      out.opt_profile = c.opt_profile;
    }
    out.equilibrium_count += c.eq_count;
    for (EquilibriumEntry& e : c.eq)
      if (out.equilibria.size() < opt.keep) out.equilibria.push_back(std::move(e));
    for (EquilibriumEntry& e : c.marginal) out.marginal.push_back(std::move(e));
    if (c.eq_count == 0) continue;
    if (c.best < out.best_eq_cost) {
      out.best_eq_cost = c.best;
      out.best_eq_profile = c.best_p;
    }
    if (c.worst > worst) {
      worst = c.worst;
      out.worst_eq_profile = c.worst_p;
    }
  }
  if (out.equilibrium_count > 0) {
    out.worst_eq_cost = worst;
    out.pos = cost_ratio(out.best_eq_cost, out.opt_cost);
    out.poa = cost_ratio(out.worst_eq_cost, out.opt_cost);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Iterated strict alpha-dominance.

struct EliminationStep {
  std::size_t player = 0;
  std::size_t removed = 0;
  std::size_t dominator = 0;
  double worst_ratio = 0.0;  // max over opponent profiles of alpha C(t) / C(s)
};

// A pair (s, t) where alpha C(t) < C(s) holds everywhere but the margin was
// not cleared somewhere, so it was not eliminated.
struct MarginalPair {
  std::size_t player = 0;
  std::size_t strategy = 0;
  std::size_t candidate = 0;
  double worst_ratio = 0.0;
};

struct DominanceResult {
  std::optional<Profile> survivor;
  std::vector<EliminationStep> trace;
  std::vector<std::vector<std::size_t>> surviving;
  std::vector<MarginalPair> marginal;
};

namespace detail {

enum class Dominance { No, Yes, Marginal };

// Scans every surviving opponent combination for player i.
inline Dominance dominates(const Game& g, const std::vector<std::vector<std::size_t>>& alive,
                           std::size_t i, std::size_t s, std::size_t t, double alpha, double margin,
                           double& worst_ratio) {
  const std::size_t n = g.num_players();
  std::vector<std::size_t> radix(n), pos(n, 0);
  for (std::size_t j = 0; j < n; ++j) radix[j] = j == i ? 1 : alive[j].size();
  LoadVector y(g.num_resources());
  const double w = g.weight(i);
  bool strict_everywhere = true;
  worst_ratio = 0.0;
  while (true) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t e : g.strategy(j, alive[j][pos[j]])) y[e] += g.weight(j);
    }
    double cs = 0.0, ct = 0.0;
    for (std::size_t e : g.strategy(i, s)) cs += g.resource(e)(y[e] + w);
    for (std::size_t e : g.strategy(i, t)) ct += g.resource(e)(y[e] + w);
    const double lhs = alpha * ct;
    worst_ratio = std::max(worst_ratio, cs > 0.0 ? lhs / cs : kInf);
    if (!(lhs < cs)) return Dominance::No;
    if (!(lhs < cs - margin * std::abs(cs))) strict_everywhere = false;
    std::size_t j = n;
    while (j-- > 0) {
      if (++pos[j] < radix[j]) break;
      pos[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return strict_everywhere ? Dominance::Yes : Dominance::Marginal;
}

}  // namespace detail

inline DominanceResult iterated_dominance(const Game& g, double alpha, double margin = kStrictTol,
                                          double cap = kDefaultProfileCap) {
  if (!(alpha >= 1.0)) throw domain_error("iterated_dominance: alpha must be >= 1");
  if (!(margin >= 0.0)) throw domain_error("iterated_dominance: margin must be >= 0");
  check_cap(g.profile_count(), cap, "iterated_dominance");
  DominanceResult r;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    std::vector<std::size_t> all(g.strategies(i).size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    r.surviving.push_back(std::move(all));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    r.marginal.clear();
    for (std::size_t i = 0; i < g.num_players() && !changed; ++i) {
      std::vector<std::size_t>& mine = r.surviving[i];
      for (std::size_t a = 0; a < mine.size() && !changed; ++a) {
        for (std::size_t b = 0; b < mine.size(); ++b) {
          if (a == b) continue;
          double worst = 0.0;
          const auto verdict = detail::dominates(g, r.surviving, i, mine[a], mine[b], alpha, margin, worst);
          if (verdict == detail::Dominance::Marginal) r.marginal.push_back({i, mine[a], mine[b], worst});
          if (verdict != detail::Dominance::Yes) continue;
          r.trace.push_back({i, mine[a], mine[b], worst});
          mine.erase(mine.begin() + static_cast<std::ptrdiff_t>(a));
          changed = true;
          break;
        }
      }
    }
  }
  if (std::all_of(r.surviving.begin(), r.surviving.end(), [](const auto& s) { return s.size() == 1; })) {
    Profile p;
    for (const auto& s : r.surviving) p.choice.push_back(s.front());
    r.survivor = std::move(p);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Procedure Dominate on the general lower-bound instance. Player i is
// 0-based and must correspond to paper players mu+1..n, i.e. i in [mu, n-1].

inline void check_dominate_args(const GeneralLBInstance& inst, const Profile& partial, std::size_t i) {
  inst.game.validate(partial);
  const auto mu = static_cast<std::size_t>(inst.mu());
  const auto n = static_cast<std::size_t>(inst.n);
  if (i < mu || i >= n)
    throw domain_error("dominate_procedure: player " + std::to_string(i) + " outside [" +
                       std::to_string(mu) + ", " + std::to_string(n - 1) + "]");
  for (std::size_t j = 0; j < i; ++j)
    if (partial[j] != kNashStrategy)
      throw validation_error("dominate_procedure: players before i must play the equilibrium strategy", j);
}

inline Profile dominate_procedure(const GeneralLBInstance& inst, const Profile& partial, std::size_t i) {
  check_dominate_args(inst, partial, i);
  const auto mu = static_cast<std::size_t>(inst.mu());
  Profile s = partial;
  s.choice[i + mu] = kOptStrategy;
  std::size_t k = i + mu - 1;
  auto some_opt_below = [&](std::size_t k_) {
    for (std::size_t j = i + 1; j < k_; ++j)
      if (s[j] == kOptStrategy) return true;
    return false;
  };
  while (some_opt_below(k)) {
    s.choice[k] = kNashStrategy;
    --k;
  }
  return s;
}

struct DominateCheck {
  bool shape_ok = false;
  std::optional<std::size_t> odd_index;  // the one k in (i, i+mu) that may differ from s~
  double cost_before = 0.0;  // C_i(s~_i, partial)
  double cost_after = 0.0;   // C_i(s~_i, output)
  bool cost_ok = false;
  bool marginal = false;
};

inline DominateCheck check_dominate_output(const GeneralLBInstance& inst, const Profile& partial,
                                           std::size_t i, const Profile& out) {
  check_dominate_args(inst, partial, i);
  inst.game.validate(out);
  const auto mu = static_cast<std::size_t>(inst.mu());
  DominateCheck c;
  bool ok = true;
  for (std::size_t j = 0; j < partial.size(); ++j) {
    if ((j <= i || j > i + mu) && out[j] != partial[j]) ok = false;
  }
  if (out[i + mu] != kOptStrategy) ok = false;
  for (std::size_t j = i + 1; j < i + mu; ++j) {
    if (out[j] == kNashStrategy) continue;
    if (c.odd_index) ok = false;
    c.odd_index = j;
  }
  c.shape_ok = ok;

  Profile before = partial, after = out;
  before.choice[i] = after.choice[i] = kNashStrategy;
  c.cost_before = player_cost(inst.game, before, i);
  c.cost_after = player_cost(inst.game, after, i);
  c.marginal = near(c.cost_before, c.cost_after);
  c.cost_ok = c.cost_before <= c.cost_after || c.marginal;
  return c;
}

// ---------------------------------------------------------------------------

struct OptimumApprox {
  Profile opt_profile;
  double opt_cost = 0.0;
  double alpha_star = 1.0;
  double bound = 1.0;  // d + 1
  bool holds = false;
};

// Social optimum by enumeration (lexicographically first on ties) and how far
// from an equilibrium it is.
inline OptimumApprox verify_optimum_approx(const Game& g, double cap = kDefaultProfileCap) {
  const double count = g.profile_count();
  check_cap(count, cap, "verify_optimum_approx");
  const std::vector<std::size_t> radix = radices(g);
  struct Best {
    double cost = kInf;
    Profile p;
  };
  auto states = run_chunks<Best>(static_cast<std::uint64_t>(count), 0,
                                 [&](std::uint64_t b, std::uint64_t e, Best& best) {
                                   LoadVector x(g.num_resources());
                                   for_each_profile(radix, b, e, [&](const Profile& p) {
                                     add_loads(g, p, x);
                                     const double c = social_cost_at_loads(g, x);
                                     if (c < best.cost) {
                                       best.cost = c;
                                       best.p = p;
                                     }
                                   });
                                 });
  OptimumApprox r;
  double best = kInf;
  for (const Best& s : states) {
    if (s.cost < best) {
      best = s.cost;
      r.opt_profile = s.p;
    }
  }
  r.opt_cost = best;
  r.alpha_star = deviation_report(g, r.opt_profile).alpha_star;
  r.bound = g.degree() + 1.0;
  r.holds = r.alpha_star <= r.bound * (1.0 + kQualifySlack);
  return r;
}

// ---------------------------------------------------------------------------
// Range of alpha for which the potential method yields an alpha-approximate
// equilibrium with PoS at most 1 + ((d+1)/alpha - 1) W.

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

inline Interval thm44_alpha_domain(int d, double W) {
  if (d < 1) throw domain_error("alpha domain: d must be >= 1");
  if (!(W >= 1.0)) throw domain_error("alpha domain: W must be >= 1");
  if (std::isinf(W)) return {d + 1.0, d + 1.0};
  return {2.0 * (d + 1) * W / (2.0 * W + d + 1), d + 1.0};
}

// gamma = alpha (d+1) / (2 W (d+1-alpha)), so that A_d(gamma W) = alpha.
inline double thm44_gamma_for_alpha(int d, double W, double alpha) {
  const Interval dom = thm44_alpha_domain(d, W);
  if (!(alpha >= dom.lo && alpha < dom.hi))
    throw domain_error("gamma for alpha: alpha must lie in [" + std::to_string(dom.lo) + ", " +
                       std::to_string(dom.hi) + ")");
  return alpha * (d + 1) / (2.0 * W * (d + 1 - alpha));
}

inline double thm44_alpha_for_gamma(int d, double W, double gamma) {
  if (!(gamma >= 1.0 / W)) throw domain_error("alpha for gamma: gamma W must be >= 1");
  return a_fn(d, gamma * W);
}

inline double thm44_pos_bound(int d, double W, double alpha) {
  const Interval dom = thm44_alpha_domain(d, W);
  if (!(alpha >= dom.lo * (1.0 - 1e-12) && alpha <= dom.hi))
    throw domain_error("pos bound: alpha outside the admissible domain");
  return 1.0 + ((d + 1) / alpha - 1.0) * W;
}

}  // namespace wcg
