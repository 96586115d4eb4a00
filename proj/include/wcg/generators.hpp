#pragma once

// Lower-bound instance generators and a seeded random-game fuzzer.
//
// Paper indexing is 1-based (players 1..N, facilities 1..M); everything here
// is 0-based, so paper player i is index i-1 and paper facility j is index
// j-1. Every player of a generated instance has exactly two strategies:
// index 0 is the optimum strategy s*_i and index 1 the equilibrium s~_i.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wcg/errors.hpp"
#include "wcg/model.hpp"
#include "wcg/numerics.hpp"

namespace wcg {

inline constexpr std::size_t kOptStrategy = 0;
inline constexpr std::size_t kNashStrategy = 1;

inline constexpr int kMaxGeneralDegree = 30;
inline constexpr int kMaxGeneralPlayers = 64;

inline Profile uniform_profile(std::size_t players, std::size_t k) {
  return Profile{std::vector<std::size_t>(players, k)};
}

struct GeneralLBInstance {
  Game game;
  LowerBoundParams params;
  int n = 0;
  Profile opt_profile;
  Profile nash_profile;

  int mu() const noexcept { return params.mu; }
  std::size_t players() const noexcept { return game.num_players(); }

  // Phi (1-beta) (alpha+1)^d (Phi+1) beta/(1-beta) + n
  double closed_form_opt_cost() const {
    const LowerBoundParams& p = params;
    const double k = p.phi * (1.0 - p.beta) * std::pow(p.alpha + 1.0, p.d);
    return k * (p.phi + 1.0) * p.beta / (1.0 - p.beta) + n;
  }
  // alpha^{d+1} n: the cost of s~ on facilities mu+1..n+mu, which is all of it.
  double closed_form_nash_cost() const { return std::pow(params.alpha, params.d + 1) * n; }
};

// Paper strategy s~_i (1-based player i) as 1-based facility numbers.
inline std::vector<int> general_lb_nash_facilities(int i, int mu, int n) {
  int lo, hi;
  if (i <= mu) {
    lo = mu + 1;
    hi = std::min(mu + i, n + mu + 1);
  } else if (i <= n) {
    lo = i + 1;
    hi = i + mu;
  } else {
    lo = i + 1;
    hi = n + mu + 1;
  }
  std::vector<int> out;
  for (int j = lo; j <= hi; ++j) out.push_back(j);
  return out;
}

inline GeneralLBInstance gen_general_lb(int d, int n) {
  if (d < 9) throw domain_error("gen_general_lb: d must be >= 9 (got " + std::to_string(d) + ")");
  if (d > kMaxGeneralDegree)
    throw domain_error("gen_general_lb: d must be <= " + std::to_string(kMaxGeneralDegree) +
                       " to stay inside double range");
  if (n < 1) throw domain_error("gen_general_lb: n must be >= 1");
  const LowerBoundParams p = lower_bound_params(d);
  const int mu = p.mu;
  if (n + mu > kMaxGeneralPlayers)
    throw domain_error("gen_general_lb: n + mu = " + std::to_string(n + mu) + " exceeds " +
                       std::to_string(kMaxGeneralPlayers));

  const int players = n + mu;
  const int facilities = n + mu + 1;
  std::vector<double> weights;
  for (int i = 1; i <= players; ++i) weights.push_back(std::pow(p.w, i));

  std::vector<LatencySpec> res;
  const double k = p.phi * (1.0 - p.beta) * std::pow(p.alpha + 1.0, d);
  for (int j = 1; j <= facilities; ++j) {
    if (j <= mu)
      res.push_back(LatencySpec::constant(k));
    else if (j <= mu + n)
      res.push_back(LatencySpec::monomial(std::pow(p.w, -static_cast<double>(j) * (d + 1)), d));
    else
      res.push_back(LatencySpec::zero());
  }

  std::vector<StrategySet> strategies;
  for (int i = 1; i <= players; ++i) {
    Strategy nash;
    for (int j : general_lb_nash_facilities(i, mu, n)) nash.push_back(static_cast<std::size_t>(j - 1));
    strategies.push_back({Strategy{static_cast<std::size_t>(i - 1)}, std::move(nash)});
  }
  const auto np = static_cast<std::size_t>(players);
  return GeneralLBInstance{Game(std::move(weights), std::move(res), std::move(strategies)), p, n,
                           uniform_profile(np, kOptStrategy), uniform_profile(np, kNashStrategy)};
}

struct SingletonLBInstance {
  Game game;
  int d = 0;
  double alpha = 0.0;
  double gamma = 0.0;
  int n = 0;
  double w = 0.0;
  Profile opt_profile;
  Profile nash_profile;
};

inline SingletonLBInstance gen_singleton_lb(int d, double alpha, double gamma, int n) {
  if (d < 1) throw domain_error("gen_singleton_lb: d must be >= 1");
  if (!(alpha >= 1.0)) throw domain_error("gen_singleton_lb: alpha must be >= 1");
  if (!(alpha < d)) throw domain_error("gen_singleton_lb: alpha must be < d");
  if (!(gamma > alpha)) throw domain_error("gen_singleton_lb: gamma must be > alpha");
  if (!(gamma < d)) throw domain_error("gen_singleton_lb: gamma must be < d");
  if (n < 2) throw domain_error("gen_singleton_lb: n must be >= 2");

  const double w = ratios::singleton_growth(d, gamma);
  const double gwd = gamma * std::pow(w, d);
  const double end_const = std::pow(w, d) * std::pow(w + 1.0, d);

  std::vector<double> weights;
  for (int i = 1; i <= n; ++i) weights.push_back(std::pow(w, i));
  std::vector<LatencySpec> res;
  res.push_back(LatencySpec::constant(gamma * end_const));
  for (int j = 2; j <= n; ++j) res.push_back(LatencySpec::monomial(std::pow(gwd, 2 - j), d));
  res.push_back(LatencySpec::constant(std::pow(gamma, 1 - n) * end_const));

  std::vector<StrategySet> strategies;
  for (int i = 0; i < n; ++i) {
    const auto e = static_cast<std::size_t>(i);
    strategies.push_back({Strategy{e}, Strategy{e + 1}});
  }
  const auto np = static_cast<std::size_t>(n);
  return SingletonLBInstance{Game(std::move(weights), std::move(res), std::move(strategies)),
                             d,
                             alpha,
                             gamma,
                             n,
                             w,
                             uniform_profile(np, kOptStrategy),
                             uniform_profile(np, kNashStrategy)};
}

struct RandomGameOptions {
  std::size_t players = 3;
  std::size_t resources = 4;
  int degree = 2;
  double max_weight = 1.0;  // weights uniform in [1, max_weight]
  std::size_t strategies_per_player = 3;
};

// Deterministic under seed. Each strategy is a distinct nonempty subset; if
// the resource count admits fewer subsets than requested, all are used.
inline Game random_game(std::uint64_t seed, const RandomGameOptions& o) {
  if (o.players < 1 || o.players > 4) throw domain_error("random_game: players must be in [1, 4]");
  if (o.resources < 1 || o.resources > 5)
    throw domain_error("random_game: resources must be in [1, 5]");
  if (o.degree < 0 || o.degree > 3) throw domain_error("random_game: degree must be in [0, 3]");
  if (!(o.max_weight >= 1.0)) throw domain_error("random_game: max weight must be >= 1");
  if (o.strategies_per_player < 1 || o.strategies_per_player > 4)
    throw domain_error("random_game: strategies per player must be in [1, 4]");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(0.0, 2.0);
  std::uniform_real_distribution<double> weight(1.0, o.max_weight);

  std::vector<double> weights;
  for (std::size_t i = 0; i < o.players; ++i)
    weights.push_back(o.max_weight == 1.0 ? 1.0 : weight(rng));

  std::vector<LatencySpec> res;
  for (std::size_t e = 0; e < o.resources; ++e) {
    std::vector<double> c(static_cast<std::size_t>(o.degree) + 1);
    for (double& a : c) a = coeff(rng);
    if (std::all_of(c.begin(), c.end(), [](double a) { return a == 0.0; })) c.back() = 1.0;
    res.push_back(LatencySpec::polynomial(std::move(c)));
  }

  const std::uint64_t subsets = (std::uint64_t{1} << o.resources) - 1;
  const std::size_t k = static_cast<std::size_t>(
      std::min<std::uint64_t>(o.strategies_per_player, subsets));
  std::uniform_int_distribution<std::uint64_t> mask_dist(1, subsets);
  std::vector<StrategySet> strategies;
  for (std::size_t i = 0; i < o.players; ++i) {
    std::vector<std::uint64_t> masks;
    while (masks.size() < k) {
      const std::uint64_t m = mask_dist(rng);
      if (std::find(masks.begin(), masks.end(), m) == masks.end()) masks.push_back(m);
    }
    StrategySet set;
    for (std::uint64_t m : masks) {
      Strategy s;
      for (std::size_t e = 0; e < o.resources; ++e)
        if (m >> e & 1U) s.push_back(e);
      set.push_back(std::move(s));
    }
    strategies.push_back(std::move(set));
  }
  return Game(std::move(weights), std::move(res), std::move(strategies));
}

inline Game random_game(std::uint64_t seed, std::size_t players, std::size_t resources, int degree,
                        double max_weight, std::size_t strategies_per_player) {
  return random_game(seed, RandomGameOptions{players, resources, degree, max_weight,
                                             strategies_per_player});
}

// Same shape with scale * e^x latencies, scale uniform in [0.1, 2].
inline Game random_exponential_game(std::uint64_t seed, std::size_t players,
                                    std::size_t resources, double max_weight,
                                    std::size_t strategies_per_player) {
  const Game base = random_game(seed, players, resources, 1, max_weight, strategies_per_player);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> scale(0.1, 2.0);
  std::vector<LatencySpec> res;
  for (std::size_t e = 0; e < resources; ++e) res.push_back(LatencySpec::exponential(scale(rng)));
  return Game(base.weights(), std::move(res), base.strategies());
}

}  // namespace wcg
