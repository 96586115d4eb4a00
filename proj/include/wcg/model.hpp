#pragma once

// Weighted congestion games: latency functions, games, pure profiles, loads
// and costs. All types are immutable values; every function here is pure.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wcg/errors.hpp"

namespace wcg {

enum class LatencyKind { Polynomial, Exponential };

// Per-resource cost function: either sum_j a_j x^j with a_j >= 0, or
// scale * e^x. An all-zero polynomial is an explicit zero-cost dummy.
class LatencySpec {
 public:
  static LatencySpec polynomial(std::vector<double> coeffs) {
    if (coeffs.empty())
      throw validation_error("polynomial latency needs at least one coefficient");
    for (double a : coeffs) {
      if (!std::isfinite(a) || a < 0.0)
        throw validation_error("polynomial coefficients must be finite and >= 0");
    }
    LatencySpec spec;
    spec.kind_ = LatencyKind::Polynomial;
    spec.coeffs_ = std::move(coeffs);
    return spec;
  }

  static LatencySpec monomial(double a, int power) {
    if (power < 0) throw validation_error("monomial power must be >= 0");
    std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
    c.back() = a;
    return polynomial(std::move(c));
  }

  static LatencySpec constant(double c) { return polynomial({c}); }
  static LatencySpec zero() { return polynomial({0.0}); }

  static LatencySpec exponential(double scale) {
    if (!std::isfinite(scale) || scale <= 0.0)
      throw validation_error("exponential latency scale must be finite and > 0");
    LatencySpec spec;
    spec.kind_ = LatencyKind::Exponential;
    spec.scale_ = scale;
    return spec;
  }

  LatencyKind kind() const noexcept { return kind_; }
  bool is_polynomial() const noexcept { return kind_ == LatencyKind::Polynomial; }
  bool is_exponential() const noexcept { return kind_ == LatencyKind::Exponential; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double scale() const noexcept { return scale_; }

  bool is_dummy() const noexcept {
    return is_polynomial() &&
           std::all_of(coeffs_.begin(), coeffs_.end(), [](double a) { return a == 0.0; });
  }

  // Largest index of a nonzero coefficient; 0 for dummies and exponentials.
  int degree() const noexcept {
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
      if (coeffs_[j] != 0.0) return static_cast<int>(j);
    }
    return 0;
  }

  std::size_t nonzero_terms() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](double a) { return a != 0.0; }));
  }

  double operator()(double x) const noexcept {
    if (kind_ == LatencyKind::Exponential) return scale_ * std::exp(x);
    double acc = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * x + coeffs_[j];
    return acc;
  }

  friend bool operator==(const LatencySpec&, const LatencySpec&) = default;

 private:
  LatencySpec() = default;

  LatencyKind kind_ = LatencyKind::Polynomial;
  std::vector<double> coeffs_;
  double scale_ = 0.0;
};

using Strategy = std::vector<std::size_t>;  // sorted resource indices
using StrategySet = std::vector<Strategy>;
using LoadVector = std::vector<double>;

// A pure strategy profile: one strategy index per player.
struct Profile {
  std::vector<std::size_t> choice;

  std::size_t size() const noexcept { return choice.size(); }
  std::size_t operator[](std::size_t i) const { return choice[i]; }

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

inline std::string to_string(const Profile& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out + ")";
}

class Game {
 public:
  // Validates every structural invariant and normalizes each strategy to a
  // sorted index list. weight_unit records how many original weight units
  // one stored unit corresponds to (1 unless canonical_scale was applied).
  Game(std::vector<double> weights, std::vector<LatencySpec> resources,
       std::vector<StrategySet> strategies, double weight_unit = 1.0)
      : weights_(std::move(weights)),
        resources_(std::move(resources)),
        strategies_(std::move(strategies)),
        weight_unit_(weight_unit) {
    if (weights_.empty()) throw validation_error("game needs at least one player");
    if (resources_.empty()) throw validation_error("game needs at least one resource");
    if (strategies_.size() != weights_.size())
      throw validation_error("strategy sets and weights differ in length");
    if (!std::isfinite(weight_unit_) || weight_unit_ <= 0.0)
      throw validation_error("weight unit must be finite and > 0");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (!std::isfinite(weights_[i]) || weights_[i] <= 0.0)
        throw validation_error("weight must be finite and > 0", i);
      if (strategies_[i].empty()) throw validation_error("empty strategy set", i);
      for (Strategy& s : strategies_[i]) {
        if (s.empty()) throw validation_error("empty strategy", i);
        std::sort(s.begin(), s.end());
        for (std::size_t k = 0; k < s.size(); ++k) {
          if (s[k] >= resources_.size())
            throw validation_error("strategy references unknown resource", i, s[k]);
          if (k > 0 && s[k] == s[k - 1])
            throw validation_error("duplicate resource in strategy", i, s[k]);
        }
      }
    }
    for (const LatencySpec& r : resources_) {
      if (r.is_polynomial()) degree_ = std::max(degree_, r.degree());
      if (r.is_exponential()) has_exponential_ = true;
      if (r.is_polynomial() && !r.is_dummy()) has_polynomial_ = true;
    }
  }

  std::size_t num_players() const noexcept { return weights_.size(); }
  std::size_t num_resources() const noexcept { return resources_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<LatencySpec>& resources() const noexcept { return resources_; }
  const LatencySpec& resource(std::size_t e) const { return resources_.at(e); }
  const std::vector<StrategySet>& strategies() const noexcept { return strategies_; }
  const StrategySet& strategies(std::size_t i) const { return strategies_.at(i); }
  const Strategy& strategy(std::size_t i, std::size_t k) const {
    return strategies_.at(i).at(k);
  }
  int degree() const noexcept { return degree_; }
  double weight_unit() const noexcept { return weight_unit_; }
  bool has_exponential() const noexcept { return has_exponential_; }
  bool has_polynomial() const noexcept { return has_polynomial_; }
  bool all_polynomial() const noexcept { return !has_exponential_; }

  double min_weight() const { return *std::min_element(weights_.begin(), weights_.end()); }
  double max_weight() const { return *std::max_element(weights_.begin(), weights_.end()); }

  std::vector<double> original_weights() const {
    std::vector<double> out(weights_);
    for (double& w : out) w *= weight_unit_;
    return out;
  }

  // Number of pure profiles, saturating at +inf in double.
  double profile_count() const noexcept {
    double n = 1.0;
    for (const StrategySet& s : strategies_) n *= static_cast<double>(s.size());
    return n;
  }

  void validate(const Profile& p) const {
    if (p.size() != num_players())
      throw validation_error("profile length " + std::to_string(p.size()) +
                             " does not match " + std::to_string(num_players()) +
                             " players");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] >= strategies_[i].size())
        throw validation_error("strategy index " + std::to_string(p[i]) + " out of range",
                               i);
    }
  }

  void validate_player(std::size_t i) const {
    if (i >= num_players())
      throw validation_error("player index out of range", i);
  }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  std::vector<double> weights_;
  std::vector<LatencySpec> resources_;
  std::vector<StrategySet> strategies_;
  double weight_unit_ = 1.0;
  int degree_ = 0;
  bool has_exponential_ = false;
  bool has_polynomial_ = false;
};

inline bool uses(const Strategy& s, std::size_t e) {
  return std::binary_search(s.begin(), s.end(), e);
}

// ---------------------------------------------------------------------------
// Unchecked kernels. Callers have validated the profile.

inline void add_loads(const Game& g, const Profile& p, LoadVector& x) {
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    const double w = g.weights()[i];
    for (std::size_t e : g.strategies()[i][p.choice[i]]) x[e] += w;
  }
}

// Cost player i would pay on strategy k given loads x of the current
// profile in which it plays `current`.
inline double cost_after_move(const Game& g, const LoadVector& x, std::size_t i,
                              std::size_t current, std::size_t k) {
  const Strategy& now = g.strategies()[i][current];
  const Strategy& next = g.strategies()[i][k];
  const double w = g.weights()[i];
  double c = 0.0;
  for (std::size_t e : next) {
    const double load = uses(now, e) ? x[e] : x[e] + w;
    c += g.resources()[e](load);
  }
  return c;
}

inline double cost_at_loads(const Game& g, const LoadVector& x, std::size_t i,
                            std::size_t k) {
  double c = 0.0;
  for (std::size_t e : g.strategies()[i][k]) c += g.resources()[e](x[e]);
  return c;
}

inline double social_cost_at_loads(const Game& g, const LoadVector& x) {
  double c = 0.0;
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (x[e] > 0.0) c += x[e] * g.resources()[e](x[e]);
  }
  return c;
}

// ---------------------------------------------------------------------------

inline LoadVector loads(const Game& g, const Profile& p) {
  g.validate(p);
  LoadVector x(g.num_resources(), 0.0);
  add_loads(g, p, x);
  return x;
}

inline double player_cost(const Game& g, const Profile& p, std::size_t i) {
  g.validate_player(i);
  const LoadVector x = loads(g, p);
  return cost_at_loads(g, x, i, p[i]);
}

inline double social_cost(const Game& g, const Profile& p) {
  return social_cost_at_loads(g, loads(g, p));
}

// Divides all weights by the minimum weight m and rescales a_j by m^j so that
// every player's cost at every profile is unchanged.
inline Game canonical_scale(const Game& g) {
  const double m = g.min_weight();
  if (m == 1.0) return g;
  std::vector<LatencySpec> res;
  res.reserve(g.num_resources());
  for (std::size_t e = 0; e < g.num_resources(); ++e) {
    const LatencySpec& r = g.resource(e);
    if (r.is_exponential())
      throw unsupported_error(
          "canonical_scale: exponential latency cannot absorb a weight rescaling "
          "[resource " + std::to_string(e) + "]");
    std::vector<double> c = r.coeffs();
    double mj = 1.0;
    for (double& a : c) {
      a *= mj;
      mj *= m;
    }
    res.push_back(LatencySpec::polynomial(std::move(c)));
  }
  std::vector<double> w = g.weights();
  for (double& wi : w) wi /= m;
  return Game(std::move(w), std::move(res), g.strategies(), g.weight_unit() * m);
}

// Replaces each polynomial resource by one monomial resource per nonzero
// coefficient. All-zero dummies stay as a single zero resource so that every
// strategy remains nonempty.
inline Game expand_to_monomials(const Game& g) {
  if (g.has_exponential())
    throw unsupported_error("expand_to_monomials: game has exponential resources");
  std::vector<LatencySpec> res;
  std::vector<std::vector<std::size_t>> images(g.num_resources());
  for (std::size_t e = 0; e < g.num_resources(); ++e) {
    const LatencySpec& r = g.resource(e);
    if (r.is_dummy()) {
      images[e].push_back(res.size());
      res.push_back(LatencySpec::zero());
      continue;
    }
    const auto& c = r.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0.0) continue;
      images[e].push_back(res.size());
      res.push_back(LatencySpec::monomial(c[j], static_cast<int>(j)));
    }
  }
  std::vector<StrategySet> strategies;
  strategies.reserve(g.num_players());
  for (const StrategySet& set : g.strategies()) {
    StrategySet out;
    out.reserve(set.size());
    for (const Strategy& s : set) {
      Strategy t;
      for (std::size_t e : s) t.insert(t.end(), images[e].begin(), images[e].end());
      out.push_back(std::move(t));
    }
    strategies.push_back(std::move(out));
  }
  return Game(g.weights(), std::move(res), std::move(strategies), g.weight_unit());
}

}  // namespace wcg
