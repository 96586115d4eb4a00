#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_util.hpp"
#include "wcg/network.hpp"

using namespace wcg;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(GeneralLB, ShapeAtD9) {
  const GeneralLBInstance inst = gen_general_lb(9, 4);
  EXPECT_EQ(inst.mu(), 3);
  EXPECT_EQ(inst.game.num_players(), 7u);
  EXPECT_EQ(inst.game.num_resources(), 8u);
  EXPECT_TRUE(inst.game.resource(7).is_dummy());
  for (std::size_t i = 0; i < 7; ++i) {
    ASSERT_EQ(inst.game.strategies(i).size(), 2u);
    EXPECT_EQ(inst.game.strategy(i, kOptStrategy), Strategy{i});
  }
  // Windows: clipped for the first mu players, full width mu otherwise.
  EXPECT_EQ(inst.game.strategy(0, kNashStrategy), (Strategy{3}));
  EXPECT_EQ(inst.game.strategy(2, kNashStrategy), (Strategy{3, 4, 5}));
  EXPECT_EQ(inst.game.strategy(3, kNashStrategy), (Strategy{4, 5, 6}));
  EXPECT_EQ(inst.game.strategy(6, kNashStrategy), (Strategy{7}));
  EXPECT_EQ(general_lb_nash_facilities(5, 3, 4), (std::vector<int>{6, 7, 8}));
}

TEST(GeneralLB, WeightIdentity) {
  for (int d = 9; d <= 30; ++d) {
    const LowerBoundParams p = lower_bound_params(d);
    EXPECT_LE(std::abs(std::pow(p.w, d + 1) - (p.phi + 1)), 1e-9 * (p.phi + 1)) << d;
  }
}

TEST(GeneralLB, EquilibriumLoadsAreAlphaTimesWeight) {
  // The window of weights covering facility j sums to alpha w^j.
  for (int d : {9, 12, 16}) {
    for (int n : {1, 3, 6}) {
      const GeneralLBInstance inst = gen_general_lb(d, n);
      const LoadVector x = loads(inst.game, inst.nash_profile);
      for (int j = inst.mu() + 1; j <= inst.mu() + n; ++j)
        EXPECT_LE(rel(x[j - 1], inst.params.alpha * std::pow(inst.params.w, j)), 1e-12) << d << ' ' << n << ' ' << j;
    }
  }
}

TEST(GeneralLB, LoadBoundOverAllProfiles) {
  const GeneralLBInstance inst = gen_general_lb(9, 4);
  const double a = inst.params.alpha, w = inst.params.w;
  std::size_t checked = 0;
  test::each_profile(inst.game, [&](const Profile& p) {
    const LoadVector x = loads(inst.game, p);
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
      EXPECT_LE(x[j], (a + 1) * std::pow(w, static_cast<double>(j + 1)) * (1 + 1e-12));
      ++checked;
    }
  });
  EXPECT_EQ(checked, 128u * 7);
}

TEST(GeneralLB, ClosedFormCosts) {
  for (int d : {9, 10, 15, 30}) {
    for (int n : {1, 4, 10}) {
      const GeneralLBInstance inst = gen_general_lb(d, n);
      EXPECT_LE(rel(social_cost(inst.game, inst.opt_profile), inst.closed_form_opt_cost()), 1e-9) << d << ' ' << n;
      EXPECT_LE(rel(social_cost(inst.game, inst.nash_profile), inst.closed_form_nash_cost()), 1e-9) << d << ' ' << n;
    }
  }
}

TEST(GeneralLB, OptChainPlayersContributeOne) {
  const GeneralLBInstance inst = gen_general_lb(11, 5);
  for (std::size_t i = inst.mu(); i < inst.players(); ++i)
    EXPECT_NEAR(inst.game.weight(i) * player_cost(inst.game, inst.opt_profile, i), 1.0, 1e-9) << i;
}

TEST(GeneralLB, Errors) {
  EXPECT_THROW(gen_general_lb(8, 4), domain_error);
  EXPECT_THROW(gen_general_lb(31, 4), domain_error);
  EXPECT_THROW(gen_general_lb(9, 0), domain_error);
  EXPECT_THROW(gen_general_lb(9, 62), domain_error);
  EXPECT_NO_THROW(gen_general_lb(9, 61));
}

TEST(SingletonLB, Shape) {
  const SingletonLBInstance s = gen_singleton_lb(3, 1.0, 1.5, 4);
  EXPECT_DOUBLE_EQ(s.w, 4.0);
  EXPECT_EQ(s.game.num_players(), 4u);
  EXPECT_EQ(s.game.num_resources(), 5u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(s.game.strategy(i, 0), Strategy{i});
    EXPECT_EQ(s.game.strategy(i, 1), Strategy{i + 1});
    EXPECT_DOUBLE_EQ(s.game.weight(i), std::pow(4.0, i + 1));
  }
}

TEST(SingletonLB, FirstPlayerIdentity) {
  // c_1 equals gamma times the worst-case latency on facility 2.
  for (int d : {2, 3, 5}) {
    const SingletonLBInstance s = gen_singleton_lb(d, 1.0, 1.6, 5);
    const double worst = s.game.resource(1)(s.w + s.w * s.w);
    EXPECT_LE(rel(s.game.resource(0)(0.0), s.gamma * worst), 1e-12) << d;
  }
}

TEST(SingletonLB, DominanceChainRatioIsGamma) {
  // With players before i on s~ and players after i on s*, moving i from
  // {i+1} to {i} multiplies its cost by exactly 1/gamma.
  for (int d : {2, 3, 4}) {
    for (double gamma : {1.1, 1.5, 1.9}) {
      const SingletonLBInstance s = gen_singleton_lb(d, 1.0, gamma, 6);
      for (std::size_t i = 0; i < 6; ++i) {
        Profile p = uniform_profile(6, kOptStrategy);
        for (std::size_t k = 0; k < i; ++k) p.choice[k] = kNashStrategy;
        const double stay = player_cost(s.game, p, i);
        p.choice[i] = kNashStrategy;
        const double move = player_cost(s.game, p, i);
        EXPECT_LE(rel(stay / move, gamma), 1e-10) << d << ' ' << gamma << ' ' << i;
      }
    }
  }
}

TEST(SingletonLB, NamedErrors) {
  auto message = [](auto&& f) {
    try {
      f();
    } catch (const domain_error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message([] { gen_singleton_lb(0, 1, 1.5, 4); }).find("d must"), std::string::npos);
  EXPECT_NE(message([] { gen_singleton_lb(3, 0.5, 1.5, 4); }).find("alpha must be >= 1"), std::string::npos);
  EXPECT_NE(message([] { gen_singleton_lb(3, 3, 3.5, 4); }).find("alpha must be < d"), std::string::npos);
  EXPECT_NE(message([] { gen_singleton_lb(3, 1.5, 1.5, 4); }).find("gamma must be > alpha"), std::string::npos);
  EXPECT_NE(message([] { gen_singleton_lb(3, 1, 3, 4); }).find("gamma must be < d"), std::string::npos);
  EXPECT_NE(message([] { gen_singleton_lb(3, 1, 1.5, 1); }).find("n must"), std::string::npos);
}

TEST(NetworkLB, TwoPathsPerCommodity) {
  for (int n : {1, 2, 4}) {
    const NetworkLBInstance net = gen_network_lb(9, n);
    ASSERT_EQ(net.paths.size(), net.base.players());
    for (std::size_t i = 0; i < net.paths.size(); ++i) {
      const auto found = simple_paths(net.nodes.size(), net.edges, net.commodities[i].source, net.commodities[i].sink);
      EXPECT_EQ(found.size(), 2u) << i;
      for (std::size_t k = 0; k < 2; ++k)
        EXPECT_EQ(path_facilities(net.edges, net.paths[i][k]), net.base.game.strategy(i, k));
    }
  }
}

TEST(NetworkLB, GadgetDirection) {
  const NetworkLBInstance net = gen_network_lb(9, 3);
  std::size_t latency_edges = 0;
  for (const NetworkEdge& e : net.edges) {
    if (e.role != EdgeRole::Facility || *e.facility < static_cast<std::size_t>(net.base.mu())) continue;
    ++latency_edges;
    EXPECT_NE(net.nodes[e.from].find("top"), std::string::npos);
    EXPECT_NE(net.nodes[e.to].find("bottom"), std::string::npos);
  }
  EXPECT_EQ(latency_edges, 4u);
  EXPECT_EQ(net.gadget_edges().size(), 16u);
  for (std::size_t e : net.gadget_edges()) EXPECT_TRUE(net.edges[e].latency.is_dummy());
}

TEST(NetworkLB, EdgeLevelCostsMatchGeneralGame) {
  const NetworkLBInstance net = gen_network_lb(9, 2);
  const Game edge = network_game(net);
  const Game& base = net.base.game;
  std::size_t count = 0;
  test::each_profile(base, [&](const Profile& p) {
    for (std::size_t i = 0; i < base.num_players(); ++i)
      EXPECT_LE(rel(player_cost(edge, p, i), player_cost(base, p, i)), 1e-12);
    ++count;
  });
  EXPECT_EQ(count, 32u);
  const Game contracted = contracted_game(net);
  EXPECT_EQ(contracted.strategies(), base.strategies());
}

TEST(NetworkLB, Dot) {
  const std::string dot = to_dot(gen_network_lb(9, 2));
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
  EXPECT_NE(dot.find("style=bold"), std::string::npos);
}

TEST(RandomGame, Deterministic) {
  const Game a = random_game(42, 3, 4, 2, 3.0, 3);
  const Game b = random_game(42, 3, 4, 2, 3.0, 3);
  const Game c = random_game(43, 3, 4, 2, 3.0, 3);
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_EQ(a.strategies(), b.strategies());
  for (std::size_t e = 0; e < 4; ++e) EXPECT_EQ(a.resource(e).coeffs(), b.resource(e).coeffs());
  EXPECT_NE(a.weights(), c.weights());
}

TEST(RandomGame, UnitWeightsAndValidity) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Game g = random_game(seed, 4, 3, 3, 1.0, 4);
    for (double w : g.weights()) EXPECT_EQ(w, 1.0);
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      const StrategySet& set = g.strategies(i);
      EXPECT_EQ(set.size(), 4u);
      std::set<Strategy> distinct(set.begin(), set.end());
      EXPECT_EQ(distinct.size(), set.size());
      for (const Strategy& s : set) EXPECT_FALSE(s.empty());
    }
  }
  // One resource admits a single nonempty subset.
  EXPECT_EQ(random_game(1, 2, 1, 1, 2.0, 4).strategies(0).size(), 1u);
  const Game h = random_game(9, 3, 2, 1, 5.0, 2);
  for (double w : h.original_weights()) {
    EXPECT_GE(w, 1.0);
    EXPECT_LE(w, 5.0);
  }
  EXPECT_THROW(random_game(0, 5, 3, 1, 1.0, 2), domain_error);
  EXPECT_THROW(random_game(0, 2, 3, 1, 0.5, 2), domain_error);
}

TEST(RandomGame, Exponential) {
  const Game g = random_exponential_game(7, 3, 3, 2.0, 2);
  EXPECT_TRUE(g.has_exponential());
  EXPECT_FALSE(g.has_polynomial());
  for (const LatencySpec& r : g.resources()) {
    EXPECT_GE(r.scale(), 0.1);
    EXPECT_LE(r.scale(), 2.0);
  }
}
