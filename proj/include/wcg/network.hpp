#pragma once

// Directed-network version of the general lower-bound instance.
//
// Node layout (paper names, 1-based): chain nodes u_1..u_{n+mu+2}, one sink
// t_i per player, and two internal nodes per direction gadget. Facility
// j <= mu is the edge u_{mu+1} -> u_j. Facility j > mu would be the
// undirected chain edge {u_j, u_{j+1}}; it becomes a gadget
//
//     a -> top, bottom -> a, b -> top, bottom -> b, top -> bottom
//
// where only top -> bottom carries the latency, so a player entering from
// either end crosses it in the same direction.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcg/errors.hpp"
#include "wcg/generators.hpp"
#include "wcg/model.hpp"

namespace wcg {

enum class EdgeRole { Facility, Gadget, Connector };

struct NetworkEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  LatencySpec latency = LatencySpec::zero();
  std::optional<std::size_t> facility;  // 0-based facility of the general game
  EdgeRole role = EdgeRole::Connector;
};

struct Commodity {
  std::size_t source = 0;
  std::size_t sink = 0;
  double weight = 1.0;
};

using Path = std::vector<std::size_t>;  // edge indices in traversal order

struct NetworkLBInstance {
  GeneralLBInstance base;
  std::vector<std::string> nodes;
  std::vector<NetworkEdge> edges;
  std::vector<Commodity> commodities;
  // paths[i][k] is the path of player i matching strategy k of the base game.
  std::vector<std::vector<Path>> paths;

  std::vector<std::size_t> gadget_edges() const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].role == EdgeRole::Gadget) out.push_back(e);
    return out;
  }
};

// All simple source -> sink paths, in depth-first order over edge insertion
// order.
inline std::vector<Path> simple_paths(std::size_t node_count, const std::vector<NetworkEdge>& edges,
                                      std::size_t source, std::size_t sink) {
  std::vector<std::vector<std::size_t>> out_edges(node_count);
  for (std::size_t e = 0; e < edges.size(); ++e) out_edges[edges[e].from].push_back(e);
  std::vector<Path> found;
  std::vector<char> on_path(node_count, 0);
  Path path;
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    if (v == sink) {
      found.push_back(path);
      return;
    }
    on_path[v] = 1;
    for (std::size_t e : out_edges[v]) {
      const std::size_t u = edges[e].to;
      if (on_path[u]) continue;
      path.push_back(e);
      self(self, u);
      path.pop_back();
    }
    on_path[v] = 0;
  };
  dfs(dfs, source);
  return found;
}

// Facilities crossed by a path, sorted.
inline Strategy path_facilities(const std::vector<NetworkEdge>& edges, const Path& p) {
  Strategy s;
  for (std::size_t e : p)
    if (edges[e].facility) s.push_back(*edges[e].facility);
  std::sort(s.begin(), s.end());
  return s;
}

inline NetworkLBInstance gen_network_lb(int d, int n) {
  NetworkLBInstance net{gen_general_lb(d, n), {}, {}, {}, {}};
  const Game& g = net.base.game;
  const int mu = net.base.mu();
  const int players = n + mu;

  auto add_node = [&](std::string name) {
    net.nodes.push_back(std::move(name));
    return net.nodes.size() - 1;
  };
  auto add_edge = [&](std::size_t a, std::size_t b, EdgeRole role,
                      std::optional<std::size_t> facility = std::nullopt) {
    NetworkEdge e;
    e.from = a;
    e.to = b;
    e.role = role;
    e.facility = facility;
    if (facility) e.latency = g.resource(*facility);
    net.edges.push_back(std::move(e));
  };

  std::vector<std::size_t> u(static_cast<std::size_t>(n + mu + 3));  // u[1..n+mu+2]
  for (int j = 1; j <= n + mu + 2; ++j) u[j] = add_node("u" + std::to_string(j));
  std::vector<std::size_t> t(static_cast<std::size_t>(players + 1));
  for (int i = 1; i <= players; ++i) t[i] = add_node("t" + std::to_string(i));

  for (int j = 1; j <= mu; ++j)
    add_edge(u[mu + 1], u[j], EdgeRole::Facility, static_cast<std::size_t>(j - 1));
  for (int j = mu + 1; j <= n + mu + 1; ++j) {
    const std::size_t top = add_node("g" + std::to_string(j) + "top");
    const std::size_t bottom = add_node("g" + std::to_string(j) + "bottom");
    add_edge(u[j], top, EdgeRole::Gadget);
    add_edge(bottom, u[j], EdgeRole::Gadget);
    add_edge(u[j + 1], top, EdgeRole::Gadget);
    add_edge(bottom, u[j + 1], EdgeRole::Gadget);
    add_edge(top, bottom, EdgeRole::Facility, static_cast<std::size_t>(j - 1));
  }
  for (int i = 1; i <= players; ++i) add_edge(u[i], t[i], EdgeRole::Connector);
  for (int i = 1; i <= n; ++i) add_edge(u[mu + 1 + i], t[i], EdgeRole::Connector);
  for (int i = n + 1; i <= players; ++i) add_edge(u[mu + n + 2], t[i], EdgeRole::Connector);

  for (int i = 1; i <= players; ++i) {
    const std::size_t src = i <= mu ? u[mu + 1] : u[i + 1];
    net.commodities.push_back({src, t[i], g.weight(static_cast<std::size_t>(i - 1))});
  }

  // Match each player's simple paths to its two strategies.
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    const std::vector<Path> found =
        simple_paths(net.nodes.size(), net.edges, net.commodities[i].source, net.commodities[i].sink);
    const StrategySet& set = g.strategies(i);
    std::vector<Path> ordered(set.size());
    std::vector<char> seen(set.size(), 0);
    for (const Path& p : found) {
      const Strategy s = path_facilities(net.edges, p);
      const auto it = std::find(set.begin(), set.end(), s);
      if (it == set.end() || seen[it - set.begin()])
        throw std::logic_error("gen_network_lb: unexpected path for player " + std::to_string(i));
      seen[it - set.begin()] = 1;
      ordered[it - set.begin()] = p;
    }
    if (found.size() != set.size())
      throw std::logic_error("gen_network_lb: player " + std::to_string(i) + " has " +
                             std::to_string(found.size()) + " paths");
    net.paths.push_back(std::move(ordered));
  }
  return net;
}

// Edge-level congestion game: every edge is a resource, every path a
// strategy (in the order of net.paths).
inline Game network_game(const NetworkLBInstance& net) {
  std::vector<LatencySpec> res;
  for (const NetworkEdge& e : net.edges) res.push_back(e.latency);
  std::vector<double> weights;
  std::vector<StrategySet> strategies;
  for (std::size_t i = 0; i < net.commodities.size(); ++i) {
    weights.push_back(net.commodities[i].weight);
    StrategySet set;
    for (const Path& p : net.paths[i]) set.push_back(Strategy(p.begin(), p.end()));
    strategies.push_back(std::move(set));
  }
  return Game(std::move(weights), std::move(res), std::move(strategies));
}

// Contracts each gadget and drops connectors: strategies become the facility
// sets crossed by each path.
inline Game contracted_game(const NetworkLBInstance& net) {
  const Game& g = net.base.game;
  std::vector<StrategySet> strategies;
  for (const auto& player_paths : net.paths) {
    StrategySet set;
    for (const Path& p : player_paths) set.push_back(path_facilities(net.edges, p));
    strategies.push_back(std::move(set));
  }
  std::vector<double> weights;
  for (const Commodity& c : net.commodities) weights.push_back(c.weight);
  return Game(std::move(weights), g.resources(), std::move(strategies));
}

inline std::string to_dot(const NetworkLBInstance& net) {
  std::ostringstream os;
  os << "digraph network_lb {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < net.nodes.size(); ++v) {
    const std::string& name = net.nodes[v];
    os << "  n" << v << " [label=\"" << name << "\"";
    if (name.find("top") != std::string::npos || name.find("bottom") != std::string::npos)
      os << ", shape=point";
    os << "];\n";
  }
  for (const NetworkEdge& e : net.edges) {
    os << "  n" << e.from << " -> n" << e.to << " [";
    switch (e.role) {
      case EdgeRole::Facility:
        os << "label=\"" << (*e.facility + 1) << "\", style=bold";
        break;
      case EdgeRole::Gadget:
        os << "style=dashed";
        break;
      case EdgeRole::Connector:
        os << "style=dotted, color=gray";
        break;
    }
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace wcg
