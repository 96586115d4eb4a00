#pragma once

// JSON game format:
//   { "weights": [w_0, ...],
//     "resources": [ {"kind":"poly","coeffs":[a_0,...,a_d]} | {"kind":"exp","scale":r}, ... ],
//     "strategies": [ [ [resource indices], ... ] per player ] }
// Extra top-level keys ("paper_index", "profiles", "weight_unit") are
// optional annotations written by the generators and ignored on load except
// for weight_unit.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "wcg/errors.hpp"
#include "wcg/model.hpp"

namespace wcg {

using json = nlohmann::json;

inline json latency_to_json(const LatencySpec& r) {
  if (r.is_exponential()) return json{{"kind", "exp"}, {"scale", r.scale()}};
  return json{{"kind", "poly"}, {"coeffs", r.coeffs()}};
}

inline json game_to_json(const Game& g) {
  json j;
  j["weights"] = g.weights();
  json res = json::array();
  for (const LatencySpec& r : g.resources()) res.push_back(latency_to_json(r));
  j["resources"] = std::move(res);
  json strat = json::array();
  for (const StrategySet& set : g.strategies()) {
    json ps = json::array();
    for (const Strategy& s : set) ps.push_back(s);
    strat.push_back(std::move(ps));
  }
  j["strategies"] = std::move(strat);
  if (g.weight_unit() != 1.0) j["weight_unit"] = g.weight_unit();
  return j;
}

inline json profile_to_json(const Profile& p) { return json(p.choice); }

namespace detail {

inline double require_number(const json& v, const std::string& what,
                             std::optional<std::size_t> player = std::nullopt,
                             std::optional<std::size_t> resource = std::nullopt) {
  if (!v.is_number()) throw validation_error(what + " must be a number", player, resource);
  return v.get<double>();
}

inline LatencySpec latency_from_json(const json& r, std::size_t e) {
  if (!r.is_object()) throw validation_error("resource must be an object", std::nullopt, e);
  if (!r.contains("kind") || !r["kind"].is_string())
    throw validation_error("resource needs a string \"kind\"", std::nullopt, e);
  const std::string kind = r["kind"].get<std::string>();
  try {
    if (kind == "poly") {
      if (!r.contains("coeffs") || !r["coeffs"].is_array())
        throw validation_error("poly resource needs a \"coeffs\" array", std::nullopt, e);
      std::vector<double> c;
      for (const json& a : r["coeffs"]) c.push_back(require_number(a, "coefficient", std::nullopt, e));
      return LatencySpec::polynomial(std::move(c));
    }
    if (kind == "exp") {
      if (!r.contains("scale"))
        throw validation_error("exp resource needs \"scale\"", std::nullopt, e);
      return LatencySpec::exponential(require_number(r["scale"], "scale", std::nullopt, e));
    }
  } catch (const validation_error& err) {
    if (err.resource()) throw;
    throw validation_error(err.what(), std::nullopt, e);
  }
  throw validation_error("unknown resource kind \"" + kind + "\"", std::nullopt, e);
}

}  // namespace detail

inline Game game_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("game must be a JSON object");
  for (const char* key : {"weights", "resources", "strategies"}) {
    if (!j.contains(key) || !j[key].is_array())
      throw validation_error(std::string("missing array \"") + key + "\"");
  }
  std::vector<double> weights;
  for (std::size_t i = 0; i < j["weights"].size(); ++i) {
    const double w = detail::require_number(j["weights"][i], "weight", i);
    if (!(w > 0.0)) throw validation_error("weight must be > 0", i);
    weights.push_back(w);
  }
  std::vector<LatencySpec> resources;
  for (std::size_t e = 0; e < j["resources"].size(); ++e)
    resources.push_back(detail::latency_from_json(j["resources"][e], e));

  std::vector<StrategySet> strategies;
  for (std::size_t i = 0; i < j["strategies"].size(); ++i) {
    const json& set = j["strategies"][i];
    if (!set.is_array()) throw validation_error("strategy set must be an array", i);
    StrategySet out;
    for (const json& s : set) {
      if (!s.is_array()) throw validation_error("strategy must be an array", i);
      Strategy t;
      for (const json& e : s) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
          throw validation_error("resource index must be a nonnegative integer", i);
        t.push_back(e.get<std::size_t>());
      }
      out.push_back(std::move(t));
    }
    strategies.push_back(std::move(out));
  }
  double unit = 1.0;
  if (j.contains("weight_unit")) unit = detail::require_number(j["weight_unit"], "weight_unit");
  return Game(std::move(weights), std::move(resources), std::move(strategies), unit);
}

inline Game game_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("malformed JSON: ") + e.what());
  }
  return game_from_json(j);
}

inline Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return game_from_string(buf.str());
}

}  // namespace wcg
