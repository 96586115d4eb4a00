#pragma once

// Command layer behind tools/wcg: a parsed RunSpec goes in, an exit code and
// text on the output stream come out. Flag parsing itself lives with the
// executable so that the library does not depend on a CLI package.
//
// Exit codes: 0 ok, 1 usage or invalid input, 2 no alpha-equilibrium,
// 3 enumeration cap exceeded, 4 I/O failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wcg/equilibria.hpp"
#include "wcg/errors.hpp"
#include "wcg/faulhaber.hpp"
#include "wcg/game_json.hpp"
#include "wcg/generators.hpp"
#include "wcg/network.hpp"
#include "wcg/numerics.hpp"
#include "wcg/potential.hpp"

namespace wcg::cli {

enum class Command { Phi, Params, Gen, Analyze, Descend, Table, Ratios };
enum class Format { Text, Csv, Json, Dot };

enum ExitCode : int { kOk = 0, kUsage = 1, kNoEquilibrium = 2, kCap = 3, kIo = 4 };

struct Range {
  int lo = 0;
  int hi = 0;
};

// "a..b" or a single integer.
inline Range parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    Range r{std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    if (r.lo > r.hi) throw validation_error("range \"" + s + "\" is empty");
    return r;
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const validation_error*>(&e)) throw;
    throw validation_error("cannot parse range \"" + s + "\"");
  }
}

inline double default_cap() {
  if (const char* env = std::getenv("WCG_ENUM_CAP")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return kDefaultProfileCap;
}

struct RunSpec {
  Command command = Command::Phi;
  Format format = Format::Text;
  int digits = 12;
  std::string output;  // empty: stdout

  // phi / params / ratios / gen / table
  std::optional<int> d;
  std::optional<Range> d_range;
  bool envelope = false;
  int n = 4;
  std::optional<Range> n_range;
  std::optional<Range> m_range;
  double alpha = 1.0;
  bool alpha_set = false;
  double gamma = 1.0;
  bool gamma_set = false;

  // gen
  std::string gen_kind;  // general | singleton | random
  bool network = false;
  std::uint64_t seed = 1;
  std::size_t players = 3;
  std::size_t resources = 4;
  int degree = 2;
  double max_weight = 1.0;
  std::size_t strategies = 3;

  // analyze / descend
  std::string input;
  bool descend = false;  // analyze: local descent instead of enumeration
  bool global = false;   // descend: global minimizer
  double cap = kDefaultProfileCap;

  // table
  std::string table;  // pos-convergence | singleton-convergence | pathologies
};

// Format applicability; throws validation_error with a usage message.
inline void validate(const RunSpec& s) {
  if (s.digits < 1 || s.digits > 17) throw validation_error("--digits must be in [1, 17]");
  if (s.format == Format::Dot && !(s.command == Command::Gen && s.network))
    throw validation_error("dot output is only available for gen --network");
  if (s.format == Format::Json &&
      !(s.command == Command::Gen || s.command == Command::Analyze || s.command == Command::Descend ||
        s.command == Command::Ratios))
    throw validation_error("json output is not available for this subcommand");
  if (s.command == Command::Gen && s.format == Format::Csv)
    throw validation_error("gen emits json or dot");
  if (s.command == Command::Gen && s.gen_kind != "general" && s.gen_kind != "singleton" &&
      s.gen_kind != "random")
    throw validation_error("gen needs one of: general, singleton, random");
  if (s.network && !(s.command == Command::Gen && s.gen_kind == "general"))
    throw validation_error("--network applies to gen general only");
  if (s.command == Command::Table && s.table != "pos-convergence" &&
      s.table != "singleton-convergence" && s.table != "pathologies")
    throw validation_error("table needs one of: pos-convergence, singleton-convergence, pathologies");
  if ((s.command == Command::Analyze || s.command == Command::Descend) && s.input.empty())
    throw validation_error("a game file is required");
}

class Printer {
 public:
  Printer(std::ostream& os, int digits) : os_(os), digits_(digits) {}

  std::string num(double v) const {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits_, v);
    return buf;
  }

  template <class... T>
  void row(const T&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << '\n';
  }

  std::ostream& os() { return os_; }

 private:
  std::string cell(double v) const { return num(v); }
  std::string cell(int v) const { return std::to_string(v); }
  std::string cell(std::size_t v) const { return std::to_string(v); }
  std::string cell(bool v) const { return v ? "true" : "false"; }
  std::string cell(const std::string& v) const { return v; }
  std::string cell(const char* v) const { return v; }

  std::ostream& os_;
  int digits_;
};

inline json number_json(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

namespace detail {

inline Range d_values(const RunSpec& s, int fallback) {
  if (s.d_range) return *s.d_range;
  const int d = s.d.value_or(fallback);
  return {d, d};
}

inline int cmd_phi(const RunSpec& s, Printer& out) {
  const Range r = d_values(s, 9);
  if (r.lo == r.hi && !s.d_range) {
    out.os() << out.num(solve_phi(r.lo)) << '\n';
    return kOk;
  }
  out.row("d", "phi");
  for (int d = r.lo; d <= r.hi; ++d) out.row(d, solve_phi(d));
  return kOk;
}

inline int cmd_params(const RunSpec& s, Printer& out) {
  const Range r = d_values(s, 9);
  if (s.envelope)
    out.row("d", "phi", "c", "beta", "mu", "alpha", "beta_lower", "beta_upper");
  else
    out.row("d", "phi", "c", "beta", "mu", "alpha");
  for (int d = r.lo; d <= r.hi; ++d) {
    const LowerBoundParams p = lower_bound_params(d);
    if (s.envelope)
      out.row(d, p.phi, p.c, p.beta, p.mu, p.alpha, beta_lower_envelope(p.phi, d),
              beta_upper_envelope(p.phi));
    else
      out.row(d, p.phi, p.c, p.beta, p.mu, p.alpha);
  }
  return kOk;
}

inline json instance_json(const Game& g, const std::vector<Profile>& named,
                          const std::vector<std::string>& names) {
  json j = game_to_json(g);
  json profiles = json::object();
  for (std::size_t k = 0; k < named.size(); ++k) profiles[names[k]] = profile_to_json(named[k]);
  j["profiles"] = profiles;
  json idx = json::object();
  idx["players"] = json::array();
  idx["resources"] = json::array();
  for (std::size_t i = 0; i < g.num_players(); ++i) idx["players"].push_back(i + 1);
  for (std::size_t e = 0; e < g.num_resources(); ++e) idx["resources"].push_back(e + 1);
  j["paper_index"] = idx;
  return j;
}

inline int cmd_gen(const RunSpec& s, Printer& out) {
  if (s.gen_kind == "general") {
    const int d = s.d.value_or(9);
    if (s.network) {
      const NetworkLBInstance net = gen_network_lb(d, s.n);
      if (s.format == Format::Dot) {
        out.os() << to_dot(net);
        return kOk;
      }
      json j = instance_json(network_game(net), {net.base.opt_profile, net.base.nash_profile},
                             {"opt", "nash"});
      json edges = json::array();
      for (const NetworkEdge& e : net.edges) {
        json je{{"from", net.nodes[e.from]}, {"to", net.nodes[e.to]}};
        je["role"] = e.role == EdgeRole::Facility ? "facility" : e.role == EdgeRole::Gadget ? "gadget" : "connector";
        if (e.facility) je["facility"] = *e.facility + 1;
        edges.push_back(std::move(je));
      }
      j["paper_index"]["edges"] = std::move(edges);
      out.os() << j.dump(2) << '\n';
      return kOk;
    }
    const GeneralLBInstance inst = gen_general_lb(d, s.n);
    out.os() << instance_json(inst.game, {inst.opt_profile, inst.nash_profile}, {"opt", "nash"}).dump(2)
             << '\n';
    return kOk;
  }
  if (s.gen_kind == "singleton") {
    const SingletonLBInstance inst =
        gen_singleton_lb(s.d.value_or(3), s.alpha, s.gamma_set ? s.gamma : 1.5, s.n);
    out.os() << instance_json(inst.game, {inst.opt_profile, inst.nash_profile}, {"opt", "nash"}).dump(2)
             << '\n';
    return kOk;
  }
  const Game g = random_game(s.seed, s.players, s.resources, s.degree, s.max_weight, s.strategies);
  out.os() << game_to_json(g).dump(2) << '\n';
  return kOk;
}

inline std::string profile_cell(const Profile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p[i]);
  }
  return out;
}

inline json entry_json(const EquilibriumEntry& e) {
  return json{{"profile", profile_to_json(e.profile)},
              {"cost", number_json(e.cost)},
              {"alpha_star", number_json(e.alpha_star)},
              {"marginal", e.marginal}};
}

inline json certificate_json(const DeviationReport& r) {
  json players = json::array();
  for (const PlayerDeviation& p : r.players)
    players.push_back(json{{"current", p.current},
                           {"best_alternative", p.best_alternative},
                           {"current_cost", number_json(p.current_cost)},
                           {"best_cost", number_json(p.best_cost)},
                           {"ratio", number_json(p.ratio)}});
  return json{{"alpha_star", number_json(r.alpha_star)}, {"players", players}};
}

inline int emit_descent(const RunSpec& s, const Game& g, const PotentialConfig& cfg,
                        const PotentialResult& r, Printer& out) {
  const bool qualifies = r.certificate.is_approx_ne(s.alpha);
  if (s.format == Format::Json) {
    json j{{"profile", profile_to_json(r.profile)},
           {"potential", number_json(r.potential)},
           {"cost", number_json(r.cost)},
           {"moves", r.moves},
           {"gamma", cfg.gamma},
           {"W", cfg.W},
           {"alpha_guarantee", number_json(cfg.alpha_guarantee)},
           {"pos_guarantee", number_json(cfg.pos_guarantee)},
           {"alpha", s.alpha},
           {"is_alpha_equilibrium", qualifies},
           {"certificate", certificate_json(r.certificate)}};
    out.os() << j.dump(2) << '\n';
  } else if (s.format == Format::Csv) {
    out.row("profile", "potential", "cost", "alpha_star", "alpha_guarantee", "pos_guarantee", "moves");
    out.row(profile_cell(r.profile), r.potential, r.cost, r.certificate.alpha_star, cfg.alpha_guarantee,
            cfg.pos_guarantee, static_cast<std::size_t>(r.moves));
  } else {
    std::ostream& os = out.os();
    os << "players " << g.num_players() << ", resources " << g.num_resources() << ", degree " << g.degree()
       << ", W " << out.num(cfg.W) << '\n';
    os << "profile " << to_string(r.profile) << '\n';
    os << "potential " << out.num(r.potential) << '\n';
    os << "cost " << out.num(r.cost) << '\n';
    os << "alpha_star " << out.num(r.certificate.alpha_star) << " (guarantee "
       << out.num(cfg.alpha_guarantee) << ")\n";
    os << "moves " << r.moves << '\n';
  }
  return qualifies ? kOk : kNoEquilibrium;
}

inline int cmd_analyze(const RunSpec& s, Printer& out) {
  const Game g = load_game(s.input);
  if (s.descend) {
    const PotentialConfig cfg = PotentialConfig::for_game(g, s.gamma);
    return emit_descent(s, g, cfg, potential_minimize(g, cfg, MinimizeMode::LocalDescent), out);
  }
  EnumerationOptions opt;
  opt.cap = s.cap;
  const AnalysisReport r = enumerate_analysis(g, s.alpha, opt);
  if (s.format == Format::Json) {
    json eq = json::array(), marg = json::array();
    for (const auto& e : r.equilibria) eq.push_back(entry_json(e));
    for (const auto& e : r.marginal) marg.push_back(entry_json(e));
    json j{{"alpha", s.alpha},
           {"profile_count", r.profile_count},
           {"opt_cost", number_json(r.opt_cost)},
           {"opt_profile", profile_to_json(r.opt_profile)},
           {"equilibrium_count", r.equilibrium_count},
           {"equilibria", eq},
           {"best_eq_cost", number_json(r.best_eq_cost)},
           {"worst_eq_cost", number_json(r.worst_eq_cost)},
           {"pos", number_json(r.pos)},
           {"poa", number_json(r.poa)},
           {"marginal", marg}};
    out.os() << j.dump(2) << '\n';
  } else if (s.format == Format::Csv) {
    out.row("alpha", "profile_count", "equilibrium_count", "opt_cost", "best_eq_cost", "worst_eq_cost",
            "pos", "poa", "marginal_count");
    out.row(s.alpha, static_cast<std::size_t>(r.profile_count), static_cast<std::size_t>(r.equilibrium_count),
            r.opt_cost, r.best_eq_cost, r.worst_eq_cost, r.pos, r.poa, r.marginal.size());
  } else {
    std::ostream& os = out.os();
    os << "profiles " << r.profile_count << '\n';
    os << "opt " << out.num(r.opt_cost) << " at " << to_string(r.opt_profile) << '\n';
    os << "alpha-equilibria (alpha=" << out.num(s.alpha) << ") " << r.equilibrium_count << '\n';
    for (const auto& e : r.equilibria)
      os << "  " << to_string(e.profile) << " cost " << out.num(e.cost) << " alpha_star "
         << out.num(e.alpha_star) << (e.marginal ? " marginal" : "") << '\n';
    os << "PoS " << out.num(r.pos) << '\n';
    os << "PoA " << out.num(r.poa) << '\n';
    if (!r.marginal.empty()) os << "marginal profiles " << r.marginal.size() << '\n';
  }
  return r.has_equilibrium() ? kOk : kNoEquilibrium;
}

inline int cmd_descend(const RunSpec& s, Printer& out) {
  const Game g = load_game(s.input);
  const PotentialConfig cfg = PotentialConfig::for_game(g, s.gamma);
  MinimizeOptions opt;
  opt.cap = s.cap;
  const auto mode = s.global ? MinimizeMode::GlobalEnumerate : MinimizeMode::LocalDescent;
  RunSpec relaxed = s;
  // Without an explicit --alpha the target is the method's own guarantee.
  if (!s.alpha_set && !g.has_exponential()) relaxed.alpha = cfg.alpha_guarantee * (1.0 + 1e-6);
  return emit_descent(relaxed, g, cfg, potential_minimize(g, cfg, mode, opt), out);
}

inline int cmd_table(const RunSpec& s, Printer& out) {
  if (s.table == "pos-convergence") {
    const int d = s.d.value_or(9);
    const Range nr = s.n_range.value_or(Range{1, 12});
    out.row("n", "players", "opt_cost", "nash_cost", "measured_ratio", "predicted_finite_n",
            "predicted_limit");
    for (int n = nr.lo; n <= nr.hi; ++n) {
      const GeneralLBInstance inst = gen_general_lb(d, n);
      const double c_opt = social_cost(inst.game, inst.opt_profile);
      const double c_nash = social_cost(inst.game, inst.nash_profile);
      out.row(n, inst.players(), c_opt, c_nash, c_nash / c_opt, ratios::finite_n_general(d, n),
              ratios::general(d));
    }
    return kOk;
  }
  if (s.table == "singleton-convergence") {
    const int d = s.d.value_or(3);
    const double gamma = s.gamma_set ? s.gamma : 1.5;
    const Range nr = s.n_range.value_or(Range{2, 12});
    const double w = ratios::singleton_growth(d, gamma);
    out.row("n", "w", "opt_cost", "nash_cost", "measured_ratio", "predicted_limit", "lower_bound");
    for (int n = nr.lo; n <= nr.hi; ++n) {
      const SingletonLBInstance inst = gen_singleton_lb(d, s.alpha, gamma, n);
      const double c_opt = social_cost(inst.game, inst.opt_profile);
      const double c_nash = social_cost(inst.game, inst.nash_profile);
      out.row(n, w, c_opt, c_nash, c_nash / c_opt, ratios::singleton_limit(d, w, gamma),
              ratios::singleton_bound(d, s.alpha));
    }
    return kOk;
  }
  const Range mr = s.m_range.value_or(Range{1, 24});
  out.row("m", "monotone_on_unit_interval", "min_value_on_unit_interval", "argmin", "first_decrease_at");
  for (int m = mr.lo; m <= mr.hi; ++m) {
    const FaulhaberPathologies p = faulhaber_pathologies(m);
    out.row(m, p.monotone_on_unit_interval, p.min_value_on_unit_interval, p.argmin, p.first_decrease_at);
  }
  return kOk;
}

inline int cmd_ratios(const RunSpec& s, Printer& out) {
  const int d = s.d.value_or(9);
  const double gamma = s.gamma_set ? s.gamma : std::min(s.alpha + 0.5, (s.alpha + d) / 2.0);
  const PredictedRatios r = predicted_ratios(d, s.alpha, gamma, s.n);
  if (s.format == Format::Json) {
    json j{{"d", d},
           {"alpha", s.alpha},
           {"gamma", gamma},
           {"n", s.n},
           {"general", number_json(r.general)},
           {"finite_n_general", number_json(r.finite_n_general)},
           {"singleton_bound", number_json(r.singleton_bound)},
           {"singleton_limit", number_json(r.singleton_limit)}};
    out.os() << j.dump(2) << '\n';
    return kOk;
  }
  out.row("d", "alpha", "gamma", "n", "general", "finite_n_general", "singleton_bound", "singleton_limit");
  out.row(d, s.alpha, gamma, s.n, r.general, r.finite_n_general, r.singleton_bound, r.singleton_limit);
  return kOk;
}

inline int dispatch(const RunSpec& s, Printer& out) {
  switch (s.command) {
    case Command::Phi: return cmd_phi(s, out);
    case Command::Params: return cmd_params(s, out);
    case Command::Gen: return cmd_gen(s, out);
    case Command::Analyze: return cmd_analyze(s, out);
    case Command::Descend: return cmd_descend(s, out);
    case Command::Table: return cmd_table(s, out);
    case Command::Ratios: return cmd_ratios(s, out);
  }
  return kUsage;
}

}  // namespace detail

// Runs one command. Output goes to spec.output when set, else to `out`;
// diagnostics go to `err`.
inline int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    validate(spec);
    std::ostringstream buf;
    Printer printer(buf, spec.digits);
    const int code = detail::dispatch(spec, printer);
    if (spec.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(spec.output);
      if (!f) throw io_error("cannot write " + spec.output);
      f << buf.str();
      if (!f) throw io_error("write failed for " + spec.output);
    }
    return code;
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const cap_exceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace wcg::cli
