#pragma once

// Maps argv onto wcg::cli::RunSpec with CLI11.

#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wcg/cli.hpp"

namespace wcg::cli {

struct ParseOutcome {
  RunSpec spec;
  bool exit_now = false;  // --help or a parse error was handled
  int code = kOk;
};

inline ParseOutcome parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ParseOutcome r;
  RunSpec& s = r.spec;
  s.cap = default_cap();

  CLI::App app{"Weighted congestion games: price-of-stability toolkit", "wcg"};
  app.require_subcommand(1);
  app.fallthrough();  // --digits and -o may follow the subcommand
  app.add_option("--digits", s.digits, "significant digits for printed floats")->capture_default_str();
  app.add_option("-o,--output", s.output, "write output to a file instead of stdout");

  std::string d_range, n_range, m_range;
  bool as_json = false, as_csv = false;
  std::string format;

  auto* phi = app.add_subcommand("phi", "root of x^{d+1} = (x+1)^d");
  phi->add_option("--d", s.d, "degree");
  phi->add_option("--d-range", d_range, "degrees a..b (CSV)");

  auto* params = app.add_subcommand("params", "lower-bound parameters (d, phi, c, beta, mu, alpha) as CSV");
  params->add_option("--d", s.d, "degree >= 9");
  params->add_option("--d-range", d_range, "degrees a..b");
  params->add_flag("--envelope", s.envelope, "add the relaxed-floor beta envelopes");

  auto* gen = app.add_subcommand("gen", "emit a game as JSON (or DOT for --network)");
  gen->add_option("kind", s.gen_kind, "general | singleton | random")->required();
  gen->add_option("--d", s.d, "degree");
  gen->add_option("--n", s.n, "instance size")->capture_default_str();
  gen->add_option("--alpha", s.alpha, "singleton: approximation factor")->capture_default_str();
  auto* gen_gamma = gen->add_option("--gamma", s.gamma, "singleton: gamma in (alpha, d), default 1.5");
  gen->add_flag("--network", s.network, "general: directed network version");
  gen->add_option("--format", format, "json | dot");
  gen->add_option("--seed", s.seed, "random: seed")->capture_default_str();
  gen->add_option("--players", s.players, "random: players <= 4")->capture_default_str();
  gen->add_option("--resources", s.resources, "random: resources <= 5")->capture_default_str();
  gen->add_option("--degree", s.degree, "random: degree <= 3")->capture_default_str();
  gen->add_option("--W", s.max_weight, "random: weights in [1, W]")->capture_default_str();
  gen->add_option("--strategies", s.strategies, "random: strategies per player <= 4")->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "equilibria, OPT, PoS and PoA of a game file");
  analyze->add_option("game", s.input, "game JSON")->required();
  analyze->add_option("--alpha", s.alpha, "approximation factor >= 1")->capture_default_str();
  auto* en = analyze->add_flag("--enumerate", "exhaustive enumeration (default)");
  analyze->add_flag("--descend", s.descend, "potential local descent instead")->excludes(en);
  auto* an_gamma = analyze->add_option("--gamma", s.gamma, "potential parameter >= 1")->capture_default_str();
  analyze->add_flag("--json", as_json, "JSON report");
  analyze->add_flag("--csv", as_csv, "CSV summary");
  analyze->add_option("--cap", s.cap, "profile cap (env WCG_ENUM_CAP)");

  auto* descend = app.add_subcommand("descend", "minimize the approximate potential");
  descend->add_option("game", s.input, "game JSON")->required();
  auto* de_gamma = descend->add_option("--gamma", s.gamma, "potential parameter >= 1")->capture_default_str();
  descend->add_flag("--global", s.global, "global minimizer by enumeration");
  auto* de_alpha = descend->add_option("--alpha", s.alpha, "target approximation (default: the guarantee)");
  descend->add_flag("--json", as_json, "JSON report");
  descend->add_flag("--csv", as_csv, "CSV summary");
  descend->add_option("--cap", s.cap, "profile cap (env WCG_ENUM_CAP)");

  auto* table = app.add_subcommand("table", "CSV tables");
  table->add_option("name", s.table, "pos-convergence | singleton-convergence | pathologies")->required();
  table->add_option("--d", s.d, "degree");
  table->add_option("--n", n_range, "n range a..b");
  table->add_option("--m", m_range, "pathologies: m range a..b");
  table->add_option("--alpha", s.alpha, "singleton: alpha")->capture_default_str();
  auto* tb_gamma = table->add_option("--gamma", s.gamma, "singleton: gamma, default 1.5");

  auto* ratios = app.add_subcommand("ratios", "closed-form predicted ratios");
  ratios->add_option("--d", s.d, "degree");
  ratios->add_option("--alpha", s.alpha, "alpha")->capture_default_str();
  auto* ra_gamma = ratios->add_option("--gamma", s.gamma, "gamma");
  ratios->add_option("--n", s.n, "n")->capture_default_str();
  ratios->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    r.exit_now = true;
    r.code = app.exit(e, out, err) == 0 ? kOk : kUsage;
    return r;
  }

  try {
    if (phi->parsed()) s.command = Command::Phi;
    if (params->parsed()) s.command = Command::Params;
    if (gen->parsed()) s.command = Command::Gen;
    if (analyze->parsed()) s.command = Command::Analyze;
    if (descend->parsed()) s.command = Command::Descend;
    if (table->parsed()) s.command = Command::Table;
    if (ratios->parsed()) s.command = Command::Ratios;

    s.gamma_set = gen_gamma->count() + an_gamma->count() + de_gamma->count() + tb_gamma->count() +
                      ra_gamma->count() > 0;
    s.alpha_set = de_alpha->count() > 0;
    if (!d_range.empty()) s.d_range = parse_range(d_range);
    if (!n_range.empty()) s.n_range = parse_range(n_range);
    if (!m_range.empty()) s.m_range = parse_range(m_range);
    if (as_json && as_csv) throw validation_error("choose one of --json and --csv");
    if (as_json) s.format = Format::Json;
    if (as_csv) s.format = Format::Csv;
    if (s.command == Command::Phi || s.command == Command::Params || s.command == Command::Table)
      s.format = (s.command == Command::Phi && !s.d_range) ? Format::Text : Format::Csv;
    if (s.command == Command::Ratios && !as_json) s.format = Format::Csv;
    if (s.command == Command::Gen) {
      if (format.empty() || format == "json")
        s.format = Format::Json;
      else if (format == "dot")
        s.format = Format::Dot;
      else
        throw validation_error("--format must be json or dot");
    }
    validate(s);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    r.exit_now = true;
    r.code = kUsage;
  }
  return r;
}

}  // namespace wcg::cli
