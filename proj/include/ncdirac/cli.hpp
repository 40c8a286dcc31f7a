#pragma once

// Command-line front end: argument parsing, dispatch to the check suites,
// output and exit codes (0 pass, 1 check failure, 2 usage error).

#include "ncdirac/checks.hpp"
#include "ncdirac/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ncdirac {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

namespace cli_detail {

inline int parse_sign(const std::string& text, const char* name) {
  if (text == "1" || text == "+1") return 1;
  if (text == "-1") return -1;
  throw ConfigError(std::string(name) + " must be +1 or -1, got '" + text + "'");
}

inline Rational parse_q(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string(name) + ": " + e.what());
  }
}

struct RawOptions {
  std::string eps4 = "1", eps5 = "-1", ell = "1", g = "1", vev = "1/100";
  long long order = 4;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;
  std::string fixture;
  bool all_signs = false;
  bool timings = false;
  std::string param, from, to;
  int steps = 0;
};

inline RunConfig to_config(const RawOptions& raw) {
  RunConfig c;
  c.eps4 = parse_sign(raw.eps4, "eps4");
  c.eps5 = parse_sign(raw.eps5, "eps5");
  c.ell = parse_q(raw.ell, "ell");
  c.g = parse_q(raw.g, "g");
  c.vev = parse_q(raw.vev, "vev");
  if (raw.order < 1) throw ConfigError("order must be at least 1");
  c.order = static_cast<unsigned>(raw.order);
  c.seed = raw.seed;
  c.all_signs = raw.all_signs;
  c.timings = raw.timings;
  if (raw.format != "json" && raw.format != "csv") throw ConfigError("format must be json or csv");
  c.validate();
  return c;
}

inline std::vector<int> eps5_values(const RunConfig& c) {
  return c.all_signs ? std::vector<int>{1, -1} : std::vector<int>{c.eps5};
}

}  // namespace cli_detail

/// Runs one command line (args excludes the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using cli_detail::RawOptions;
  RawOptions raw;
  CLI::App app{"Checks for the deformed Heisenberg-Poincare algebra, its extended Dirac operator and the seesaw spectrum",
               "ncdirac"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file with the same keys as the flags; flags take precedence");
  app.add_option("--eps4", raw.eps4, "sign eps4 (+1 or -1)");
  app.add_option("--eps5", raw.eps5, "sign eps5 (+1 or -1)");
  app.add_option("--ell", raw.ell, "length parameter ell > 0 (p/q or decimal)");
  app.add_option("--g", raw.g, "coupling g (p/q or decimal)");
  app.add_option("--vev", raw.vev, "vacuum value of the scalar, >= 0");
  app.add_option("--order", raw.order, "truncation order N in ell");
  app.add_option("--seed", raw.seed, "seed for randomized checks");
  app.add_option("--format", raw.format, "json or csv");
  app.add_option("--out", raw.out, "write output to PATH instead of standard output");
  app.add_option("--fixture", raw.fixture, "structure-constant table to check instead of the built-in one");
  app.add_flag("--all-signs", raw.all_signs, "run every sign combination");
  app.add_flag("--timings", raw.timings, "add duration_ms to every report");

  auto* verify = app.add_subcommand("verify", "algebraic identity checks");
  verify->require_subcommand(1);
  auto* v_alg = verify->add_subcommand("algebra", "Jacobi, isomorphism and contraction");
  auto* v_rep = verify->add_subcommand("rep", "Weyl-algebra representation closure");
  auto* v_cl = verify->add_subcommand("clifford", "Clifford relations");
  auto* v_pw = verify->add_subcommand("planewave", "plane-wave identities at truncation order N");
  auto* modes = app.add_subcommand("modes", "dispersion branches, spinor solutions, boosts");
  auto* seesaw = app.add_subcommand("seesaw", "leading-order and exact light masses");
  auto* scan = app.add_subcommand("scan", "seesaw and dispersion table over one parameter");
  scan->add_option("--param", raw.param, "ell, g or vev")->required();
  scan->add_option("--from", raw.from, "first value")->required();
  scan->add_option("--to", raw.to, "last value")->required();
  scan->add_option("--steps", raw.steps, "number of rows")->required();
  auto* check = app.add_subcommand("check", "acceptance suites");
  check->require_subcommand(1);
  auto* check_all_cmd = check->add_subcommand("all", "full acceptance suite");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  RunConfig cfg;
  std::optional<StructureConstants> fixture;
  std::optional<ScanParam> scan_param;
  Rational from, to;
  try {
    cfg = cli_detail::to_config(raw);
    if (!raw.fixture.empty()) {
      if (!v_alg->parsed()) throw ConfigError("--fixture applies to 'verify algebra' only");
      fixture = load_algebra_fixture(raw.fixture);
    }
    if (scan->parsed()) {
      scan_param = parse_scan_param(raw.param);
      from = cli_detail::parse_q(raw.from, "from");
      to = cli_detail::parse_q(raw.to, "to");
      if (raw.steps < 1) throw ConfigError("steps must be at least 1");
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string command;
  std::vector<CheckReport> reports;
  std::string text;
  bool pass = true;
  try {
    auto timed = [&](const std::function<std::vector<CheckReport>()>& f) {
      detail::append(reports, detail::timed(cfg.timings, f));
    };
    if (v_alg->parsed()) {
      command = "verify algebra";
      if (fixture) {
        timed([&] { return check_algebra(*fixture, "fixture"); });
      } else {
        std::vector<std::pair<int, int>> signs = {{cfg.eps4, cfg.eps5}};
        if (cfg.all_signs) signs = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        for (auto [e4, e5] : signs) timed([&] { return check_algebra(e4, e5); });
      }
    } else if (v_rep->parsed()) {
      command = "verify rep";
      for (int e5 : cli_detail::eps5_values(cfg)) timed([&] { return check_rep(e5); });
    } else if (v_cl->parsed()) {
      command = "verify clifford";
      for (int e5 : cli_detail::eps5_values(cfg)) timed([&] { return check_clifford(e5); });
    } else if (v_pw->parsed()) {
      command = "verify planewave";
      for (int e5 : cli_detail::eps5_values(cfg)) timed([&] { return check_planewave(e5, cfg.order); });
    } else if (modes->parsed()) {
      command = "modes";
      for (int e5 : cli_detail::eps5_values(cfg)) timed([&] { return check_modes(e5, cfg.ell, cfg.seed); });
    } else if (seesaw->parsed()) {
      command = "seesaw";
      for (int e5 : cli_detail::eps5_values(cfg)) {
        RunConfig c = cfg;
        c.eps5 = e5;
        timed([&] { return check_seesaw(c.coupling()); });
      }
    } else if (check_all_cmd->parsed()) {
      command = "check all";
      reports = check_all(cfg.seed, cfg.timings);
    }

    if (scan_param) {
      command = "scan";
      const auto rows = run_scan(cfg, *scan_param, from, to, raw.steps);
      for (const auto& r : rows) pass = pass && r.at("status") == "pass";
      if (raw.format == "csv") {
        text = to_csv(scan_columns(), rows);
      } else {
        Json doc{{"command", command},
                 {"config", cfg.to_json()},
                 {"scan", {{"param", raw.param}, {"from", from.get_str()}, {"to", to.get_str()}, {"steps", raw.steps}}},
                 {"rows", rows},
                 {"status", pass ? "pass" : "fail"}};
        text = doc.dump(2) + "\n";
      }
    } else {
      pass = all_pass(reports);
      Json config = cfg.to_json();
      config["all_signs"] = cfg.all_signs;
      if (fixture) config["fixture"] = raw.fixture;
      text = raw.format == "csv" ? reports_to_csv(reports) : run_document(command, config, reports).dump(2) + "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }

  if (raw.out.empty()) {
    out << text;
  } else {
    std::ofstream f(raw.out, std::ios::binary);
    if (!f) {
      err << "config error: cannot write " << raw.out << "\n";
      return kExitUsage;
    }
    f << text;
  }
  return pass ? kExitPass : kExitFail;
}

inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace ncdirac
