#ifndef ORBITQUAD_CLI_HPP
#define ORBITQUAD_CLI_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitquad/json_io.hpp"

namespace orbitquad::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int parse = 2;
inline constexpr int dimension = 3;
inline constexpr int unsupported = 4;
inline constexpr int discrepancy = 5;
inline constexpr int inconclusive = 6;
}  // namespace exit_code

struct CliError : Error {
  CliError(int code_, const std::string& msg) : Error(msg), code(code_) {}
  int code;
};

enum class Command { decompose, ideal, certify, chordal, components };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::decompose: return "decompose";
    case Command::ideal: return "ideal";
    case Command::certify: return "certify";
    case Command::chordal: return "chordal";
    case Command::components: return "components";
  }
  return "";
}

struct RunSpec {
  Command command = Command::decompose;
  std::string algebra;
  std::string rep;
  std::optional<Vec> y;
  std::uint64_t seed = 0;
  std::size_t trials = 25;
  std::string output;
  int n = 0, k = 0, p = 1;
  std::size_t samples = 0;
  std::vector<Vec> points;
  std::size_t rep_dim = 0;
};

/// "sl:<n>"; anything else with a colon is an algebra we do not build.
inline std::size_t parse_algebra(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw CliError(exit_code::parse, "algebra must look like sl:<n>, got '" + text + "'");
  std::string family = text.substr(0, colon), rank = text.substr(colon + 1);
  if (family != "sl") throw CliError(exit_code::unsupported, "unsupported algebra family '" + family + "'");
  if (rank.empty() || !std::all_of(rank.begin(), rank.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw CliError(exit_code::parse, "malformed algebra rank in '" + text + "'");
  std::size_t n = std::stoul(rank);
  if (n < 2) throw CliError(exit_code::unsupported, "sl(n) needs n >= 2");
  return n;
}

inline Rep build_spec_rep(const RunSpec& s) {
  auto g = std::make_shared<const LieAlg>(make_sl(parse_algebra(s.algebra)));
  try {
    return build_rep(g, s.rep);
  } catch (const UnsupportedError& e) {
    throw CliError(exit_code::unsupported, e.what());
  }
}

namespace detail {

inline Vec parse_cli_vector(const std::string& text, const char* flag) {
  try {
    return parse_vector(text);
  } catch (const Error& e) {
    throw CliError(exit_code::parse, std::string(flag) + ": " + e.what());
  }
}

inline void check_dim(const Vec& v, std::size_t dim, const char* flag) {
  if (v.size() != dim)
    throw CliError(exit_code::dimension, std::string(flag) + ": length " + std::to_string(v.size()) +
                                             " does not match rep dim " + std::to_string(dim));
  if (is_zero(v)) throw CliError(exit_code::parse, std::string(flag) + ": vector must be nonzero");
}

}  // namespace detail

/// Parses arguments (without the program name). Builds the rep to check vector lengths.
inline RunSpec parse_spec(const std::vector<std::string>& args) {
  RunSpec s;
  std::string y, points;
  CLI::App app{"orbitquad"};
  app.require_subcommand(1);

  auto* dec = app.add_subcommand("decompose", "isotypic decomposition of a module");
  auto* ide = app.add_subcommand("ideal", "quadrics vanishing on the orbit of y");
  auto* cer = app.add_subcommand("certify", "catalecticant correspondence checks for (V, y)");
  auto* cho = app.add_subcommand("chordal", "ideal of a restricted chordal variety of a Grassmannian");
  auto* com = app.add_subcommand("components", "containments among the M_x of given points");
  for (auto* sub : {dec, ide, cer, com}) {
    sub->add_option("--alg", s.algebra, "sl:<n>")->required();
    sub->add_option("--rep", s.rep, "module expression")->required();
  }
  for (auto* sub : {ide, cer}) sub->add_option("--y", y, "comma-separated rationals")->required();
  com->add_option("--points", points, "vectors separated by ';'")->required();
  for (auto* sub : {cer, cho}) sub->add_option("--seed", s.seed);
  cer->add_option("--trials", s.trials);
  cho->add_option("--n", s.n)->required();
  cho->add_option("--k", s.k)->required();
  cho->add_option("--p", s.p)->required();
  cho->add_option("--samples", s.samples, "0 = default budget");
  for (auto* sub : {dec, ide, cer, cho, com}) sub->add_option("--output", s.output, "file instead of stdout");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    CLI::App* shown = &app;
    for (auto* sub : app.get_subcommands()) shown = sub;
    throw CliError(exit_code::ok, shown->help());
  } catch (const CLI::ParseError& e) {
    throw CliError(exit_code::parse, e.what());
  }

  const std::vector<std::pair<CLI::App*, Command>> subs{{dec, Command::decompose},
                                                        {ide, Command::ideal},
                                                        {cer, Command::certify},
                                                        {cho, Command::chordal},
                                                        {com, Command::components}};
  for (const auto& [sub, cmd] : subs)
    if (sub->parsed()) s.command = cmd;

  if (s.command == Command::chordal) {
    try {
      ChordalSpec{s.n, s.k, s.p}.validate();
    } catch (const Error& e) {
      throw CliError(exit_code::unsupported, e.what());
    }
    return s;
  }
  if (!y.empty()) s.y = detail::parse_cli_vector(y, "--y");
  if (!points.empty()) {
    std::size_t start = 0;
    while (true) {
      auto end = points.find(';', start);
      s.points.push_back(detail::parse_cli_vector(points.substr(start, end - start), "--points"));
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  try {
    Limits::from_env();
  } catch (const Error& e) {
    throw CliError(exit_code::parse, e.what());
  }
  s.rep_dim = build_spec_rep(s).dim();
  if (s.y) detail::check_dim(*s.y, s.rep_dim, "--y");
  for (const auto& v : s.points) detail::check_dim(v, s.rep_dim, "--points");
  return s;
}

/// Echo of the fields the command reads.
inline Json spec_json(const RunSpec& s) {
  Json j;
  j["command"] = to_string(s.command);
  if (s.command == Command::chordal) {
    j["n"] = s.n;
    j["k"] = s.k;
    j["p"] = s.p;
    j["samples"] = s.samples;
    j["seed"] = s.seed;
    return j;
  }
  j["algebra"] = s.algebra;
  j["rep"] = s.rep;
  j["rep_dim"] = s.rep_dim;
  if (s.y) j["y"] = to_json(*s.y);
  if (s.command == Command::certify) {
    j["seed"] = s.seed;
    j["trials"] = s.trials;
  }
  if (s.command == Command::components) {
    Json pts = Json::array();
    for (const auto& v : s.points) pts.push_back(to_json(v));
    j["points"] = pts;
  }
  return j;
}

struct RunResult {
  Json document;
  int exit_code = exit_code::ok;
};

inline RunResult run(const RunSpec& s) {
  RunResult out;
  out.document["schema_version"] = schema_version;
  out.document["spec"] = spec_json(s);
  Json result;
  try {
    switch (s.command) {
      case Command::decompose: {
        Rep r = build_spec_rep(s);
        result["label"] = r.label();
        result["dim"] = r.dim();
        result["isotypic"] = to_json(isotypic_decomposition(r));
        break;
      }
      case Command::ideal: {
        SquareRep sq = square_of(build_spec_rep(s));
        Subspace orbit = orbit_module(sq, *s.y);
        QuadraticIdeal q = ideal_of(orbit, sq.base.dim());
        result["dims"] = {{"V", sq.base.dim()}, {"S2", sq.square.dim()}, {"orbit_module", orbit.dim()}, {"ideal", q.dim()}};
        result["ideal"] = to_json(q);
        break;
      }
      case Command::certify: {
        Rep r = build_spec_rep(s);
        CertReport rep = certify_irreducibility(r, *s.y, s.trials, s.seed, Limits::from_env());
        result = to_json(rep);
        if (rep.verdict == Verdict::discrepancy) out.exit_code = exit_code::discrepancy;
        if (rep.verdict == Verdict::inconclusive) out.exit_code = exit_code::inconclusive;
        break;
      }
      case Command::chordal: {
        result = to_json(chordal_ideal({s.n, s.k, s.p}, s.samples, s.seed));
        if (!result["stabilized"].get<bool>() || result["matched_tail"].is_null())
          out.exit_code = exit_code::inconclusive;
        break;
      }
      case Command::components: {
        SquareRep sq = square_of(build_spec_rep(s));
        IsotypicDecomposition iso = isotypic_decomposition(sq.square);
        result["isotypic"] = to_json(iso);
        result["components"] = to_json(component_analysis(sq, iso, s.points));
        break;
      }
    }
  } catch (const CapExceeded& e) {
    result = Json{{"error", {{"kind", "cap"}, {"cap", e.cap}, {"limit", e.limit}, {"value", e.value}, {"message", e.what()}}}};
    out.exit_code = exit_code::inconclusive;
  }
  out.document["result"] = result;
  return out;
}

}  // namespace orbitquad::cli

#endif  // ORBITQUAD_CLI_HPP
