#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orbitquad/cli.hpp"

using namespace orbitquad;
using cli::parse_spec;

namespace {

struct Ran {
  int status = -1;
  std::string out;
};

Ran run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = "env -u ORBITQUAD_MAX_BOX " + env + " \"" ORBITQUAD_CLI_PATH "\" " + args + " 2>/dev/null";
  Ran r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

int parse_code(const std::vector<std::string>& args) {
  try {
    parse_spec(args);
  } catch (const cli::CliError& e) {
    return e.code;
  }
  return -1;
}

}  // namespace

TEST(ParseSpec, Decompose) {
  auto s = parse_spec({"decompose", "--alg", "sl:3", "--rep", "sym(2,std)"});
  EXPECT_EQ(s.command, cli::Command::decompose);
  EXPECT_EQ(s.rep_dim, 6u);
  EXPECT_FALSE(s.y);
}

TEST(ParseSpec, CertifyDefaultsAndVector) {
  auto s = parse_spec({"certify", "--alg", "sl:2", "--rep", "sym(2,std)", "--y=-1,0,3/2"});
  EXPECT_EQ(s.trials, 25u);
  EXPECT_EQ(s.seed, 0u);
  ASSERT_TRUE(s.y);
  EXPECT_EQ((*s.y)[2], Scalar(3, 2));
}

TEST(ParseSpec, ComponentsSplitPoints) {
  auto s = parse_spec({"components", "--alg", "sl:2", "--rep", "sym(2,std)", "--points", "1,0,0;0,1,0"});
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_EQ(s.points[1][1], 1);
}

TEST(ParseSpec, ErrorCodes) {
  using namespace cli::exit_code;
  EXPECT_EQ(parse_code({}), parse);
  EXPECT_EQ(parse_code({"ideal", "--alg", "sl:2", "--rep", "std"}), parse);
  EXPECT_EQ(parse_code({"ideal", "--alg", "sl:2", "--rep", "std", "--y", "1,x"}), parse);
  EXPECT_EQ(parse_code({"ideal", "--alg", "sl:2", "--rep", "std", "--y", "0,0"}), parse);
  EXPECT_EQ(parse_code({"ideal", "--alg", "sl:2", "--rep", "std", "--y", "1,0,0"}), dimension);
  EXPECT_EQ(parse_code({"decompose", "--alg", "so:5", "--rep", "std"}), unsupported);
  EXPECT_EQ(parse_code({"decompose", "--alg", "sl:1", "--rep", "std"}), unsupported);
  EXPECT_EQ(parse_code({"decompose", "--alg", "sl3", "--rep", "std"}), parse);
  EXPECT_EQ(parse_code({"chordal", "--n", "4", "--k", "5", "--p", "1"}), unsupported);
  EXPECT_EQ(parse_code({"decompose", "--help"}), ok);
}

TEST(ParseSpec, SpecEchoOmitsOutput) {
  auto s = parse_spec({"certify", "--alg", "sl:2", "--rep", "std", "--y", "1,0", "--output", "/tmp/x.json"});
  Json j = cli::spec_json(s);
  EXPECT_FALSE(j.contains("output"));
  EXPECT_EQ(j["trials"], 25);
  EXPECT_EQ(j["y"], Json::parse(R"(["1","0"])"));
}

TEST(EndToEnd, Decompose) {
  auto r = run_cli("decompose --alg sl:4 --rep 'sym(2,wedge(2,std))'");
  ASSERT_EQ(r.status, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["result"]["isotypic"]["dims"], Json::parse("[20,1]"));
}

TEST(EndToEnd, Ideal) {
  auto r = run_cli("ideal --alg sl:2 --rep 'sym(3,std)' --y 1,0,0,0");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out)["result"]["ideal"]["dim"], 3);
}

TEST(EndToEnd, Certify) {
  auto r = run_cli("certify --alg sl:2 --rep 'sym(2,std)' --y 1,0,0 --trials 5");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out)["result"]["verdict"], "consistent");
}

TEST(EndToEnd, Chordal) {
  auto good = run_cli("chordal --n 4 --k 2 --p 1");
  ASSERT_EQ(good.status, 0);
  EXPECT_EQ(Json::parse(good.out)["result"]["matched_tail"], 1);
  EXPECT_EQ(run_cli("chordal --n 4 --k 2 --p 2 --samples 1").status, cli::exit_code::inconclusive);
}

TEST(EndToEnd, Components) {
  auto r = run_cli("components --alg sl:2 --rep 'sym(2,std)' --points '1,0,0;0,1,0'");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out)["result"]["components"]["S"], Json::parse("[[0],[0,1]]"));
}

TEST(EndToEnd, ErrorStatuses) {
  EXPECT_EQ(run_cli("ideal --alg sl:2 --rep std --y 1,0,0").status, cli::exit_code::dimension);
  EXPECT_EQ(run_cli("ideal --alg sl:2 --rep std --y 1,q").status, cli::exit_code::parse);
  EXPECT_EQ(run_cli("decompose --alg sp:4 --rep std").status, cli::exit_code::unsupported);
  EXPECT_EQ(run_cli("frobnicate").status, cli::exit_code::parse);
}

TEST(EndToEnd, CapIsInconclusive) {
  auto r = run_cli("certify --alg sl:2 --rep 'sym(2,std)' --y 1,0,0", "ORBITQUAD_MAX_BOX=2");
  ASSERT_EQ(r.status, cli::exit_code::inconclusive);
  Json e = Json::parse(r.out)["result"]["error"];
  EXPECT_EQ(e["kind"], "cap");
  EXPECT_EQ(e["cap"], "box");
  EXPECT_EQ(run_cli("decompose --alg sl:2 --rep std", "ORBITQUAD_MAX_BOX=abc").status, cli::exit_code::parse);
}

TEST(EndToEnd, RerunsAreByteIdentical) {
  const std::string args = "certify --alg sl:2 --rep 'sym(3,std)' --y 1,2,0,1 --trials 6 --seed 4";
  auto a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.out, b.out);
}

TEST(EndToEnd, OutputFile) {
  auto path = std::filesystem::temp_directory_path() / "orbitquad_cli_test.json";
  std::filesystem::remove(path);
  auto r = run_cli("decompose --alg sl:2 --rep std --output " + path.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(Json::parse(ss.str())["result"]["dim"], 2);
  std::filesystem::remove(path);
}
