#include "ccl/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>

using namespace ccl;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream os, es;
  const int code = run_cli(args, os, es);
  return {code, os.str(), es.str()};
}

}  // namespace

TEST(Cli, ParseRenderRoundTrip) {
  const std::vector<std::vector<std::string>> cases = {
      {"crystal", "build", "--type", "A2", "--lambda", "1,1", "--format", "dot"},
      {"crystal", "cactus", "--type", "A1", "--lambda", "1", "--gen", "s13,s12", "--tensor-power", "3"},
      {"moduli", "chart", "--tree", "((12)3)", "--u", "1/2"},
      {"moduli", "schedule", "--n", "4", "--gen", "s13", "--z", "0,0.5,2,3.25", "--delta", "0.01"},
      {"gaudin", "monodromy", "--g", "sl2", "--spins", "1,1,1", "--mu", "1", "--gen", "s12", "--seed", "7",
       "--fidelity", "0.995", "--max-depth", "30"},
      {"gaudin", "pentagon", "--chi", "0.1", "--reversed"},
      {"verify", "all", "--suite", "crystal", "--junit", "r.xml", "--timing"},
  };
  for (const auto& args : cases) {
    const CliConfig c = parse_cli(args);
    const auto r = render_cli(c);
    EXPECT_EQ(parse_cli(r), c) << args[0] << " " << args[1];
    EXPECT_EQ(render_cli(parse_cli(r)), r);
  }
  const auto c = parse_cli({"gaudin", "monodromy", "--spins", "1,1,1", "--gen", "s12", "--seed", "7"});
  EXPECT_EQ(c.seed, std::optional<std::uint64_t>(7));
  EXPECT_EQ(c.gens, std::vector<std::string>{"s12"});
}

TEST(Cli, CrystalBuildExample) {
  const auto r = run({"crystal", "build", "--type", "A2", "--lambda", "1,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["size"], 8);
}

TEST(Cli, MonodromyIsByteIdenticalForEqualSeeds) {
  const std::vector<std::string> args = {"gaudin", "monodromy", "--g", "sl2", "--spins", "1,1,1", "--mu", "1", "--gen", "s12", "--seed", "7"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["permutation"], nlohmann::json::array({0, 1}));
  EXPECT_EQ(j["seed"], 7);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", "all", "--suite", "crystal"}).code, 0);
  const auto bad = run({"gaudin", "monodromy", "--spins", "1,1", "--gen", "s13"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_EQ(run({"nonsense"}).code, 3);
  EXPECT_EQ(run({"crystal", "build", "--type", "A2", "--lambda", "1"}).code, 3);
  const auto inc = run({"gaudin", "monodromy", "--spins", "1,1,1", "--mu", "1", "--gen", "s13", "--fidelity", "1.5"});
  EXPECT_EQ(inc.code, 2);
  EXPECT_NE(inc.err.find("inconclusive"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyCaseAndReports) {
  const auto path = std::string(::testing::TempDir()) + "ccl_cli_junit.xml";
  const auto r = run({"verify", "case", "--id", "external/sl2/1,1,1/mu=1/s13", "--seed", "3", "--junit", path});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"]["equal"], 1);
  std::ifstream f(path);
  std::string xml((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_NE(xml.find("testsuites"), std::string::npos);
  std::remove(path.c_str());
  EXPECT_EQ(run({"verify", "case", "--id", "no-such-case"}).code, 3);
}

TEST(Cli, ConfigFile) {
  const auto path = std::string(::testing::TempDir()) + "ccl_cli_config.json";
  std::ofstream(path) << R"({"algebra": "sl2", "spins": [1, 1, 1, 1], "mu": 0, "generator": "s13",
                             "base_z": [0, 1, 2, 3], "delta_star": 0.05, "seed": 5, "tolerances": {"fidelity": 0.99}})";
  const auto r = run({"gaudin", "monodromy", "--config", path});
  std::remove(path.c_str());
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["permutation"], nlohmann::json::array({1, 0}));
  EXPECT_EQ(j["seed"], 5);
}
