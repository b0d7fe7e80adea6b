#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dqk/io.hpp"

using dqk::io::Json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout only when asked.
CliResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(DQK_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  CliResult r;
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(DQK_DATA_DIR) + "/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("dqk_cli_test_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, ClassifyFixture) {
  const CliResult r = run("classify " + data("rr_fixture.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "TwoR");
}

TEST(Cli, ClassifyFloatMode) {
  const CliResult r = run("--scalar float classify " + data("rr_fixture.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "TwoR");
}

TEST(Cli, DyadFixtures) {
  CliResult r = run("dyad " + data("rr_dyad.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["classification"]["verdict"], "TwoR");
  r = run("dyad " + data("c_dyad.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["classification"]["verdict"], "C");
}

TEST(Cli, DarbouxVertical) {
  const CliResult r = run("darboux --a 0 --b 1 --c 2");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["vertical"].get<bool>());
  EXPECT_TRUE(j["coincident"].get<bool>());
}

TEST(Cli, DarbouxHandedness) {
  CliResult r = run("darboux --a 1 --b 2 --c 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["handedness"], "LeftRuling");
  r = run("darboux --a 1 --b 2 --c 3 --mannheim");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["handedness"], "RightRuling");
}

TEST(Cli, TraceCsv) {
  CliResult r = run("trace --darboux 1,2,3 --point 1,1,0,0 --samples 5");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,x0,x1,x2,x3");
  int rows = 0;
  std::string last;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      last = line;
      continue;
    }
    ++rows;
  }
  EXPECT_EQ(rows, 5);
  EXPECT_EQ(last, "# degree=2");

  r = run("trace --mannheim 1,2,3 --point 1,1,0,0");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# degree=4"), std::string::npos);
}

TEST(Cli, TraceNeedsExactlyOneMotion) {
  EXPECT_NE(run("trace --point 1,0,0,0").code, 0);
  EXPECT_NE(run("trace --darboux 1,2,3 --mannheim 1,2,3 --point 1,0,0,0").code, 0);
}

TEST(Cli, FactorAndVerifyTransform) {
  CliResult r = run("factor-transform " + data("transform.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j.contains("l"));
  EXPECT_TRUE(j.contains("r"));

  r = run("verify-transform " + data("transform.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out)["overall"].get<bool>());

  r = run("verify-transform " + data("chi.json"));
  ASSERT_EQ(r.code, 0);
  const Json chi = Json::parse(r.out);
  EXPECT_FALSE(chi["overall"].get<bool>());
  EXPECT_FALSE(chi["rulings_preserved"].get<bool>());
  EXPECT_TRUE(chi["pencil_fixed"].get<bool>());

  EXPECT_EQ(run("factor-transform " + data("chi.json")).code, 1);
}

TEST(Cli, Reconstruct) {
  const CliResult r = run("reconstruct " + data("reconstruct_problem.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  std::ifstream in(data("reconstruct_expected.json"));
  const Json expected = Json::parse(in);
  for (const char* name : {"u1", "v1", "u2", "v2"})
    EXPECT_EQ(dqk::io::point_from_json(j["vertices"][name]), dqk::io::point_from_json(expected[name])) << name;
}

TEST(Cli, Example2) {
  const CliResult r = run("example2");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out)["all"].get<bool>());
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "dqk_cli_test_out.json";
  std::filesystem::remove(path);
  const CliResult r = run("--out " + path.string() + " classify " + data("rr_fixture.json"));
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  EXPECT_EQ(Json::parse(in)["verdict"], "TwoR");
  std::filesystem::remove(path);
}

TEST(Cli, EmittedJsonParsesBack) {
  const CliResult r = run("dyad " + data("rr_dyad.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  const dqk::Subspace s = dqk::io::subspace_from_json(j["space"]);
  EXPECT_EQ(s.dim(), 3u);
}

TEST(Cli, MalformedJsonExitsWithTwo) {
  const auto path = temp_file("bad.json", "{\"kind\": ");
  const CliResult r = run("dyad " + path.string(), true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("parse error"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, RationalModeRejectsComplexInput) {
  const auto path = temp_file("complex.json", R"([{"primal": ["i","0","0","0"], "dual": ["0","0","0","0"]},
    {"primal": ["0","1","0","0"], "dual": ["0","0","0","0"]},
    {"primal": ["0","0","1","0"], "dual": ["0","0","0","0"]},
    {"primal": ["0","0","0","1"], "dual": ["0","0","0","0"]}])");
  EXPECT_EQ(run("--scalar rational classify " + path.string()).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, DomainErrorExitsWithOne) {
  // Two axes through the origin meet, which no dyad specification allows.
  const auto path = temp_file("coplanar.json", R"({"kind": "RR",
    "h1": {"primal": ["0","0","0","1"], "dual": ["0","0","0","0"]},
    "h2": {"primal": ["0","1","0","0"], "dual": ["0","0","0","0"]}})");
  const CliResult r = run("dyad " + path.string(), true);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("error"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("classify").code, 2);
  EXPECT_EQ(run("classify /nonexistent/file.json").code, 2);
}
