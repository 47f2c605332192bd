#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int status;
  std::string out;
};

// Runs the CLI with stderr folded into stdout when asked.
Run cli(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(BCR_CLI_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string net(const char* name) { return std::string(BCR_NETWORKS_DIR) + "/" + name; }

std::filesystem::path scratch(const char* name) {
  return std::filesystem::temp_directory_path() / ("bcr_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("capacity of the fractional three-receiver network", "[cli]") {
  const Run r = cli("capacity --config " + net("three_receivers.cfg") + " --messages 1,123");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "R_{123} <= 2\n"
        "R_{1} + R_{123} <= 3\n"
        "R_{1} + 2R_{123} <= 11/2\n"
        "-R_{1} <= 0\n"
        "-R_{123} <= 0\n");
}

TEST_CASE("check reports the published witness", "[cli]") {
  const std::string base = "check --config " + net("seven_receivers.cfg") + " --messages 123,~ --point 3,1";
  const Run named = cli(base + " --assignment example8");
  CHECK(named.status == 0);
  CHECK(named.out ==
        "FEASIBLE\n"
        "  R_{123->12345} = 1\n"
        "  R_{123->12347} = 1\n"
        "  R_{123->12357} = 1\n");
  const Run canonical = cli(base + " --generation reduced");
  CHECK(canonical.status == 1);
  CHECK(canonical.out.starts_with("INFEASIBLE\n  ["));
}

TEST_CASE("vertices of the zero network", "[cli]") {
  const Run r = cli("vertices --config " + net("zero.cfg") + " --messages 1,123 --format csv");
  CHECK(r.status == 0);
  CHECK(r.out == "R_{1},R_{123}\n0,0\n");
  CHECK(cli("vertices --config " + net("zero.cfg") + " --messages 1,123").out == "(0,0)\n");
}

TEST_CASE("symbolic region without a config", "[cli]") {
  const Run r = cli("region --receivers 3 --messages 1,23");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("R_{1} - R_{1->1} - R_{1->12} - R_{1->13} - R_{1->123} = 0\n"));
  CHECK(r.out.find("R_{1->1} <= I(U_{1};Y_1|U_{12,13,123})\n") != std::string::npos);
  const Run dump = cli("region --receivers 3 --messages 1,23 --format dump");
  CHECK(dump.out.find("\"kind\": \"symbolic\"") != std::string::npos);
}

TEST_CASE("projection and comparison", "[cli]") {
  const std::string base = " --config " + net("three_receivers.cfg") + " --messages 1,123";
  const Run p = cli("project --minimal" + base);
  CHECK(p.status == 0);
  CHECK(p.out.find("R_{1->") == std::string::npos);
  CHECK(cli("compare" + base).out == "equal\n");
  CHECK(cli("compare --left capacity --right cutset" + base).out == "equal\n");
  const Run e = cli("compare --left achievable --right capacity --expansion E" + base);
  CHECK(e.status == 0);
  CHECK(e.out == "left inside right\nright vertex outside left: (0,2)\n");
  CHECK(cli("compare --left capacity --right achievable --expansion E" + base).out ==
        "right inside left\nleft vertex outside right: (0,2)\n");
}

TEST_CASE("dumps round trip through compare", "[cli]") {
  const auto path = scratch("cap.json");
  const std::string base = " --config " + net("three_receivers.cfg") + " --messages 1,123";
  REQUIRE(cli("capacity --format dump --out " + path.string() + base).status == 0);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"kind\": \"polyhedron\"") != std::string::npos);
  CHECK(cli("compare --left " + path.string() + " --right capacity" + base).out == "equal\n");
  CHECK(cli("vertices --source " + path.string() + base).status == 0);
  std::filesystem::remove(path);
}

TEST_CASE("output is byte-identical across runs", "[cli]") {
  for (const char* verb : {"region", "project", "capacity", "vertices"}) {
    const std::string args = std::string(verb) + " --config " + net("three_receivers.cfg") + " --messages 1,123";
    const Run a = cli(args), b = cli(args);
    CHECK(a.status == 0);
    CHECK_FALSE(a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("exit codes separate usage, guard and config failures", "[cli]") {
  const std::string three = " --config " + net("three_receivers.cfg");
  CHECK(cli("").status == 2);
  CHECK(cli("capacity" + three).status == 2);
  CHECK(cli("check --messages 1,123 --point 1/2,x" + three).status == 2);
  CHECK(cli("check --messages 1,123" + three).status == 2);
  CHECK(cli("capacity --messages 1,23" + three).status == 2);
  CHECK(cli("capacity --messages 1,23 --cutset" + three).status == 0);
  CHECK(cli("vertices --messages 1,123 --format csv --expansion X" + three).status == 2);
  CHECK(cli("region --messages 1,123 --format csv" + three).status == 2);
  CHECK(cli("region --receivers 7 --messages 123,~ --generation full").status == 3);
  CHECK(cli("capacity --messages 1,123 --config /nonexistent.cfg").status == 4);

  const auto bad = scratch("neg.cfg");
  std::ofstream(bad) << "K = 3\n1 = -1\n";
  const Run r = cli("capacity --messages 1,123 --config " + bad.string(), true);
  CHECK(r.status == 4);
  CHECK(r.out.find("line 2") != std::string::npos);
  std::filesystem::remove(bad);
}

TEST_CASE("help documents the receiver-set syntax", "[cli]") {
  const Run r = cli("--help");
  CHECK(r.status == 0);
  CHECK(r.out.find("~3") != std::string::npos);
  for (const char* verb : {"region", "project", "capacity", "check", "compare", "vertices", "selftest"})
    CHECK(r.out.find(verb) != std::string::npos);
}

TEST_CASE("selftest runs a chosen criterion", "[cli]") {
  const Run r = cli("selftest --only 2");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("PASS criterion 2:"));
}
