#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef TREESHIFT_BIN_PATH
#error "TREESHIFT_BIN_PATH must point at the CLI binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI, capturing stdout only (stderr goes to the test log).
RunResult run_cli(const std::string& args) {
  const std::string command = std::string(TREESHIFT_BIN_PATH) + " " + args;
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

const char* kDoubling = R"({"d":2, "alphabet":["a","b"],
  "allowed":[["a",["a","a"]],["a",["b","b"]],["b",["a","b"]],["b",["b","a"]]]})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("reports are deterministic") {
    const auto spec = write_temp("treeshift_cli_doubling.json", kDoubling);
    const RunResult first = run_cli("entropy " + spec.string() + " --witness");
    const RunResult second = run_cli("entropy " + spec.string() + " --witness");
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(!first.output.empty());
  }

  TEST_CASE("the envelope carries command, version, digest, and result") {
    const auto spec = write_temp("treeshift_cli_doubling.json", kDoubling);
    const RunResult run = run_cli("--format compact entropy " + spec.string());
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.output);
    CHECK(report["command"] == "entropy");
    CHECK(report["version"] == "treeshift 0.1.0");
    CHECK(report["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    CHECK(report["result"]["entropy"].get<double>() == doctest::Approx(0.6931471805599453));
    CHECK(report["result"]["exhaustive"] == true);
    CHECK(report["result"]["reduction_total"] == "4");
  }

  TEST_CASE("pretty and compact renderings carry the same document") {
    const auto spec = write_temp("treeshift_cli_doubling.json", kDoubling);
    const RunResult pretty = run_cli("entropy " + spec.string());
    const RunResult compact = run_cli("--format compact entropy " + spec.string());
    CHECK(json::parse(pretty.output) == json::parse(compact.output));
  }

  TEST_CASE("exit code 2 on malformed input") {
    const auto bad = write_temp("treeshift_cli_bad.json", "{nope");
    CHECK(run_cli("entropy " + bad.string()).exit_code == 2);
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
    const auto spec = write_temp("treeshift_cli_doubling.json", kDoubling);
    CHECK(run_cli("minimality " + spec.string() + " --pattern '[\"z\",[\"a\",\"a\"]]'").exit_code ==
          2);
  }

  TEST_CASE("exit code 1 on domain errors") {
    const auto empty = write_temp("treeshift_cli_empty.json",
                                  R"({"d":1, "alphabet":["a"], "allowed":[]})");
    CHECK(run_cli("entropy " + empty.string()).exit_code == 1);
  }

  TEST_CASE("exit code 3 on budget errors") {
    const auto spec = write_temp("treeshift_cli_doubling.json", kDoubling);
    const RunResult run = run_cli("snre " + spec.string() + " --exact-levels 12 --digit-budget 5");
    CHECK(run.exit_code == 3);
  }

  TEST_CASE("oracle cross-checks and reports matches") {
    const auto spec = write_temp("treeshift_cli_doubling.json", kDoubling);
    const RunResult run = run_cli("--format compact oracle " + spec.string() + " --height 3");
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.output);
    CHECK(report["result"]["all_match"] == true);
    CHECK(report["result"]["heights"][2]["brute"] == json::array({"8", "8"}));
  }

  TEST_CASE("stdin input works") {
    const RunResult run =
        run_cli(std::string("--format compact entropy - <<'SPEC'\n") + kDoubling + "\nSPEC");
    REQUIRE(run.exit_code == 0);
    CHECK(json::parse(run.output)["result"]["entropy"].get<double>() ==
          doctest::Approx(0.6931471805599453));
  }

  TEST_CASE("diagnostics mark pruned symbols") {
    // c roots nothing, so the CLI prunes it and says so.
    const auto dead = write_temp("treeshift_cli_dead.json",
                                 R"({"d":1, "alphabet":["a","c"], "allowed":[["a",["a"]]]})");
    const RunResult run = run_cli("--format compact entropy " + dead.string());
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.output);
    bool saw = false;
    for (const auto& diagnostic : report["diagnostics"])
      if (diagnostic["code"] == "pruned-symbols") saw = true;
    CHECK(saw);
  }

  TEST_CASE("version flag") {
    CHECK(run_cli("--version").exit_code == 0);
  }
}
