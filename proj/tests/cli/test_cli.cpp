// tests/cli/test_cli.cpp - End-to-end checks of the xrl binary: exit codes,
// deterministic stdout, file round-trips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "../support/fixtures.hpp"

namespace fs = std::filesystem;

namespace
{

struct RunResult
{
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string & args)
{
  std::string command =
    std::string("XRL_NO_COLOR=1 ") + XRL_CLI_PATH + " " + args + " 2>/dev/null";
  FILE * pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string & name)
{
  return xrl_test::fixture_dir() + "/" + name;
}

fs::path temp_file(const std::string & name, const std::string & content)
{
  fs::path path = fs::temp_directory_path() / ("xrl_cli_" + name);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("cli: validate on a clean file exits 0 with no output")
{
  RunResult r = run_cli("validate " + fixture("s1_linear.xrl.yaml"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("cli: validate on an asymmetric flow exits 1 with one diagnostic line")
{
  std::string source = xrl_test::read_fixture("s1_linear.xrl.yaml");
  std::size_t pos = source.find("references_out: [*click_button]");
  REQUIRE(pos != std::string::npos);
  source.replace(pos, std::string("references_out: [*click_button]").size(),
                 "references_out: []");
  fs::path path = temp_file("xrl006.xrl.yaml", source);

  RunResult r = run_cli("validate " + path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("XRL006") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
  fs::remove(path);
}

TEST_CASE("cli: parse failures exit 2")
{
  fs::path path = temp_file("broken.xrl.yaml", "nodes: [\n");
  RunResult r = run_cli("validate " + path.string());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("XRL-P01") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("cli: validate --json emits a machine-readable array")
{
  fs::path path = temp_file("json.xrl.yaml", "nodes: [\n");
  RunResult r = run_cli("validate --json " + path.string());
  CHECK(r.exit_code == 2);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  REQUIRE(parsed.is_array());
  CHECK(parsed.at(0).at("code") == "XRL-P01");
  CHECK(parsed.at(0).at("line").is_number());
  fs::remove(path);
}

TEST_CASE("cli: run with the bundled scenario completes")
{
  RunResult r = run_cli("run " + fixture("p1_search_email.xrl.yaml") +
                        " --scenario-env p1_search_email --trace text");
  CHECK(r.exit_code == 0);
  const std::string tail = "outcome: completed\n";
  REQUIRE(r.out.size() > tail.size());
  CHECK(r.out.substr(r.out.size() - tail.size()) == tail);
}

TEST_CASE("cli: run json trace is valid json")
{
  RunResult r = run_cli("run " + fixture("s1_linear.xrl.yaml") + " --trace json");
  CHECK(r.exit_code == 0);
  nlohmann::json parsed = nlohmann::json::parse(r.out);
  CHECK(parsed.at("outcome").at("status") == "completed");
  CHECK(parsed.at("steps").size() == 3);
}

TEST_CASE("cli: exhausted budgets exit 3")
{
  RunResult r = run_cli("run " + fixture("s1_linear.xrl.yaml") + " --max-steps 1");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("budget_exhausted") != std::string::npos);
}

TEST_CASE("cli: usage problems exit 4")
{
  CHECK(run_cli("").exit_code == 4);
  CHECK(run_cli("validate").exit_code == 4);
  CHECK(run_cli("frobnicate x").exit_code == 4);
  CHECK(run_cli("validate /nonexistent/file.xrl.yaml").exit_code == 4);
  CHECK(run_cli("run " + fixture("s1_linear.xrl.yaml") + " --scenario-env p9_missing")
          .exit_code == 4);
  CHECK(run_cli("convert " + fixture("s1_linear.xrl.yaml")).exit_code == 4);  // missing --to
}

TEST_CASE("cli: fmt writes the canonical fixpoint")
{
  RunResult once = run_cli("fmt " + fixture("reuse_heavy.xrl.yaml"));
  CHECK(once.exit_code == 0);
  fs::path path = temp_file("fmt.xrl.yaml", once.out);
  RunResult twice = run_cli("fmt " + path.string());
  CHECK(twice.out == once.out);

  // fmt --write rewrites in place and leaves validation results unchanged.
  RunResult write = run_cli("fmt --write " + path.string());
  CHECK(write.exit_code == 0);
  CHECK(write.out.empty());
  CHECK(xrl_test::read_file(path.string()) == once.out);
  CHECK(run_cli("validate " + path.string()).exit_code == 0);
  fs::remove(path);
}

TEST_CASE("cli: graph exports dot by default and mermaid on request")
{
  RunResult dot = run_cli("graph " + fixture("b1_branching.xrl.yaml"));
  CHECK(dot.exit_code == 0);
  CHECK(dot.out.rfind("digraph process {", 0) == 0);
  RunResult mermaid = run_cli("graph --format mermaid " + fixture("b1_branching.xrl.yaml"));
  CHECK(mermaid.exit_code == 0);
  CHECK(mermaid.out.rfind("flowchart TD", 0) == 0);
}

TEST_CASE("cli: convert round-trips through gax")
{
  RunResult gax = run_cli("convert " + fixture("c1_composite.xrl.yaml") + " --to gax");
  CHECK(gax.exit_code == 0);
  CHECK(gax.out.rfind("<?xml", 0) == 0);
  fs::path path = temp_file("c1.gax.xml", gax.out);
  RunResult back = run_cli("convert " + path.string() + " --to xrl");
  CHECK(back.exit_code == 0);
  RunResult canonical = run_cli("fmt " + fixture("c1_composite.xrl.yaml"));
  CHECK(back.out == canonical.out);
  fs::remove(path);
}

TEST_CASE("cli: malformed gax input exits 2")
{
  fs::path path = temp_file("broken.gax.xml", "<process><oops>");
  RunResult r = run_cli("convert " + path.string() + " --to xrl");
  CHECK(r.exit_code == 2);
  fs::remove(path);
}

TEST_CASE("cli: stdout is byte-deterministic across runs")
{
  for (const std::string args :
       {"lint " + fixture("p3_excel_crm.xrl.yaml"),
        "graph --format mermaid " + fixture("p2_db_report.xrl.yaml"),
        "run " + fixture("cycle_retry.xrl.yaml") + " --max-steps 25",
        "fmt " + fixture("mixed_scalars.xrl.yaml")}) {
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CAPTURE(args);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
  }
}

TEST_CASE("cli: lint reports the metric block")
{
  RunResult r = run_cli("lint " + fixture("s1_linear.xrl.yaml"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("nodes: 3") != std::string::npos);
  CHECK(r.out.find("duplicate_literal_guids: 0") != std::string::npos);

  RunResult j = run_cli("lint --json " + fixture("s1_linear.xrl.yaml"));
  std::size_t brace = j.out.find('}');
  REQUIRE(brace != std::string::npos);
  nlohmann::json parsed = nlohmann::json::parse(j.out.substr(0, brace + 1));
  CHECK(parsed.at("nodes") == 3);
}
