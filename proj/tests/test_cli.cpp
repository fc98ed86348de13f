#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "levelcontract/contract.hpp"
#include "levelcontract/format.hpp"
#include "levelcontract/modify.hpp"
#include "levelcontract/oracle.hpp"
#include "test_support.hpp"

// CLI_PATH and FIXTURE_DIR are injected by the build.

using namespace levelcontract;
using nlohmann::json;
using test_support::make_g1;
using test_support::make_g1_modified;
using test_support::make_g2;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with color disabled, capturing stdout (and stderr if merged).
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string command = std::string("LEVELCONTRACT_COLOR=0 '") + CLI_PATH + "' " + args +
                              (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string read_file(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string text;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, f)) > 0) text.append(buffer, n);
  std::fclose(f);
  return text;
}

}  // namespace

TEST_CASE("validate reports valid graphs, violations and parse errors") {
  const RunResult good = run_cli("validate '" + fixture("g1.graph") + "'");
  CHECK(good.exit_code == 0);
  CHECK(contains(good.output, "g1.graph: valid"));
  CHECK_FALSE(contains(good.output, "\033["));  // color disabled

  const RunResult bad = run_cli("validate '" + fixture("g1-badlength.graph") + "'");
  CHECK(bad.exit_code == 1);
  CHECK(contains(bad.output, "invalid"));
  CHECK(contains(bad.output, "SlopeLengthMismatch at 'e1'"));

  const RunResult broken = run_cli("validate '" + fixture("empty.graph") + "'");
  CHECK(broken.exit_code == 2);
  CHECK(contains(broken.output, "parse error"));

  const RunResult missing = run_cli("validate no-such-file.graph", true);
  CHECK(missing.exit_code == 2);
  CHECK(contains(missing.output, "cannot open file"));
}

TEST_CASE("validate runs a whole batch and reports the worst failure") {
  const RunResult mixed =
      run_cli("validate '" + fixture("g1.graph") + "' '" + fixture("g1-badlength.graph") + "'");
  CHECK(mixed.exit_code == 1);
  CHECK(contains(mixed.output, "g1.graph: valid"));
  CHECK(contains(mixed.output, "g1-badlength.graph: invalid"));

  const RunResult worse = run_cli("validate '" + fixture("g1-badlength.graph") + "' '" +
                                  fixture("empty.graph") + "' '" + fixture("g1.graph") + "'");
  CHECK(worse.exit_code == 2);
}

TEST_CASE("validate --json is machine readable") {
  const RunResult r = run_cli("validate --json '" + fixture("g1-badlength.graph") + "'");
  CHECK(r.exit_code == 1);
  const json payload = json::parse(r.output);
  CHECK(payload.at("valid") == false);
  REQUIRE(payload.at("violations").size() == 1);
  CHECK(payload.at("violations")[0].at("code") == "SlopeLengthMismatch");
  CHECK(payload.at("violations")[0].at("location") == "e1");
}

TEST_CASE("modify prints the modified graph in the DSL") {
  const RunResult r = run_cli("modify --level -1 '" + fixture("g1.graph") + "'");
  REQUIRE(r.exit_code == 0);
  const ParseResult parsed = parse(r.output);
  REQUIRE(parsed.ok());
  CHECK(*parsed.graph == make_g1_modified());

  const RunResult pole = run_cli("modify --level -1 '" + fixture("pole-top.graph") + "'", true);
  CHECK(pole.exit_code == 3);
  CHECK(contains(pole.output, "MarkedPoleAbove"));
}

TEST_CASE("modify writes DSL or JSON depending on the output extension") {
  const LevelGraph expected = semistable_modification(make_g2(), -1, ModificationKind::minimal).first;

  const RunResult dsl =
      run_cli("modify --level -1 --out cli_g2_mod.graph '" + fixture("g2.graph") + "'");
  REQUIRE(dsl.exit_code == 0);
  CHECK(contains(dsl.output, "base change d = 2"));
  const ParseResult reparsed = parse(read_file("cli_g2_mod.graph"));
  REQUIRE(reparsed.ok());
  CHECK(*reparsed.graph == expected);
  std::remove("cli_g2_mod.graph");

  const RunResult as_json =
      run_cli("modify --level -1 --out cli_g2_mod.json '" + fixture("g2.graph") + "'");
  REQUIRE(as_json.exit_code == 0);
  const ParseResult from_file = from_json(read_file("cli_g2_mod.json"));
  REQUIRE(from_file.ok());
  CHECK(*from_file.graph == expected);
  std::remove("cli_g2_mod.json");
}

TEST_CASE("modify --json bundles the graph with the surgery report") {
  const RunResult r = run_cli("modify --level -1 --json '" + fixture("g2.graph") + "'");
  REQUIRE(r.exit_code == 0);
  const json payload = json::parse(r.output);
  CHECK(payload.at("report").at("base_change") == 2);
  CHECK(payload.at("report").at("edge_map").at("e02") == json::array({"e02@0", "e02@-1"}));
  REQUIRE(payload.at("report").at("leaf_chains").size() == 1);
  CHECK(payload.at("report").at("leaf_chains")[0].at("leaf_vertex") == "z1@-1");
  const ParseResult graph = from_json(payload.at("graph").dump());
  REQUIRE(graph.ok());
  CHECK(*graph.graph == semistable_modification(make_g2(), -1, ModificationKind::minimal).first);
}

TEST_CASE("contract analyzes an unobstructed level") {
  const RunResult r = run_cli("contract --level -1 '" + fixture("g1p.graph") + "'");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "contractible at level -1"));
  CHECK(contains(r.output, "c(0)=2"));
  CHECK(contains(r.output, "Y = {v0}, n = 2, p_a(Y) = 2, delta = 3, contacts = 2 2"));
  CHECK(contains(r.output, "D(v1)=3"));
  CHECK(contains(r.output, "D(z1@-1)=1"));
  CHECK(contains(r.output, "total = 4 = 2*p_a - 2"));
}

TEST_CASE("contract reports obstructions with advice and honors --modify") {
  const RunResult blocked = run_cli("contract --level -1 '" + fixture("g1.graph") + "'");
  CHECK(blocked.exit_code == 3);
  CHECK(contains(blocked.output, "not contractible at level -1"));
  CHECK(contains(blocked.output, "MarkedZeroAbove at 'z1'"));
  CHECK(contains(blocked.output, "--modify"));

  const RunResult fixed = run_cli("contract --level -1 --modify '" + fixture("g1.graph") + "'");
  CHECK(fixed.exit_code == 0);
  CHECK(contains(fixed.output, "delta = 3"));

  const RunResult crossing = run_cli("contract --level -1 '" + fixture("g2.graph") + "'");
  CHECK(crossing.exit_code == 3);
  CHECK(contains(crossing.output, "MarkedZeroAbove at 'z1'"));
  CHECK(contains(crossing.output, "LongEdgeCrossing at 'e02'"));

  const RunResult both = run_cli("contract --level -1 --modify '" + fixture("g2.graph") + "'");
  CHECK(both.exit_code == 0);
  CHECK(contains(both.output, "n = 3, p_a(Y) = 2, delta = 4, contacts = 1 2 2"));

  // The marked pole defeats --modify as well.
  const RunResult fatal =
      run_cli("contract --level -1 --modify '" + fixture("pole-top.graph") + "'", true);
  CHECK(fatal.exit_code == 3);
  CHECK(contains(fatal.output, "MarkedPoleAbove"));
}

TEST_CASE("contract --json lists the obstructions") {
  const RunResult r = run_cli("contract --level -1 --json '" + fixture("g2.graph") + "'");
  CHECK(r.exit_code == 3);
  const json payload = json::parse(r.output);
  CHECK(payload.at("contractible") == false);
  REQUIRE(payload.at("obstructions").size() == 2);
  CHECK(payload.at("obstructions")[0].at("code") == "MarkedZeroAbove");
  CHECK(payload.at("obstructions")[1].at("code") == "LongEdgeCrossing");
  CHECK(payload.at("obstructions")[1].at("location") == "e02");
}

TEST_CASE("grc --solve reports both kernel dimensions") {
  const RunResult r = run_cli("grc --level -1 --solve '" + fixture("g3.graph") + "'");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "kernel dim: 0 (with GRC), 1 (without)"));

  const json payload =
      json::parse(run_cli("grc --level -1 --solve --json '" + fixture("g3.graph") + "'").output);
  CHECK(payload.at("kernel_dimension_with_grc") == 0);
  CHECK(payload.at("kernel_dimension_theorem_only") == 1);
  CHECK(payload.at("unknowns") == json::array({"f1", "f2"}));
}

TEST_CASE("grc checks a residue assignment against theorem and condition") {
  const RunResult bad = run_cli("grc --level -1 --residues '" + fixture("r-g3.json") + "' '" +
                                fixture("g3.graph") + "'");
  CHECK(bad.exit_code == 4);
  CHECK(contains(bad.output, "residue checks fail"));
  CHECK(contains(bad.output, "GRC at level -1, component {Y1}: sum = 1"));
  CHECK(contains(bad.output, "GRC at level -1, component {Y2}: sum = -1"));

  const RunResult zeros = run_cli("grc --level -1 --residues zeros '" + fixture("g1p.graph") + "'");
  CHECK(zeros.exit_code == 0);
  CHECK(contains(zeros.output, "residue checks pass at level -1"));

  // The long edge must be subdivided before the condition makes sense.
  const RunResult crossing =
      run_cli("grc --level -1 --residues zeros '" + fixture("g2.graph") + "'", true);
  CHECK(crossing.exit_code == 3);
  CHECK(contains(crossing.output, "crosses level -1"));
}

TEST_CASE("grc needs exactly one of --residues and --solve") {
  const RunResult neither = run_cli("grc --level -1 '" + fixture("g3.graph") + "'", true);
  CHECK(neither.exit_code == 2);
  CHECK(contains(neither.output, "exactly one of --residues or --solve"));

  const RunResult both = run_cli(
      "grc --level -1 --solve --residues zeros '" + fixture("g3.graph") + "'", true);
  CHECK(both.exit_code == 2);
}

TEST_CASE("testconfig builds the two-level configuration") {
  const RunResult r = run_cli("testconfig --mu 1,3");
  REQUIRE(r.exit_code == 0);
  const ParseResult parsed = parse(r.output);
  REQUIRE(parsed.ok());
  CHECK(*parsed.graph == test_configuration({1, 3}));

  CHECK(run_cli("testconfig --mu 1,2", true).exit_code == 1);  // odd total
  CHECK(run_cli("testconfig --mu 1x,3", true).exit_code == 2);
  CHECK(run_cli("testconfig --mu nonsense", true).exit_code == 2);
}

TEST_CASE("export emits DOT or JSON") {
  const RunResult dot = run_cli("export --dot '" + fixture("g1.graph") + "'");
  REQUIRE(dot.exit_code == 0);
  CHECK(contains(dot.output, "digraph levelgraph"));
  CHECK(contains(dot.output, "rank=same"));

  const RunResult twisted =
      run_cli("export --dot --twist-level -1 '" + fixture("g1.graph") + "'");
  REQUIRE(twisted.exit_code == 0);
  CHECK(contains(twisted.output, "c=2"));

  const RunResult as_json = run_cli("export --json '" + fixture("g1.graph") + "'");
  REQUIRE(as_json.exit_code == 0);
  const ParseResult round = from_json(as_json.output);
  REQUIRE(round.ok());
  CHECK(*round.graph == make_g1());

  const RunResult to_file =
      run_cli("export --json --out cli_export.json '" + fixture("g1.graph") + "'");
  REQUIRE(to_file.exit_code == 0);
  CHECK(from_json(read_file("cli_export.json")).ok());
  std::remove("cli_export.json");

  CHECK(run_cli("export '" + fixture("g1.graph") + "'", true).exit_code == 2);
  CHECK(run_cli("export --dot --json '" + fixture("g1.graph") + "'", true).exit_code == 2);
}

TEST_CASE("the exported JSON loads back through the json extension") {
  const RunResult exported =
      run_cli("export --json --out cli_roundtrip.json '" + fixture("g2.graph") + "'");
  REQUIRE(exported.exit_code == 0);
  const RunResult validated = run_cli("validate cli_roundtrip.json");
  CHECK(validated.exit_code == 0);
  CHECK(contains(validated.output, "valid"));
  std::remove("cli_roundtrip.json");
}

TEST_CASE("enumerate counts the graphs inside the bounds") {
  const std::size_t expected =
      enumerate_valid_graphs({2, 1, 2, 2, 3, 2}).size();
  const RunResult counted = run_cli(
      "enumerate --max-vertices 2 --max-edges 1 --max-genus 2 --max-slope 2 --max-order 3 "
      "--max-levels 2");
  REQUIRE(counted.exit_code == 0);
  CHECK(contains(counted.output, "count: " + std::to_string(expected)));

  const json payload = json::parse(
      run_cli("enumerate --max-vertices 1 --max-edges 0 --max-genus 2 --max-slope 1 "
              "--max-order 2 --max-levels 1 --json")
          .output);
  CHECK(payload.at("count") == 3);
  REQUIRE(payload.at("graphs").size() == 3);
  for (const json& graph : payload.at("graphs")) {
    CHECK(from_json(graph.dump()).ok());
  }
}

TEST_CASE("usage errors exit with the parse-error code") {
  CHECK(run_cli("", true).exit_code == 2);
  CHECK(run_cli("frobnicate", true).exit_code == 2);
  CHECK(run_cli("modify '" + fixture("g1.graph") + "'", true).exit_code == 2);  // missing --level
  CHECK(run_cli("modify --level -1 --mode sideways '" + fixture("g1.graph") + "'", true)
            .exit_code == 2);
}
