#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "levelcontract/contract.hpp"
#include "levelcontract/format.hpp"
#include "test_support.hpp"

using namespace levelcontract;
using test_support::make_g1;
using test_support::make_g1_modified;
using test_support::make_g2;

namespace {

const char* kG1Text = R"(graph { vertex v0 { genus 2, level 0 }  vertex v1 { genus 1, level -1 }
        edge e1 v0 -> v1 { slope 2, length 1 }
        mark z1 on v0 { order 1 }  mark z2 on v1 { order 3 }
        levels { 0: 0, -1: 2 } })";

}  // namespace

TEST_CASE("parse accepts the reference text") {
  ParseResult result = parse(kG1Text);
  REQUIRE(result.ok());
  CHECK(*result.graph == make_g1());
}

TEST_CASE("empty input errors expecting graph") {
  ParseResult result = parse("");
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->expected == "'graph'");
  CHECK(result.error->found == "end of input");
}

TEST_CASE("undeclared vertex reference points at the offending span") {
  const std::string text =
      "graph { vertex v0 { genus 2, level 0 }\n"
      "edge v0 -> vX { slope 2, length 1 }\n"
      "levels { 0: 0 } }";
  ParseResult result = parse(text);
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->code == ParseErrorCode::UndeclaredVertex);
  CHECK(result.error->span.line == 2);
  CHECK(result.error->span.column == 12);
  CHECK(result.error->span.length == 2);
  CHECK(result.error->found == "'vX'");
}

TEST_CASE("duplicate ids, duplicate levels, and missing level entries are parse errors") {
  ParseResult dup = parse("graph { vertex a { genus 0, level 0 } vertex a { genus 0, level 0 } "
                          "levels { 0: 0 } }");
  REQUIRE_FALSE(dup.ok());
  CHECK(dup.error->code == ParseErrorCode::DuplicateId);

  ParseResult dup_level = parse("graph { vertex a { genus 1, level 0 } levels { 0: 0, 0: 1 } }");
  REQUIRE_FALSE(dup_level.ok());
  CHECK(dup_level.error->code == ParseErrorCode::DuplicateLevel);

  ParseResult missing = parse("graph { vertex a { genus 1, level -1 } levels { 0: 0 } }");
  REQUIRE_FALSE(missing.ok());
  CHECK(missing.error->code == ParseErrorCode::MissingLevel);
}

TEST_CASE("edge ids are optional and assigned in declaration order") {
  ParseResult result = parse(
      "graph { vertex a { genus 2, level 0 } vertex b { genus 3, level -1 }\n"
      "edge a -> b { slope 1, length 2 }  edge a -> b { slope 2, length 1 }\n"
      "mark m on b { order 6 }  levels { 0: 0, -1: 2 } }");
  REQUIRE(result.ok());
  CHECK(result.graph->edges[0].id == "e1");
  CHECK(result.graph->edges[1].id == "e2");
}

TEST_CASE("identifiers may contain @ and - without breaking arrows") {
  ParseResult result = parse(
      "graph { vertex v0 { genus 1, level 0 } vertex e02@-1 { genus 1, level -1 }\n"
      "edge x v0->e02@-1 { slope 2, length 1 }\n"
      "levels { 0: 0, -1: 2 } }");
  REQUIRE(result.ok());
  CHECK(result.graph->edges[0].lower == "e02@-1");
}

TEST_CASE("comments and rational lengths") {
  ParseResult result = parse(
      "graph { # top\n"
      "vertex a { genus 2, level 0 } vertex b { genus 1, level -1 } # two levels\n"
      "edge e a -> b { slope 2, length 1/2 }\n"
      "mark z1 on a { order 1 } mark z2 on b { order 3 }\n"
      "levels { 0: 0, -1: 1 } }");
  REQUIRE(result.ok());
  CHECK(result.graph->edges[0].length == make_rational(1, 2));
}

TEST_CASE("kind defaults to stable and round-trips when explicit") {
  LevelGraph g = make_g1_modified();
  ParseResult reparsed = parse(print(g));
  REQUIRE(reparsed.ok());
  CHECK(*reparsed.graph == g);
  CHECK(print(g).find("kind leaf") != std::string::npos);
  CHECK(print(make_g1()).find("kind") == std::string::npos);
}

TEST_CASE("parse after print is the identity on fixtures") {
  for (const LevelGraph& g : {make_g1(), make_g1_modified(), make_g2(), test_support::make_g3()}) {
    ParseResult result = parse(print(g));
    REQUIRE(result.ok());
    CHECK(*result.graph == g);
  }
}

TEST_CASE("json round trip") {
  for (const LevelGraph& g : {make_g1(), make_g1_modified(), make_g2(), test_support::make_g3()}) {
    ParseResult result = from_json(to_json(g));
    REQUIRE(result.ok());
    CHECK(*result.graph == g);
  }
}

TEST_CASE("json output is deterministic and sorted") {
  LevelGraph g = make_g2();
  std::reverse(g.vertices.begin(), g.vertices.end());
  std::reverse(g.edges.begin(), g.edges.end());
  CHECK(to_json(g) == to_json(make_g2()));
}

TEST_CASE("json schema violations carry a pointer-style path") {
  const char* bad_den = R"({
    "vertices": [
      {"id": "a", "genus": 2, "level": 0, "kind": "stable"},
      {"id": "b", "genus": 1, "level": -1, "kind": "stable"}
    ],
    "edges": [
      {"id": "e", "upper": "a", "lower": "b", "slope": 2,
       "length": {"num": 1, "den": 0}}
    ],
    "markings": [],
    "levels": [{"level": 0, "ell": {"num": 0, "den": 1}}]
  })";
  ParseResult result = from_json(bad_den);
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->path == "/edges/0/length/den");

  ParseResult bad_kind = from_json(R"({"vertices": [{"id": "a", "genus": 0, "level": 0,
      "kind": "weird"}], "edges": [], "markings": [], "levels": []})");
  REQUIRE_FALSE(bad_kind.ok());
  CHECK(bad_kind.error->path == "/vertices/0/kind");

  ParseResult not_json = from_json("{nope");
  REQUIRE_FALSE(not_json.ok());
  CHECK(not_json.error->path == "/");
}

TEST_CASE("big numerators survive the json round trip as strings") {
  LevelGraph g = make_g1();
  Rational huge(Integer("123456789012345678901234567890"));
  g.levels.set(-1, huge);
  g.edges[0].length = huge / 2;
  ParseResult result = from_json(to_json(g));
  REQUIRE(result.ok());
  CHECK(result.graph->levels.at(-1) == huge);
  CHECK(result.graph->edges[0].length == huge / 2);
}

TEST_CASE("dot export") {
  const std::string dot = to_dot(make_g1());
  CHECK(dot.find("rank=same") != std::string::npos);
  // one rank group per level
  std::size_t groups = 0;
  for (std::size_t pos = dot.find("rank=same"); pos != std::string::npos;
       pos = dot.find("rank=same", pos + 1)) {
    ++groups;
  }
  CHECK(groups == 2);
  CHECK(dot.find("\xce\xba=2 a=1") != std::string::npos);
  CHECK(dot.find("v0 g=2 [stable]") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);

  // twist annotations
  TwistData twist = twist_multiplicities(make_g1(), -1);
  const std::string annotated = to_dot(make_g1(), &twist);
  CHECK(annotated.find("level 0 c=2") != std::string::npos);

  // single-vertex graph: one rank, no vertex-to-vertex edges
  LevelGraph single;
  single.vertices = {{"v", 1, 0, VertexKind::stable}};
  single.levels.set(0, 0);
  const std::string tiny = to_dot(single);
  CHECK(tiny.find("rank=same") != std::string::npos);
  CHECK(tiny.find("->") == std::string::npos);  // no edges at all
}
