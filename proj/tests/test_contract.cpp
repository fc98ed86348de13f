#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "levelcontract/contract.hpp"
#include "levelcontract/modify.hpp"
#include "test_support.hpp"

using namespace levelcontract;
using test_support::error_code_of;
using test_support::make_g1;
using test_support::make_g1_modified;
using test_support::make_g2;
using test_support::make_pole_on_top;

TEST_CASE("twist multiplicities vanish at and below the target level") {
  const TwistData at_bottom = twist_multiplicities(make_g1_modified(), -1);
  CHECK(at_bottom.target_level == -1);
  CHECK(at_bottom.at(0) == 2);
  CHECK(at_bottom.at(-1) == 0);
  CHECK(at_bottom.at(-7) == 0);  // absent levels count as zero

  const TwistData at_top = twist_multiplicities(make_g1_modified(), 0);
  CHECK(at_top.at(0) == 0);
  CHECK(at_top.at(-1) == 0);

  const TwistData middle = twist_multiplicities(make_g2(), -2);
  CHECK(middle.at(0) == 2);
  CHECK(middle.at(-1) == 1);
  CHECK(middle.at(-2) == 0);

  CHECK(error_code_of([] { twist_multiplicities(make_g1(), -9); }) == ErrorCode::UnknownLevel);
}

TEST_CASE("twisted degrees on the modified two-level graph") {
  const LevelGraph g = make_g1_modified();
  CHECK(twisted_degree(g, -1, "v0") == 0);
  CHECK(twisted_degree(g, -1, "v1") == 3);
  CHECK(twisted_degree(g, -1, "z1@-1") == 1);

  Rational total = 0;
  for (const Vertex& v : g.vertices) total += twisted_degree(g, -1, v.id);
  CHECK(total == 2 * arithmetic_genus(g) - 2);

  CHECK(error_code_of([&] { twisted_degree(g, -1, "nope"); }) == ErrorCode::UnknownVertex);
}

TEST_CASE("a marking stranded above the target shows up as a nonzero degree") {
  // Before the modification the order-1 zero still sits on the top vertex.
  CHECK(twisted_degree(make_g1(), -1, "v0") == 1);
  CHECK(twisted_degree(make_g1(), -1, "v1") == 3);
}

TEST_CASE("contractibility obstructions are reported per marking and edge") {
  CHECK(check_contractibility(make_g1_modified(), -1).empty());

  const std::vector<Obstruction> g1 = check_contractibility(make_g1(), -1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == Obstruction{ObstructionCode::MarkedZeroAbove, "z1"});

  const std::vector<Obstruction> g2 = check_contractibility(make_g2(), -1);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0] == Obstruction{ObstructionCode::MarkedZeroAbove, "z1"});
  CHECK(g2[1] == Obstruction{ObstructionCode::LongEdgeCrossing, "e02"});

  // The long edge of make_g2 ends at level -2: only the markings obstruct.
  const std::vector<Obstruction> bottom = check_contractibility(make_g2(), -2);
  REQUIRE(bottom.size() == 2);
  CHECK(bottom[0] == Obstruction{ObstructionCode::MarkedZeroAbove, "z1"});
  CHECK(bottom[1] == Obstruction{ObstructionCode::MarkedZeroAbove, "z2"});

  const std::vector<Obstruction> pole = check_contractibility(make_pole_on_top(), -1);
  REQUIRE(pole.size() == 1);
  CHECK(pole[0] == Obstruction{ObstructionCode::MarkedPoleAbove, "w"});

  CHECK(error_code_of([] { check_contractibility(make_g1(), -9); }) == ErrorCode::UnknownLevel);
}

TEST_CASE("contracting the modified two-level graph") {
  const ContractionResult r = contract(make_g1_modified(), -1);

  CHECK(r.twist.at(0) == 2);
  REQUIRE(r.singularities.size() == 1);
  const SingularityRecord& s = r.singularities[0];
  CHECK(s.component == std::vector<std::string>{"v0"});
  CHECK(s.branches == 2);
  CHECK(s.component_genus == 2);
  CHECK(s.delta == 3);
  CHECK(s.contact_orders == std::vector<int>{2, 2});

  REQUIRE(r.descent_degrees.size() == 2);
  CHECK(r.descent_degrees.at("v1") == 3);
  CHECK(r.descent_degrees.at("z1@-1") == 1);
  CHECK(r.total == 4);
}

TEST_CASE("contracting the modified three-level graph") {
  const LevelGraph g = semistable_modification(make_g2(), -1, ModificationKind::minimal).first;
  const ContractionResult r = contract(g, -1);

  REQUIRE(r.singularities.size() == 1);
  const SingularityRecord& s = r.singularities[0];
  CHECK(s.component == std::vector<std::string>{"v0"});
  CHECK(s.branches == 3);
  CHECK(s.component_genus == 2);
  CHECK(s.delta == 4);
  CHECK(s.contact_orders == std::vector<int>{1, 2, 2});

  REQUIRE(r.descent_degrees.size() == 4);
  CHECK(r.descent_degrees.at("v1") == 3);
  CHECK(r.descent_degrees.at("v2") == 2);
  CHECK(r.descent_degrees.at("z1@-1") == 1);
  CHECK(r.descent_degrees.at("e02@-1") == 2);
  CHECK(r.total == 2 * arithmetic_genus(g) - 2);
}

TEST_CASE("contraction two levels down collapses a component of four vertices") {
  const LevelGraph g = semistable_modification(make_g2(), -2, ModificationKind::full).first;
  const ContractionResult r = contract(g, -2);

  REQUIRE(r.singularities.size() == 1);
  const SingularityRecord& s = r.singularities[0];
  CHECK(s.component == std::vector<std::string>{"e02@-1", "v0", "v1", "z1@-1"});
  CHECK(s.branches == 4);
  CHECK(s.component_genus == 3);
  CHECK(s.delta == 6);
  CHECK(s.contact_orders == std::vector<int>{1, 2, 2, 3});

  CHECK(r.descent_degrees.at("v2") == 5);
  CHECK(r.descent_degrees.at("z1@-2") == 1);
  CHECK(r.descent_degrees.at("z2@-2") == 2);
  CHECK(r.total == 8);
}

TEST_CASE("contraction at the top level has nothing to contract") {
  const ContractionResult r = contract(make_g1(), 0);
  CHECK(r.singularities.empty());
  CHECK(r.descent_degrees.at("v0") == 3);
  CHECK(r.descent_degrees.at("v1") == 1);
  CHECK(r.total == 4);
}

TEST_CASE("an obstructed contraction throws with the obstruction list attached") {
  try {
    contract(make_g2(), -1);
    FAIL("contract should have thrown");
  } catch (const NotContractibleError& e) {
    CHECK(e.code() == ErrorCode::NotContractible);
    CHECK(e.where() == "-1");
    REQUIRE(e.obstructions().size() == 2);
    CHECK(e.obstructions()[0] == Obstruction{ObstructionCode::MarkedZeroAbove, "z1"});
    CHECK(e.obstructions()[1] == Obstruction{ObstructionCode::LongEdgeCrossing, "e02"});
  }
}

TEST_CASE("test configurations put one leaf per prescribed order under a center") {
  const LevelGraph g = test_configuration({1, 3});
  REQUIRE(validate(g).valid());
  CHECK(g.find_vertex("c")->genus == 3);
  CHECK(g.levels.at(-1) == 4);  // lcm of the slopes 2 and 4
  CHECK(g.find_edge("e1")->slope == 2);
  CHECK(g.find_edge("e1")->length == 2);
  CHECK(g.find_edge("e2")->slope == 4);
  CHECK(g.find_edge("e2")->length == 1);
  CHECK(g.find_marking("z1")->order == 1);
  CHECK(g.find_marking("z2")->order == 3);
  CHECK(twisted_degree(g, -1, "c") == 0);

  const ContractionResult r = contract(g, -1);
  REQUIRE(r.singularities.size() == 1);
  CHECK(r.singularities[0].component == std::vector<std::string>{"c"});
  CHECK(r.singularities[0].component_genus == 3);
  CHECK(r.singularities[0].delta == 4);
  CHECK(r.singularities[0].contact_orders == std::vector<int>{2, 4});
  CHECK(r.descent_degrees.at("u1") == 1);
  CHECK(r.descent_degrees.at("u2") == 3);
  CHECK(r.total == 4);
}

TEST_CASE("test configuration corner cases") {
  // Two simple branch points: an ordinary node, delta = 2 with total zero.
  const LevelGraph node = test_configuration({0, 0});
  REQUIRE(validate(node).valid());
  CHECK(node.find_vertex("c")->genus == 1);
  const ContractionResult nr = contract(node, -1);
  CHECK(nr.singularities[0].delta == 2);
  CHECK(nr.singularities[0].contact_orders == std::vector<int>{1, 1});
  CHECK(nr.total == 0);

  // A single order-2 zero: one branch of contact 3.
  const LevelGraph cusp = test_configuration({2});
  REQUIRE(validate(cusp).valid());
  const ContractionResult cr = contract(cusp, -1);
  CHECK(cr.singularities[0].branches == 1);
  CHECK(cr.singularities[0].delta == 2);
  CHECK(cr.singularities[0].contact_orders == std::vector<int>{3});
  CHECK(cr.descent_degrees.at("u1") == 2);
  CHECK(cr.total == 2);

  // No orders at all: a smooth genus-1 center and nothing to contract.
  const LevelGraph smooth = test_configuration({});
  REQUIRE(validate(smooth).valid());
  CHECK(smooth.vertices.size() == 1);
  CHECK(smooth.levels.size() == 1);
  const ContractionResult sr = contract(smooth, 0);
  CHECK(sr.singularities.empty());
  CHECK(sr.total == 0);

  CHECK(error_code_of([] { test_configuration({1, 2}); }) == ErrorCode::OddSignatureSum);
  CHECK(error_code_of([] { test_configuration({-1}); }) == ErrorCode::InvalidInput);
}
