#pragma once

// Enhanced level graphs: the combinatorial data of a generalized multiscale
// differential. Vertices sit on levels 0, -1, ..., -L; each level has a
// vanishing order; edges join strictly different levels and carry a positive
// integer slope and a positive rational length tied together by
// slope * length = ell(lower level) - ell(upper level).

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "levelcontract/errors.hpp"
#include "levelcontract/rational.hpp"

namespace levelcontract {

enum class VertexKind { stable, chain, leaf };

std::string_view vertex_kind_name(VertexKind kind);

struct Vertex {
  std::string id;
  int genus = 0;
  int level = 0;
  VertexKind kind = VertexKind::stable;

  bool operator==(const Vertex&) const = default;
};

struct Edge {
  std::string id;
  std::string upper;  // vertex at the higher level
  std::string lower;  // vertex at the lower level
  int slope = 1;      // kappa >= 1
  Rational length = 1;

  bool operator==(const Edge&) const = default;
};

struct Marking {
  std::string id;
  std::string vertex;
  int order = 0;  // >= 0 marked zero, < 0 marked pole

  bool operator==(const Marking&) const = default;
};

// Ordered map from level index to vanishing order, iterated top level first.
class LevelTable {
 public:
  using Map = std::map<int, Rational, std::greater<int>>;

  LevelTable() = default;
  explicit LevelTable(Map entries) : entries_(std::move(entries)) {}

  void set(int level, Rational ell) { entries_[level] = std::move(ell); }
  bool contains(int level) const { return entries_.count(level) != 0; }

  // Throws Error{UnknownLevel} when the level is absent.
  const Rational& at(int level) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  int top_level() const;     // largest index (0 in a canonical table)
  int bottom_level() const;  // smallest index (-L)

  const Map& entries() const { return entries_; }

  bool operator==(const LevelTable&) const = default;

 private:
  Map entries_;
};

struct LevelGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Marking> markings;
  LevelTable levels;

  const Vertex* find_vertex(std::string_view id) const;
  const Edge* find_edge(std::string_view id) const;
  const Marking* find_marking(std::string_view id) const;

  // Throws Error{UnknownVertex}.
  int vertex_level(std::string_view vertex_id) const;

  // Number of edge ends at the vertex (an edge never has both ends at one
  // vertex, because its endpoints must sit on different levels).
  int valence(std::string_view vertex_id) const;

  std::vector<const Edge*> edges_at(std::string_view vertex_id) const;
  std::vector<const Marking*> markings_at(std::string_view vertex_id) const;

  // Sorts vertices, edges and markings by id and keeps them that way; all
  // operations in the library emit graphs in this order.
  void sort_by_id();
};

// Structural equality up to storage order (levels compared exactly).
bool operator==(const LevelGraph& a, const LevelGraph& b);
inline bool operator!=(const LevelGraph& a, const LevelGraph& b) { return !(a == b); }

enum class ViolationCode {
  EmptyGraph,
  DuplicateId,
  UnknownVertexRef,
  NegativeGenus,
  SlopeNotPositive,
  LengthNotPositive,
  LevelNotInTable,
  EmptyLevel,
  LevelIndexGap,
  LevelTableOrder,
  EdgeLevelOrder,
  SlopeLengthMismatch,
  DegreeIdentityMismatch,
  ChainVertexShape,
  LeafVertexShape,
  DisconnectedGraph,
};

std::string_view violation_code_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string location;  // id of the offending vertex/edge/marking, or a level
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Checks every level-graph axiom and reports all violations with stable
// codes. Never throws; accepts arbitrary field values.
ValidationReport validate(const LevelGraph& graph);

// Sum of vertex genera plus the first Betti number of the underlying graph.
// Throws Error{DisconnectedGraph}; does not require validity otherwise.
int arithmetic_genus(const LevelGraph& graph);

// Multiset of marking orders, sorted ascending.
std::vector<int> signature(const LevelGraph& graph);

// Connected components of the subgraph induced on vertices strictly above
// `level`. Each component is sorted by vertex id; components are ordered by
// their least vertex id. Throws Error{UnknownLevel}.
std::vector<std::vector<std::string>> components_above(const LevelGraph& graph, int level);

}  // namespace levelcontract
