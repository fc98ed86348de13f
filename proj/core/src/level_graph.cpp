#include "levelcontract/level_graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace levelcontract {

std::string_view vertex_kind_name(VertexKind kind) {
  switch (kind) {
    case VertexKind::stable: return "stable";
    case VertexKind::chain: return "chain";
    case VertexKind::leaf: return "leaf";
  }
  return "stable";
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::UnknownLevel: return "UnknownLevel";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::MarkedPoleAbove: return "MarkedPoleAbove";
    case ErrorCode::OddSignatureSum: return "OddSignatureSum";
    case ErrorCode::MissingResidue: return "MissingResidue";
    case ErrorCode::UnexpectedResidue: return "UnexpectedResidue";
    case ErrorCode::SimplePoleZeroResidue: return "SimplePoleZeroResidue";
    case ErrorCode::LongEdgeCrossing: return "LongEdgeCrossing";
    case ErrorCode::NotContractible: return "NotContractible";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
  }
  return "Error";
}

std::string_view violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::EmptyGraph: return "EmptyGraph";
    case ViolationCode::DuplicateId: return "DuplicateId";
    case ViolationCode::UnknownVertexRef: return "UnknownVertexRef";
    case ViolationCode::NegativeGenus: return "NegativeGenus";
    case ViolationCode::SlopeNotPositive: return "SlopeNotPositive";
    case ViolationCode::LengthNotPositive: return "LengthNotPositive";
    case ViolationCode::LevelNotInTable: return "LevelNotInTable";
    case ViolationCode::EmptyLevel: return "EmptyLevel";
    case ViolationCode::LevelIndexGap: return "LevelIndexGap";
    case ViolationCode::LevelTableOrder: return "LevelTableOrder";
    case ViolationCode::EdgeLevelOrder: return "EdgeLevelOrder";
    case ViolationCode::SlopeLengthMismatch: return "SlopeLengthMismatch";
    case ViolationCode::DegreeIdentityMismatch: return "DegreeIdentityMismatch";
    case ViolationCode::ChainVertexShape: return "ChainVertexShape";
    case ViolationCode::LeafVertexShape: return "LeafVertexShape";
    case ViolationCode::DisconnectedGraph: return "DisconnectedGraph";
  }
  return "Violation";
}

const Rational& LevelTable::at(int level) const {
  auto it = entries_.find(level);
  if (it == entries_.end()) {
    throw Error(ErrorCode::UnknownLevel, std::to_string(level),
                "level " + std::to_string(level) + " is not in the level table");
  }
  return it->second;
}

int LevelTable::top_level() const {
  if (entries_.empty()) {
    throw Error(ErrorCode::UnknownLevel, "", "level table is empty");
  }
  return entries_.begin()->first;
}

int LevelTable::bottom_level() const {
  if (entries_.empty()) {
    throw Error(ErrorCode::UnknownLevel, "", "level table is empty");
  }
  return entries_.rbegin()->first;
}

const Vertex* LevelGraph::find_vertex(std::string_view id) const {
  for (const Vertex& v : vertices) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

const Edge* LevelGraph::find_edge(std::string_view id) const {
  for (const Edge& e : edges) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const Marking* LevelGraph::find_marking(std::string_view id) const {
  for (const Marking& m : markings) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

int LevelGraph::vertex_level(std::string_view vertex_id) const {
  const Vertex* v = find_vertex(vertex_id);
  if (v == nullptr) {
    throw Error(ErrorCode::UnknownVertex, std::string(vertex_id),
                "unknown vertex '" + std::string(vertex_id) + "'");
  }
  return v->level;
}

int LevelGraph::valence(std::string_view vertex_id) const {
  int count = 0;
  for (const Edge& e : edges) {
    if (e.upper == vertex_id) ++count;
    if (e.lower == vertex_id) ++count;
  }
  return count;
}

std::vector<const Edge*> LevelGraph::edges_at(std::string_view vertex_id) const {
  std::vector<const Edge*> out;
  for (const Edge& e : edges) {
    if (e.upper == vertex_id || e.lower == vertex_id) out.push_back(&e);
  }
  return out;
}

std::vector<const Marking*> LevelGraph::markings_at(std::string_view vertex_id) const {
  std::vector<const Marking*> out;
  for (const Marking& m : markings) {
    if (m.vertex == vertex_id) out.push_back(&m);
  }
  return out;
}

void LevelGraph::sort_by_id() {
  std::sort(vertices.begin(), vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  std::sort(markings.begin(), markings.end(),
            [](const Marking& a, const Marking& b) { return a.id < b.id; });
}

bool operator==(const LevelGraph& a, const LevelGraph& b) {
  LevelGraph x = a;
  LevelGraph y = b;
  x.sort_by_id();
  y.sort_by_id();
  return x.vertices == y.vertices && x.edges == y.edges &&
         x.markings == y.markings && x.levels == y.levels;
}

namespace {

// Connectivity of the underlying graph, ignoring edges with dangling ends.
bool is_connected(const LevelGraph& graph) {
  if (graph.vertices.empty()) return false;
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    index[graph.vertices[i].id] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> adjacency(graph.vertices.size());
  for (const Edge& e : graph.edges) {
    auto u = index.find(e.upper);
    auto l = index.find(e.lower);
    if (u == index.end() || l == index.end()) continue;
    adjacency[u->second].push_back(l->second);
    adjacency[l->second].push_back(u->second);
  }
  std::vector<bool> seen(graph.vertices.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == graph.vertices.size();
}

void check_duplicates(const LevelGraph& graph, std::vector<Violation>& out) {
  auto scan = [&out](auto const& items, std::string_view what) {
    std::unordered_set<std::string> seen;
    for (const auto& item : items) {
      if (!seen.insert(item.id).second) {
        out.push_back({ViolationCode::DuplicateId, item.id,
                       std::string(what) + " id '" + item.id + "' declared more than once"});
      }
    }
  };
  scan(graph.vertices, "vertex");
  scan(graph.edges, "edge");
  scan(graph.markings, "marking");
}

void check_level_table(const LevelGraph& graph, std::vector<Violation>& out) {
  const auto& entries = graph.levels.entries();
  if (entries.empty()) {
    out.push_back({ViolationCode::LevelIndexGap, "",
                   "level table is empty; expected levels 0, -1, ..., -L"});
    return;
  }
  // Canonical indices: exactly 0, -1, ..., -L.
  int expected = 0;
  for (const auto& [level, ell] : entries) {
    if (level != expected) {
      out.push_back({ViolationCode::LevelIndexGap, std::to_string(level),
                     "level indices must be 0, -1, ..., -L with no gaps; found " +
                         std::to_string(level) + " where " + std::to_string(expected) +
                         " was expected"});
      break;
    }
    --expected;
  }
  // ell(0) = 0 and ell strictly increasing as the level index decreases.
  auto it = entries.begin();
  if (it->first == 0 && it->second != 0) {
    out.push_back({ViolationCode::LevelTableOrder, "0",
                   "vanishing order at level 0 must be 0, found " + to_string(it->second)});
  }
  const Rational* previous = &it->second;
  for (++it; it != entries.end(); ++it) {
    if (!(it->second > *previous)) {
      out.push_back({ViolationCode::LevelTableOrder, std::to_string(it->first),
                     "vanishing orders must strictly increase downward; level " +
                         std::to_string(it->first) + " has " + to_string(it->second)});
    }
    previous = &it->second;
  }
  // Every level occupied by at least one vertex.
  for (const auto& [level, ell] : entries) {
    bool occupied = false;
    for (const Vertex& v : graph.vertices) {
      if (v.level == level) {
        occupied = true;
        break;
      }
    }
    if (!occupied) {
      out.push_back({ViolationCode::EmptyLevel, std::to_string(level),
                     "no vertex lies at level " + std::to_string(level)});
    }
  }
}

}  // namespace

ValidationReport validate(const LevelGraph& input) {
  ValidationReport report;
  auto& out = report.violations;

  if (input.vertices.empty()) {
    out.push_back({ViolationCode::EmptyGraph, "", "graph has no vertices"});
    return report;
  }

  // Violations are emitted in sorted-id order within each check.
  LevelGraph graph = input;
  graph.sort_by_id();

  check_duplicates(graph, out);

  for (const Vertex& v : graph.vertices) {
    if (v.genus < 0) {
      out.push_back({ViolationCode::NegativeGenus, v.id,
                     "vertex '" + v.id + "' has negative genus"});
    }
    if (!graph.levels.contains(v.level)) {
      out.push_back({ViolationCode::LevelNotInTable, v.id,
                     "vertex '" + v.id + "' sits at level " + std::to_string(v.level) +
                         " which is not in the level table"});
    }
  }

  check_level_table(graph, out);

  // Referential integrity; later checks skip unresolvable references.
  bool references_ok = true;
  for (const Edge& e : graph.edges) {
    for (const std::string* end : {&e.upper, &e.lower}) {
      if (graph.find_vertex(*end) == nullptr) {
        references_ok = false;
        out.push_back({ViolationCode::UnknownVertexRef, e.id,
                       "edge '" + e.id + "' references unknown vertex '" + *end + "'"});
      }
    }
  }
  for (const Marking& m : graph.markings) {
    if (graph.find_vertex(m.vertex) == nullptr) {
      references_ok = false;
      out.push_back({ViolationCode::UnknownVertexRef, m.id,
                     "marking '" + m.id + "' references unknown vertex '" + m.vertex + "'"});
    }
  }

  for (const Edge& e : graph.edges) {
    if (e.slope < 1) {
      out.push_back({ViolationCode::SlopeNotPositive, e.id,
                     "edge '" + e.id + "' has slope " + std::to_string(e.slope)});
    }
    if (!(e.length > 0)) {
      out.push_back({ViolationCode::LengthNotPositive, e.id,
                     "edge '" + e.id + "' has length " + to_string(e.length)});
    }
    const Vertex* upper = graph.find_vertex(e.upper);
    const Vertex* lower = graph.find_vertex(e.lower);
    if (upper == nullptr || lower == nullptr) continue;
    if (!(upper->level > lower->level)) {
      out.push_back({ViolationCode::EdgeLevelOrder, e.id,
                     "edge '" + e.id + "' must go from a higher to a strictly lower level (" +
                         std::to_string(upper->level) + " -> " + std::to_string(lower->level) + ")"});
      continue;
    }
    if (graph.levels.contains(upper->level) && graph.levels.contains(lower->level)) {
      const Rational drop = graph.levels.at(lower->level) - graph.levels.at(upper->level);
      if (Rational(e.slope) * e.length != drop) {
        out.push_back({ViolationCode::SlopeLengthMismatch, e.id,
                       "edge '" + e.id + "': slope * length = " +
                           to_string(Rational(e.slope) * e.length) +
                           " but the vanishing orders differ by " + to_string(drop)});
      }
    }
  }

  if (references_ok) {
    // Local degree identity: 2g - 2 = sum of marking orders + (kappa - 1) per
    // downward edge + (-kappa - 1) per upward edge.
    for (const Vertex& v : graph.vertices) {
      long long rhs = 0;
      for (const Marking& m : graph.markings) {
        if (m.vertex == v.id) rhs += m.order;
      }
      for (const Edge& e : graph.edges) {
        if (e.upper == v.id) rhs += e.slope - 1;
        if (e.lower == v.id) rhs += -e.slope - 1;
      }
      if (rhs != 2LL * v.genus - 2) {
        out.push_back({ViolationCode::DegreeIdentityMismatch, v.id,
                       "vertex '" + v.id + "': orders at the vertex sum to " +
                           std::to_string(rhs) + ", expected 2g-2 = " +
                           std::to_string(2 * v.genus - 2)});
      }
    }

    for (const Vertex& v : graph.vertices) {
      if (v.kind == VertexKind::stable) continue;
      int up = 0;
      int down = 0;
      int up_slope = 0;
      int down_slope = 0;
      for (const Edge& e : graph.edges) {
        if (e.lower == v.id) {
          ++up;
          up_slope = e.slope;
        }
        if (e.upper == v.id) {
          ++down;
          down_slope = e.slope;
        }
      }
      const auto marks = graph.markings_at(v.id);
      if (v.kind == VertexKind::chain) {
        if (v.genus != 0 || up != 1 || down != 1 || up_slope != down_slope || !marks.empty()) {
          out.push_back({ViolationCode::ChainVertexShape, v.id,
                         "chain vertex '" + v.id +
                             "' must have genus 0, one upward and one downward edge of equal "
                             "slope, and no markings"});
        }
      } else {  // leaf
        const bool mark_ok =
            marks.size() == 1 && marks[0]->order >= 0 && up_slope == marks[0]->order + 1;
        if (v.genus != 0 || up != 1 || down != 0 || !mark_ok) {
          out.push_back({ViolationCode::LeafVertexShape, v.id,
                         "leaf vertex '" + v.id +
                             "' must have genus 0, one upward edge of slope m+1, and exactly one "
                             "marking of order m >= 0"});
        }
      }
    }
  }

  if (!is_connected(graph)) {
    out.push_back({ViolationCode::DisconnectedGraph, "",
                   "the underlying graph is not connected"});
  }

  return report;
}

int arithmetic_genus(const LevelGraph& graph) {
  if (!is_connected(graph)) {
    throw Error(ErrorCode::DisconnectedGraph, "",
                "arithmetic genus is only defined for connected graphs");
  }
  long long genus_sum = 0;
  for (const Vertex& v : graph.vertices) genus_sum += v.genus;
  const long long b1 = static_cast<long long>(graph.edges.size()) -
                       static_cast<long long>(graph.vertices.size()) + 1;
  return static_cast<int>(genus_sum + b1);
}

std::vector<int> signature(const LevelGraph& graph) {
  std::vector<int> orders;
  orders.reserve(graph.markings.size());
  for (const Marking& m : graph.markings) orders.push_back(m.order);
  std::sort(orders.begin(), orders.end());
  return orders;
}

std::vector<std::vector<std::string>> components_above(const LevelGraph& graph, int level) {
  if (!graph.levels.contains(level)) {
    throw Error(ErrorCode::UnknownLevel, std::to_string(level),
                "level " + std::to_string(level) + " is not in the level table");
  }
  std::vector<const Vertex*> above;
  for (const Vertex& v : graph.vertices) {
    if (v.level > level) above.push_back(&v);
  }
  std::sort(above.begin(), above.end(),
            [](const Vertex* a, const Vertex* b) { return a->id < b->id; });

  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < above.size(); ++i) index[above[i]->id] = static_cast<int>(i);
  std::vector<std::vector<int>> adjacency(above.size());
  for (const Edge& e : graph.edges) {
    auto u = index.find(e.upper);
    auto l = index.find(e.lower);
    if (u == index.end() || l == index.end()) continue;
    adjacency[u->second].push_back(l->second);
    adjacency[l->second].push_back(u->second);
  }

  std::vector<std::vector<std::string>> components;
  std::vector<bool> seen(above.size(), false);
  for (std::size_t start = 0; start < above.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> stack{static_cast<int>(start)};
    seen[start] = true;
    std::set<std::string> component;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      component.insert(above[v]->id);
      for (int w : adjacency[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    components.emplace_back(component.begin(), component.end());
  }
  // Scanning `above` in id order makes components come out ordered by their
  // least vertex id already; keep an explicit sort for clarity.
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

}  // namespace levelcontract
