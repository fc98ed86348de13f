#include <set>
#include <sstream>

#include "levelcontract/contract.hpp"
#include "levelcontract/format.hpp"

namespace levelcontract {

namespace {

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_dot(const LevelGraph& graph, const TwistData* twist) {
  LevelGraph sorted = graph;
  sorted.sort_by_id();

  std::ostringstream out;
  out << "digraph levelgraph {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=ellipse];\n";

  // One rank group per level, top level first; an invisible chain of anchor
  // nodes pins the vertical order.
  std::set<int, std::greater<int>> levels_seen;
  for (const auto& [level, ell] : sorted.levels.entries()) levels_seen.insert(level);
  for (const Vertex& v : sorted.vertices) levels_seen.insert(v.level);
  std::vector<int> level_order(levels_seen.begin(), levels_seen.end());
  for (int level : level_order) {
    out << "  { rank=same; ";
    out << quoted("level" + std::to_string(level)) << " [shape=plaintext, label="
        << quoted(twist != nullptr
                      ? "level " + std::to_string(level) + " c=" + to_string(twist->at(level))
                      : "level " + std::to_string(level))
        << "]; ";
    for (const Vertex& v : sorted.vertices) {
      if (v.level != level) continue;
      out << quoted(v.id) << " [label="
          << quoted(v.id + " g=" + std::to_string(v.genus) + " [" +
                    std::string(vertex_kind_name(v.kind)) + "]")
          << "]; ";
      for (const Marking& m : sorted.markings) {
        if (m.vertex != v.id) continue;
        out << quoted("mark:" + m.id) << " [shape=box, label="
            << quoted(m.id + " m=" + std::to_string(m.order)) << "]; ";
      }
    }
    out << "}\n";
  }
  for (std::size_t k = 0; k + 1 < level_order.size(); ++k) {
    out << "  " << quoted("level" + std::to_string(level_order[k])) << " -> "
        << quoted("level" + std::to_string(level_order[k + 1])) << " [style=invis];\n";
  }

  for (const Edge& e : sorted.edges) {
    out << "  " << quoted(e.upper) << " -> " << quoted(e.lower) << " [label="
        << quoted("\xce\xba=" + std::to_string(e.slope) + " a=" + to_string(e.length))
        << "];\n";
  }
  for (const Marking& m : sorted.markings) {
    out << "  " << quoted(m.vertex) << " -> " << quoted("mark:" + m.id)
        << " [style=dashed, arrowhead=none];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace levelcontract
