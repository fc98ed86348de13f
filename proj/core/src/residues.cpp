#include "levelcontract/residues.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace levelcontract {

std::string to_string(const ComplexRational& value) {
  if (value.im == 0) return to_string(value.re);
  std::string out;
  if (value.re != 0) {
    out = to_string(value.re);
    if (value.im > 0) out += "+";
  }
  return out + to_string(value.im) + "i";
}

namespace {

bool is_polar_marking(const Marking& m) { return m.order <= -1; }

// The assignment must cover the polar loci exactly.
void check_assignment(const LevelGraph& graph, const ResidueAssignment& r) {
  for (const Edge& e : graph.edges) {
    if (r.edges.find(e.id) == r.edges.end()) {
      throw Error(ErrorCode::MissingResidue, e.id,
                  "no residue supplied for edge '" + e.id + "'");
    }
  }
  for (const auto& [id, value] : r.edges) {
    if (graph.find_edge(id) == nullptr) {
      throw Error(ErrorCode::UnexpectedResidue, id,
                  "residue supplied for unknown edge '" + id + "'");
    }
  }
  for (const Marking& m : graph.markings) {
    if (!is_polar_marking(m)) continue;
    auto it = r.marks.find(m.id);
    if (it == r.marks.end()) {
      throw Error(ErrorCode::MissingResidue, m.id,
                  "no residue supplied for marked pole '" + m.id + "'");
    }
    if (m.order == -1 && it->second.is_zero()) {
      throw Error(ErrorCode::SimplePoleZeroResidue, m.id,
                  "marking '" + m.id + "' has order -1 and must have a nonzero residue");
    }
  }
  for (const auto& [id, value] : r.marks) {
    const Marking* m = graph.find_marking(id);
    if (m == nullptr || !is_polar_marking(*m)) {
      throw Error(ErrorCode::UnexpectedResidue, id,
                  "residue supplied for '" + id + "', which is not a marked pole");
    }
  }
}

}  // namespace

ResidueReport check_residue_theorem(const LevelGraph& graph, const ResidueAssignment& r) {
  check_assignment(graph, r);

  LevelGraph sorted = graph;
  sorted.sort_by_id();

  ResidueReport report;
  for (const Vertex& v : sorted.vertices) {
    ComplexRational sum;
    for (const Edge& e : sorted.edges) {
      if (e.lower == v.id) sum += r.edges.at(e.id);
    }
    for (const Marking& m : sorted.markings) {
      if (m.vertex == v.id && is_polar_marking(m)) sum += r.marks.at(m.id);
    }
    if (!sum.is_zero()) {
      report.vertex_violations.push_back({v.id, v.level, sum});
    }
  }

  // "Unique polar edge" rule for semistable vertices, reported with its
  // witness edge even though the vertex rows already subsume it.
  for (const Vertex& v : sorted.vertices) {
    if (v.kind == VertexKind::stable) continue;
    const Edge* polar = nullptr;
    int count = 0;
    for (const Edge& e : sorted.edges) {
      if (e.lower == v.id) {
        polar = &e;
        ++count;
      }
    }
    if (count == 1 && !r.edges.at(polar->id).is_zero()) {
      report.semistable_violations.push_back({v.id, polar->id});
    }
  }
  return report;
}

namespace {

void require_no_crossing(const LevelGraph& graph, int i) {
  LevelGraph sorted = graph;
  sorted.sort_by_id();
  for (const Edge& e : sorted.edges) {
    if (sorted.vertex_level(e.upper) > i && sorted.vertex_level(e.lower) < i) {
      throw Error(ErrorCode::LongEdgeCrossing, e.id,
                  "edge '" + e.id + "' crosses level " + std::to_string(i) +
                      "; apply the semistable modification first");
    }
  }
}

}  // namespace

ResidueReport check_grc(const LevelGraph& graph, int i, const ResidueAssignment& r) {
  graph.levels.at(i);  // UnknownLevel guard
  require_no_crossing(graph, i);
  check_assignment(graph, r);

  ResidueReport report;
  for (std::vector<std::string>& component : components_above(graph, i)) {
    const bool has_marked_pole = std::any_of(
        graph.markings.begin(), graph.markings.end(), [&](const Marking& m) {
          return m.order < 0 &&
                 std::binary_search(component.begin(), component.end(), m.vertex);
        });
    if (has_marked_pole) continue;
    ComplexRational sum;
    for (const Edge& e : graph.edges) {
      if (std::binary_search(component.begin(), component.end(), e.upper) &&
          !std::binary_search(component.begin(), component.end(), e.lower)) {
        sum += r.edges.at(e.id);
      }
    }
    if (!sum.is_zero()) {
      report.grc_violations.push_back({i, std::move(component), sum});
    }
  }
  return report;
}

LinearSystem residue_solution_space(const LevelGraph& graph, int i, bool include_grc) {
  graph.levels.at(i);  // UnknownLevel guard
  if (include_grc) require_no_crossing(graph, i);
  for (const Marking& m : graph.markings) {
    if (m.order < 0) {
      throw Error(ErrorCode::InvalidInput, m.id,
                  "the homogeneous residue system requires a graph without marked poles");
    }
  }

  LinearSystem system;
  for (const Edge& e : graph.edges) system.unknowns.push_back(e.id);
  std::sort(system.unknowns.begin(), system.unknowns.end());
  auto column = [&system](const std::string& id) {
    return static_cast<std::size_t>(
        std::lower_bound(system.unknowns.begin(), system.unknowns.end(), id) -
        system.unknowns.begin());
  };

  system.rows = Matrix(0, system.unknowns.size());
  LevelGraph sorted = graph;
  sorted.sort_by_id();
  for (const Vertex& v : sorted.vertices) {
    std::vector<Rational> row(system.unknowns.size(), Rational(0));
    for (const Edge& e : sorted.edges) {
      if (e.lower == v.id) row[column(e.id)] += 1;
    }
    system.rows.append_row(row);
  }
  if (include_grc) {
    for (const std::vector<std::string>& component : components_above(graph, i)) {
      std::vector<Rational> row(system.unknowns.size(), Rational(0));
      for (const Edge& e : sorted.edges) {
        if (std::binary_search(component.begin(), component.end(), e.upper) &&
            !std::binary_search(component.begin(), component.end(), e.lower)) {
          row[column(e.id)] += 1;
        }
      }
      system.rows.append_row(row);
    }
  }

  system.kernel = kernel_basis(system.rows);
  system.kernel_dimension = system.kernel.size();
  return system;
}

ResidueAssignment zero_assignment(const LevelGraph& graph) {
  ResidueAssignment r;
  for (const Edge& e : graph.edges) r.edges[e.id] = {};
  for (const Marking& m : graph.markings) {
    if (is_polar_marking(m)) r.marks[m.id] = {};
  }
  return r;
}

namespace {

using nlohmann::json;

bool read_rat(const json& value, Rational& out) {
  if (value.is_number_integer()) {
    out = Rational(value.get<long long>());
    return true;
  }
  if (value.is_string()) {
    auto parsed = parse_rational(value.get<std::string>());
    if (!parsed) return false;
    out = *parsed;
    return true;
  }
  return false;
}

bool read_complex(const json& value, ComplexRational& out, std::string& error,
                  const std::string& path) {
  if (!value.is_object()) {
    error = path + ": expected an object with \"re\" and \"im\"";
    return false;
  }
  out = {};
  for (const char* key : {"re", "im"}) {
    auto it = value.find(key);
    if (it == value.end()) continue;
    Rational part;
    if (!read_rat(*it, part)) {
      error = path + "/" + key + ": expected an integer or \"p/q\" string";
      return false;
    }
    (key[0] == 'r' ? out.re : out.im) = part;
  }
  return true;
}

}  // namespace

ResidueParseResult residues_from_json(std::string_view text) {
  ResidueParseResult result;
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) {
    result.error = "/: not well-formed JSON";
    return result;
  }
  if (!root.is_object()) {
    result.error = "/: expected an object with \"edges\" and \"marks\"";
    return result;
  }
  for (const char* section : {"edges", "marks"}) {
    auto it = root.find(section);
    if (it == root.end()) continue;
    if (!it->is_object()) {
      result.error = std::string("/") + section + ": expected an object keyed by id";
      return result;
    }
    for (auto entry = it->begin(); entry != it->end(); ++entry) {
      ComplexRational value;
      if (!read_complex(entry.value(), value, result.error,
                        std::string("/") + section + "/" + entry.key())) {
        return result;
      }
      auto& target = section[0] == 'e' ? result.assignment.edges : result.assignment.marks;
      target[entry.key()] = value;
    }
  }
  return result;
}

}  // namespace levelcontract
