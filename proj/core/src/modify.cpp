#include "levelcontract/modify.hpp"

#include <algorithm>

namespace levelcontract {

namespace {

void require_valid(const LevelGraph& graph) {
  ValidationReport report = validate(graph);
  if (!report.valid()) {
    throw Error(ErrorCode::InvalidInput, report.violations.front().location,
                "graph fails validation: " + report.violations.front().message);
  }
}

std::string fresh_vertex_id(const LevelGraph& graph, std::string base) {
  if (graph.find_vertex(base) == nullptr) return base;
  int n = 2;
  while (graph.find_vertex(base + "_" + std::to_string(n)) != nullptr) ++n;
  return base + "_" + std::to_string(n);
}

std::string fresh_edge_id(const LevelGraph& graph, std::string base) {
  if (graph.find_edge(base) == nullptr) return base;
  int n = 2;
  while (graph.find_edge(base + "_" + std::to_string(n)) != nullptr) ++n;
  return base + "_" + std::to_string(n);
}

void fill_identity_maps(const LevelGraph& graph, ModificationReport& report) {
  for (const Vertex& v : graph.vertices) report.vertex_map[v.id] = v.id;
  for (const auto& [level, ell] : graph.levels.entries()) report.level_map[level] = level;
}

// Replaces edge e by segments through one new chain vertex per entry of
// `stops` (strictly between the endpoint levels, descending).  Freshness is
// checked against the input as well, since `out` holds only the edges rebuilt
// so far.
void subdivide_edge(const LevelGraph& input, LevelGraph& out, ModificationReport& report,
                    const Edge& e, const std::vector<int>& stops) {
  ChainInsertion insertion;
  insertion.source_edge = e.id;

  auto fresh_segment_id = [&](std::string base) {
    if (input.find_edge(base) == nullptr && out.find_edge(base) == nullptr) return base;
    int n = 2;
    while (input.find_edge(base + "_" + std::to_string(n)) != nullptr ||
           out.find_edge(base + "_" + std::to_string(n)) != nullptr) {
      ++n;
    }
    return base + "_" + std::to_string(n);
  };

  std::string previous = e.upper;
  int previous_level = out.vertex_level(e.upper);
  auto segment_to = [&](const std::string& target, int target_level) {
    const Rational length =
        (out.levels.at(target_level) - out.levels.at(previous_level)) / e.slope;
    const std::string id = fresh_segment_id(e.id + "@" + std::to_string(previous_level));
    out.edges.push_back({id, previous, target, e.slope, length});
    insertion.edges.push_back(id);
    previous = target;
    previous_level = target_level;
  };
  for (int level : stops) {
    const std::string id = fresh_vertex_id(out, e.id + "@" + std::to_string(level));
    out.vertices.push_back({id, 0, level, VertexKind::chain});
    insertion.vertices.push_back(id);
    segment_to(id, level);
  }
  segment_to(e.lower, out.vertex_level(e.lower));

  report.edge_map[e.id] = insertion.edges;
  report.chain_insertions.push_back(std::move(insertion));
}

}  // namespace

std::pair<LevelGraph, ModificationReport> subdivide_long_edges(const LevelGraph& graph,
                                                               ModificationMode mode) {
  require_valid(graph);
  graph.levels.at(mode.level);  // UnknownLevel guard

  LevelGraph out = graph;
  out.edges.clear();
  ModificationReport report;
  fill_identity_maps(graph, report);

  for (const Edge& e : graph.edges) {
    const int upper = graph.vertex_level(e.upper);
    const int lower = graph.vertex_level(e.lower);
    std::vector<int> stops;
    if (mode.kind == ModificationKind::minimal) {
      if (upper > mode.level && lower < mode.level) stops.push_back(mode.level);
    } else {
      for (int level = upper - 1; level > lower; --level) stops.push_back(level);
    }
    if (stops.empty()) {
      out.edges.push_back(e);
      report.edge_map[e.id] = {e.id};
    } else {
      subdivide_edge(graph, out, report, e, stops);
    }
  }
  return {std::move(out), std::move(report)};
}

std::pair<LevelGraph, ModificationReport> expand_marked_zeros(const LevelGraph& graph, int i) {
  require_valid(graph);
  graph.levels.at(i);  // UnknownLevel guard

  {
    LevelGraph sorted = graph;
    sorted.sort_by_id();
    for (const Marking& m : sorted.markings) {
      if (m.order < 0 && sorted.vertex_level(m.vertex) > i) {
        throw Error(ErrorCode::MarkedPoleAbove, m.id,
                    "marking '" + m.id + "' is a pole of order " + std::to_string(m.order) +
                        " strictly above level " + std::to_string(i) +
                        " and cannot be pushed lower");
      }
    }
  }

  LevelGraph out = graph;
  ModificationReport report;
  fill_identity_maps(graph, report);
  for (const Edge& e : graph.edges) report.edge_map[e.id] = {e.id};

  for (Marking& m : out.markings) {
    const int start = out.vertex_level(m.vertex);
    if (start <= i) continue;
    const int slope = m.order + 1;

    LeafChain chain;
    chain.source_marking = m.id;
    std::string previous = m.vertex;
    for (int level = start - 1; level >= i; --level) {
      const bool is_leaf = level == i;
      const std::string id = fresh_vertex_id(out, m.id + "@" + std::to_string(level));
      out.vertices.push_back({id, 0, level, is_leaf ? VertexKind::leaf : VertexKind::chain});
      chain.vertices.push_back(id);
      const Rational length = (out.levels.at(level) - out.levels.at(level + 1)) / slope;
      const std::string edge_id = fresh_edge_id(out, m.id + "@" + std::to_string(level + 1));
      out.edges.push_back({edge_id, previous, id, slope, length});
      chain.edges.push_back(edge_id);
      previous = id;
    }
    chain.leaf_vertex = previous;
    m.vertex = previous;
    report.leaf_chains.push_back(std::move(chain));
  }
  return {std::move(out), std::move(report)};
}

std::pair<LevelGraph, long long> clear_denominators(const LevelGraph& graph) {
  std::vector<Rational> values;
  for (const Edge& e : graph.edges) values.push_back(e.length);
  for (const auto& [level, ell] : graph.levels.entries()) values.push_back(ell);
  const long long d = to_int64(denominator_lcm(values));
  if (d == 1) return {graph, 1};

  LevelGraph out = graph;
  for (Edge& e : out.edges) e.length *= d;
  for (const auto& [level, ell] : graph.levels.entries()) out.levels.set(level, ell * d);
  return {std::move(out), d};
}

std::pair<LevelGraph, ModificationReport> semistable_modification(const LevelGraph& graph, int i,
                                                                  ModificationKind kind) {
  auto [expanded, expand_report] = expand_marked_zeros(graph, i);
  auto [subdivided, subdivide_report] = subdivide_long_edges(expanded, {kind, i});
  auto [out, d] = clear_denominators(subdivided);

  ModificationReport report;
  fill_identity_maps(graph, report);
  report.leaf_chains = std::move(expand_report.leaf_chains);
  report.chain_insertions = std::move(subdivide_report.chain_insertions);
  report.base_change = d;
  for (const Edge& e : graph.edges) {
    std::vector<std::string> segments;
    for (const std::string& middle : expand_report.edge_map.at(e.id)) {
      const auto& pieces = subdivide_report.edge_map.at(middle);
      segments.insert(segments.end(), pieces.begin(), pieces.end());
    }
    report.edge_map[e.id] = std::move(segments);
  }

  // Surgery postconditions; failures here are bugs, not input errors.
  auto internal_error = [i](const std::string& where, const std::string& what) {
    return Error(ErrorCode::InternalInvariantViolation, where,
                 what + " after modification at level " + std::to_string(i));
  };
  if (!validate(out).valid()) throw internal_error("", "graph fails validation");
  for (const Marking& m : out.markings) {
    if (out.vertex_level(m.vertex) > i) throw internal_error(m.id, "marking still above target");
  }
  for (const Edge& e : out.edges) {
    const int upper = out.vertex_level(e.upper);
    const int lower = out.vertex_level(e.lower);
    if (upper > i && lower < i) throw internal_error(e.id, "edge still crosses target level");
    if (kind == ModificationKind::full && upper - lower != 1) {
      throw internal_error(e.id, "long edge survived full subdivision");
    }
  }
  return {std::move(out), std::move(report)};
}

}  // namespace levelcontract
