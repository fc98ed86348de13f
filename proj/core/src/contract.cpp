#include "levelcontract/contract.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace levelcontract {

namespace {

const Rational kZero = 0;

std::string obstruction_summary(const std::vector<Obstruction>& obstructions) {
  std::ostringstream out;
  out << "contraction obstructed by";
  for (const Obstruction& o : obstructions) {
    out << " " << obstruction_code_name(o.code) << "(" << o.location << ")";
  }
  return out.str();
}

}  // namespace

std::string_view obstruction_code_name(ObstructionCode code) {
  switch (code) {
    case ObstructionCode::MarkedZeroAbove: return "MarkedZeroAbove";
    case ObstructionCode::MarkedPoleAbove: return "MarkedPoleAbove";
    case ObstructionCode::LongEdgeCrossing: return "LongEdgeCrossing";
  }
  return "Obstruction";
}

const Rational& TwistData::at(int level) const {
  auto it = multiplicities.find(level);
  return it == multiplicities.end() ? kZero : it->second;
}

NotContractibleError::NotContractibleError(int level, std::vector<Obstruction> obstructions)
    : Error(ErrorCode::NotContractible, std::to_string(level),
            obstruction_summary(obstructions) + " at level " + std::to_string(level)),
      obstructions_(std::move(obstructions)) {}

TwistData twist_multiplicities(const LevelGraph& graph, int i) {
  const Rational& ell_i = graph.levels.at(i);
  TwistData twist;
  twist.target_level = i;
  for (const auto& [level, ell] : graph.levels.entries()) {
    twist.multiplicities[level] = level > i ? ell_i - ell : Rational(0);
  }
  return twist;
}

Rational twisted_degree(const LevelGraph& graph, int i, std::string_view vertex_id) {
  const TwistData twist = twist_multiplicities(graph, i);
  const Vertex* v = graph.find_vertex(vertex_id);
  if (v == nullptr) {
    throw Error(ErrorCode::UnknownVertex, std::string(vertex_id),
                "unknown vertex '" + std::string(vertex_id) + "'");
  }
  Rational degree = 2 * v->genus - 2;
  for (const Edge& e : graph.edges) {
    if (e.upper != v->id && e.lower != v->id) continue;
    const int self = v->level;
    // A self-referencing id can appear on both ends only in invalid graphs;
    // count each incidence separately all the same.
    if (e.upper == v->id) {
      const int other = graph.vertex_level(e.lower);
      degree += 1 + (twist.at(other) - twist.at(self)) / e.length;
    }
    if (e.lower == v->id) {
      const int other = graph.vertex_level(e.upper);
      degree += 1 + (twist.at(other) - twist.at(self)) / e.length;
    }
  }
  return degree;
}

std::vector<Obstruction> check_contractibility(const LevelGraph& graph, int i) {
  graph.levels.at(i);  // UnknownLevel guard

  LevelGraph sorted = graph;
  sorted.sort_by_id();

  std::vector<Obstruction> obstructions;
  for (const Marking& m : sorted.markings) {
    if (sorted.vertex_level(m.vertex) > i) {
      obstructions.push_back({m.order >= 0 ? ObstructionCode::MarkedZeroAbove
                                           : ObstructionCode::MarkedPoleAbove,
                              m.id});
    }
  }
  for (const Edge& e : sorted.edges) {
    if (sorted.vertex_level(e.upper) > i && sorted.vertex_level(e.lower) < i) {
      obstructions.push_back({ObstructionCode::LongEdgeCrossing, e.id});
    }
  }
  if (!obstructions.empty()) return obstructions;

  // Unobstructed: the twisted degree must vanish identically above i.  For
  // valid graphs this follows from the vertex identity, so a failure here is
  // an internal error, not an input error.
  for (const Vertex& v : sorted.vertices) {
    if (v.level > i && twisted_degree(graph, i, v.id) != 0) {
      throw Error(ErrorCode::InternalInvariantViolation, v.id,
                  "twisted degree at '" + v.id + "' above level " + std::to_string(i) +
                      " is nonzero on an unobstructed graph");
    }
  }
  return obstructions;
}

ContractionResult contract(const LevelGraph& graph, int i) {
  std::vector<Obstruction> obstructions = check_contractibility(graph, i);
  if (!obstructions.empty()) {
    throw NotContractibleError(i, std::move(obstructions));
  }

  ContractionResult result;
  result.twist = twist_multiplicities(graph, i);

  for (std::vector<std::string>& component : components_above(graph, i)) {
    SingularityRecord record;
    record.component = std::move(component);
    auto in_component = [&record](const std::string& id) {
      return std::binary_search(record.component.begin(), record.component.end(), id);
    };
    long long genus_sum = 0;
    for (const std::string& id : record.component) genus_sum += graph.find_vertex(id)->genus;
    int internal_edges = 0;
    for (const Edge& e : graph.edges) {
      const bool upper_in = in_component(e.upper);
      const bool lower_in = in_component(e.lower);
      if (upper_in && lower_in) {
        ++internal_edges;
      } else if (upper_in) {
        // Contractibility rules out crossings, so the branch lands at level i.
        ++record.branches;
        record.contact_orders.push_back(e.slope);
      }
    }
    record.component_genus = static_cast<int>(
        genus_sum + internal_edges - static_cast<long long>(record.component.size()) + 1);
    record.delta = record.component_genus + record.branches - 1;
    std::sort(record.contact_orders.begin(), record.contact_orders.end());
    result.singularities.push_back(std::move(record));
  }

  for (const Vertex& v : graph.vertices) {
    if (v.level <= i) {
      result.descent_degrees[v.id] = twisted_degree(graph, i, v.id);
    }
  }
  result.total = 0;
  for (const auto& [id, degree] : result.descent_degrees) result.total += degree;
  if (result.total != Rational(2 * arithmetic_genus(graph) - 2)) {
    throw Error(ErrorCode::InternalInvariantViolation, std::to_string(i),
                "descent degrees sum to " + to_string(result.total) +
                    ", expected 2*p_a - 2 = " +
                    std::to_string(2 * arithmetic_genus(graph) - 2));
  }
  return result;
}

LevelGraph test_configuration(const std::vector<int>& mu) {
  long long total = 0;
  for (int m : mu) {
    if (m < 0) {
      throw Error(ErrorCode::InvalidInput, std::to_string(m),
                  "test configuration orders must be nonnegative");
    }
    total += m;
  }
  if (total % 2 != 0) {
    throw Error(ErrorCode::OddSignatureSum, std::to_string(total),
                "marking orders sum to " + std::to_string(total) + ", which is odd");
  }
  const int genus = static_cast<int>((total + 2) / 2);

  LevelGraph graph;
  graph.vertices.push_back({"c", genus, 0, VertexKind::stable});
  graph.levels.set(0, 0);
  if (mu.empty()) return graph;

  long long common = 1;
  for (int m : mu) common = std::lcm(common, static_cast<long long>(m) + 1);
  graph.levels.set(-1, Rational(common));
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const std::string suffix = std::to_string(k + 1);
    const long long slope = mu[k] + 1;
    graph.vertices.push_back({"u" + suffix, 0, -1, VertexKind::leaf});
    graph.edges.push_back({"e" + suffix, "c", "u" + suffix, static_cast<int>(slope),
                           Rational(common) / slope});
    graph.markings.push_back({"z" + suffix, "u" + suffix, mu[k]});
  }
  return graph;
}

}  // namespace levelcontract
