#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "levelcontract/level_graph.hpp"

namespace levelcontract {

enum class ModificationKind { minimal, full };

// Target level plus subdivision strategy: minimal places a single chain
// vertex at the target level on each edge crossing it; full subdivides every
// long edge at every crossed level.
struct ModificationMode {
  ModificationKind kind = ModificationKind::minimal;
  int level = 0;
};

struct ChainInsertion {
  std::string source_edge;
  std::vector<std::string> vertices;  // top to bottom
  std::vector<std::string> edges;     // segments, top to bottom
};

struct LeafChain {
  std::string source_marking;
  std::string leaf_vertex;
  std::vector<std::string> vertices;  // chain vertices then the leaf, top to bottom
  std::vector<std::string> edges;     // segments, top to bottom
};

struct ModificationReport {
  std::map<std::string, std::string> vertex_map;             // input id -> output id
  std::vector<ChainInsertion> chain_insertions;
  std::vector<LeafChain> leaf_chains;
  std::map<std::string, std::vector<std::string>> edge_map;  // input edge -> segments
  long long base_change = 1;                                 // exponent d of t = s^d
  std::map<int, int> level_map;                              // input level -> output level
};

// Replaces each long edge by a chain of genus-0 chain vertices carrying the
// original slope; segment lengths are forced by the level table and sum to
// the original length.  Throws InvalidInput if the graph fails validation.
std::pair<LevelGraph, ModificationReport> subdivide_long_edges(const LevelGraph& graph,
                                                               ModificationMode mode);

// Re-attaches each marking strictly above level i to a new leaf vertex at
// level i through chain vertices at the intermediate levels; all new edges
// have slope m+1.  Throws MarkedPoleAbove for a marking of negative order
// strictly above i, and InvalidInput if the graph fails validation.
std::pair<LevelGraph, ModificationReport> expand_marked_zeros(const LevelGraph& graph, int i);

// Base change t = s^d with d the lcm of the denominators of all edge lengths
// and vanishing orders; multiplies every length and vanishing order by d.
std::pair<LevelGraph, long long> clear_denominators(const LevelGraph& graph);

// expand_marked_zeros(i), then subdivide_long_edges(mode), then
// clear_denominators, then level re-indexing (the identity here, since the
// surgery only ever uses existing levels).  Afterwards no marking sits
// strictly above i and no edge crosses i; with full mode every edge incident
// to a vertex strictly above i joins adjacent levels.
std::pair<LevelGraph, ModificationReport> semistable_modification(const LevelGraph& graph, int i,
                                                                  ModificationKind kind);

}  // namespace levelcontract
