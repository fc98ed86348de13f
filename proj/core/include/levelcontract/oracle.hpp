#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "levelcontract/level_graph.hpp"

namespace levelcontract {

// Desk-scale search bounds; keep the product of ranges below ~10^7.
struct EnumerationBounds {
  int max_vertices = 0;
  int max_edges = 0;
  int max_genus = 0;  // per vertex
  int max_slope = 0;
  int max_order = 0;  // marking orders range over 1..max_order
  int max_levels = 0;
  // Cap on the arithmetic genus of the whole graph; 0 means unbounded.  The
  // per-vertex cap alone admits ~10^3 times more graphs at the same size.
  int max_total_genus = 0;
};

// Every graph passing validate within the bounds, exhaustively, up to
// relabeling of ids; level-table gaps range over 1..max_slope and edge
// lengths are the forced (ell drop)/slope.  Output is deduplicated via
// canonical forms and sorted by them, so the order is deterministic.
std::vector<LevelGraph> enumerate_valid_graphs(const EnumerationBounds& bounds);

// Relabeling-invariant representative: vertices are ordered by iterated
// neighborhood-color refinement, ties broken by the least serialization over
// the residual permutations, then renamed v0, v1, ... (edges e0..., marks
// z0...).
LevelGraph canonical_relabel(const LevelGraph& graph);
std::string canonical_form(const LevelGraph& graph);

// Independent twisted-degree bookkeeping summing integer slope contributions
// edge by edge, with no multiplicity map and no division:
//   level(v) > i:  2g-2 + sum_up(slope+1) + sum_down(1-slope)
//   level(v) = i:  2g-2 + valence + sum_up(slope)
//   level(v) < i:  2g-2 + valence
// Agrees with twisted_degree exactly whenever no edge crosses level i.
Rational recompute_twisted_degree_bruteforce(const LevelGraph& graph, int i,
                                             std::string_view vertex_id);

}  // namespace levelcontract
