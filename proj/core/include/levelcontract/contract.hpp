#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "levelcontract/level_graph.hpp"

namespace levelcontract {

// Multiplicities of the vertical twist divisor for contraction at level i:
// c(j) = ell(i) - ell(j) for j > i, and 0 for j <= i.
struct TwistData {
  int target_level = 0;
  std::map<int, Rational, std::greater<int>> multiplicities;

  const Rational& at(int level) const;

  bool operator==(const TwistData&) const = default;
};

enum class ObstructionCode {
  MarkedZeroAbove,   // advisory: run the semistable modification first
  MarkedPoleAbove,   // fatal: cannot be pushed below the contraction level
  LongEdgeCrossing,  // advisory: subdivide at the contraction level first
};

std::string_view obstruction_code_name(ObstructionCode code);

struct Obstruction {
  ObstructionCode code;
  std::string location;  // marking or edge id

  bool operator==(const Obstruction&) const = default;
};

// One contracted connected component above the target level.
struct SingularityRecord {
  std::vector<std::string> component;  // vertex ids, sorted
  int branches = 0;                    // n = edges joining the component to level i
  int component_genus = 0;             // p_a of the induced subgraph
  int delta = 0;                       // p_a(Y) + n - 1
  std::vector<int> contact_orders;     // slopes of the branch edges, sorted

  bool operator==(const SingularityRecord&) const = default;
};

struct ContractionResult {
  TwistData twist;
  std::vector<SingularityRecord> singularities;
  // Degree of the twisted dualizing bundle on each remaining vertex (level <= i).
  std::map<std::string, Rational> descent_degrees;
  Rational total;  // sum of descent degrees; always 2*p_a - 2
};

class NotContractibleError : public Error {
 public:
  NotContractibleError(int level, std::vector<Obstruction> obstructions);

  const std::vector<Obstruction>& obstructions() const { return obstructions_; }

 private:
  std::vector<Obstruction> obstructions_;
};

TwistData twist_multiplicities(const LevelGraph& graph, int i);

// Degree of omega twisted by the level-i divisor restricted to v:
//   D_i(v) = 2g(v) - 2 + valence(v)
//            + sum over edges at v of (c(other level) - c(level v)) / a(e).
// Defined for every graph, including obstructed ones, where nonzero values
// above i witness the obstruction numerically.
Rational twisted_degree(const LevelGraph& graph, int i, std::string_view vertex_id);

// Empty result means contraction at level i is unobstructed; in that case the
// twisted degree of every vertex strictly above i has been checked to vanish.
std::vector<Obstruction> check_contractibility(const LevelGraph& graph, int i);

// Requires check_contractibility(graph, i) to be empty; otherwise throws
// NotContractibleError carrying the obstruction list.
ContractionResult contract(const LevelGraph& graph, int i);

// Two-level graph with a single genus-g center over one leaf per entry of mu:
// slopes kappa_k = mu_k + 1, lengths L / kappa_k with L = lcm of the slopes,
// so every branch satisfies kappa_k * a_k = L.  Throws OddSignatureSum unless
// sum(mu) is even; entries must be nonnegative.
LevelGraph test_configuration(const std::vector<int>& mu);

}  // namespace levelcontract
