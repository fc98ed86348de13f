#pragma once

#include <map>
#include <string>
#include <vector>

#include "levelcontract/level_graph.hpp"
#include "levelcontract/linear.hpp"

namespace levelcontract {

struct ComplexRational {
  Rational re = 0;
  Rational im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const ComplexRational&) const = default;
  ComplexRational& operator+=(const ComplexRational& other) {
    re += other.re;
    im += other.im;
    return *this;
  }
};

std::string to_string(const ComplexRational& value);

// Residues of the lower level's differential, keyed by the polar loci: the
// lower branch of every edge (pole of order slope+1 there), and every marking
// of order <= -1.  A marking of order exactly -1 must carry a nonzero residue.
struct ResidueAssignment {
  std::map<std::string, ComplexRational> edges;
  std::map<std::string, ComplexRational> marks;
};

struct VertexViolation {
  std::string vertex;
  int level = 0;
  ComplexRational sum;

  bool operator==(const VertexViolation&) const = default;
};

struct GrcViolation {
  int level = 0;                       // contraction level i
  std::vector<std::string> component;  // vertex ids strictly above i, sorted
  ComplexRational sum;

  bool operator==(const GrcViolation&) const = default;
};

struct SemistableViolation {
  std::string vertex;  // chain or leaf vertex
  std::string edge;    // its unique polar edge

  bool operator==(const SemistableViolation&) const = default;
};

struct ResidueReport {
  std::vector<VertexViolation> vertex_violations;
  std::vector<GrcViolation> grc_violations;
  std::vector<SemistableViolation> semistable_violations;

  bool ok() const {
    return vertex_violations.empty() && grc_violations.empty() && semistable_violations.empty();
  }
};

// Per-vertex residue theorem: at every vertex the residues over its poles
// (upward edges plus marked poles) sum to zero.  Also reports, per semistable
// vertex, a nonzero residue on its unique polar edge.  Throws MissingResidue
// / UnexpectedResidue when the assignment does not match the polar loci, and
// SimplePoleZeroResidue for an order -1 marking with residue 0.
ResidueReport check_residue_theorem(const LevelGraph& graph, const ResidueAssignment& r);

// Global residue condition at level i: for each connected component strictly
// above i carrying no marking of negative order, the residues of the edges
// joining it to level i sum to zero.  Requires that no edge crosses level i
// (throws LongEdgeCrossing; run the modification first).
ResidueReport check_grc(const LevelGraph& graph, int i, const ResidueAssignment& r);

// Homogeneous system over the rationals cutting out the admissible edge
// residues: one row per vertex (residue theorem) and, when include_grc is
// set, one row per component above i subject to the GRC.  The complex
// solution space is this rational kernel componentwise, so dimensions agree.
struct LinearSystem {
  std::vector<std::string> unknowns;  // edge ids
  Matrix rows;
  std::size_t kernel_dimension = 0;
  std::vector<std::vector<Rational>> kernel;
};

LinearSystem residue_solution_space(const LevelGraph& graph, int i, bool include_grc = true);

// Zero residues on every polar locus of the graph.
ResidueAssignment zero_assignment(const LevelGraph& graph);

// JSON form: {"edges": {id: {"re": RAT, "im": RAT}}, "marks": {...}} where
// RAT is an integer, an integer string, or a "p/q" string.
struct ResidueParseResult {
  ResidueAssignment assignment;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

ResidueParseResult residues_from_json(std::string_view text);

}  // namespace levelcontract
