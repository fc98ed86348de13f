#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "levelcontract/level_graph.hpp"

namespace levelcontract {

struct TwistData;  // contract.hpp

// 1-based position of a token in DSL source; length 0 marks end-of-input.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;

  bool operator==(const SourceSpan&) const = default;
};

enum class ParseErrorCode {
  UnexpectedToken,
  UnexpectedEnd,
  BadNumber,
  DuplicateId,
  UndeclaredVertex,
  MissingLevel,
  DuplicateLevel,
  SchemaViolation,
};

std::string_view parse_error_code_name(ParseErrorCode code);

struct ParseError {
  ParseErrorCode code = ParseErrorCode::UnexpectedToken;
  SourceSpan span;
  std::string expected;
  std::string found;
  std::string path;  // JSON-pointer-style; empty for DSL errors

  std::string message() const;
};

struct ParseResult {
  std::optional<LevelGraph> graph;
  std::optional<ParseError> error;

  bool ok() const { return graph.has_value(); }
};

// Text DSL:
//   file     := "graph" "{" item* "}"
//   item     := vertex | edge | mark | levels
//   vertex   := "vertex" ID "{" "genus" INT "," "level" INT ("," "kind" KIND)? "}"
//   edge     := "edge" ID? ID "->" ID "{" "slope" INT "," "length" RAT "}"
//   mark     := "mark" ID "on" ID "{" "order" INT "}"
//   levels   := "levels" "{" (INT ":" RAT ("," INT ":" RAT)*)? "}"
// '#' starts a comment to end of line.  The edge id may be omitted, in which
// case ids e1, e2, ... are assigned in declaration order.  Duplicate ids,
// references to undeclared vertices, and vertex levels absent from the levels
// block are parse errors.
ParseResult parse(std::string_view source);

// Inverse serializer: parse(print(g)) == g for structurally well-formed g.
std::string print(const LevelGraph& graph);

// JSON round trip.  Rationals are {"num": ..., "den": ...} with den > 0 and
// gcd(num, den) = 1; values outside int64 range are emitted as strings.
// Schema violations are reported with a JSON-pointer-style path.
std::string to_json(const LevelGraph& graph);
ParseResult from_json(std::string_view text);

// DOT export, one rank group per level (top level first).  If twist data is
// supplied each level's rank is annotated with its multiplicity c(j).
std::string to_dot(const LevelGraph& graph, const TwistData* twist = nullptr);

}  // namespace levelcontract
