#include "levelcontract/format.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <vector>

namespace levelcontract {

std::string_view parse_error_code_name(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::UnexpectedToken: return "UnexpectedToken";
    case ParseErrorCode::UnexpectedEnd: return "UnexpectedEnd";
    case ParseErrorCode::BadNumber: return "BadNumber";
    case ParseErrorCode::DuplicateId: return "DuplicateId";
    case ParseErrorCode::UndeclaredVertex: return "UndeclaredVertex";
    case ParseErrorCode::MissingLevel: return "MissingLevel";
    case ParseErrorCode::DuplicateLevel: return "DuplicateLevel";
    case ParseErrorCode::SchemaViolation: return "SchemaViolation";
  }
  return "ParseError";
}

std::string ParseError::message() const {
  std::ostringstream out;
  if (!path.empty()) {
    out << path << ": ";
  } else {
    out << span.line << ":" << span.column << ": ";
  }
  out << "expected " << expected << ", found " << found;
  return out.str();
}

namespace {

enum class TokenType { LBrace, RBrace, Comma, Colon, Arrow, Slash, Ident, Number, End, Bad };

struct Token {
  TokenType type = TokenType::End;
  std::string text;
  SourceSpan span;
};

// Identifiers may contain '@', and '-' when not beginning an "->" arrow, so
// generated names like "e02@-1" stay single tokens.
std::vector<Token> lex(std::string_view src) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto peek = [&](std::size_t ahead) -> char {
    return i + ahead < src.size() ? src[i + ahead] : '\0';
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Token token;
    token.span = {line, column, 1};
    if (c == '{') {
      token.type = TokenType::LBrace;
      token.text = "{";
      ++i;
    } else if (c == '}') {
      token.type = TokenType::RBrace;
      token.text = "}";
      ++i;
    } else if (c == ',') {
      token.type = TokenType::Comma;
      token.text = ",";
      ++i;
    } else if (c == ':') {
      token.type = TokenType::Colon;
      token.text = ":";
      ++i;
    } else if (c == '/') {
      token.type = TokenType::Slash;
      token.text = "/";
      ++i;
    } else if (c == '-' && peek(1) == '>') {
      token.type = TokenType::Arrow;
      token.text = "->";
      token.span.length = 2;
      i += 2;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::size_t start = i;
      if (c == '-') ++i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      token.type = TokenType::Number;
      token.text = std::string(src.substr(start, i - start));
      token.span.length = static_cast<int>(i - start);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < src.size()) {
        const char d = src[i];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '@') {
          ++i;
        } else if (d == '-' && peek(1) != '>') {
          ++i;
        } else {
          break;
        }
      }
      token.type = TokenType::Ident;
      token.text = std::string(src.substr(start, i - start));
      token.span.length = static_cast<int>(i - start);
    } else {
      token.type = TokenType::Bad;
      token.text = std::string(1, c);
      ++i;
    }
    column = token.span.column + token.span.length;
    tokens.push_back(std::move(token));
    if (tokens.back().type == TokenType::Bad) break;
  }
  tokens.push_back({TokenType::End, "", {line, column, 0}});
  return tokens;
}

std::string describe(const Token& token) {
  if (token.type == TokenType::End) return "end of input";
  return "'" + token.text + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view source) : tokens_(lex(source)) {}

  ParseResult run() {
    parse_file();
    if (error_) return {std::nullopt, error_};
    resolve_references();
    if (error_) return {std::nullopt, error_};
    return {std::move(graph_), std::nullopt};
  }

 private:
  struct VertexRef {
    std::string id;
    SourceSpan span;
  };
  struct LevelRef {
    int level;
    SourceSpan span;
  };

  const Token& current() const { return tokens_[pos_]; }
  const Token& lookahead() const {
    return tokens_[pos_ + 1 < tokens_.size() ? pos_ + 1 : tokens_.size() - 1];
  }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  void fail(ParseErrorCode code, std::string expected, const Token& at) {
    if (error_) return;
    error_ = ParseError{code, at.span, std::move(expected), describe(at), ""};
  }

  bool expect(TokenType type, std::string expected) {
    if (error_) return false;
    if (current().type != type) {
      fail(current().type == TokenType::End ? ParseErrorCode::UnexpectedEnd
                                            : ParseErrorCode::UnexpectedToken,
           std::move(expected), current());
      return false;
    }
    advance();
    return true;
  }

  bool expect_keyword(std::string_view word) {
    if (error_) return false;
    if (current().type != TokenType::Ident || current().text != word) {
      fail(current().type == TokenType::End ? ParseErrorCode::UnexpectedEnd
                                            : ParseErrorCode::UnexpectedToken,
           "'" + std::string(word) + "'", current());
      return false;
    }
    advance();
    return true;
  }

  std::string parse_id(std::string_view what) {
    if (error_) return "";
    if (current().type != TokenType::Ident) {
      fail(current().type == TokenType::End ? ParseErrorCode::UnexpectedEnd
                                            : ParseErrorCode::UnexpectedToken,
           std::string(what), current());
      return "";
    }
    std::string id = current().text;
    advance();
    return id;
  }

  std::optional<long long> parse_int(std::string_view what) {
    if (error_) return std::nullopt;
    if (current().type != TokenType::Number) {
      fail(current().type == TokenType::End ? ParseErrorCode::UnexpectedEnd
                                            : ParseErrorCode::UnexpectedToken,
           std::string(what), current());
      return std::nullopt;
    }
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(current().text.c_str(), &end, 10);
    if (errno == ERANGE || end == nullptr || *end != '\0') {
      fail(ParseErrorCode::BadNumber, std::string(what) + " within integer range", current());
      return std::nullopt;
    }
    advance();
    return value;
  }

  std::optional<Rational> parse_rat(std::string_view what) {
    if (error_) return std::nullopt;
    if (current().type != TokenType::Number) {
      fail(current().type == TokenType::End ? ParseErrorCode::UnexpectedEnd
                                            : ParseErrorCode::UnexpectedToken,
           std::string(what), current());
      return std::nullopt;
    }
    const Integer num(current().text);
    advance();
    if (current().type != TokenType::Slash) return Rational(num);
    advance();
    if (current().type != TokenType::Number) {
      fail(current().type == TokenType::End ? ParseErrorCode::UnexpectedEnd
                                            : ParseErrorCode::UnexpectedToken,
           "denominator", current());
      return std::nullopt;
    }
    const Integer den(current().text);
    if (den == 0) {
      fail(ParseErrorCode::BadNumber, "nonzero denominator", current());
      return std::nullopt;
    }
    advance();
    Rational value(num);
    value /= Rational(den);
    return value;
  }

  void parse_file() {
    if (!expect_keyword("graph")) return;
    if (!expect(TokenType::LBrace, "'{'")) return;
    while (!error_ && current().type != TokenType::RBrace) {
      if (current().type == TokenType::End) {
        fail(ParseErrorCode::UnexpectedEnd, "'}' or item", current());
        return;
      }
      if (current().type != TokenType::Ident) {
        fail(ParseErrorCode::UnexpectedToken, "'vertex', 'edge', 'mark', or 'levels'", current());
        return;
      }
      const std::string& head = current().text;
      if (head == "vertex") {
        parse_vertex();
      } else if (head == "edge") {
        parse_edge();
      } else if (head == "mark") {
        parse_mark();
      } else if (head == "levels") {
        parse_levels();
      } else {
        fail(ParseErrorCode::UnexpectedToken, "'vertex', 'edge', 'mark', or 'levels'", current());
        return;
      }
    }
    if (error_) return;
    advance();  // '}'
    if (current().type != TokenType::End) {
      fail(ParseErrorCode::UnexpectedToken, "end of input", current());
    }
  }

  void check_duplicate(std::string_view what, const std::string& id, const SourceSpan& span,
                       bool exists) {
    if (exists && !error_) {
      error_ = ParseError{ParseErrorCode::DuplicateId, span,
                          "a fresh " + std::string(what) + " id",
                          "'" + id + "' declared before", ""};
    }
  }

  void parse_vertex() {
    advance();  // vertex
    const SourceSpan id_span = current().span;
    Vertex v;
    v.id = parse_id("vertex id");
    check_duplicate("vertex", v.id, id_span, graph_.find_vertex(v.id) != nullptr);
    if (!expect(TokenType::LBrace, "'{'")) return;
    if (!expect_keyword("genus")) return;
    auto genus = parse_int("genus value");
    if (!genus) return;
    v.genus = static_cast<int>(*genus);
    if (!expect(TokenType::Comma, "','")) return;
    if (!expect_keyword("level")) return;
    const SourceSpan level_span = current().span;
    auto level = parse_int("level index");
    if (!level) return;
    v.level = static_cast<int>(*level);
    level_refs_.push_back({v.level, level_span});
    v.kind = VertexKind::stable;
    if (current().type == TokenType::Comma) {
      advance();
      if (!expect_keyword("kind")) return;
      if (current().type != TokenType::Ident ||
          (current().text != "stable" && current().text != "chain" &&
           current().text != "leaf")) {
        fail(ParseErrorCode::UnexpectedToken, "'stable', 'chain', or 'leaf'", current());
        return;
      }
      v.kind = current().text == "stable" ? VertexKind::stable
               : current().text == "chain" ? VertexKind::chain
                                           : VertexKind::leaf;
      advance();
    }
    if (!expect(TokenType::RBrace, "'}'")) return;
    graph_.vertices.push_back(std::move(v));
  }

  void parse_edge() {
    advance();  // edge
    Edge e;
    SourceSpan first_span = current().span;
    std::string first = parse_id("edge id or upper vertex");
    if (error_) return;
    if (current().type == TokenType::Arrow) {
      // "edge UPPER -> LOWER": assign the next free ordinal id.
      int n = static_cast<int>(graph_.edges.size()) + 1;
      while (graph_.find_edge("e" + std::to_string(n)) != nullptr) ++n;
      e.id = "e" + std::to_string(n);
      e.upper = std::move(first);
      vertex_refs_.push_back({e.upper, first_span});
    } else {
      e.id = std::move(first);
      check_duplicate("edge", e.id, first_span, graph_.find_edge(e.id) != nullptr);
      const SourceSpan upper_span = current().span;
      e.upper = parse_id("upper vertex id");
      vertex_refs_.push_back({e.upper, upper_span});
    }
    if (!expect(TokenType::Arrow, "'->'")) return;
    const SourceSpan lower_span = current().span;
    e.lower = parse_id("lower vertex id");
    vertex_refs_.push_back({e.lower, lower_span});
    if (!expect(TokenType::LBrace, "'{'")) return;
    if (!expect_keyword("slope")) return;
    auto slope = parse_int("slope value");
    if (!slope) return;
    e.slope = static_cast<int>(*slope);
    if (!expect(TokenType::Comma, "','")) return;
    if (!expect_keyword("length")) return;
    auto length = parse_rat("length value");
    if (!length) return;
    e.length = std::move(*length);
    if (!expect(TokenType::RBrace, "'}'")) return;
    graph_.edges.push_back(std::move(e));
  }

  void parse_mark() {
    advance();  // mark
    const SourceSpan id_span = current().span;
    Marking m;
    m.id = parse_id("marking id");
    check_duplicate("marking", m.id, id_span, graph_.find_marking(m.id) != nullptr);
    if (!expect_keyword("on")) return;
    const SourceSpan vertex_span = current().span;
    m.vertex = parse_id("vertex id");
    vertex_refs_.push_back({m.vertex, vertex_span});
    if (!expect(TokenType::LBrace, "'{'")) return;
    if (!expect_keyword("order")) return;
    auto order = parse_int("order value");
    if (!order) return;
    m.order = static_cast<int>(*order);
    if (!expect(TokenType::RBrace, "'}'")) return;
    graph_.markings.push_back(std::move(m));
  }

  void parse_levels() {
    advance();  // levels
    if (!expect(TokenType::LBrace, "'{'")) return;
    if (current().type == TokenType::RBrace) {
      advance();
      return;
    }
    while (true) {
      const SourceSpan index_span = current().span;
      auto index = parse_int("level index");
      if (!index) return;
      if (graph_.levels.contains(static_cast<int>(*index))) {
        error_ = ParseError{ParseErrorCode::DuplicateLevel, index_span,
                            "a level index declared once",
                            "level " + std::to_string(*index) + " declared before", ""};
        return;
      }
      if (!expect(TokenType::Colon, "':'")) return;
      auto value = parse_rat("vanishing order");
      if (!value) return;
      graph_.levels.set(static_cast<int>(*index), std::move(*value));
      if (current().type == TokenType::Comma) {
        advance();
        continue;
      }
      break;
    }
    expect(TokenType::RBrace, "'}'");
  }

  void resolve_references() {
    for (const VertexRef& ref : vertex_refs_) {
      if (graph_.find_vertex(ref.id) == nullptr) {
        error_ = ParseError{ParseErrorCode::UndeclaredVertex, ref.span, "a declared vertex id",
                            "'" + ref.id + "'", ""};
        return;
      }
    }
    for (const LevelRef& ref : level_refs_) {
      if (!graph_.levels.contains(ref.level)) {
        error_ = ParseError{ParseErrorCode::MissingLevel, ref.span,
                            "a level declared in the levels block",
                            "level " + std::to_string(ref.level), ""};
        return;
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  LevelGraph graph_;
  std::vector<VertexRef> vertex_refs_;
  std::vector<LevelRef> level_refs_;
  std::optional<ParseError> error_;
};

}  // namespace

ParseResult parse(std::string_view source) { return Parser(source).run(); }

std::string print(const LevelGraph& graph) {
  std::ostringstream out;
  out << "graph {\n";
  for (const Vertex& v : graph.vertices) {
    out << "  vertex " << v.id << " { genus " << v.genus << ", level " << v.level;
    if (v.kind != VertexKind::stable) out << ", kind " << vertex_kind_name(v.kind);
    out << " }\n";
  }
  for (const Edge& e : graph.edges) {
    out << "  edge " << e.id << " " << e.upper << " -> " << e.lower << " { slope " << e.slope
        << ", length " << to_string(e.length) << " }\n";
  }
  for (const Marking& m : graph.markings) {
    out << "  mark " << m.id << " on " << m.vertex << " { order " << m.order << " }\n";
  }
  out << "  levels {";
  bool first = true;
  for (const auto& [level, ell] : graph.levels.entries()) {
    out << (first ? " " : ", ") << level << ": " << to_string(ell);
    first = false;
  }
  out << " }\n";
  out << "}\n";
  return out.str();
}

}  // namespace levelcontract
