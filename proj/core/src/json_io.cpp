#include <algorithm>
#include <limits>

#include <nlohmann/json.hpp>

#include "levelcontract/format.hpp"

namespace levelcontract {

namespace {

using nlohmann::json;

json integer_to_json(const Integer& value) {
  static const Integer lo(std::numeric_limits<long long>::min());
  static const Integer hi(std::numeric_limits<long long>::max());
  if (value >= lo && value <= hi) {
    return json(static_cast<long long>(value));
  }
  return json(value.str());
}

json rational_to_json(const Rational& value) {
  return json{{"num", integer_to_json(numerator(value))},
              {"den", integer_to_json(denominator(value))}};
}

struct SchemaError {
  std::string path;
  std::string expected;
  std::string found;
};

// Reader that stops at the first schema violation and remembers its path.
class JsonReader {
 public:
  std::optional<ParseError> error() const {
    if (!error_) return std::nullopt;
    return ParseError{ParseErrorCode::SchemaViolation, SourceSpan{1, 1, 0}, error_->expected,
                      error_->found, error_->path};
  }
  bool failed() const { return error_.has_value(); }

  void fail(std::string path, std::string expected, const json& found) {
    if (error_) return;
    error_ = SchemaError{std::move(path), std::move(expected),
                         found.is_string() ? "\"" + found.get<std::string>() + "\""
                                           : found.dump()};
  }
  void fail_missing(std::string path, std::string expected) {
    if (error_) return;
    error_ = SchemaError{std::move(path), std::move(expected), "nothing"};
  }

  const json* field(const json& object, const std::string& path, const char* key) {
    if (error_) return nullptr;
    if (!object.is_object()) {
      fail(path, "an object", object);
      return nullptr;
    }
    auto it = object.find(key);
    if (it == object.end()) {
      fail_missing(path + "/" + key, "a \"" + std::string(key) + "\" field");
      return nullptr;
    }
    return &*it;
  }

  std::string read_string(const json& object, const std::string& path, const char* key) {
    const json* value = field(object, path, key);
    if (value == nullptr) return "";
    if (!value->is_string()) {
      fail(path + "/" + key, "a string", *value);
      return "";
    }
    return value->get<std::string>();
  }

  long long read_int(const json& object, const std::string& path, const char* key) {
    const json* value = field(object, path, key);
    if (value == nullptr) return 0;
    if (!value->is_number_integer()) {
      fail(path + "/" + key, "an integer", *value);
      return 0;
    }
    return value->get<long long>();
  }

  Integer read_big_int(const json& value, const std::string& path) {
    if (failed()) return 0;
    if (value.is_number_integer()) return Integer(value.get<long long>());
    if (value.is_string()) {
      try {
        return Integer(value.get<std::string>());
      } catch (const std::exception&) {
        fail(path, "an integer string", value);
        return 0;
      }
    }
    fail(path, "an integer or integer string", value);
    return 0;
  }

  Rational read_rational(const json& object, const std::string& path, const char* key) {
    const json* value = field(object, path, key);
    if (value == nullptr) return 0;
    const std::string base = path + "/" + key;
    const json* num = field(*value, base, "num");
    if (num == nullptr) return 0;
    const json* den = field(*value, base, "den");
    if (den == nullptr) return 0;
    const Integer n = read_big_int(*num, base + "/num");
    const Integer d = read_big_int(*den, base + "/den");
    if (failed()) return 0;
    if (d == 0) {
      fail(base + "/den", "a nonzero denominator", *den);
      return 0;
    }
    Rational result(n);
    result /= Rational(d);
    return result;
  }

 private:
  std::optional<SchemaError> error_;
};

}  // namespace

std::string to_json(const LevelGraph& graph) {
  LevelGraph sorted = graph;
  sorted.sort_by_id();

  json root;
  root["vertices"] = json::array();
  for (const Vertex& v : sorted.vertices) {
    root["vertices"].push_back(json{{"id", v.id},
                                    {"genus", v.genus},
                                    {"level", v.level},
                                    {"kind", std::string(vertex_kind_name(v.kind))}});
  }
  root["edges"] = json::array();
  for (const Edge& e : sorted.edges) {
    root["edges"].push_back(json{{"id", e.id},
                                 {"upper", e.upper},
                                 {"lower", e.lower},
                                 {"slope", e.slope},
                                 {"length", rational_to_json(e.length)}});
  }
  root["markings"] = json::array();
  for (const Marking& m : sorted.markings) {
    root["markings"].push_back(json{{"id", m.id}, {"vertex", m.vertex}, {"order", m.order}});
  }
  root["levels"] = json::array();
  for (const auto& [level, ell] : sorted.levels.entries()) {
    root["levels"].push_back(json{{"level", level}, {"ell", rational_to_json(ell)}});
  }
  return root.dump(2) + "\n";
}

ParseResult from_json(std::string_view text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) {
    return {std::nullopt,
            ParseError{ParseErrorCode::SchemaViolation, SourceSpan{1, 1, 0}, "well-formed JSON",
                       "a syntax error", "/"}};
  }

  JsonReader reader;
  LevelGraph graph;

  auto section = [&](const char* key) -> const json* {
    const json* value = reader.field(root, "", key);
    if (value == nullptr) return nullptr;
    if (!value->is_array()) {
      reader.fail(std::string("/") + key, "an array", *value);
      return nullptr;
    }
    return value;
  };

  if (const json* vertices = section("vertices")) {
    for (std::size_t i = 0; i < vertices->size() && !reader.failed(); ++i) {
      const std::string path = "/vertices/" + std::to_string(i);
      const json& entry = (*vertices)[i];
      Vertex v;
      v.id = reader.read_string(entry, path, "id");
      v.genus = static_cast<int>(reader.read_int(entry, path, "genus"));
      v.level = static_cast<int>(reader.read_int(entry, path, "level"));
      const std::string kind = reader.read_string(entry, path, "kind");
      if (!reader.failed()) {
        if (kind == "stable") {
          v.kind = VertexKind::stable;
        } else if (kind == "chain") {
          v.kind = VertexKind::chain;
        } else if (kind == "leaf") {
          v.kind = VertexKind::leaf;
        } else {
          reader.fail(path + "/kind", "\"stable\", \"chain\", or \"leaf\"", entry["kind"]);
        }
      }
      if (!reader.failed()) graph.vertices.push_back(std::move(v));
    }
  }

  if (const json* edges = section("edges")) {
    for (std::size_t i = 0; i < edges->size() && !reader.failed(); ++i) {
      const std::string path = "/edges/" + std::to_string(i);
      const json& entry = (*edges)[i];
      Edge e;
      e.id = reader.read_string(entry, path, "id");
      e.upper = reader.read_string(entry, path, "upper");
      e.lower = reader.read_string(entry, path, "lower");
      e.slope = static_cast<int>(reader.read_int(entry, path, "slope"));
      e.length = reader.read_rational(entry, path, "length");
      if (!reader.failed()) graph.edges.push_back(std::move(e));
    }
  }

  if (const json* markings = section("markings")) {
    for (std::size_t i = 0; i < markings->size() && !reader.failed(); ++i) {
      const std::string path = "/markings/" + std::to_string(i);
      const json& entry = (*markings)[i];
      Marking m;
      m.id = reader.read_string(entry, path, "id");
      m.vertex = reader.read_string(entry, path, "vertex");
      m.order = static_cast<int>(reader.read_int(entry, path, "order"));
      if (!reader.failed()) graph.markings.push_back(std::move(m));
    }
  }

  if (const json* levels = section("levels")) {
    for (std::size_t i = 0; i < levels->size() && !reader.failed(); ++i) {
      const std::string path = "/levels/" + std::to_string(i);
      const json& entry = (*levels)[i];
      const int level = static_cast<int>(reader.read_int(entry, path, "level"));
      const Rational ell = reader.read_rational(entry, path, "ell");
      if (reader.failed()) break;
      if (graph.levels.contains(level)) {
        reader.fail(path + "/level", "a level index declared once", entry["level"]);
        break;
      }
      graph.levels.set(level, ell);
    }
  }

  if (auto error = reader.error()) return {std::nullopt, std::move(*error)};
  return {std::move(graph), std::nullopt};
}

}  // namespace levelcontract
