// Command-line front end: parse -> validate -> modify -> contract/grc -> export.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "levelcontract/contract.hpp"
#include "levelcontract/format.hpp"
#include "levelcontract/modify.hpp"
#include "levelcontract/oracle.hpp"
#include "levelcontract/residues.hpp"

namespace lc = levelcontract;
using nlohmann::json;

namespace {

// ---- exit codes (stable) ------------------------------------------------

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kParseError = 2;
constexpr int kObstructed = 3;
constexpr int kResidueFailure = 4;
constexpr int kInternal = 5;

int exit_code_for(lc::ErrorCode code) {
  switch (code) {
    case lc::ErrorCode::DisconnectedGraph:
    case lc::ErrorCode::UnknownLevel:
    case lc::ErrorCode::UnknownVertex:
    case lc::ErrorCode::InvalidInput:
    case lc::ErrorCode::OddSignatureSum:
      return kInvalid;
    case lc::ErrorCode::MarkedPoleAbove:
    case lc::ErrorCode::LongEdgeCrossing:
    case lc::ErrorCode::NotContractible:
      return kObstructed;
    case lc::ErrorCode::MissingResidue:
    case lc::ErrorCode::UnexpectedResidue:
    case lc::ErrorCode::SimplePoleZeroResidue:
      return kResidueFailure;
    case lc::ErrorCode::InternalInvariantViolation:
      return kInternal;
  }
  return kInternal;
}

// ---- terminal color -------------------------------------------------------

bool color_enabled() {
  static const bool enabled = [] {
    const char* env = std::getenv("LEVELCONTRACT_COLOR");
    if (env != nullptr && std::string(env) == "0") return false;
    return isatty(STDOUT_FILENO) != 0;
  }();
  return enabled;
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}
std::string green(const std::string& text) { return paint(text, "32"); }
std::string red(const std::string& text) { return paint(text, "31"); }
std::string yellow(const std::string& text) { return paint(text, "33"); }

// ---- plumbing -------------------------------------------------------------

struct CliFailure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kParseError, path + ": cannot open file"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliFailure{kParseError, path + ": cannot open for writing"};
  out << content;
}

bool looks_like_json(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

lc::LevelGraph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  lc::ParseResult result = looks_like_json(path) ? lc::from_json(text) : lc::parse(text);
  if (!result.ok()) {
    throw CliFailure{kParseError, path + ":" + result.error->message()};
  }
  return std::move(*result.graph);
}

void require_valid(const std::string& path, const lc::LevelGraph& graph) {
  lc::ValidationReport report = lc::validate(graph);
  if (!report.valid()) {
    throw CliFailure{kInvalid, path + ": " + report.violations.front().message};
  }
}

// ---- JSON report serializers ----------------------------------------------

json complex_json(const lc::ComplexRational& value) {
  return json{{"re", lc::to_string(value.re)}, {"im", lc::to_string(value.im)}};
}

json validation_json(const lc::ValidationReport& report) {
  json violations = json::array();
  for (const lc::Violation& v : report.violations) {
    violations.push_back(json{{"code", std::string(lc::violation_code_name(v.code))},
                              {"location", v.location},
                              {"message", v.message}});
  }
  return json{{"valid", report.valid()}, {"violations", violations}};
}

json twist_json(const lc::TwistData& twist) {
  json multiplicities = json::array();
  for (const auto& [level, c] : twist.multiplicities) {
    multiplicities.push_back(json{{"level", level}, {"multiplicity", lc::to_string(c)}});
  }
  return json{{"target_level", twist.target_level}, {"multiplicities", multiplicities}};
}

json contraction_json(const lc::ContractionResult& result) {
  json singularities = json::array();
  for (const lc::SingularityRecord& s : result.singularities) {
    singularities.push_back(json{{"component", s.component},
                                 {"branches", s.branches},
                                 {"component_genus", s.component_genus},
                                 {"delta", s.delta},
                                 {"contact_orders", s.contact_orders}});
  }
  json degrees = json::array();
  for (const auto& [vertex, degree] : result.descent_degrees) {
    degrees.push_back(json{{"vertex", vertex}, {"degree", lc::to_string(degree)}});
  }
  return json{{"twist", twist_json(result.twist)},
              {"singularities", singularities},
              {"descent_degrees", degrees},
              {"total", lc::to_string(result.total)}};
}

json modification_json(const lc::ModificationReport& report) {
  json chains = json::array();
  for (const lc::ChainInsertion& c : report.chain_insertions) {
    chains.push_back(
        json{{"source_edge", c.source_edge}, {"vertices", c.vertices}, {"edges", c.edges}});
  }
  json leaves = json::array();
  for (const lc::LeafChain& l : report.leaf_chains) {
    leaves.push_back(json{{"source_marking", l.source_marking},
                          {"leaf_vertex", l.leaf_vertex},
                          {"vertices", l.vertices},
                          {"edges", l.edges}});
  }
  json edge_map = json::object();
  for (const auto& [input, segments] : report.edge_map) edge_map[input] = segments;
  json level_map = json::array();
  for (const auto& [from, to] : report.level_map) {
    level_map.push_back(json{{"from", from}, {"to", to}});
  }
  return json{{"base_change", report.base_change},
              {"chain_insertions", chains},
              {"leaf_chains", leaves},
              {"edge_map", edge_map},
              {"level_map", level_map}};
}

json residue_report_json(const lc::ResidueReport& report) {
  json vertex = json::array();
  for (const auto& v : report.vertex_violations) {
    vertex.push_back(
        json{{"vertex", v.vertex}, {"level", v.level}, {"sum", complex_json(v.sum)}});
  }
  json grc = json::array();
  for (const auto& g : report.grc_violations) {
    grc.push_back(
        json{{"level", g.level}, {"component", g.component}, {"sum", complex_json(g.sum)}});
  }
  json semistable = json::array();
  for (const auto& s : report.semistable_violations) {
    semistable.push_back(json{{"vertex", s.vertex}, {"edge", s.edge}});
  }
  return json{{"ok", report.ok()},
              {"vertex_violations", vertex},
              {"grc_violations", grc},
              {"semistable_violations", semistable}};
}

void emit_json(const json& value) { std::cout << value.dump(2) << "\n"; }

// ---- subcommand payloads ----------------------------------------------------

struct Options {
  std::vector<std::string> files;
  std::string out;
  int level = 0;
  bool has_level = false;
  std::string mode = "minimal";
  bool do_modify = false;
  bool as_json = false;
  bool as_dot = false;
  bool has_twist_level = false;
  int twist_level = 0;
  std::string residues;
  bool solve = false;
  std::string mu;
  bool print_graphs = false;
  lc::EnumerationBounds bounds;
};

lc::ModificationKind mode_kind(const Options& opt) {
  return opt.mode == "full" ? lc::ModificationKind::full : lc::ModificationKind::minimal;
}

int cmd_validate_one(const std::string& path, const Options& opt) {
  const std::string text = read_file(path);
  lc::ParseResult parsed = looks_like_json(path) ? lc::from_json(text) : lc::parse(text);
  if (!parsed.ok()) {
    if (opt.as_json) {
      emit_json(json{{"file", path},
                     {"parse_error", parsed.error->message()},
                     {"code", std::string(lc::parse_error_code_name(parsed.error->code))}});
    } else {
      std::cout << path << ": " << red("parse error: " + parsed.error->message()) << "\n";
    }
    return kParseError;
  }
  lc::ValidationReport report = lc::validate(*parsed.graph);
  if (opt.as_json) {
    json payload = validation_json(report);
    payload["file"] = path;
    emit_json(payload);
  } else if (report.valid()) {
    std::cout << path << ": " << green("valid") << "\n";
  } else {
    std::cout << path << ": " << red("invalid") << "\n";
    for (const lc::Violation& v : report.violations) {
      std::cout << "  " << lc::violation_code_name(v.code) << " at '" << v.location
                << "': " << v.message << "\n";
    }
  }
  return report.valid() ? kOk : kInvalid;
}

int cmd_modify_one(const std::string& path, const Options& opt) {
  lc::LevelGraph graph = load_graph(path);
  auto [modified, report] = lc::semistable_modification(graph, opt.level, mode_kind(opt));
  const std::string graph_text =
      !opt.out.empty() && looks_like_json(opt.out) ? lc::to_json(modified) : lc::print(modified);

  if (opt.as_json) {
    emit_json(json{{"file", path},
                   {"graph", json::parse(lc::to_json(modified))},
                   {"report", modification_json(report)}});
  } else if (!opt.out.empty()) {
    write_file(opt.out, graph_text);
    std::cout << path << ": modified graph written to " << opt.out << " (base change d = "
              << report.base_change << ")\n";
  } else {
    std::cout << graph_text;
    std::cerr << path << ": base change t = s^d with d = " << report.base_change << "; "
              << report.leaf_chains.size() << " leaf chain(s), " << report.chain_insertions.size()
              << " edge subdivision(s)\n";
  }
  if (opt.as_json && !opt.out.empty()) write_file(opt.out, graph_text);
  return kOk;
}

int cmd_contract_one(const std::string& path, const Options& opt) {
  lc::LevelGraph graph = load_graph(path);
  require_valid(path, graph);
  lc::ModificationReport mod_report;
  if (opt.do_modify) {
    auto [modified, report] = lc::semistable_modification(graph, opt.level, mode_kind(opt));
    graph = std::move(modified);
    mod_report = std::move(report);
  }

  std::vector<lc::Obstruction> obstructions = lc::check_contractibility(graph, opt.level);
  if (!obstructions.empty()) {
    if (opt.as_json) {
      json list = json::array();
      for (const lc::Obstruction& o : obstructions) {
        list.push_back(json{{"code", std::string(lc::obstruction_code_name(o.code))},
                            {"location", o.location}});
      }
      emit_json(json{{"file", path}, {"contractible", false}, {"obstructions", list}});
    } else {
      std::cout << path << ": " << red("not contractible at level " + std::to_string(opt.level))
                << "\n";
      for (const lc::Obstruction& o : obstructions) {
        const bool fatal = o.code == lc::ObstructionCode::MarkedPoleAbove;
        std::cout << "  " << (fatal ? red(std::string(lc::obstruction_code_name(o.code)))
                                    : yellow(std::string(lc::obstruction_code_name(o.code))))
                  << " at '" << o.location << "'"
                  << (fatal ? "" : "  (run the semistable modification, e.g. --modify)") << "\n";
      }
    }
    return kObstructed;
  }

  lc::ContractionResult result = lc::contract(graph, opt.level);
  if (opt.as_json) {
    json payload = contraction_json(result);
    payload["file"] = path;
    payload["contractible"] = true;
    if (opt.do_modify) payload["modification"] = modification_json(mod_report);
    emit_json(payload);
    return kOk;
  }
  std::cout << path << ": " << green("contractible at level " + std::to_string(opt.level)) << "\n";
  std::cout << "  twist multiplicities:";
  for (const auto& [level, c] : result.twist.multiplicities) {
    std::cout << " c(" << level << ")=" << lc::to_string(c);
  }
  std::cout << "\n";
  for (const lc::SingularityRecord& s : result.singularities) {
    std::cout << "  singularity: Y = {";
    for (std::size_t k = 0; k < s.component.size(); ++k) {
      std::cout << (k > 0 ? ", " : "") << s.component[k];
    }
    std::cout << "}, n = " << s.branches << ", p_a(Y) = " << s.component_genus
              << ", delta = " << s.delta << ", contacts =";
    for (int order : s.contact_orders) std::cout << " " << order;
    std::cout << "\n";
  }
  std::cout << "  descent degrees:";
  for (const auto& [vertex, degree] : result.descent_degrees) {
    std::cout << " D(" << vertex << ")=" << lc::to_string(degree);
  }
  std::cout << "\n  total = " << lc::to_string(result.total) << " = 2*p_a - 2\n";
  return kOk;
}

int cmd_grc_one(const std::string& path, const Options& opt) {
  lc::LevelGraph graph = load_graph(path);
  require_valid(path, graph);

  if (opt.solve) {
    lc::LinearSystem with_grc = lc::residue_solution_space(graph, opt.level, true);
    lc::LinearSystem theorem_only = lc::residue_solution_space(graph, opt.level, false);
    if (opt.as_json) {
      json kernel = json::array();
      for (const auto& vec : with_grc.kernel) {
        json row = json::array();
        for (const lc::Rational& value : vec) row.push_back(lc::to_string(value));
        kernel.push_back(row);
      }
      emit_json(json{{"file", path},
                     {"unknowns", with_grc.unknowns},
                     {"kernel_dimension_with_grc", with_grc.kernel_dimension},
                     {"kernel_dimension_theorem_only", theorem_only.kernel_dimension},
                     {"kernel_basis_with_grc", kernel}});
    } else {
      std::cout << path << ": kernel dim: " << with_grc.kernel_dimension << " (with GRC), "
                << theorem_only.kernel_dimension << " (without)\n";
    }
    return kOk;
  }

  lc::ResidueAssignment assignment;
  if (opt.residues == "zeros") {
    assignment = lc::zero_assignment(graph);
  } else {
    lc::ResidueParseResult parsed = lc::residues_from_json(read_file(opt.residues));
    if (!parsed.ok()) {
      throw CliFailure{kParseError, opt.residues + ": " + parsed.error};
    }
    assignment = std::move(parsed.assignment);
  }

  lc::ResidueReport report = lc::check_residue_theorem(graph, assignment);
  lc::ResidueReport grc = lc::check_grc(graph, opt.level, assignment);
  report.grc_violations = std::move(grc.grc_violations);

  if (opt.as_json) {
    json payload = residue_report_json(report);
    payload["file"] = path;
    emit_json(payload);
  } else if (report.ok()) {
    std::cout << path << ": " << green("residue checks pass at level " + std::to_string(opt.level))
              << "\n";
  } else {
    std::cout << path << ": " << red("residue checks fail") << "\n";
    for (const auto& v : report.vertex_violations) {
      std::cout << "  residue theorem at '" << v.vertex << "' (level " << v.level
                << "): sum = " << lc::to_string(v.sum) << "\n";
    }
    for (const auto& g : report.grc_violations) {
      std::cout << "  GRC at level " << g.level << ", component {";
      for (std::size_t k = 0; k < g.component.size(); ++k) {
        std::cout << (k > 0 ? ", " : "") << g.component[k];
      }
      std::cout << "}: sum = " << lc::to_string(g.sum) << "\n";
    }
    for (const auto& s : report.semistable_violations) {
      std::cout << "  semistable vertex '" << s.vertex << "' needs residue 0 on edge '" << s.edge
                << "'\n";
    }
  }
  return report.ok() ? kOk : kResidueFailure;
}

int cmd_testconfig(const Options& opt) {
  std::vector<int> mu;
  std::stringstream stream(opt.mu);
  std::string piece;
  while (std::getline(stream, piece, ',')) {
    try {
      std::size_t eaten = 0;
      const int value = std::stoi(piece, &eaten);
      if (eaten != piece.size()) throw std::invalid_argument(piece);
      mu.push_back(value);
    } catch (const std::exception&) {
      throw CliFailure{kParseError, "--mu expects a comma-separated list of integers"};
    }
  }
  lc::LevelGraph graph = lc::test_configuration(mu);
  const std::string text =
      !opt.out.empty() && looks_like_json(opt.out) ? lc::to_json(graph) : lc::print(graph);
  if (opt.as_json && opt.out.empty()) {
    emit_json(json::parse(lc::to_json(graph)));
  } else if (!opt.out.empty()) {
    write_file(opt.out, opt.as_json ? lc::to_json(graph) : text);
    std::cout << "test configuration written to " << opt.out << "\n";
  } else {
    std::cout << text;
  }
  return kOk;
}

int cmd_export_one(const std::string& path, const Options& opt) {
  lc::LevelGraph graph = load_graph(path);
  std::string text;
  if (opt.as_dot) {
    if (opt.has_twist_level) {
      lc::TwistData twist = lc::twist_multiplicities(graph, opt.twist_level);
      text = lc::to_dot(graph, &twist);
    } else {
      text = lc::to_dot(graph);
    }
  } else {
    text = lc::to_json(graph);
  }
  if (!opt.out.empty()) {
    write_file(opt.out, text);
  } else {
    std::cout << text;
  }
  return kOk;
}

int cmd_enumerate(const Options& opt) {
  std::vector<lc::LevelGraph> graphs = lc::enumerate_valid_graphs(opt.bounds);
  if (opt.as_json) {
    json list = json::array();
    for (const lc::LevelGraph& graph : graphs) list.push_back(json::parse(lc::to_json(graph)));
    emit_json(json{{"count", graphs.size()}, {"graphs", list}});
  } else if (opt.print_graphs) {
    for (const lc::LevelGraph& graph : graphs) std::cout << lc::print(graph) << "\n";
    std::cout << "count: " << graphs.size() << "\n";
  } else {
    std::cout << "count: " << graphs.size() << "\n";
  }
  return kOk;
}

// Runs `body` per file, reporting the max exit code; domain errors are mapped
// to their exit codes without aborting the batch.
template <typename Body>
int for_each_file(const Options& opt, Body body) {
  int worst = kOk;
  for (const std::string& path : opt.files) {
    int code = kOk;
    try {
      code = body(path);
    } catch (const CliFailure& failure) {
      std::cerr << red("error: " + failure.message) << "\n";
      code = failure.code;
    } catch (const lc::Error& error) {
      std::cerr << red("error: " + std::string(lc::error_code_name(error.code())) + ": " +
                       error.what())
                << "\n";
      code = exit_code_for(error.code());
    }
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"level graph calculus: validation, semistable modification, Gorenstein "
               "contraction analysis, and residue conditions"};
  app.require_subcommand(1);

  Options opt;

  CLI::App* validate = app.add_subcommand("validate", "check a graph against all axioms");
  validate->add_option("files", opt.files, "graph files (.graph DSL or .json)")->required();
  validate->add_flag("--json", opt.as_json, "machine-readable output");

  CLI::App* modify = app.add_subcommand("modify", "apply the semistable modification");
  modify->add_option("files", opt.files, "graph files")->required();
  modify->add_option("--level", opt.level, "target level i")->required();
  modify->add_option("--mode", opt.mode, "minimal | full (default minimal)")
      ->check(CLI::IsMember({"minimal", "full"}));
  modify->add_option("--out", opt.out, "write the modified graph to this path");
  modify->add_flag("--json", opt.as_json, "machine-readable output");

  CLI::App* contract = app.add_subcommand("contract", "analyze the contraction at a level");
  contract->add_option("files", opt.files, "graph files")->required();
  contract->add_option("--level", opt.level, "contraction level i")->required();
  contract->add_flag("--modify", opt.do_modify, "run the semistable modification first");
  contract->add_option("--mode", opt.mode, "modification mode when --modify is set")
      ->check(CLI::IsMember({"minimal", "full"}));
  contract->add_flag("--json", opt.as_json, "machine-readable output");

  CLI::App* grc = app.add_subcommand("grc", "residue theorem and global residue condition");
  grc->add_option("files", opt.files, "graph files")->required();
  grc->add_option("--level", opt.level, "contraction level i")->required();
  grc->add_option("--residues", opt.residues,
                  "residue assignment JSON file, or 'zeros' for the zero assignment");
  grc->add_flag("--solve", opt.solve, "report the kernel of the residue constraint system");
  grc->add_flag("--json", opt.as_json, "machine-readable output");

  CLI::App* testconfig = app.add_subcommand("testconfig", "build the two-level test configuration");
  testconfig->add_option("--mu", opt.mu, "comma-separated marking orders, e.g. 1,3")->required();
  testconfig->add_option("--out", opt.out, "write the graph to this path");
  testconfig->add_flag("--json", opt.as_json, "emit JSON instead of the DSL");

  CLI::App* export_cmd = app.add_subcommand("export", "serialize a graph to DOT or JSON");
  export_cmd->add_option("files", opt.files, "graph files")->required();
  export_cmd->add_flag("--dot", opt.as_dot, "DOT output");
  export_cmd->add_flag("--json", opt.as_json, "JSON output");
  export_cmd->add_option("--twist-level", opt.twist_level, "annotate ranks with c(j) for this level")
      ->each([&opt](const std::string&) { opt.has_twist_level = true; });
  export_cmd->add_option("--out", opt.out, "write to this path");

  CLI::App* enumerate = app.add_subcommand("enumerate", "exhaustively enumerate small valid graphs");
  enumerate->add_option("--max-vertices", opt.bounds.max_vertices)->required();
  enumerate->add_option("--max-edges", opt.bounds.max_edges)->required();
  enumerate->add_option("--max-genus", opt.bounds.max_genus)->required();
  enumerate->add_option("--max-slope", opt.bounds.max_slope)->required();
  enumerate->add_option("--max-order", opt.bounds.max_order)->required();
  enumerate->add_option("--max-levels", opt.bounds.max_levels)->required();
  enumerate->add_option("--max-total-genus", opt.bounds.max_total_genus,
                        "cap on the arithmetic genus of the whole graph (0 = unbounded)");
  enumerate->add_flag("--print", opt.print_graphs, "print each graph in the DSL");
  enumerate->add_flag("--json", opt.as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (validate->parsed()) return for_each_file(opt, [&](const std::string& p) {
      return cmd_validate_one(p, opt);
    });
    if (modify->parsed()) {
      if (!opt.out.empty() && opt.files.size() > 1) {
        std::cerr << red("error: --out requires a single input file") << "\n";
        return kParseError;
      }
      return for_each_file(opt, [&](const std::string& p) { return cmd_modify_one(p, opt); });
    }
    if (contract->parsed()) return for_each_file(opt, [&](const std::string& p) {
      return cmd_contract_one(p, opt);
    });
    if (grc->parsed()) {
      if (opt.solve == !opt.residues.empty()) {
        std::cerr << red("error: supply exactly one of --residues or --solve") << "\n";
        return kParseError;
      }
      return for_each_file(opt, [&](const std::string& p) { return cmd_grc_one(p, opt); });
    }
    if (testconfig->parsed()) return cmd_testconfig(opt);
    if (export_cmd->parsed()) {
      if (opt.as_dot == opt.as_json) {
        std::cerr << red("error: supply exactly one of --dot or --json") << "\n";
        return kParseError;
      }
      if (!opt.out.empty() && opt.files.size() > 1) {
        std::cerr << red("error: --out requires a single input file") << "\n";
        return kParseError;
      }
      return for_each_file(opt, [&](const std::string& p) { return cmd_export_one(p, opt); });
    }
    if (enumerate->parsed()) return cmd_enumerate(opt);
  } catch (const CliFailure& failure) {
    std::cerr << red("error: " + failure.message) << "\n";
    return failure.code;
  } catch (const lc::Error& error) {
    std::cerr << red("error: " + std::string(lc::error_code_name(error.code())) + ": " +
                     error.what())
              << "\n";
    return exit_code_for(error.code());
  }
  return kOk;
}
