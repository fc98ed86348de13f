#include "levelcontract/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "levelcontract/format.hpp"

namespace levelcontract {

namespace {

// ---- canonical form ---------------------------------------------------

// Iterated color refinement: start from (level, genus, kind, marking orders)
// and refine by the multiset of (direction, slope, length, neighbor color)
// until the partition stabilizes.  Classes are ordered by their signature
// strings, which are id-free, so the order is relabeling-invariant.
std::vector<int> refined_colors(const LevelGraph& graph) {
  const std::size_t n = graph.vertices.size();
  std::vector<std::string> signature(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vertex& v = graph.vertices[k];
    std::vector<int> orders;
    for (const Marking& m : graph.markings) {
      if (m.vertex == v.id) orders.push_back(m.order);
    }
    std::sort(orders.begin(), orders.end());
    std::ostringstream sig;
    sig << v.level << "|" << v.genus << "|" << vertex_kind_name(v.kind) << "|";
    for (int order : orders) sig << order << ",";
    signature[k] = sig.str();
  }

  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < n; ++k) index[graph.vertices[k].id] = k;

  auto compress = [&](const std::vector<std::string>& sigs) {
    std::vector<std::string> unique = sigs;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    std::vector<int> colors(sigs.size());
    for (std::size_t k = 0; k < sigs.size(); ++k) {
      colors[k] = static_cast<int>(
          std::lower_bound(unique.begin(), unique.end(), sigs[k]) - unique.begin());
    }
    return colors;
  };

  std::vector<int> colors = compress(signature);
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::string> next(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::string> incident;
      for (const Edge& e : graph.edges) {
        if (e.upper == graph.vertices[k].id) {
          incident.push_back("D" + std::to_string(e.slope) + ":" + to_string(e.length) + ":" +
                             std::to_string(colors[index.at(e.lower)]));
        }
        if (e.lower == graph.vertices[k].id) {
          incident.push_back("U" + std::to_string(e.slope) + ":" + to_string(e.length) + ":" +
                             std::to_string(colors[index.at(e.upper)]));
        }
      }
      std::sort(incident.begin(), incident.end());
      std::ostringstream sig;
      sig << colors[k];
      for (const std::string& part : incident) sig << ";" << part;
      next[k] = sig.str();
    }
    std::vector<int> refined = compress(next);
    if (refined == colors) break;
    colors = std::move(refined);
  }
  return colors;
}

LevelGraph relabel_by_order(const LevelGraph& graph, const std::vector<std::size_t>& order) {
  std::map<std::string, std::string> rename;
  LevelGraph out;
  out.levels = graph.levels;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Vertex& v = graph.vertices[order[k]];
    rename[v.id] = "v" + std::to_string(k);
    out.vertices.push_back({rename[v.id], v.genus, v.level, v.kind});
  }
  std::map<std::string, std::size_t> position;
  for (std::size_t k = 0; k < out.vertices.size(); ++k) position[out.vertices[k].id] = k;

  std::vector<Edge> edges;
  for (const Edge& e : graph.edges) {
    edges.push_back({"", rename.at(e.upper), rename.at(e.lower), e.slope, e.length});
  }
  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    return std::tuple(position.at(a.upper), position.at(a.lower), a.slope, a.length) <
           std::tuple(position.at(b.upper), position.at(b.lower), b.slope, b.length);
  });
  for (std::size_t k = 0; k < edges.size(); ++k) edges[k].id = "e" + std::to_string(k);
  out.edges = std::move(edges);

  std::vector<Marking> markings;
  for (const Marking& m : graph.markings) {
    markings.push_back({"", rename.at(m.vertex), m.order});
  }
  std::sort(markings.begin(), markings.end(), [&](const Marking& a, const Marking& b) {
    return std::tuple(position.at(a.vertex), a.order) < std::tuple(position.at(b.vertex), b.order);
  });
  for (std::size_t k = 0; k < markings.size(); ++k) markings[k].id = "z" + std::to_string(k);
  out.markings = std::move(markings);
  return out;
}

}  // namespace

LevelGraph canonical_relabel(const LevelGraph& graph) {
  const std::vector<int> colors = refined_colors(graph);
  const std::size_t n = graph.vertices.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tuple(colors[a], graph.vertices[a].id) <
           std::tuple(colors[b], graph.vertices[b].id);
  });

  // Group boundaries of equal-color runs.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t start = 0; start < n;) {
    std::size_t stop = start;
    while (stop < n && colors[order[stop]] == colors[order[start]]) ++stop;
    if (stop - start > 1) groups.emplace_back(start, stop);
    start = stop;
  }

  std::string best_text;
  LevelGraph best_graph;
  // Minimize over permutations within equal-color groups (the only freedom a
  // relabeling has after invariant refinement).
  std::vector<std::size_t> current = order;
  auto consider = [&]() {
    LevelGraph candidate = relabel_by_order(graph, current);
    std::string text = print(candidate);
    if (best_text.empty() || text < best_text) {
      best_text = std::move(text);
      best_graph = std::move(candidate);
    }
  };
  std::function<void(std::size_t)> recurse = [&](std::size_t group) {
    if (group == groups.size()) {
      consider();
      return;
    }
    auto [start, stop] = groups[group];
    std::vector<std::size_t> slice(current.begin() + start, current.begin() + stop);
    std::sort(slice.begin(), slice.end());
    do {
      std::copy(slice.begin(), slice.end(), current.begin() + start);
      recurse(group + 1);
    } while (std::next_permutation(slice.begin(), slice.end()));
  };
  recurse(0);
  return best_graph;
}

std::string canonical_form(const LevelGraph& graph) { return print(canonical_relabel(graph)); }

Rational recompute_twisted_degree_bruteforce(const LevelGraph& graph, int i,
                                             std::string_view vertex_id) {
  const Vertex* v = graph.find_vertex(vertex_id);
  if (v == nullptr) {
    throw Error(ErrorCode::UnknownVertex, std::string(vertex_id),
                "unknown vertex '" + std::string(vertex_id) + "'");
  }
  long long degree = 2LL * v->genus - 2;
  for (const Edge& e : graph.edges) {
    const bool up = e.lower == v->id;    // edge arriving from above
    const bool down = e.upper == v->id;  // edge leaving downward
    if (!up && !down) continue;
    if (v->level > i) {
      if (up) degree += e.slope + 1;
      if (down) degree += 1 - e.slope;
    } else if (v->level == i) {
      if (up) degree += 1 + e.slope;
      if (down) degree += 1;
    } else {
      if (up) degree += 1;
      if (down) degree += 1;
    }
  }
  return Rational(degree);
}

namespace {

// ---- exhaustive enumeration -------------------------------------------

struct EdgeType {
  int upper;  // vertex index
  int lower;
  int slope;
};

void partitions_into(int total, int max_part, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(total, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_into(total - part, part, current, out);
    current.pop_back();
  }
}

class Enumerator {
 public:
  explicit Enumerator(const EnumerationBounds& bounds) : bounds_(bounds) {}

  std::vector<LevelGraph> run() {
    for (int v = 1; v <= bounds_.max_vertices; ++v) {
      for (int k = 1; k <= std::min(bounds_.max_levels, v); ++k) {
        enumerate_compositions(v, k);
      }
    }
    std::vector<LevelGraph> graphs;
    graphs.reserve(found_.size());
    for (auto& [form, graph] : found_) graphs.push_back(std::move(graph));
    return graphs;
  }

 private:
  // Split v vertices into k positive level blocks (level 0 first).
  void enumerate_compositions(int v, int k) {
    std::vector<int> sizes(k, 1);
    int rest = v - k;
    std::function<void(int, int)> place = [&](int block, int remaining) {
      if (block == k - 1) {
        sizes[block] += remaining;
        enumerate_tables(sizes);
        sizes[block] -= remaining;
        return;
      }
      for (int extra = 0; extra <= remaining; ++extra) {
        sizes[block] += extra;
        place(block + 1, remaining - extra);
        sizes[block] -= extra;
      }
    };
    place(0, rest);
  }

  void enumerate_tables(const std::vector<int>& sizes) {
    const int k = static_cast<int>(sizes.size());
    levels_of_vertex_.clear();
    for (int block = 0; block < k; ++block) {
      for (int j = 0; j < sizes[block]; ++j) levels_of_vertex_.push_back(-block);
    }
    std::vector<Rational> ell(k);
    std::function<void(int)> choose_gap = [&](int block) {
      if (block == k) {
        ell_ = ell;
        enumerate_edges();
        return;
      }
      for (int gap = 1; gap <= bounds_.max_slope; ++gap) {
        ell[block] = ell[block - 1] + gap;
        choose_gap(block + 1);
      }
    };
    ell[0] = 0;
    if (k == 1) {
      ell_ = ell;
      enumerate_edges();
    } else {
      choose_gap(1);
    }
  }

  const Rational& ell_at(int level) const { return ell_[static_cast<std::size_t>(-level)]; }

  void enumerate_edges() {
    const int n = static_cast<int>(levels_of_vertex_.size());
    std::vector<EdgeType> types;
    for (int u = 0; u < n; ++u) {
      for (int w = 0; w < n; ++w) {
        if (levels_of_vertex_[u] <= levels_of_vertex_[w]) continue;
        for (int slope = 1; slope <= bounds_.max_slope; ++slope) {
          types.push_back({u, w, slope});
        }
      }
    }
    std::vector<int> chosen;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
      if (static_cast<int>(chosen.size()) >= n - 1 && connected(chosen)) {
        enumerate_genera(types, chosen);
      }
      if (static_cast<int>(chosen.size()) == bounds_.max_edges) return;
      for (std::size_t t = from; t < types.size(); ++t) {
        chosen.push_back(static_cast<int>(t));
        pick(t);  // multisets: the same type may repeat
        chosen.pop_back();
      }
    };
    types_ = &types;
    pick(0);
    types_ = nullptr;
  }

  bool connected(const std::vector<int>& chosen) const {
    const int n = static_cast<int>(levels_of_vertex_.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = n;
    for (int t : chosen) {
      const int a = find((*types_)[t].upper);
      const int b = find((*types_)[t].lower);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components == 1;
  }

  void enumerate_genera(const std::vector<EdgeType>& types, const std::vector<int>& chosen) {
    const int n = static_cast<int>(levels_of_vertex_.size());
    // p_a = sum of genera + E - V + 1, so a total-genus cap bounds the genus sum.
    int genus_budget = std::numeric_limits<int>::max();
    if (bounds_.max_total_genus > 0) {
      genus_budget = bounds_.max_total_genus - 1 - static_cast<int>(chosen.size()) + n;
      if (genus_budget < 0) return;
    }
    std::vector<int> genus(n, 0);
    std::function<void(int, int)> assign = [&](int v, int used) {
      if (v == n) {
        enumerate_markings(types, chosen, genus);
        return;
      }
      const int top = std::min(bounds_.max_genus, genus_budget - used);
      for (int g = 0; g <= top; ++g) {
        genus[v] = g;
        assign(v + 1, used + g);
      }
    };
    assign(0, 0);
  }

  void enumerate_markings(const std::vector<EdgeType>& types, const std::vector<int>& chosen,
                          const std::vector<int>& genus) {
    const int n = static_cast<int>(levels_of_vertex_.size());
    // Required marking-order total per vertex from the degree identity.
    std::vector<long long> need(n);
    for (int v = 0; v < n; ++v) need[v] = 2LL * genus[v] - 2;
    for (int t : chosen) {
      need[types[t].upper] -= types[t].slope - 1;
      need[types[t].lower] += types[t].slope + 1;
    }
    std::vector<std::vector<std::vector<int>>> options(n);
    for (int v = 0; v < n; ++v) {
      if (need[v] < 0) return;
      if (need[v] == 0) {
        options[v] = {{}};
        continue;
      }
      if (bounds_.max_order < 1) return;
      std::vector<int> scratch;
      partitions_into(static_cast<int>(need[v]), bounds_.max_order, scratch, options[v]);
      if (options[v].empty()) return;
    }
    std::vector<const std::vector<int>*> pick(n);
    std::function<void(int)> cross = [&](int v) {
      if (v == n) {
        emit(types, chosen, genus, pick);
        return;
      }
      for (const auto& option : options[v]) {
        pick[v] = &option;
        cross(v + 1);
      }
    };
    cross(0);
  }

  void emit(const std::vector<EdgeType>& types, const std::vector<int>& chosen,
            const std::vector<int>& genus, const std::vector<const std::vector<int>*>& marks) {
    const int n = static_cast<int>(levels_of_vertex_.size());
    LevelGraph graph;
    for (int v = 0; v < n; ++v) {
      graph.vertices.push_back(
          {"v" + std::to_string(v), genus[v], levels_of_vertex_[v], VertexKind::stable});
    }
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      const EdgeType& type = types[chosen[k]];
      const Rational length =
          (ell_at(levels_of_vertex_[type.lower]) - ell_at(levels_of_vertex_[type.upper])) /
          type.slope;
      graph.edges.push_back({"e" + std::to_string(k), "v" + std::to_string(type.upper),
                             "v" + std::to_string(type.lower), type.slope, length});
    }
    int mark_count = 0;
    for (int v = 0; v < n; ++v) {
      for (int order : *marks[v]) {
        graph.markings.push_back(
            {"z" + std::to_string(mark_count++), "v" + std::to_string(v), order});
      }
    }
    for (std::size_t block = 0; block < ell_.size(); ++block) {
      graph.levels.set(-static_cast<int>(block), ell_[block]);
    }
    if (!validate(graph).valid()) return;  // exhaustiveness gate; unreachable by construction
    LevelGraph canonical = canonical_relabel(graph);
    std::string form = print(canonical);
    if (found_.find(form) == found_.end()) {
      found_.emplace(std::move(form), std::move(canonical));
    }
  }

  EnumerationBounds bounds_;
  std::vector<int> levels_of_vertex_;
  std::vector<Rational> ell_;
  const std::vector<EdgeType>* types_ = nullptr;
  std::map<std::string, LevelGraph> found_;
};

}  // namespace

std::vector<LevelGraph> enumerate_valid_graphs(const EnumerationBounds& bounds) {
  return Enumerator(bounds).run();
}

}  // namespace levelcontract
