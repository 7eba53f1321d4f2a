#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qcrystal/cartan.hpp"
#include "qcrystal/element.hpp"
#include "qcrystal/errors.hpp"

namespace qcrystal {

struct GenOptions {
  size_t vertex_cap = 200000;
  bool lowering_only = false;  // closure under f only
};

struct CrystalGraph;
inline nlohmann::json graph_to_json(const CrystalGraph& g);

// Depth-bounded explored crystal graph. Edges record f_i(v) = w. A vertex is
// complete when every operator image used for generation is null or present.
struct CrystalGraph {
  std::vector<CrystalElement> verts;
  std::map<std::string, int> index;         // ser -> id
  std::vector<int> layer;                   // discovery depth
  std::vector<bool> complete;
  std::vector<std::tuple<int, int, int>> f_edges;  // (v, i, w)
  std::vector<int> seeds;                   // layer-0 vertex ids
  int depth = 0;
  bool lowering_only = false;

  int id_of(const CrystalElement& e) const {
    auto it = index.find(e.ser());
    return it == index.end() ? -1 : it->second;
  }

  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(verts.size());
    for (auto& [v, i, w] : f_edges) {
      adj[v].push_back({i, w});
      adj[w].push_back({i, v});
    }
    return adj;
  }
};

inline CrystalGraph generate(const RootDatum& rd, const std::vector<CrystalElement>& seeds,
                             int depth, const GenOptions& opt = {}) {
  CrystalGraph g;
  g.depth = depth;
  g.lowering_only = opt.lowering_only;
  const int n = rd.rank();

  std::set<std::string> seen;
  std::vector<CrystalElement> layer_elts;
  for (auto& s : seeds)
    if (seen.insert(s.ser()).second) layer_elts.push_back(s);
  std::sort(layer_elts.begin(), layer_elts.end());

  bool capped = false;
  for (int d = 0; d <= depth && !layer_elts.empty(); ++d) {
    for (auto& e : layer_elts) {
      g.index[e.ser()] = (int)g.verts.size();
      g.verts.push_back(e);
      g.layer.push_back(d);
    }
    if (g.verts.size() > opt.vertex_cap) {
      capped = true;
      break;
    }
    std::vector<CrystalElement> next;
    if (d == depth) break;
    std::set<std::string> next_seen;
    for (auto& e : layer_elts) {
      for (int i = 0; i < n; ++i) {
        auto fe = crystal_f(rd, e, i);
        if (fe && !seen.count(fe->ser()) && next_seen.insert(fe->ser()).second)
          next.push_back(*fe);
        if (!opt.lowering_only) {
          auto ee = crystal_e(rd, e, i);
          if (ee && !seen.count(ee->ser()) && next_seen.insert(ee->ser()).second)
            next.push_back(*ee);
        }
      }
    }
    for (auto& x : next) seen.insert(x.ser());
    std::sort(next.begin(), next.end());
    layer_elts = std::move(next);
  }

  for (size_t v = 0; v < g.verts.size(); ++v)
    if (g.layer[v] == 0) g.seeds.push_back((int)v);

  // edges and completeness over the final vertex set
  g.complete.assign(g.verts.size(), true);
  for (size_t v = 0; v < g.verts.size(); ++v) {
    for (int i = 0; i < n; ++i) {
      auto fe = crystal_f(rd, g.verts[v], i);
      if (fe) {
        int w = g.id_of(*fe);
        if (w >= 0)
          g.f_edges.push_back({(int)v, i, w});
        else
          g.complete[v] = false;
      }
      if (!opt.lowering_only) {
        auto ee = crystal_e(rd, g.verts[v], i);
        if (ee && g.id_of(*ee) < 0) g.complete[v] = false;
      }
    }
  }
  std::sort(g.f_edges.begin(), g.f_edges.end());

  if (capped) {
    nlohmann::json partial = graph_to_json(g);
    partial["cap"] = opt.vertex_cap;
    throw BudgetExceeded("vertex cap hit at depth " + std::to_string(g.depth),
                         std::move(partial));
  }
  return g;
}

// Repeatedly widen the depth until every vertex is complete; finite crystals
// only (the cap still guards runaway growth).
inline CrystalGraph generate_complete(const RootDatum& rd,
                                      const std::vector<CrystalElement>& seeds,
                                      const GenOptions& opt = {}) {
  int depth = 8;
  for (;;) {
    CrystalGraph g = generate(rd, seeds, depth, opt);
    bool all = true;
    for (bool c : g.complete)
      if (!c) {
        all = false;
        break;
      }
    if (all) return g;
    depth *= 2;
    if (depth > 4096) throw BudgetExceeded("crystal does not close at depth 4096");
  }
}

struct Classification {
  enum class Kind { HW, NotHW, UnknownAtDepth };
  Kind kind = Kind::UnknownAtDepth;
  std::optional<Weight> xi;
  std::string certificate;

  std::string name() const {
    switch (kind) {
      case Kind::HW: return "HW";
      case Kind::NotHW: return "NotHW";
      default: return "UnknownAtDepth";
    }
  }
};

struct Component {
  std::vector<int> vertex_ids;  // ascending
  Classification cls;
};

namespace detail {

struct DSU {
  std::vector<int> p;
  explicit DSU(size_t n) : p(n) {
    for (size_t i = 0; i < n; ++i) p[i] = (int)i;
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace detail

// HW requires a complete vertex killed by every raising operator. NotHW is
// never concluded from the explored graph alone: a fully explored finite
// component always contains a maximal vertex, hence classifies HW. Callers
// with an external soundness argument (the affine level test) upgrade
// UnknownAtDepth through the not_hw_certificate hook.
inline Classification classify_component(const RootDatum& rd, const CrystalGraph& g,
                                         const std::vector<int>& comp,
                                         const std::string& not_hw_certificate = "") {
  Classification out;
  int hw_vertex = -1;
  for (int v : comp) {
    if (!g.complete[v]) continue;
    bool killed = true;
    for (int i = 0; i < rd.rank() && killed; ++i)
      if (crystal_e(rd, g.verts[v], i)) killed = false;
    if (killed) {
      if (hw_vertex >= 0) throw Error("two maximal vertices in one component");
      hw_vertex = v;
    }
  }
  if (hw_vertex >= 0) {
    out.kind = Classification::Kind::HW;
    out.xi = g.verts[hw_vertex].wt();
    out.certificate = "maximal vertex " + g.verts[hw_vertex].ser();
    return out;
  }
  if (!not_hw_certificate.empty()) {
    out.kind = Classification::Kind::NotHW;
    out.certificate = not_hw_certificate;
    return out;
  }
  out.kind = Classification::Kind::UnknownAtDepth;
  return out;
}

struct Decomposition {
  CrystalGraph graph;
  std::vector<Component> components;
};

// Explored part of B(lambda) (x) B(-mu): all pure tensors of the depth-d
// explored factors, with edges and components computed inside that set.
inline Decomposition decompose(const RootDatum& rd, const Weight& lambda, const Weight& mu,
                               int depth, const GenOptions& opt = {},
                               const std::string& not_hw_certificate = "") {
  if (!lambda.is_dominant()) throw NotDominant(lambda.str());
  if (!mu.is_dominant()) throw NotDominant(mu.str());

  CrystalGraph left = generate(rd, {CrystalElement::highest(rd, lambda)}, depth, opt);
  CrystalGraph right = generate(rd, {lowest_dual(rd, mu)}, depth, opt);

  Decomposition dec;
  CrystalGraph& g = dec.graph;
  g.depth = depth;
  std::vector<CrystalElement> pairs;
  pairs.reserve(left.verts.size() * right.verts.size());
  for (auto& a : left.verts)
    for (auto& b : right.verts) pairs.push_back(CrystalElement::tensor(a, b));
  if (pairs.size() > opt.vertex_cap)
    throw BudgetExceeded("tensor vertex cap",
                         nlohmann::json{{"vertices", pairs.size()}});
  std::sort(pairs.begin(), pairs.end());
  for (auto& e : pairs) {
    g.index[e.ser()] = (int)g.verts.size();
    g.verts.push_back(e);
    g.layer.push_back(0);
    g.seeds.push_back((int)g.seeds.size());
  }
  g.complete.assign(g.verts.size(), true);
  for (size_t v = 0; v < g.verts.size(); ++v) {
    for (int i = 0; i < rd.rank(); ++i) {
      auto fe = crystal_f(rd, g.verts[v], i);
      if (fe) {
        int w = g.id_of(*fe);
        if (w >= 0)
          g.f_edges.push_back({(int)v, i, w});
        else
          g.complete[v] = false;
      }
      auto ee = crystal_e(rd, g.verts[v], i);
      if (ee && g.id_of(*ee) < 0) g.complete[v] = false;
    }
  }
  std::sort(g.f_edges.begin(), g.f_edges.end());

  detail::DSU dsu(g.verts.size());
  for (auto& [v, i, w] : g.f_edges) dsu.unite(v, w);
  std::map<int, std::vector<int>> groups;
  for (size_t v = 0; v < g.verts.size(); ++v) groups[dsu.find((int)v)].push_back((int)v);
  for (auto& [root, ids] : groups) {
    Component c;
    c.vertex_ids = ids;
    c.cls = classify_component(rd, g, ids, not_hw_certificate);
    dec.components.push_back(std::move(c));
  }
  std::sort(dec.components.begin(), dec.components.end(),
            [](const Component& a, const Component& b) {
              return a.vertex_ids[0] < b.vertex_ids[0];
            });
  return dec;
}

// Character of the explored graph: complete vertices per weight; incomplete
// vertices are tallied separately, never silently mixed in.
struct CharacterReport {
  std::map<Weight, long long> counts;
  std::map<Weight, long long> incomplete;
};

inline CharacterReport character(const CrystalGraph& g) {
  CharacterReport r;
  for (size_t v = 0; v < g.verts.size(); ++v) {
    if (g.complete[v])
      r.counts[g.verts[v].wt()]++;
    else
      r.incomplete[g.verts[v].wt()]++;
  }
  return r;
}

inline nlohmann::json graph_to_json(const CrystalGraph& g) {
  nlohmann::json verts = nlohmann::json::array();
  for (size_t v = 0; v < g.verts.size(); ++v)
    verts.push_back({{"id", v},
                     {"element", g.verts[v].ser()},
                     {"weight", g.verts[v].wt().to_json()},
                     {"layer", g.layer[v]},
                     {"complete", (bool)g.complete[v]}});
  nlohmann::json edges = nlohmann::json::array();
  for (auto& [v, i, w] : g.f_edges) edges.push_back({{"from", v}, {"i", i}, {"to", w}});
  return nlohmann::json{{"vertices", verts},
                        {"edges", edges},
                        {"seeds", g.seeds},
                        {"depth", g.depth},
                        {"lowering_only", g.lowering_only}};
}

inline std::string graph_to_dot(const CrystalGraph& g) {
  std::string out = "digraph crystal {\n";
  for (size_t v = 0; v < g.verts.size(); ++v) {
    out += "  v" + std::to_string(v) + " [label=\"wt=" + g.verts[v].wt().str() +
           (g.complete[v] ? "" : " ?") + "\\n" + g.verts[v].ser() + "\"];\n";
  }
  for (auto& [v, i, w] : g.f_edges)
    out += "  v" + std::to_string(v) + " -> v" + std::to_string(w) + " [label=\"" +
           std::to_string(i) + "\"];\n";
  out += "}\n";
  return out;
}

inline nlohmann::json decomposition_to_json(const Decomposition& dec) {
  nlohmann::json comps = nlohmann::json::array();
  for (auto& c : dec.components) {
    nlohmann::json j{{"vertices", c.vertex_ids},
                     {"size", c.vertex_ids.size()},
                     {"class", c.cls.name()},
                     {"certificate", c.cls.certificate}};
    if (c.cls.xi) j["xi"] = c.cls.xi->to_json();
    comps.push_back(std::move(j));
  }
  return nlohmann::json{{"graph", graph_to_json(dec.graph)}, {"components", comps}};
}

}  // namespace qcrystal
