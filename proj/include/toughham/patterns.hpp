#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "toughham/graph.hpp"
#include "toughham/invariants.hpp"

namespace toughham {

// Pattern builder: a 3-vertex path (0-1-2) together with k isolated vertices.
inline Graph p3_union_k1(int k) {
  if (k < 0) throw std::invalid_argument("p3_union_k1: negative k");
  return Graph(3 + k, {{0, 1}, {1, 2}});
}

namespace detail {

inline bool find_induced_rec(const Graph& g, const Graph& p, int j, std::vector<int>& map,
                             VertexSet& used) {
  if (j == p.n()) return true;
  for (int v = 0; v < g.n(); ++v) {
    if (used.test(v)) continue;
    bool ok = true;
    for (int i = 0; i < j && ok; ++i)
      if (p.has_edge(i, j) != g.has_edge(map[i], v)) ok = false;
    if (!ok) continue;
    map[j] = v;
    used.set(v);
    if (find_induced_rec(g, p, j + 1, map, used)) return true;
    used.reset(v);
  }
  map[j] = -1;
  return false;
}

}  // namespace detail

// Generic induced-subgraph search. Returns the injective map pattern-vertex ->
// host-vertex that is lexicographically least (as a vector indexed by pattern
// vertex), or nothing if the host has no induced copy. Both edges and
// non-edges of the pattern must be realized.
inline std::optional<std::vector<int>> find_induced(const Graph& g, const Graph& pattern) {
  if (pattern.n() > 8) throw std::invalid_argument("find_induced: pattern larger than 8 vertices");
  if (pattern.n() == 0) return std::vector<int>{};
  if (pattern.n() > g.n()) return std::nullopt;
  std::vector<int> map(pattern.n(), -1);
  VertexSet used(g.n());
  if (detail::find_induced_rec(g, pattern, 0, map, used)) return map;
  return std::nullopt;
}

// Occurrence of the forbidden pattern: an induced path (a, b, c) with a < c,
// plus k further vertices nonadjacent to the path and to each other.
struct ForbiddenPatternWitness {
  std::array<int, 3> path{};
  std::vector<int> isolated;

  std::vector<int> as_mapping() const {
    std::vector<int> m{path[0], path[1], path[2]};
    m.insert(m.end(), isolated.begin(), isolated.end());
    return m;
  }
};

// Specialized detector for P3 union k isolated vertices. Scans induced paths
// (a, b, c) in lexicographic order of the normalized triple and, for each,
// asks for the least independent k-tuple avoiding the path's closed
// neighborhood. The first hit is returned, so witnesses are deterministic.
inline std::optional<ForbiddenPatternWitness> find_p3_kp1(const Graph& g, int k) {
  if (k < 0) throw std::invalid_argument("find_p3_kp1: negative k");
  int n = g.n();
  for (int a = 0; a < n; ++a) {
    const VertexSet& na = g.neighbors(a);
    for (int b = na.first(); b != -1; b = na.next(b)) {
      VertexSet cs = g.neighbors(b) - na;
      cs.reset(a);
      for (int c = cs.first(); c != -1; c = cs.next(c)) {
        VertexSet blocked = na | g.neighbors(b) | g.neighbors(c);
        VertexSet cand = blocked.complement();
        cand.reset(a);
        cand.reset(b);
        cand.reset(c);
        if (auto iso = independent_tuple(g, cand, k)) {
          ForbiddenPatternWitness w;
          w.path = {a, b, c};
          w.isolated = *iso;
          return w;
        }
      }
    }
  }
  return std::nullopt;
}

inline bool is_p3_kp1_free(const Graph& g, int k) { return !find_p3_kp1(g, k).has_value(); }

// Classification of a cutset S by how its vertices meet the components of
// g - S: s1 holds the vertices with neighbors in exactly one component, s2
// those with neighbors in two or more. Vertices of S with no neighbors
// outside S land in neither. dominates[v] is a bitset over component indices
// recording the components v is adjacent to in full.
struct CutsetClassification {
  std::vector<VertexSet> components;
  VertexSet s1, s2;
  std::optional<int> noncomplete_index;
  int noncomplete_count = 0;
  std::vector<int> touch_count;
  std::vector<VertexSet> dominates;
};

inline CutsetClassification classify_cutset(const Graph& g, const VertexSet& S) {
  auto comps = components(g, S);
  if (comps.size() < 2) throw std::invalid_argument("classify_cutset: S is not a cutset");
  CutsetClassification r;
  r.components = std::move(comps);
  int nc = static_cast<int>(r.components.size());
  r.s1 = VertexSet(g.n());
  r.s2 = VertexSet(g.n());
  r.touch_count.assign(g.n(), 0);
  r.dominates.assign(g.n(), VertexSet(nc));
  for (int v = S.first(); v != -1; v = S.next(v)) {
    int touched = 0;
    for (int ci = 0; ci < nc; ++ci) {
      if (g.neighbors(v).intersects(r.components[ci])) ++touched;
      if (r.components[ci].is_subset_of(g.neighbors(v))) r.dominates[v].set(ci);
    }
    r.touch_count[v] = touched;
    if (touched == 1)
      r.s1.set(v);
    else if (touched >= 2)
      r.s2.set(v);
  }
  for (int ci = 0; ci < nc; ++ci) {
    if (!g.is_complete_on(r.components[ci])) {
      if (!r.noncomplete_index) r.noncomplete_index = ci;
      ++r.noncomplete_count;
    }
  }
  return r;
}

// Structure theory for cutsets of a (P3 union kP1)-free graph. Which claims
// apply depends on how w(g - S) compares with k:
//   w == k      at most one component is noncomplete; for k >= 2 that
//               component is (P3 union P1)-free.
//   w >= k+1    every component is complete, and every S vertex with outside
//               neighbors dominates some component.
//   w >= k+2    additionally: removing only s2 leaves at least w components;
//               every s2 vertex dominates at least w-k+1 components; any two
//               s2 vertices dominate at least w-2(k-1) components in common.
// For w < k nothing is claimed. Each clause is reported with an applicability
// flag and a counterexample description on failure.
struct StructureClauseResult {
  std::string id;
  bool applicable = false;
  bool pass = true;
  std::string detail;
};

struct CutsetStructureReport {
  bool precondition_ok = true;
  std::string precondition_error;
  int k = 0;
  int w = 0;
  int branch = 0;  // 0: no clause applies; 1/2/3: deepest applicable clause family
  std::vector<StructureClauseResult> clauses;

  bool all_pass() const {
    if (!precondition_ok) return false;
    for (const auto& c : clauses)
      if (c.applicable && !c.pass) return false;
    return true;
  }
};

inline CutsetStructureReport check_cutset_structure(const Graph& g, const VertexSet& S, int k) {
  CutsetStructureReport rep;
  rep.k = k;
  if (k < 1) {
    rep.precondition_ok = false;
    rep.precondition_error = "k must be at least 1";
    return rep;
  }
  if (auto wit = find_p3_kp1(g, k)) {
    rep.precondition_ok = false;
    rep.precondition_error = "graph is not free of the forbidden pattern: path (" +
                             std::to_string(wit->path[0]) + "," + std::to_string(wit->path[1]) +
                             "," + std::to_string(wit->path[2]) + ") plus " +
                             std::to_string(k) + " isolated vertices";
    return rep;
  }
  auto comps = components(g, S);
  if (comps.size() < 2) {
    rep.precondition_ok = false;
    rep.precondition_error = "S is not a cutset";
    return rep;
  }
  auto cls = classify_cutset(g, S);
  int w = static_cast<int>(cls.components.size());
  rep.w = w;
  if (w < k) return rep;  // branch 0, nothing to check

  auto add = [&rep](const std::string& id, bool applicable, bool pass, std::string detail) {
    rep.clauses.push_back({id, applicable, pass, std::move(detail)});
  };

  if (w == k) {
    rep.branch = 1;
    bool ok = cls.noncomplete_count <= 1;
    add("at-most-one-noncomplete", true, ok,
        ok ? "" : std::to_string(cls.noncomplete_count) + " noncomplete components");
    if (k >= 2 && cls.noncomplete_index) {
      auto sub = induced_subgraph(g, cls.components[*cls.noncomplete_index]);
      auto bad = find_p3_kp1(sub.graph, 1);
      add("noncomplete-component-near-complete", true, !bad.has_value(),
          bad ? "noncomplete component contains a path plus an isolated vertex" : "");
    }
    return rep;
  }

  // w >= k+1 from here on
  rep.branch = (w >= k + 2) ? 3 : 2;
  {
    bool ok = cls.noncomplete_count == 0;
    std::string d;
    if (!ok)
      d = "component " + std::to_string(*cls.noncomplete_index) + " is not complete";
    add("all-components-complete", true, ok, d);
  }
  {
    bool ok = true;
    std::string d;
    VertexSet active = cls.s1 | cls.s2;
    for (int v = active.first(); v != -1; v = active.next(v)) {
      if (!cls.dominates[v].any()) {
        ok = false;
        d = "vertex " + std::to_string(v) + " dominates no component";
        break;
      }
    }
    add("cut-vertex-dominates-a-component", true, ok, d);
  }
  if (w >= k + 2) {
    {
      int w2 = component_count(g, cls.s2);
      add("width-survives-removing-s2", true, w2 >= w,
          w2 >= w ? "" : "only " + std::to_string(w2) + " components without s2, had " +
                             std::to_string(w));
    }
    {
      bool ok = true;
      std::string d;
      int need = w - k + 1;
      for (int v = cls.s2.first(); v != -1; v = cls.s2.next(v)) {
        int have = cls.dominates[v].count();
        if (have < need) {
          ok = false;
          d = "vertex " + std::to_string(v) + " dominates " + std::to_string(have) +
              " components, needs " + std::to_string(need);
          break;
        }
      }
      add("s2-vertex-dominates-most-components", true, ok, d);
    }
    {
      bool ok = true;
      std::string d;
      int need = w - 2 * (k - 1);
      for (int u = cls.s2.first(); u != -1 && ok; u = cls.s2.next(u))
        for (int v = cls.s2.next(u); v != -1; v = cls.s2.next(v)) {
          int have = (cls.dominates[u] & cls.dominates[v]).count();
          if (have < need) {
            ok = false;
            d = "vertices " + std::to_string(u) + "," + std::to_string(v) + " share " +
                std::to_string(have) + " dominated components, need " + std::to_string(need);
            break;
          }
        }
      add("s2-pair-shares-dominated-components", true, ok, d);
    }
  }
  return rep;
}

}  // namespace toughham
