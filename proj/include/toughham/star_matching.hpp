#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "toughham/graph.hpp"
#include "toughham/maxflow.hpp"
#include "toughham/patterns.hpp"

namespace toughham {

// Degree-constrained star packing in a bipartite instance: X-vertex i wants
// f[i] private leaves among its Y-neighbors adj[i]. Either every demand is
// met with pairwise disjoint leaf sets, or some X-subset provably lacks room.
struct StarMatchingResult {
  bool ok = false;
  std::vector<std::vector<int>> leaves;  // per X vertex, ascending, size f[i]
  VertexSet deficient;                   // when !ok: |N(deficient)| < sum of demands
};

inline StarMatchingResult star_matching(int nx, int ny, const std::vector<VertexSet>& adj,
                                        const std::vector<int>& f) {
  if (static_cast<int>(adj.size()) != nx || static_cast<int>(f.size()) != nx)
    throw std::invalid_argument("star_matching: adj/f size mismatch");
  int total = 0;
  for (int i = 0; i < nx; ++i) {
    if (f[static_cast<std::size_t>(i)] < 1)
      throw std::invalid_argument("star_matching: demands must be positive");
    total += f[static_cast<std::size_t>(i)];
  }
  StarMatchingResult r;
  r.deficient = VertexSet(nx);
  // nodes: 0 = source, 1..nx = X, nx+1..nx+ny = Y, nx+ny+1 = sink
  int source = 0, sink = nx + ny + 1;
  FlowNetwork net(nx + ny + 2);
  std::vector<int> xedge(static_cast<std::size_t>(nx));
  std::vector<std::vector<int>> yedges(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i)
    xedge[static_cast<std::size_t>(i)] = net.add_edge(source, 1 + i, f[static_cast<std::size_t>(i)]);
  for (int i = 0; i < nx; ++i) {
    const VertexSet& nb = adj[static_cast<std::size_t>(i)];
    for (int y = nb.first(); y != -1; y = nb.next(y)) {
      if (y >= ny) throw std::invalid_argument("star_matching: neighbor outside Y");
      yedges[static_cast<std::size_t>(i)].push_back(net.add_edge(1 + i, 1 + nx + y, 1));
    }
  }
  for (int y = 0; y < ny; ++y) net.add_edge(1 + nx + y, sink, 1);

  int flow = net.max_flow(source, sink);
  if (flow == total) {
    r.ok = true;
    r.leaves.resize(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) {
      const VertexSet& nb = adj[static_cast<std::size_t>(i)];
      std::size_t k = 0;
      for (int y = nb.first(); y != -1; y = nb.next(y), ++k)
        if (net.flow_on(yedges[static_cast<std::size_t>(i)][k]) == 1)
          r.leaves[static_cast<std::size_t>(i)].push_back(y);
    }
    return r;
  }
  auto reach = net.residual_reachable(source);
  for (int i = 0; i < nx; ++i)
    if (reach[static_cast<std::size_t>(1 + i)]) r.deficient.set(i);
  return r;
}

// One generalized star: a component of g - S as center with 2s partners in S.
// Nontrivial centers carry the balancing partition; trivial ones leave the
// partition sets empty.
struct GeneralizedStar {
  VertexSet center;
  VertexSet partners;
  VertexSet x1, x2, y1, y2;
};

struct GeneralizedStarMatching {
  int s = 0;
  std::vector<GeneralizedStar> stars;  // one per component, by smallest vertex
};

// The two partitions balancing a nontrivial component D against its cut
// neighborhood W: both W-sides keep at least 2s vertices and each W-side
// lies in the neighborhood of its D-side.
struct BalancedPartition {
  VertexSet d1, d2, w1, w2;
};

struct BalanceOutcome {
  std::optional<BalancedPartition> partition;
  std::string error;  // set when no partition was produced
};

namespace detail {

inline bool balance_ok(const Graph& g, const BalancedPartition& p, int s) {
  if (std::min(p.w1.count(), p.w2.count()) < 2 * s) return false;
  if (!p.d1.any() || !p.d2.any()) return false;
  return p.w1.is_subset_of(g.neighborhood_of_set(p.d1)) &&
         p.w2.is_subset_of(g.neighborhood_of_set(p.d2));
}

// Exhaustive fallback over the 2^(|D|-1) bipartitions of D. W vertices seen
// by only one side are forced; the flexible ones fill whichever side is low.
inline std::optional<BalancedPartition> balance_exhaustive(const Graph& g, const VertexSet& D,
                                                           const VertexSet& W, int s) {
  auto dverts = D.to_vector();
  int dn = static_cast<int>(dverts.size());
  for (std::uint32_t mask = 1; mask + 1 < (1u << dn); ++mask) {
    BalancedPartition p;
    p.d1 = VertexSet(g.n());
    p.d2 = VertexSet(g.n());
    for (int i = 0; i < dn; ++i)
      ((mask >> i) & 1 ? p.d1 : p.d2).set(dverts[static_cast<std::size_t>(i)]);
    VertexSet n1 = g.neighborhood_of_set(p.d1) & W;
    VertexSet n2 = g.neighborhood_of_set(p.d2) & W;
    VertexSet only1 = n1 - n2, only2 = n2 - n1, flex = n1 & n2;
    if (((only1 | only2) | flex) != W) continue;  // some W vertex sees neither side
    int need1 = std::max(0, 2 * s - only1.count());
    if (need1 > flex.count()) continue;
    if (only2.count() + (flex.count() - need1) < 2 * s) continue;
    p.w1 = only1;
    p.w2 = only2;
    int moved = 0;
    for (int w = flex.first(); w != -1; w = flex.next(w)) {
      if (moved < need1) {
        p.w1.set(w);
        ++moved;
      } else {
        p.w2.set(w);
      }
    }
    if (balance_ok(g, p, s)) return p;
  }
  return std::nullopt;
}

}  // namespace detail

inline BalanceOutcome balance_component_partition(const Graph& g, const VertexSet& D,
                                                  const VertexSet& W, int s) {
  BalanceOutcome out;
  if (s < 1) {
    out.error = "s must be at least 1";
    return out;
  }
  if (D.count() < 2) {
    out.error = "component must be nontrivial";
    return out;
  }
  if (W.count() < 4 * s) {
    out.error = "cut neighborhood smaller than 4s";
    return out;
  }
  if (D.intersects(W)) {
    out.error = "component and cut neighborhood overlap";
    return out;
  }

  auto dverts = D.to_vector();
  int dn = static_cast<int>(dverts.size());

  if (dn >= 4 * s) {
    // a system of 4s disjoint D-W edges splits directly: 2s pairs seed each
    // side and the leftovers follow any neighbor
    int source = 0, sink = 1;
    FlowNetwork net(2 + g.n());
    std::vector<int> eid;
    for (int d : dverts) net.add_edge(source, 2 + d, 1);
    for (int d : dverts) {
      VertexSet nb = g.neighbors(d) & W;
      for (int w = nb.first(); w != -1; w = nb.next(w))
        eid.push_back(net.add_edge(2 + d, 2 + w, 1));
    }
    for (int w = W.first(); w != -1; w = W.next(w)) net.add_edge(2 + w, sink, 1);
    if (net.max_flow(source, sink, 4 * s) >= 4 * s) {
      std::vector<std::pair<int, int>> pairs;  // (d, w) matched
      std::size_t k = 0;
      for (int d : dverts) {
        VertexSet nb = g.neighbors(d) & W;
        for (int w = nb.first(); w != -1; w = nb.next(w), ++k)
          if (net.flow_on(eid[k]) == 1) pairs.push_back({d, w});
      }
      BalancedPartition p;
      p.d1 = VertexSet(g.n());
      p.d2 = VertexSet(g.n());
      p.w1 = VertexSet(g.n());
      p.w2 = VertexSet(g.n());
      for (std::size_t i = 0; i < pairs.size() && i < static_cast<std::size_t>(4 * s); ++i) {
        bool side1 = i < static_cast<std::size_t>(2 * s);
        (side1 ? p.d1 : p.d2).set(pairs[i].first);
        (side1 ? p.w1 : p.w2).set(pairs[i].second);
      }
      for (int d : dverts)
        if (!p.d1.test(d) && !p.d2.test(d)) p.d2.set(d);
      for (int w = W.first(); w != -1; w = W.next(w)) {
        if (p.w1.test(w) || p.w2.test(w)) continue;
        if (g.neighbors(w).intersects(p.d1))
          p.w1.set(w);
        else
          p.w2.set(w);
      }
      if (detail::balance_ok(g, p, s)) {
        out.partition = p;
        return out;
      }
    }
    // matching came up short; for small D an exhaustive scan may still work
  } else {
    // iterative rebalancing: shift boundary vertices from the heavy W side,
    // and when a shift overshoots, pull back just enough covered vertices
    BalancedPartition p;
    p.d1 = VertexSet(g.n());
    p.d1.set(dverts[0]);
    p.d2 = D;
    p.d2.reset(dverts[0]);
    auto assign_w = [&](BalancedPartition& q) {
      VertexSet n1 = g.neighborhood_of_set(q.d1) & W;
      VertexSet n2 = g.neighborhood_of_set(q.d2) & W;
      q.w1 = VertexSet(g.n());
      q.w2 = VertexSet(g.n());
      for (int w = W.first(); w != -1; w = W.next(w)) {
        bool in1 = n1.test(w), in2 = n2.test(w);
        if (in1 && !in2)
          q.w1.set(w);
        else if (in2 && !in1)
          q.w2.set(w);
        else if (in1 && in2)
          (q.w1.count() <= q.w2.count() ? q.w1 : q.w2).set(w);
      }
      return n1.any() && (n1 | n2) == W;
    };
    bool feasible = assign_w(p);
    int guard = 2 * W.count() + 10;
    while (feasible && guard-- > 0) {
      if (detail::balance_ok(g, p, s)) {
        out.partition = p;
        return out;
      }
      bool one_is_big = p.w1.count() > p.w2.count();
      VertexSet& wb = one_is_big ? p.w1 : p.w2;
      VertexSet& ws = one_is_big ? p.w2 : p.w1;
      VertexSet& db = one_is_big ? p.d1 : p.d2;
      VertexSet& ds = one_is_big ? p.d2 : p.d1;
      // plain transfer first: a heavy-side W vertex also seen by the light side
      VertexSet movable = wb & g.neighborhood_of_set(ds);
      if (movable.any()) {
        int w = movable.first();
        wb.reset(w);
        ws.set(w);
        continue;
      }
      // no overlap: move a boundary D vertex across, dragging its W support
      int u = -1;
      for (int d = db.first(); d != -1; d = db.next(d)) {
        if (db.count() < 2) break;
        if (g.neighbors(d).intersects(wb)) {
          u = d;
          break;
        }
      }
      if (u == -1) break;
      VertexSet drag = g.neighbors(u) & wb;
      db.reset(u);
      ds.set(u);
      wb = wb - drag;
      ws = ws | drag;
      int twos = 2 * s;
      if (wb.count() < twos) {
        int k = twos - wb.count();
        VertexSet pullable = ws & g.neighborhood_of_set(db);
        if (pullable.count() < k) break;
        for (int w = pullable.first(); w != -1 && k > 0; w = pullable.next(w), --k) {
          ws.reset(w);
          wb.set(w);
        }
      }
      // keep the W side invariants intact after surgery
      if (!wb.is_subset_of(g.neighborhood_of_set(db)) ||
          !ws.is_subset_of(g.neighborhood_of_set(ds)))
        break;
    }
  }

  if (dn <= 12) {
    if (auto p = detail::balance_exhaustive(g, D, W, s)) {
      out.partition = *p;
      return out;
    }
    out.error = "no balanced partition exists";
    return out;
  }
  out.error = "rebalancing failed and component too large for exhaustive search";
  return out;
}

struct GeneralizedMatchingResult {
  std::optional<GeneralizedStarMatching> matching;
  std::string error;  // which resource condition or construction step failed
};

// Builds a generalized K_{1,2s}-matching centered at the components of g - S:
// nontrivial components are balanced and contracted to two vertices, trivial
// ones split their cut neighborhood in half, and one flow run hands every
// half s private partners in S.
inline GeneralizedMatchingResult generalized_matching(const Graph& g, const VertexSet& S, int s) {
  GeneralizedMatchingResult res;
  if (s < 1) {
    res.error = "s must be at least 1";
    return res;
  }
  auto comps = components(g, S);
  int ell = static_cast<int>(comps.size());
  if (ell < 2) {
    res.error = "S is not a cutset";
    return res;
  }
  if (ell < 5) {
    res.error = "fewer than 5 components";
    return res;
  }
  if (S.count() < 2 * s * ell) {
    res.error = "cutset smaller than 2s times the component count";
    return res;
  }

  auto sverts = S.to_vector();
  std::vector<int> sindex(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < sverts.size(); ++i)
    sindex[static_cast<std::size_t>(sverts[i])] = static_cast<int>(i);
  int ny = static_cast<int>(sverts.size());

  auto to_yset = [&](const VertexSet& sv) {
    VertexSet y(ny);
    for (int v = sv.first(); v != -1; v = sv.next(v)) y.set(sindex[static_cast<std::size_t>(v)]);
    return y;
  };
  auto from_yset = [&](const std::vector<int>& ys) {
    VertexSet v(g.n());
    for (int y : ys) v.set(sverts[static_cast<std::size_t>(y)]);
    return v;
  };

  // two bipartite demand nodes per component
  std::vector<VertexSet> adj;
  std::vector<BalancedPartition> parts(static_cast<std::size_t>(ell));
  std::vector<bool> trivial(static_cast<std::size_t>(ell), false);
  for (int i = 0; i < ell; ++i) {
    VertexSet nbs = g.neighborhood_of_set(comps[static_cast<std::size_t>(i)]) & S;
    if (nbs.count() < 4 * s) {
      res.error = "component " + std::to_string(i) + " has fewer than 4s cut neighbors";
      return res;
    }
    if (comps[static_cast<std::size_t>(i)].count() == 1) {
      trivial[static_cast<std::size_t>(i)] = true;
      auto nbv = nbs.to_vector();
      VertexSet ha(g.n()), hb(g.n());
      for (std::size_t j = 0; j < nbv.size(); ++j)
        (j < (nbv.size() + 1) / 2 ? ha : hb).set(nbv[j]);
      adj.push_back(to_yset(ha));
      adj.push_back(to_yset(hb));
    } else {
      auto bal = balance_component_partition(g, comps[static_cast<std::size_t>(i)], nbs, s);
      if (!bal.partition) {
        res.error = "component " + std::to_string(i) + ": " + bal.error;
        return res;
      }
      parts[static_cast<std::size_t>(i)] = *bal.partition;
      // the contracted vertices keep their full cut neighborhoods
      adj.push_back(to_yset(g.neighborhood_of_set(bal.partition->d1) & S));
      adj.push_back(to_yset(g.neighborhood_of_set(bal.partition->d2) & S));
    }
  }

  std::vector<int> f(static_cast<std::size_t>(2 * ell), s);
  auto sm = star_matching(2 * ell, ny, adj, f);
  if (!sm.ok) {
    res.error = "partner assignment infeasible: deficient halves " +
                std::to_string(sm.deficient.count());
    return res;
  }

  GeneralizedStarMatching gm;
  gm.s = s;
  for (int i = 0; i < ell; ++i) {
    GeneralizedStar star;
    star.center = comps[static_cast<std::size_t>(i)];
    VertexSet ya = from_yset(sm.leaves[static_cast<std::size_t>(2 * i)]);
    VertexSet yb = from_yset(sm.leaves[static_cast<std::size_t>(2 * i + 1)]);
    star.partners = ya | yb;
    if (!trivial[static_cast<std::size_t>(i)]) {
      star.x1 = parts[static_cast<std::size_t>(i)].d1;
      star.x2 = parts[static_cast<std::size_t>(i)].d2;
      star.y1 = ya;
      star.y2 = yb;
    } else {
      star.x1 = VertexSet(g.n());
      star.x2 = VertexSet(g.n());
      star.y1 = VertexSet(g.n());
      star.y2 = VertexSet(g.n());
    }
    gm.stars.push_back(std::move(star));
  }
  res.matching = std::move(gm);
  return res;
}

// Full recheck of a claimed generalized matching, independent of how it was
// built. Returns an empty string on pass, otherwise the first violation.
inline std::string validate_generalized_matching(const Graph& g, const VertexSet& S,
                                                 const GeneralizedStarMatching& m) {
  auto comps = components(g, S);
  if (m.s < 1) return "s must be positive";
  if (m.stars.size() != comps.size())
    return "expected one star per component, got " + std::to_string(m.stars.size());
  VertexSet used(g.n());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const GeneralizedStar& st = m.stars[i];
    std::string tag = "star " + std::to_string(i) + ": ";
    if (!(st.center == comps[i])) return tag + "center is not the component";
    if (st.partners.count() != 2 * m.s) return tag + "partner count is not 2s";
    if (!st.partners.is_subset_of(S)) return tag + "partners leave the cutset";
    if (!st.partners.is_subset_of(g.neighborhood_of_set(st.center)))
      return tag + "partner not adjacent to the center";
    if (st.partners.intersects(used)) return tag + "partner sets overlap";
    used = used | st.partners;
    if (st.center.count() >= 2) {
      if ((st.x1 | st.x2) != st.center || st.x1.intersects(st.x2))
        return tag + "x-sides do not partition the center";
      if (!st.x1.any() || !st.x2.any()) return tag + "empty x-side";
      if ((st.y1 | st.y2) != st.partners || st.y1.intersects(st.y2))
        return tag + "y-sides do not partition the partners";
      if (st.y1.count() != m.s || st.y2.count() != m.s) return tag + "partition size is not s";
      if (!st.y1.is_subset_of(g.neighborhood_of_set(st.x1)))
        return tag + "y1 not dominated by x1 side";
      if (!st.y2.is_subset_of(g.neighborhood_of_set(st.x2)))
        return tag + "y2 not dominated by x2 side";
    }
  }
  return "";
}

}  // namespace toughham
