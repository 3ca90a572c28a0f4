#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "toughham/graph.hpp"

namespace toughham {

// Exhaustive deciders used as ground truth by every constructive module.
// Sizes are hard limits with explicit refusal, never silent timeouts:
//   cycle/path: subset DP up to kOracleDpLimit, pruned depth-first search up
//   to kOracleBacktrackLimit, std::invalid_argument beyond.
//   path cover: subset DP up to kPathCoverOracleLimit.
inline constexpr int kOracleDpLimit = 20;
inline constexpr int kOracleBacktrackLimit = 24;
inline constexpr int kPathCoverOracleLimit = 14;

enum class OracleMethod { DP, BACKTRACK };

struct OracleAnswer {
  bool yes = false;
  std::optional<Cycle> cycle;
  std::optional<Path> path;
  std::uint64_t nodes_explored = 0;
  OracleMethod method = OracleMethod::DP;
};

namespace detail {

inline std::vector<std::uint32_t> small_adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.n()), 0);
  for (int u = 0; u < g.n(); ++u)
    for (int v = g.neighbors(u).first(); v != -1; v = g.neighbors(u).next(v))
      adj[static_cast<std::size_t>(u)] |= 1u << v;
  return adj;
}

inline bool mask_connected(const std::vector<std::uint32_t>& adj, std::uint32_t verts) {
  if (verts == 0) return true;
  std::uint32_t start = verts & (~verts + 1);
  std::uint32_t reach = start, frontier = start;
  while (frontier) {
    std::uint32_t nxt = 0;
    std::uint32_t f = frontier;
    while (f) {
      int v = __builtin_ctz(f);
      f &= f - 1;
      nxt |= adj[static_cast<std::size_t>(v)] & verts;
    }
    frontier = nxt & ~reach;
    reach |= nxt;
  }
  return (reach & verts) == verts;
}

// DP table over subsets of V minus an anchor shift: cycle search anchors the
// cycle at vertex 0 and works on subsets of {1..n-1}.
inline OracleAnswer cycle_dp(const Graph& g) {
  OracleAnswer ans;
  ans.method = OracleMethod::DP;
  int n = g.n();
  int r = n - 1;
  auto adj = small_adjacency_masks(g);
  std::vector<std::uint32_t> shadj(static_cast<std::size_t>(r));
  for (int v = 1; v < n; ++v) shadj[static_cast<std::size_t>(v - 1)] = adj[static_cast<std::size_t>(v)] >> 1;
  std::uint32_t n0 = adj[0] >> 1;

  // table[S]: bit (v-1) set iff the subgraph on S has a spanning path that
  // starts at v and ends at a neighbor of vertex 0
  std::vector<std::uint32_t> table(std::size_t{1} << r, 0);
  for (std::uint32_t S = 1; S < (std::uint32_t{1} << r); ++S) {
    if ((S & (S - 1)) == 0) {
      table[S] = S & n0;
      ++ans.nodes_explored;
      continue;
    }
    std::uint32_t res = 0;
    std::uint32_t rest = S;
    while (rest) {
      int b = __builtin_ctz(rest);
      rest &= rest - 1;
      ++ans.nodes_explored;
      if (table[S ^ (1u << b)] & shadj[static_cast<std::size_t>(b)]) res |= 1u << b;
    }
    table[S] = res;
  }

  std::uint32_t full = (std::uint32_t{1} << r) - 1;
  if ((table[full] & n0) == 0) return ans;

  ans.yes = true;
  Cycle c;
  c.verts.push_back(0);
  std::uint32_t mask = full;
  std::uint32_t from = n0;  // candidates reachable from the current endpoint
  while (mask) {
    std::uint32_t options = table[mask] & from;
    int b = __builtin_ctz(options);  // smallest extension keeps the cycle lex-least
    c.verts.push_back(b + 1);
    mask ^= 1u << b;
    from = shadj[static_cast<std::size_t>(b)];
  }
  ans.cycle = std::move(c);
  return ans;
}

struct CycleBacktracker {
  const std::vector<std::uint32_t>& adj;
  int n;
  std::uint64_t nodes = 0;
  std::vector<int> seq;

  bool run(std::uint32_t visited, int cur) {
    ++nodes;
    std::uint32_t unvisited = ~visited & ((std::uint32_t{1} << n) - 1);
    if (!unvisited) return (adj[static_cast<std::size_t>(cur)] >> 0) & 1u;
    if (!mask_connected(adj, unvisited | (1u << cur))) return false;
    // every unvisited vertex still needs two usable cycle neighbors
    std::uint32_t avail = unvisited | (1u << cur) | 1u;
    std::uint32_t scan = unvisited;
    while (scan) {
      int w = __builtin_ctz(scan);
      scan &= scan - 1;
      if (__builtin_popcount(adj[static_cast<std::size_t>(w)] & avail) < 2) return false;
    }
    std::uint32_t cands = adj[static_cast<std::size_t>(cur)] & unvisited;
    while (cands) {
      int v = __builtin_ctz(cands);
      cands &= cands - 1;
      seq.push_back(v);
      if (run(visited | (1u << v), v)) return true;
      seq.pop_back();
    }
    return false;
  }
};

inline OracleAnswer cycle_backtrack(const Graph& g) {
  OracleAnswer ans;
  ans.method = OracleMethod::BACKTRACK;
  auto adj = small_adjacency_masks(g);
  CycleBacktracker bt{adj, g.n(), 0, {0}};
  if (bt.run(1u, 0)) {
    ans.yes = true;
    ans.cycle = Cycle{bt.seq};
  }
  ans.nodes_explored = bt.nodes;
  return ans;
}

// Path DP: table[S] holds the set of vertices x such that the subgraph on S
// has a spanning path starting at x whose far end satisfies the pin on v.
inline OracleAnswer path_dp(const Graph& g, std::optional<int> u, std::optional<int> v) {
  OracleAnswer ans;
  ans.method = OracleMethod::DP;
  int n = g.n();
  auto adj = small_adjacency_masks(g);
  std::vector<std::uint32_t> table(std::size_t{1} << n, 0);
  for (std::uint32_t S = 1; S < (std::uint32_t{1} << n); ++S) {
    if ((S & (S - 1)) == 0) {
      int x = __builtin_ctz(S);
      table[S] = (!v || *v == x) ? S : 0;
      ++ans.nodes_explored;
      continue;
    }
    std::uint32_t res = 0;
    std::uint32_t rest = S;
    while (rest) {
      int x = __builtin_ctz(rest);
      rest &= rest - 1;
      ++ans.nodes_explored;
      if (table[S ^ (1u << x)] & adj[static_cast<std::size_t>(x)]) res |= 1u << x;
    }
    table[S] = res;
  }
  std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::uint32_t starts = table[full];
  if (u) starts &= 1u << *u;
  if (!starts) return ans;

  ans.yes = true;
  Path p;
  int cur = __builtin_ctz(starts);
  p.verts.push_back(cur);
  std::uint32_t mask = full ^ (1u << cur);
  while (mask) {
    std::uint32_t options = table[mask] & adj[static_cast<std::size_t>(cur)];
    cur = __builtin_ctz(options);
    p.verts.push_back(cur);
    mask ^= 1u << cur;
  }
  ans.path = std::move(p);
  return ans;
}

struct PathBacktracker {
  const std::vector<std::uint32_t>& adj;
  int n;
  std::optional<int> pinned_end;
  std::uint64_t nodes = 0;
  std::vector<int> seq;

  bool run(std::uint32_t visited, int cur) {
    ++nodes;
    std::uint32_t unvisited = ~visited & ((std::uint32_t{1} << n) - 1);
    if (!unvisited) return !pinned_end || *pinned_end == cur;
    if (pinned_end && !((unvisited >> *pinned_end) & 1u)) return false;
    if (!mask_connected(adj, unvisited | (1u << cur))) return false;
    std::uint32_t cands = adj[static_cast<std::size_t>(cur)] & unvisited;
    while (cands) {
      int x = __builtin_ctz(cands);
      cands &= cands - 1;
      seq.push_back(x);
      if (run(visited | (1u << x), x)) return true;
      seq.pop_back();
    }
    return false;
  }
};

inline OracleAnswer path_backtrack(const Graph& g, std::optional<int> u, std::optional<int> v) {
  OracleAnswer ans;
  ans.method = OracleMethod::BACKTRACK;
  auto adj = small_adjacency_masks(g);
  for (int s = 0; s < g.n(); ++s) {
    if (u && *u != s) continue;
    PathBacktracker bt{adj, g.n(), v, 0, {s}};
    bool hit = bt.run(1u << s, s);
    ans.nodes_explored += bt.nodes;
    if (hit) {
      ans.yes = true;
      ans.path = Path{bt.seq};
      return ans;
    }
  }
  return ans;
}

}  // namespace detail

// Does g have a hamiltonian cycle? The YES witness is the lexicographically
// least vertex sequence starting at 0, which is already normalized under
// rotation and reflection. force_method pins the engine for cross-checks.
inline OracleAnswer hamiltonian_cycle_oracle(const Graph& g,
                                             std::optional<OracleMethod> force_method = {}) {
  int n = g.n();
  if (n < 3) throw std::invalid_argument("hamiltonian_cycle_oracle: need at least 3 vertices");
  if (n > kOracleBacktrackLimit)
    throw std::invalid_argument("hamiltonian_cycle_oracle: refused, n > " +
                                std::to_string(kOracleBacktrackLimit));
  OracleMethod m = force_method ? *force_method
                                : (n <= kOracleDpLimit ? OracleMethod::DP : OracleMethod::BACKTRACK);
  if (m == OracleMethod::DP && n > kOracleDpLimit)
    throw std::invalid_argument("hamiltonian_cycle_oracle: DP refused, n > " +
                                std::to_string(kOracleDpLimit));
  // cheap exits that hold for both engines
  bool degenerate = !is_connected(g);
  for (int w = 0; w < n && !degenerate; ++w)
    if (g.degree(w) < 2) degenerate = true;
  if (degenerate) {
    OracleAnswer ans;
    ans.method = m;
    return ans;
  }
  return m == OracleMethod::DP ? detail::cycle_dp(g) : detail::cycle_backtrack(g);
}

// Does g have a hamiltonian path, optionally pinned to start at u and/or end
// at v? Existence is symmetric in the pins; the witness respects them as
// given. Single-vertex graphs have the trivial path.
inline OracleAnswer hamiltonian_path_oracle(const Graph& g, std::optional<int> u = {},
                                            std::optional<int> v = {},
                                            std::optional<OracleMethod> force_method = {}) {
  int n = g.n();
  if (n < 1) throw std::invalid_argument("hamiltonian_path_oracle: empty graph");
  if (n > kOracleBacktrackLimit)
    throw std::invalid_argument("hamiltonian_path_oracle: refused, n > " +
                                std::to_string(kOracleBacktrackLimit));
  if (u) g.check_vertex(*u);
  if (v) g.check_vertex(*v);
  if (u && v && *u == *v && n > 1)
    throw std::invalid_argument("hamiltonian_path_oracle: equal pinned endpoints");
  OracleMethod m = force_method ? *force_method
                                : (n <= kOracleDpLimit ? OracleMethod::DP : OracleMethod::BACKTRACK);
  if (m == OracleMethod::DP && n > kOracleDpLimit)
    throw std::invalid_argument("hamiltonian_path_oracle: DP refused, n > " +
                                std::to_string(kOracleDpLimit));
  if (n == 1) {
    OracleAnswer ans;
    ans.method = m;
    ans.yes = true;
    ans.path = Path{{0}};
    ans.nodes_explored = 1;
    return ans;
  }
  if (!is_connected(g)) {
    OracleAnswer ans;
    ans.method = m;
    return ans;
  }
  return m == OracleMethod::DP ? detail::path_dp(g, u, v) : detail::path_backtrack(g, u, v);
}

struct PathCoverAnswer {
  int size = 0;
  PathCover cover;
  std::uint64_t nodes_explored = 0;
};

// Exact minimum number of vertex-disjoint paths covering V, with a witness.
// Subset DP: first mark every subset carrying a spanning path of its induced
// subgraph, then cover the vertex set with the fewest such subsets.
inline PathCoverAnswer min_path_cover_oracle(const Graph& g) {
  int n = g.n();
  if (n < 1) throw std::invalid_argument("min_path_cover_oracle: empty graph");
  if (n > kPathCoverOracleLimit)
    throw std::invalid_argument("min_path_cover_oracle: refused, n > " +
                                std::to_string(kPathCoverOracleLimit));
  PathCoverAnswer ans;
  auto adj = detail::small_adjacency_masks(g);
  std::uint32_t full = (std::uint32_t{1} << n) - 1;

  // ends[S]: vertices that can terminate a spanning path of the subgraph on S
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (std::uint32_t S = 1; S <= full; ++S) {
    if ((S & (S - 1)) == 0) {
      ends[S] = S;
      ++ans.nodes_explored;
      continue;
    }
    std::uint32_t res = 0;
    std::uint32_t rest = S;
    while (rest) {
      int x = __builtin_ctz(rest);
      rest &= rest - 1;
      ++ans.nodes_explored;
      if (ends[S ^ (1u << x)] & adj[static_cast<std::size_t>(x)]) res |= 1u << x;
    }
    ends[S] = res;
  }

  std::vector<int> best(std::size_t{1} << n, 0);
  std::vector<std::uint32_t> pick(std::size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int low = __builtin_ctz(mask);
    best[mask] = n + 1;
    // enumerate submasks containing the lowest vertex
    for (std::uint32_t T = mask; T; T = (T - 1) & mask) {
      if (!((T >> low) & 1u)) continue;
      if (!ends[T]) continue;
      ++ans.nodes_explored;
      int cand = 1 + best[mask ^ T];
      if (cand < best[mask]) {
        best[mask] = cand;
        pick[mask] = T;
      }
    }
  }

  ans.size = best[full];
  std::uint32_t mask = full;
  while (mask) {
    std::uint32_t T = pick[mask];
    VertexSet tv(n);
    for (int x = 0; x < n; ++x)
      if ((T >> x) & 1u) tv.set(x);
    auto sub = induced_subgraph(g, tv);
    auto sp = hamiltonian_path_oracle(sub.graph);
    Path p;
    for (int x : sp.path->verts) p.verts.push_back(sub.map[static_cast<std::size_t>(x)]);
    ans.cover.paths.push_back(std::move(p));
    mask ^= T;
  }
  return ans;
}

}  // namespace toughham
