#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "families.hpp"
#include "invariants.hpp"
#include "patterns.hpp"
#include "rational.hpp"

namespace toughham {

// Exact canonical forms by brute-force minimization stay practical up to 8
// vertices; the hereditary free-graph stream goes one further because the
// candidate set is so much thinner there.
inline constexpr int kEnumerationLimit = 8;
inline constexpr int kFreeEnumerationLimit = 10;

namespace detail {

// Adjacency bits in column order: (0,1), (0,2), (1,2), (0,3), ... so that
// placing vertices one position at a time fixes a prefix of the key. The
// first-placed vertex contributes the most significant bits, which makes the
// whole key lexicographically comparable during the search.
inline std::uint64_t column_key(const Graph& g, const std::vector<int>& order) {
  std::uint64_t key = 0;
  for (std::size_t p = 1; p < order.size(); ++p)
    for (std::size_t i = 0; i < p; ++i)
      key = key << 1 | (g.has_edge(order[i], order[p]) ? 1u : 0u);
  return key;
}

}  // namespace detail

// Smallest column-order adjacency key over all vertex orderings. Two graphs
// on the same vertex count are isomorphic exactly when their keys agree.
inline std::uint64_t canonical_graph_key(const Graph& g) {
  const int n = g.n();
  if (n > kFreeEnumerationLimit)
    throw std::invalid_argument("canonical_graph_key: limited to n <= " +
                                std::to_string(kFreeEnumerationLimit));
  if (n <= 1) return 0;

  const int total_bits = n * (n - 1) / 2;
  std::uint64_t best = ~0ULL >> (64 - total_bits);
  std::vector<int> perm;
  perm.reserve(static_cast<std::size_t>(n));
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  // Depth-first over orderings; the key built so far is compared against the
  // corresponding prefix of the best key, so most branches die immediately.
  std::function<void(std::uint64_t, int)> place = [&](std::uint64_t prefix, int bits) {
    const int pos = static_cast<int>(perm.size());
    if (pos == n) {
      if (prefix < best) best = prefix;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      std::uint64_t row = 0;
      for (int i = 0; i < pos; ++i)
        row = row << 1 | (g.has_edge(perm[static_cast<std::size_t>(i)], v) ? 1u : 0u);
      std::uint64_t next = prefix << pos | row;
      const int next_bits = bits + pos;
      if (next > (best >> (total_bits - next_bits))) continue;
      used[static_cast<std::size_t>(v)] = 1;
      perm.push_back(v);
      place(next, next_bits);
      perm.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  place(0, 0);
  return best;
}

// Rebuilds the graph a canonical key denotes.
inline Graph graph_from_canonical_key(int n, std::uint64_t key) {
  std::vector<std::pair<int, int>> es;
  const int total_bits = n * (n - 1) / 2;
  int bit = total_bits;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u)
      if (key >> --bit & 1) es.emplace_back(u, v);
  return Graph(n, es);
}

// Every labeled graph on n vertices, in edge-mask order. The callback
// receives each graph exactly once; n is capped where full enumeration is
// still sane.
inline void enumerate_labeled_graphs(int n, const std::function<void(const Graph&)>& fn) {
  if (n < 1 || n > kEnumerationLimit)
    throw std::invalid_argument("enumerate_labeled_graphs: need 1 <= n <= " +
                                std::to_string(kEnumerationLimit));
  const int bits = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> es;
  for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
    es.clear();
    int b = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v, ++b)
        if (mask >> b & 1) es.emplace_back(u, v);
    fn(Graph(n, es));
  }
}

namespace detail {

// Extension enumeration: attach a new vertex to every representative on one
// vertex fewer in all 2^(n-1) ways and keep one graph per canonical key. The
// optional filter must be hereditary (closed under deleting a vertex), or
// children of discarded parents would be lost.
inline std::vector<Graph> extend_representatives(
    int n, const std::function<bool(const Graph&)>& keep) {
  std::vector<Graph> reps{Graph(1)};
  for (int m = 2; m <= n; ++m) {
    std::map<std::uint64_t, Graph> next;
    std::vector<std::pair<int, int>> es;
    for (const Graph& parent : reps) {
      for (std::uint64_t attach = 0; attach < (1ULL << (m - 1)); ++attach) {
        es.clear();
        for (int u = 0; u < m - 1; ++u)
          for (int v = u + 1; v < m - 1; ++v)
            if (parent.has_edge(u, v)) es.emplace_back(u, v);
        for (int u = 0; u < m - 1; ++u)
          if (attach >> u & 1) es.emplace_back(u, m - 1);
        Graph child(m, es);
        if (keep && !keep(child)) continue;
        std::uint64_t key = canonical_graph_key(child);
        next.emplace(key, graph_from_canonical_key(m, key));
      }
    }
    reps.clear();
    reps.reserve(next.size());
    for (auto& [key, g] : next) reps.push_back(std::move(g));
  }
  return reps;
}

}  // namespace detail

// All graphs on n vertices up to isomorphism, sorted by canonical key.
inline std::vector<Graph> enumerate_nonisomorphic_graphs(int n) {
  if (n < 1 || n > kEnumerationLimit)
    throw std::invalid_argument("enumerate_nonisomorphic_graphs: need 1 <= n <= " +
                                std::to_string(kEnumerationLimit));
  return detail::extend_representatives(n, nullptr);
}

// All (P3 + k isolated vertices)-free graphs on n vertices up to isomorphism.
// Freeness is hereditary, so the extension search only ever grows free
// parents, which keeps one extra vertex of headroom affordable.
inline std::vector<Graph> enumerate_free_graphs(int n, int k) {
  if (n < 1 || n > kFreeEnumerationLimit)
    throw std::invalid_argument("enumerate_free_graphs: need 1 <= n <= " +
                                std::to_string(kFreeEnumerationLimit));
  if (k < 1) throw std::invalid_argument("enumerate_free_graphs: k must be positive");
  return detail::extend_representatives(
      n, [k](const Graph& g) { return is_p3_kp1_free(g, k); });
}

// ---------------------------------------------------------------------------
// Certified families
// ---------------------------------------------------------------------------

enum class ToughnessProvenance { kBruteForce, kFamilyFormula };

// A graph bundled with a toughness lower bound whose origin is recorded:
// exact brute force for small graphs, or a named closed-form family formula
// (each formula is cross-validated against brute force at small parameters
// by the test suite). freeness_k is the smallest k for which
// (P3 + kP1)-freeness is established; larger k are implied.
struct CertifiedGraph {
  Graph graph;
  Rational toughness_bound;
  ToughnessProvenance provenance = ToughnessProvenance::kBruteForce;
  std::string formula;  // names the formula for kFamilyFormula
  int freeness_k = 0;
};

inline CertifiedGraph certify_brute_force(const Graph& g, int k) {
  if (g.n() > 18)
    throw std::invalid_argument("certify_brute_force: limited to n <= 18");
  if (!is_p3_kp1_free(g, k))
    throw std::invalid_argument("certify_brute_force: graph is not (P3 + " +
                                std::to_string(k) + "P1)-free");
  CertifiedGraph c{g, toughness(g).value, ToughnessProvenance::kBruteForce, "", k};
  return c;
}

// Complete multipartite graph. The only cutsets leave the survivors inside a
// single part, so the toughness is (n - p) / p with p the largest part; all
// parts of size one make the graph complete.
inline CertifiedGraph certified_complete_multipartite(const std::vector<int>& parts) {
  if (parts.empty())
    throw std::invalid_argument("certified_complete_multipartite: no parts");
  for (int p : parts)
    if (p < 1) throw std::invalid_argument("certified_complete_multipartite: bad part");
  Graph g = complete_multipartite_graph(parts);
  const int n = g.n();
  const int pmax = *std::max_element(parts.begin(), parts.end());

  CertifiedGraph c;
  c.provenance = ToughnessProvenance::kFamilyFormula;
  c.formula = "complete-multipartite";
  if (pmax == 1)
    c.toughness_bound = Rational::infinity();
  else if (pmax == n)
    c.toughness_bound = n == 1 ? Rational::infinity() : Rational(0);
  else
    c.toughness_bound = Rational(n - pmax, pmax);
  // No induced P3 survives an extra isolated vertex: the P3's middle vertex
  // meets every part except its endpoints', and its endpoints share a part.
  c.freeness_k = 1;
  if (n <= 60 && !is_p3_kp1_free(g, 1))
    throw std::logic_error("complete multipartite freeness argument failed");
  c.graph = std::move(g);
  return c;
}

// A clique S joined to every vertex of l disjoint cliques. Any cutset must
// swallow S whole, after which only whole components disappear, so the
// toughness is exactly |S| / l. Every induced P3 uses a vertex of S, which
// dominates the graph, so the family is (P3 + P1)-free.
inline CertifiedGraph certified_clique_join_cliques(int s, const std::vector<int>& sizes) {
  if (s < 0 || sizes.empty())
    throw std::invalid_argument("certified_clique_join_cliques: bad parameters");
  for (int a : sizes)
    if (a < 1) throw std::invalid_argument("certified_clique_join_cliques: bad size");
  const int l = static_cast<int>(sizes.size());
  int n = s;
  for (int a : sizes) n += a;
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < s; ++u)
    for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
  int base = s;
  for (int a : sizes) {
    for (int u = base; u < base + a; ++u)
      for (int v = u + 1; v < base + a; ++v) es.emplace_back(u, v);
    base += a;
  }
  Graph g(n, es);

  CertifiedGraph c;
  c.provenance = ToughnessProvenance::kFamilyFormula;
  c.formula = "clique-join-cliques";
  if (l == 1 || (s == 0 && l == 1))
    c.toughness_bound = Rational::infinity();  // a single clique
  else if (s == 0)
    c.toughness_bound = Rational(0);  // disjoint cliques
  else
    c.toughness_bound = Rational(s, l);
  c.freeness_k = 1;
  if (n <= 60 && !is_p3_kp1_free(g, 1))
    throw std::logic_error("clique join freeness argument failed");
  c.graph = std::move(g);
  return c;
}

// A clique S joined to everything; a big clique Q; a small clique P whose
// vertices also see two extra nonadjacent vertices u and v. Removing S
// splits the rest into Q and P+{u,v}; removing S and P isolates u and v as
// well, so the toughness is min(|S|/2, (|S|+|P|)/3). The family is
// (P3 + 2P1)-free: the only induced P3 avoiding S is u-p-v, and the vertices
// missing it entirely lie inside the clique Q.
// Vertex layout: S = [0,s), Q = [s,s+q), P = [s+q,s+q+p), then u, v.
inline CertifiedGraph certified_bridged_clique_pair(int s, int q, int p) {
  if (s < 1 || q < 1 || p < 1)
    throw std::invalid_argument("certified_bridged_clique_pair: bad parameters");
  const int n = s + q + p + 2;
  const int u = n - 2, v = n - 1;
  std::vector<std::pair<int, int>> es;
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < n; ++b) es.emplace_back(a, b);
  for (int a = s; a < s + q; ++a)
    for (int b = a + 1; b < s + q; ++b) es.emplace_back(a, b);
  for (int a = s + q; a < s + q + p; ++a) {
    for (int b = a + 1; b < s + q + p; ++b) es.emplace_back(a, b);
    es.emplace_back(a, u);
    es.emplace_back(a, v);
  }
  Graph g(n, es);

  CertifiedGraph c;
  c.provenance = ToughnessProvenance::kFamilyFormula;
  c.formula = "bridged-clique-pair";
  c.toughness_bound = std::min(Rational(s, 2), Rational(s + p, 3));
  c.freeness_k = 2;
  if (n <= 60 && !is_p3_kp1_free(g, 2))
    throw std::logic_error("bridged clique pair freeness argument failed");
  c.graph = std::move(g);
  return c;
}

// ---------------------------------------------------------------------------
// Planted instances and random models
// ---------------------------------------------------------------------------

namespace detail {

inline bool coin(std::mt19937_64& rng, double p) {
  // 53 uniform bits; avoids distribution objects so results are identical
  // across standard libraries.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

inline std::uint64_t pick(std::mt19937_64& rng, std::uint64_t m) {
  return rng() % m;
}

}  // namespace detail

// Instance for the cycle-insertion routine: a graph, a cycle covering all but
// one vertex, the leftover vertex, and an exactly verified toughness t under
// which the insertion degree condition d_C(x) > n/(t+1) - 1 holds.
struct PlantedInsertion {
  Graph graph;
  Cycle cycle;
  int x = 0;
  Rational t;
};

inline PlantedInsertion planted_insertion_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int m = 4 + static_cast<int>(detail::pick(rng, 10));  // cycle length
    const int n = m + 1;
    const int x = m;
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < m; ++i) es.emplace_back(i, (i + 1) % m);
    const double chord_p = 0.15 + 0.5 * static_cast<double>(detail::pick(rng, 100)) / 100.0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        if (detail::coin(rng, chord_p)) es.emplace_back(i, j);
      }
    std::vector<char> xadj(static_cast<std::size_t>(m), 0);
    int degree = 0;
    auto add_x_edge = [&](int to) {
      if (xadj[static_cast<std::size_t>(to)]) return;
      xadj[static_cast<std::size_t>(to)] = 1;
      es.emplace_back(to, x);
      ++degree;
    };
    add_x_edge(static_cast<int>(detail::pick(rng, static_cast<std::uint64_t>(m))));
    while (degree < m) {
      Graph g(n, es);
      Rational tau = toughness(g).value;
      // The degree condition with t = tau: (d+1)(tau+1) > n.
      if (!tau.is_infinite() && tau.num > 0) {
        long long lhs = static_cast<long long>(degree + 1) * (tau.num + tau.den);
        if (lhs > static_cast<long long>(n) * tau.den) {
          Cycle c;
          for (int i = 0; i < m; ++i) c.verts.push_back(i);
          return {std::move(g), std::move(c), x, tau};
        }
      }
      add_x_edge(static_cast<int>(detail::pick(rng, static_cast<std::uint64_t>(m))));
    }
    // Even x joined to the whole cycle failed the condition; resample.
  }
  throw std::runtime_error("planted_insertion_instance: no instance after 64 attempts");
}

// Instance for the generalized two-partner matching: a certified full-join
// family graph together with its cutset, sized so the matching hypotheses
// hold by the family formula (|S| >= 2 s l with at least five components).
struct PlantedMatching {
  CertifiedGraph certified;
  VertexSet cutset;
  int s = 1;
};

inline PlantedMatching planted_matching_instance(int s, std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("planted_matching_instance: s must be positive");
  std::mt19937_64 rng(seed);
  const int l = 5 + static_cast<int>(detail::pick(rng, 3));
  std::vector<int> sizes;
  for (int i = 0; i < l; ++i) sizes.push_back(1 + static_cast<int>(detail::pick(rng, 4)));
  const int ssize = 2 * s * l + static_cast<int>(detail::pick(rng, 5));
  CertifiedGraph c = certified_clique_join_cliques(ssize, sizes);
  VertexSet S(c.graph.n());
  for (int v = 0; v < ssize; ++v) S.set(v);
  return {std::move(c), std::move(S), s};
}

// Erdos-Renyi sample repaired to (P3 + kP1)-freeness. Repair only ever adds
// edges, each time inside the independent part of a found witness (the two
// path ends plus the isolated vertices), so the loop terminates at K_n in the
// worst case and never invalidates earlier repairs.
inline Graph random_free_graph(int n, double p, int k, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_free_graph: need n >= 1");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("random_free_graph: need 0 <= p <= 1");
  if (k < 1) throw std::invalid_argument("random_free_graph: k must be positive");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                     std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (detail::coin(rng, p)) adj[u][v] = adj[v][u] = 1;

  auto build = [&] {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (adj[u][v]) es.emplace_back(u, v);
    return Graph(n, es);
  };

  Graph g = build();
  while (auto w = find_p3_kp1(g, k)) {
    std::vector<int> indep{w->path[0], w->path[2]};
    for (int v : w->isolated) indep.push_back(v);
    std::sort(indep.begin(), indep.end());
    // Pick a nonedge inside the independent part; all pairs qualify.
    const std::uint64_t pairs =
        static_cast<std::uint64_t>(indep.size()) * (indep.size() - 1) / 2;
    std::uint64_t r = detail::pick(rng, pairs);
    int a = -1, b = -1;
    for (std::size_t i = 0; i < indep.size() && a < 0; ++i) {
      std::uint64_t row = indep.size() - 1 - i;
      if (r < row) {
        a = indep[i];
        b = indep[i + 1 + static_cast<std::size_t>(r)];
      } else {
        r -= row;
      }
    }
    adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
    g = build();
  }
  return g;
}

}  // namespace toughham
