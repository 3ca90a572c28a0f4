#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "maxflow.hpp"
#include "rational.hpp"

namespace toughham {

// Exact toughness enumerates cutsets, so it is capped hard. Larger graphs
// must carry analytic certificates from their generating family.
inline constexpr int kToughnessExactLimit = 20;

struct ToughnessCertificate {
  Rational value;
  // Present for every non-complete graph; empty set for disconnected ones.
  std::optional<VertexSet> tough_set;
};

namespace detail {

// Component count of the graph restricted to `mask` (adjacency as 32-bit
// masks; callers guarantee n <= 20 <= 32).
inline int mask_components(const std::vector<std::uint32_t>& adj, std::uint32_t mask) {
  int c = 0;
  std::uint32_t left = mask;
  while (left) {
    std::uint32_t comp = left & (~left + 1);  // lowest set bit
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t nf = 0;
      std::uint32_t f = frontier;
      while (f) {
        int v = __builtin_ctz(f);
        f &= f - 1;
        nf |= adj[static_cast<std::size_t>(v)];
      }
      nf &= mask & ~comp;
      comp |= nf;
      frontier = nf;
    }
    left &= ~comp;
    ++c;
  }
  return c;
}

inline std::vector<std::uint32_t> small_adjacency(const Graph& g) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.n()), 0);
  for (auto [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)] |= 1u << v;
    adj[static_cast<std::size_t>(v)] |= 1u << u;
  }
  return adj;
}

inline VertexSet mask_to_set(int n, std::uint32_t mask) {
  VertexSet s(n);
  while (mask) {
    s.set(__builtin_ctz(mask));
    mask &= mask - 1;
  }
  return s;
}

}  // namespace detail

// Exact toughness with a certifying cutset. Conventions: complete graphs
// (including K_1 and K_2) have toughness +infinity and no tough set;
// disconnected graphs have toughness 0 witnessed by the empty cutset.
// Ties between minimizing cutsets go to the numerically smallest bitset;
// scanning masks in increasing order makes that automatic.
inline ToughnessCertificate toughness(const Graph& g) {
  if (g.n() == 0) throw std::invalid_argument("toughness: empty graph");
  if (g.n() > kToughnessExactLimit)
    throw std::invalid_argument("toughness: exact computation limited to n <= " +
                                std::to_string(kToughnessExactLimit));
  if (g.is_complete()) return {Rational::infinity(), std::nullopt};
  if (!is_connected(g)) return {Rational(0), VertexSet(g.n())};
  auto adj = detail::small_adjacency(g);
  const std::uint32_t all = (g.n() == 32) ? ~0u : ((1u << g.n()) - 1);
  Rational best = Rational::infinity();
  std::uint32_t best_mask = 0;
  for (std::uint32_t s = 1; s < all; ++s) {
    int w = detail::mask_components(adj, all & ~s);
    if (w < 2) continue;
    Rational ratio(__builtin_popcount(s), w);
    if (ratio < best) {
      best = ratio;
      best_mask = s;
    }
  }
  return {best, detail::mask_to_set(g.n(), best_mask)};
}

// Is |S| >= t * w(G - S) for every cutset S? On failure returns the
// numerically smallest violating cutset.
inline std::optional<VertexSet> is_t_tough(const Graph& g, const Rational& t) {
  if (g.n() == 0) throw std::invalid_argument("is_t_tough: empty graph");
  if (g.n() > kToughnessExactLimit)
    throw std::invalid_argument("is_t_tough: exact computation limited to n <= " +
                                std::to_string(kToughnessExactLimit));
  if (t.num <= 0 && !t.is_infinite()) return std::nullopt;  // t <= 0 always holds
  auto adj = detail::small_adjacency(g);
  const std::uint32_t all = (g.n() == 32) ? ~0u : ((1u << g.n()) - 1);
  for (std::uint32_t s = 0; s < all; ++s) {
    int w = detail::mask_components(adj, all & ~s);
    if (w < 2) continue;
    if (!at_least_times(__builtin_popcount(s), t, w)) return detail::mask_to_set(g.n(), s);
  }
  return std::nullopt;
}

struct ConnectivityResult {
  int kappa = 0;
  // Minimum separating set; absent exactly for complete graphs.
  std::optional<VertexSet> cutset;
};

namespace detail {

// Vertex-split network: in(v) = 2v, out(v) = 2v+1.
inline FlowNetwork vertex_split_network(const Graph& g) {
  FlowNetwork net(2 * g.n());
  const int big = g.n() + 1;
  for (int v = 0; v < g.n(); ++v) net.add_edge(2 * v, 2 * v + 1, 1);
  for (auto [u, v] : g.edges()) {
    net.add_edge(2 * u + 1, 2 * v, big);
    net.add_edge(2 * v + 1, 2 * u, big);
  }
  return net;
}

inline int pair_connectivity(const Graph& g, int s, int t, int limit) {
  FlowNetwork net = vertex_split_network(g);
  return net.max_flow(2 * s + 1, 2 * t, limit);
}

}  // namespace detail

// Global vertex connectivity by pairwise max-flow. Sources range over a
// minimum-degree vertex and its neighbors: every minimum cut misses one of
// them, and flows from a missed vertex to each non-neighbor hit the cut.
inline ConnectivityResult connectivity(const Graph& g) {
  if (g.n() == 0) throw std::invalid_argument("connectivity: empty graph");
  if (g.is_complete()) return {g.n() - 1, std::nullopt};
  if (!is_connected(g)) return {0, VertexSet(g.n())};
  int u0 = 0;
  for (int v = 1; v < g.n(); ++v)
    if (g.degree(v) < g.degree(u0)) u0 = v;
  std::vector<int> sources{u0};
  for (int v = g.neighbors(u0).first(); v >= 0; v = g.neighbors(u0).next(v)) sources.push_back(v);
  int best = g.n() - 1;
  std::pair<int, int> best_pair{-1, -1};
  for (int s : sources) {
    VertexSet closed = g.neighbors(s);
    closed.set(s);
    for (int t = 0; t < g.n(); ++t) {
      if (closed.test(t)) continue;
      int f = detail::pair_connectivity(g, s, t, best);
      if (f < best) {
        best = f;
        best_pair = {s, t};
      }
    }
  }
  // Re-run the best pair without a limit to extract the cut itself.
  FlowNetwork net = detail::vertex_split_network(g);
  net.max_flow(2 * best_pair.first + 1, 2 * best_pair.second);
  auto reach = net.residual_reachable(2 * best_pair.first + 1);
  VertexSet cut(g.n());
  for (int v = 0; v < g.n(); ++v)
    if (reach[static_cast<std::size_t>(2 * v)] && !reach[static_cast<std::size_t>(2 * v + 1)])
      cut.set(v);
  return {best, cut};
}

// Decision version with early abort; much cheaper than exact connectivity
// when k is small.
inline bool is_k_connected(const Graph& g, int k) {
  if (k <= 0) return true;
  if (g.n() == 0) return false;
  if (g.is_complete()) return g.n() - 1 >= k;
  if (g.n() <= k) return false;  // noncomplete graphs have kappa <= n - 2
  if (!is_connected(g)) return false;
  int u0 = 0;
  for (int v = 1; v < g.n(); ++v)
    if (g.degree(v) < g.degree(u0)) u0 = v;
  if (g.degree(u0) < k) return false;
  std::vector<int> sources{u0};
  for (int v = g.neighbors(u0).first(); v >= 0; v = g.neighbors(u0).next(v)) sources.push_back(v);
  for (int s : sources) {
    VertexSet closed = g.neighbors(s);
    closed.set(s);
    for (int t = 0; t < g.n(); ++t) {
      if (closed.test(t)) continue;
      if (detail::pair_connectivity(g, s, t, k) < k) return false;
    }
  }
  return true;
}

struct IndependenceResult {
  int alpha = 0;
  VertexSet witness;
};

namespace detail {

// Max clique on the complement with greedy-coloring bound (the usual
// Tomita scheme). Deterministic: candidates are always scanned ascending.
class ComplementCliqueSolver {
 public:
  explicit ComplementCliqueSolver(const Graph& g) : n_(g.n()), adj_(static_cast<std::size_t>(g.n()), VertexSet(g.n())) {
    for (int u = 0; u < n_; ++u) {
      adj_[static_cast<std::size_t>(u)] = g.neighbors(u).complement();
      adj_[static_cast<std::size_t>(u)].reset(u);
    }
  }

  IndependenceResult solve() {
    best_.clear();
    std::vector<int> cur;
    expand(VertexSet::full(n_), cur);
    VertexSet w(n_);
    for (int v : best_) w.set(v);
    return {static_cast<int>(best_.size()), w};
  }

 private:
  void expand(const VertexSet& P, std::vector<int>& cur) {
    if (!P.any()) {
      if (cur.size() > best_.size()) best_ = cur;
      return;
    }
    // Greedy coloring of P; vertices in color-class order with their
    // color index as an upper bound on the clique they can still extend.
    std::vector<int> order, color;
    VertexSet left = P;
    int c = 0;
    while (left.any()) {
      ++c;
      VertexSet cls = left;
      while (cls.any()) {
        int v = cls.first();
        order.push_back(v);
        color.push_back(c);
        cls -= adj_[static_cast<std::size_t>(v)];
        cls.reset(v);
        left.reset(v);
      }
    }
    VertexSet P2 = P;
    for (std::size_t i = order.size(); i-- > 0;) {
      if (cur.size() + static_cast<std::size_t>(color[i]) <= best_.size()) return;
      int v = order[i];
      cur.push_back(v);
      VertexSet next = P2 & adj_[static_cast<std::size_t>(v)];
      expand(next, cur);
      cur.pop_back();
      P2.reset(v);
    }
  }

  int n_;
  std::vector<VertexSet> adj_;
  std::vector<int> best_;
};

}  // namespace detail

inline IndependenceResult independence_number(const Graph& g) {
  if (g.n() == 0) return {0, VertexSet(0)};
  return detail::ComplementCliqueSolver(g).solve();
}

namespace detail {

inline bool independent_tuple_rec(const Graph& g, const VertexSet& cand, int k,
                                  std::vector<int>& acc) {
  if (k == 0) return true;
  if (cand.count() < k) return false;
  for (int v = cand.first(); v >= 0; v = cand.next(v)) {
    acc.push_back(v);
    VertexSet next = cand;
    next -= g.neighbors(v);
    next.reset_leq(v);
    if (independent_tuple_rec(g, next, k - 1, acc)) return true;
    acc.pop_back();
  }
  return false;
}

}  // namespace detail

// Does G[X] contain an independent set of k vertices? Returns the
// lexicographically least one (as an ascending vertex tuple) if so.
// Cheap for the small k used by pattern detection.
inline std::optional<std::vector<int>> independent_tuple(const Graph& g, const VertexSet& X, int k) {
  std::vector<int> acc;
  if (detail::independent_tuple_rec(g, X, k, acc)) return acc;
  return std::nullopt;
}

struct MinDegreeResult {
  int delta = 0;
  int argmin = -1;
};

inline MinDegreeResult min_degree(const Graph& g) {
  if (g.n() == 0) throw std::invalid_argument("min_degree: empty graph");
  MinDegreeResult r{g.degree(0), 0};
  for (int v = 1; v < g.n(); ++v)
    if (g.degree(v) < r.delta) r = {g.degree(v), v};
  return r;
}

struct DiracCheckResult {
  bool ok = false;
  int delta = 0;
  int argmin = -1;
};

// delta(G) > n/(t+1) - 1, compared exactly: delta + 1 > n / (t + 1)
// i.e. (delta + 1) * (num + den) > n * den for t = num/den.
inline DiracCheckResult dirac_type_check(const Graph& g, const Rational& t) {
  auto md = min_degree(g);
  if (t.is_infinite()) return {true, md.delta, md.argmin};
  if (t.num < 0) throw std::invalid_argument("dirac_type_check: negative t");
  __int128 lhs = static_cast<__int128>(md.delta + 1) * (t.num + t.den);
  __int128 rhs = static_cast<__int128>(g.n()) * t.den;
  return {lhs > rhs, md.delta, md.argmin};
}

struct DegreeSumCheckResult {
  bool ok = false;
  // Failing nonadjacent pair with minimum degree sum (lexicographically
  // least among ties); this is the pair the decomposition starts from.
  std::optional<std::pair<int, int>> witness;
};

// Every nonadjacent pair u, v satisfies d(u) + d(v) > 2n/(t+1) - 2,
// exactly: (d(u) + d(v) + 2) * (num + den) > 2 * n * den.
inline DegreeSumCheckResult degree_sum_check(const Graph& g, const Rational& t) {
  if (t.is_infinite()) return {true, std::nullopt};
  if (t.num < 0) throw std::invalid_argument("degree_sum_check: negative t");
  std::optional<std::pair<int, int>> worst;
  long long worst_sum = 0;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v) {
      if (g.has_edge(u, v)) continue;
      long long sum = g.degree(u) + g.degree(v);
      __int128 lhs = static_cast<__int128>(sum + 2) * (t.num + t.den);
      __int128 rhs = static_cast<__int128>(2) * g.n() * t.den;
      if (lhs > rhs) continue;
      if (!worst || sum < worst_sum) {
        worst = {u, v};
        worst_sum = sum;
      }
    }
  if (worst) return {false, worst};
  return {true, std::nullopt};
}

struct ProperCutsetResult {
  bool is_cutset = false;
  bool is_proper = false;
  // A vertex of S adjacent to at most one component, when not proper.
  std::optional<int> offending_vertex;
};

// Proper cutset: removal disconnects, and every removed vertex has
// neighbors in at least two of the remaining components.
inline ProperCutsetResult is_proper_cutset(const Graph& g, const VertexSet& S) {
  auto comps = components(g, S);
  if (comps.size() < 2) return {false, false, std::nullopt};
  for (int s = S.first(); s >= 0; s = S.next(s)) {
    int touched = 0;
    for (const auto& c : comps)
      if (g.neighbors(s).intersects(c) && ++touched >= 2) break;
    if (touched < 2) return {true, false, s};
  }
  return {true, true, std::nullopt};
}

}  // namespace toughham
