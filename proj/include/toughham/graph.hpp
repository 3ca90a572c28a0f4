#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toughham {

// Dynamic bitset over vertex ids 0..capacity-1. Word 0 holds vertices 0..63.
// Comparison for deterministic tie-breaking treats the set as a little-endian
// integer: the "lexicographically smallest bitset" is the numerically
// smallest one. All operands of binary ops must share a capacity.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), w_(static_cast<std::size_t>((n + 63) / 64), 0) {}

  static VertexSet of(int n, std::initializer_list<int> vs) {
    VertexSet s(n);
    for (int v : vs) s.set(v);
    return s;
  }
  static VertexSet full(int n) {
    VertexSet s(n);
    for (auto& w : s.w_) w = ~0ULL;
    s.trim();
    return s;
  }

  int capacity() const { return n_; }

  bool test(int v) const { return (w_[v >> 6] >> (v & 63)) & 1ULL; }
  void set(int v) { w_[v >> 6] |= 1ULL << (v & 63); }
  void reset(int v) { w_[v >> 6] &= ~(1ULL << (v & 63)); }
  void clear() { std::fill(w_.begin(), w_.end(), 0ULL); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }

  // Clear every bit <= v.
  void reset_leq(int v) {
    if (v < 0) return;
    if (v >= n_ - 1) {
      clear();
      return;
    }
    std::size_t full = static_cast<std::size_t>(v >> 6);
    for (std::size_t i = 0; i < full; ++i) w_[i] = 0;
    int r = v & 63;
    if (r == 63)
      w_[full] = 0;
    else
      w_[full] &= ~0ULL << (r + 1);
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool is_subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  VertexSet complement() const {
    VertexSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    r.trim();
    return r;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.w_ == b.w_; }
  friend bool operator!=(const VertexSet& a, const VertexSet& b) { return a.w_ != b.w_; }

  // Numeric little-endian order; total, used for deterministic tie-breaks.
  bool numeric_less(const VertexSet& o) const {
    for (std::size_t i = w_.size(); i-- > 0;) {
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    }
    return false;
  }

  int first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i * 64 + __builtin_ctzll(w_[i]));
    return -1;
  }
  // Next member strictly after v, or -1.
  int next(int v) const {
    ++v;
    if (v >= n_) return -1;
    std::size_t i = static_cast<std::size_t>(v >> 6);
    std::uint64_t w = w_[i] & (~0ULL << (v & 63));
    while (true) {
      if (w) return static_cast<int>(i * 64 + __builtin_ctzll(w));
      if (++i >= w_.size()) return -1;
      w = w_[i];
    }
  }

  template <class F>
  void for_each(F f) const {
    for (int v = first(); v >= 0; v = next(v)) f(v);
  }
  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int v = first(); v >= 0; v = next(v)) out.push_back(v);
    return out;
  }

  std::uint64_t word(std::size_t i) const { return w_[i]; }
  std::size_t words() const { return w_.size(); }

 private:
  void trim() {
    int tail = n_ & 63;
    if (tail && !w_.empty()) w_.back() &= (1ULL << tail) - 1;
  }
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Immutable simple undirected graph on vertices 0..n-1, adjacency rows as
// bitsets. Construct once from an edge list; all algorithms take const refs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), m_(0), adj_(static_cast<std::size_t>(n), VertexSet(n)) {
    if (n < 0) throw std::invalid_argument("graph: negative order");
  }
  Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge_internal(u, v);
  }

  int n() const { return n_; }
  int m() const { return m_; }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return u != v && adj_[static_cast<std::size_t>(u)].test(v);
  }
  int degree(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)].count();
  }
  const VertexSet& neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  VertexSet vertices() const { return VertexSet::full(n_); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
      for (int v = adj_[static_cast<std::size_t>(u)].next(u); v >= 0;
           v = adj_[static_cast<std::size_t>(u)].next(v))
        out.emplace_back(u, v);
    return out;
  }

  // Mutation is only exposed through with_edge/with_edges, which copy.
  Graph with_edge(int u, int v) const {
    Graph g = *this;
    g.add_edge_internal(u, v);
    return g;
  }

  bool is_complete() const { return 2 * m_ == n_ * (n_ - 1); }

  // Is the induced subgraph on X a clique?
  bool is_complete_on(const VertexSet& X) const {
    for (int v = X.first(); v >= 0; v = X.next(v)) {
      VertexSet rest = X;
      rest.reset(v);
      if (!rest.is_subset_of(adj_[static_cast<std::size_t>(v)])) return false;
    }
    return true;
  }

  // Union of N_G(v) over v in X, minus X itself.
  VertexSet neighborhood_of_set(const VertexSet& X) const {
    VertexSet r(n_);
    for (int v = X.first(); v >= 0; v = X.next(v)) r |= adj_[static_cast<std::size_t>(v)];
    r -= X;
    return r;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("graph: vertex " + std::to_string(v) + " out of range");
  }

 private:
  void add_edge_internal(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("graph: self loop");
    if (!adj_[static_cast<std::size_t>(u)].test(v)) {
      adj_[static_cast<std::size_t>(u)].set(v);
      adj_[static_cast<std::size_t>(v)].set(u);
      ++m_;
    }
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<VertexSet> adj_;
};

// Connected component containing seed, restricted to `inside`.
inline VertexSet component_of(const Graph& g, int seed, const VertexSet& inside) {
  VertexSet comp(g.n());
  VertexSet frontier(g.n());
  frontier.set(seed);
  comp.set(seed);
  while (frontier.any()) {
    VertexSet nxt(g.n());
    for (int v = frontier.first(); v >= 0; v = frontier.next(v)) nxt |= g.neighbors(v);
    nxt &= inside;
    nxt -= comp;
    comp |= nxt;
    frontier = nxt;
  }
  return comp;
}

// Components of G - removed, ordered by smallest contained vertex.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& removed) {
  VertexSet left = VertexSet::full(g.n());
  left -= removed;
  std::vector<VertexSet> comps;
  for (int v = left.first(); v >= 0; v = left.first()) {
    VertexSet c = component_of(g, v, left);
    left -= c;
    comps.push_back(std::move(c));
  }
  return comps;
}

inline std::vector<VertexSet> components(const Graph& g) {
  return components(g, VertexSet(g.n()));
}

inline int component_count(const Graph& g, const VertexSet& removed) {
  // Same traversal as components() without storing the sets.
  VertexSet left = VertexSet::full(g.n());
  left -= removed;
  int c = 0;
  for (int v = left.first(); v >= 0; v = left.first()) {
    left -= component_of(g, v, left);
    ++c;
  }
  return c;
}

inline bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  return component_of(g, 0, VertexSet::full(g.n())).count() == g.n();
}

// Induced subgraph on X plus the relabeling map: map[i] = original id of
// new vertex i (X in increasing order).
struct InducedSubgraph {
  Graph graph;
  std::vector<int> map;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& X) {
  std::vector<int> map = X.to_vector();
  std::vector<int> back(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < map.size(); ++i) back[static_cast<std::size_t>(map[i])] = static_cast<int>(i);
  Graph h(static_cast<int>(map.size()));
  std::vector<std::pair<int, int>> es;
  for (std::size_t i = 0; i < map.size(); ++i) {
    VertexSet nb = g.neighbors(map[i]) & X;
    for (int v = nb.first(); v >= 0; v = nb.next(v)) {
      int j = back[static_cast<std::size_t>(v)];
      if (static_cast<int>(i) < j) es.emplace_back(static_cast<int>(i), j);
    }
  }
  return {Graph(static_cast<int>(map.size()), es), std::move(map)};
}

// Edges with one end in X and the other in Y. X and Y must be disjoint.
inline std::vector<std::pair<int, int>> edges_between(const Graph& g, const VertexSet& X,
                                                      const VertexSet& Y) {
  if (X.intersects(Y)) throw std::invalid_argument("edges_between: sets overlap");
  std::vector<std::pair<int, int>> out;
  for (int u = X.first(); u >= 0; u = X.next(u)) {
    VertexSet nb = g.neighbors(u) & Y;
    for (int v = nb.first(); v >= 0; v = nb.next(v)) out.emplace_back(u, v);
  }
  return out;
}

// Simple path as an explicit vertex sequence.
struct Path {
  std::vector<int> verts;
  int size() const { return static_cast<int>(verts.size()); }
};

// Cycle as a vertex sequence; the edge back from verts.back() to
// verts.front() is implicit. Valid cycles have at least 3 vertices.
struct Cycle {
  std::vector<int> verts;
  int size() const { return static_cast<int>(verts.size()); }

  // Rotate so the smallest vertex leads, then pick the direction whose
  // second vertex is smaller. Canonical under rotation + reflection.
  void normalize() {
    if (verts.size() < 2) return;
    auto it = std::min_element(verts.begin(), verts.end());
    std::rotate(verts.begin(), it, verts.end());
    if (verts.size() >= 3 && verts[1] > verts.back())
      std::reverse(verts.begin() + 1, verts.end());
  }
};

inline bool validate_path(const Graph& g, const Path& p, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (p.verts.empty()) return fail("empty path");
  VertexSet seen(g.n());
  for (std::size_t i = 0; i < p.verts.size(); ++i) {
    int v = p.verts[i];
    if (v < 0 || v >= g.n()) return fail("vertex out of range");
    if (seen.test(v)) return fail("repeated vertex " + std::to_string(v));
    seen.set(v);
    if (i > 0 && !g.has_edge(p.verts[i - 1], v))
      return fail("missing edge " + std::to_string(p.verts[i - 1]) + "-" + std::to_string(v));
  }
  return true;
}

inline bool validate_cycle(const Graph& g, const Cycle& c, std::string* why = nullptr) {
  if (c.verts.size() < 3) {
    if (why) *why = "cycle has fewer than 3 vertices";
    return false;
  }
  Path as_path{c.verts};
  if (!validate_path(g, as_path, why)) return false;
  if (!g.has_edge(c.verts.back(), c.verts.front())) {
    if (why)
      *why = "missing closing edge " + std::to_string(c.verts.back()) + "-" +
             std::to_string(c.verts.front());
    return false;
  }
  return true;
}

inline bool is_hamiltonian_cycle(const Graph& g, const Cycle& c, std::string* why = nullptr) {
  if (c.size() != g.n()) {
    if (why) *why = "cycle does not cover all vertices";
    return false;
  }
  return validate_cycle(g, c, why);
}

// Vertex-disjoint paths covering all of V. Single-vertex paths are allowed.
struct PathCover {
  std::vector<Path> paths;
  int size() const { return static_cast<int>(paths.size()); }
};

inline bool validate_path_cover(const Graph& g, const PathCover& pc, std::string* why = nullptr) {
  VertexSet seen(g.n());
  for (const auto& p : pc.paths) {
    if (!validate_path(g, p, why)) return false;
    for (int v : p.verts) {
      if (seen.test(v)) {
        if (why) *why = "vertex " + std::to_string(v) + " appears in two paths";
        return false;
      }
      seen.set(v);
    }
  }
  if (seen.count() != g.n()) {
    if (why) *why = "cover misses a vertex";
    return false;
  }
  return true;
}

}  // namespace toughham
