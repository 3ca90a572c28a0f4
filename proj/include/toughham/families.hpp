#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace toughham {

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

// Parts are consecutive vertex ranges in the given order; edges join
// distinct parts. complete_bipartite(m, n) == complete_multipartite({m, n}).
inline Graph complete_multipartite_graph(const std::vector<int>& parts) {
  int n = 0;
  for (int p : parts) {
    if (p <= 0) throw std::invalid_argument("complete_multipartite: parts must be positive");
    n += p;
  }
  std::vector<int> part_of;
  part_of.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int k = 0; k < parts[i]; ++k) part_of.push_back(static_cast<int>(i));
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (part_of[static_cast<std::size_t>(u)] != part_of[static_cast<std::size_t>(v)])
        es.emplace_back(u, v);
  return Graph(n, es);
}

inline Graph complete_bipartite_graph(int a, int b) {
  return complete_multipartite_graph({a, b});
}

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen_graph() {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
    es.emplace_back(i, i + 5);
  }
  return Graph(10, es);
}

// Disjoint union, blocks in order.
inline Graph disjoint_union(const std::vector<Graph>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.n();
  std::vector<std::pair<int, int>> es;
  int off = 0;
  for (const auto& b : blocks) {
    for (auto [u, v] : b.edges()) es.emplace_back(u + off, v + off);
    off += b.n();
  }
  return Graph(n, es);
}

}  // namespace toughham
