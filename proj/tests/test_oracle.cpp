#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "toughham/families.hpp"
#include "toughham/oracle.hpp"

using namespace toughham;

namespace {

Graph sample_graph(int n, std::uint64_t seed, int density = 50) {
  std::uint64_t state = seed;
  auto next = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (next() % 100 < static_cast<std::uint64_t>(density)) es.emplace_back(u, v);
  return Graph(n, es);
}

// ground truth by trying every permutation
bool permutation_has_cycle(const Graph& g) {
  int n = g.n();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = g.has_edge(perm[n - 1], perm[0]);
    for (int i = 0; i + 1 < n && ok; ++i)
      if (!g.has_edge(perm[i], perm[i + 1])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));  // fix rotation
  return false;
}

bool permutation_has_path(const Graph& g, std::optional<int> u, std::optional<int> v) {
  int n = g.n();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  do {
    if (u && perm[0] != *u) continue;
    if (v && perm[n - 1] != *v) continue;
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i)
      if (!g.has_edge(perm[i], perm[i + 1])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

int permutation_min_cover(const Graph& g) {
  // smallest k such that vertices can be ordered and split into k path runs
  int n = g.n();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  int best = n;
  do {
    int runs = 1;
    for (int i = 0; i + 1 < n; ++i)
      if (!g.has_edge(perm[i], perm[i + 1])) ++runs;
    best = std::min(best, runs);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("cycle oracle on named graphs") {
  auto k4 = hamiltonian_cycle_oracle(complete_graph(4));
  REQUIRE(k4.yes);
  REQUIRE(is_hamiltonian_cycle(complete_graph(4), *k4.cycle));
  REQUIRE(k4.cycle->verts == std::vector<int>{0, 1, 2, 3});

  auto c6 = hamiltonian_cycle_oracle(cycle_graph(6));
  REQUIRE(c6.yes);
  REQUIRE(c6.cycle->verts == std::vector<int>{0, 1, 2, 3, 4, 5});

  // the classical nonhamiltonian 3-connected example
  auto pet = hamiltonian_cycle_oracle(petersen_graph());
  REQUIRE(!pet.yes);

  REQUIRE(!hamiltonian_cycle_oracle(path_graph(5)).yes);
  REQUIRE(!hamiltonian_cycle_oracle(complete_bipartite_graph(2, 3)).yes);
  REQUIRE(hamiltonian_cycle_oracle(complete_bipartite_graph(3, 3)).yes);

  REQUIRE_THROWS_AS(hamiltonian_cycle_oracle(complete_graph(2)), std::invalid_argument);
  REQUIRE_THROWS_AS(hamiltonian_cycle_oracle(complete_graph(25)), std::invalid_argument);
}

TEST_CASE("cycle oracle agrees with permutation enumeration") {
  for (int n = 4; n <= 8; ++n)
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      for (int density : {35, 55, 75}) {
        Graph g = sample_graph(n, seed * 1009 + density, density);
        auto ans = hamiltonian_cycle_oracle(g);
        REQUIRE(ans.yes == permutation_has_cycle(g));
        if (ans.yes) REQUIRE(is_hamiltonian_cycle(g, *ans.cycle));
      }
}

TEST_CASE("cycle oracle cross-method agreement") {
  for (int n = 4; n <= 12; ++n)
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      Graph g = sample_graph(n, seed * 271 + n, 45 + n);
      auto dp = hamiltonian_cycle_oracle(g, OracleMethod::DP);
      auto bt = hamiltonian_cycle_oracle(g, OracleMethod::BACKTRACK);
      REQUIRE(dp.yes == bt.yes);
      if (dp.yes) {
        // both produce the lexicographically least sequence from vertex 0
        REQUIRE(dp.cycle->verts == bt.cycle->verts);
        Cycle norm = *dp.cycle;
        norm.normalize();
        REQUIRE(norm.verts == dp.cycle->verts);
      }
    }
  // a size that genuinely exercises the backtracking engine
  auto big = hamiltonian_cycle_oracle(cycle_graph(22));
  REQUIRE(big.method == OracleMethod::BACKTRACK);
  REQUIRE(big.yes);
  REQUIRE(is_hamiltonian_cycle(cycle_graph(22), *big.cycle));
}

TEST_CASE("path oracle with pinned ends") {
  REQUIRE(hamiltonian_path_oracle(path_graph(6)).yes);
  REQUIRE(!hamiltonian_path_oracle(complete_bipartite_graph(1, 3)).yes);

  // C_6 from 0 to 3: the two arcs have lengths 3 and 3, neither spans
  REQUIRE(!hamiltonian_path_oracle(cycle_graph(6), 0, 3).yes);
  REQUIRE(hamiltonian_path_oracle(cycle_graph(6), 0, 1).yes);

  auto pinned = hamiltonian_path_oracle(path_graph(6), 5, 0);
  REQUIRE(pinned.yes);
  REQUIRE(pinned.path->verts == std::vector<int>{5, 4, 3, 2, 1, 0});

  auto one = hamiltonian_path_oracle(Graph(1));
  REQUIRE(one.yes);
  REQUIRE(one.path->verts == std::vector<int>{0});

  REQUIRE_THROWS_AS(hamiltonian_path_oracle(complete_graph(4), 2, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(hamiltonian_path_oracle(complete_graph(4), 0, 9), std::invalid_argument);
}

TEST_CASE("path oracle agrees with permutation enumeration") {
  for (int n = 3; n <= 7; ++n)
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      Graph g = sample_graph(n, seed * 733 + n, 50);
      std::vector<std::pair<std::optional<int>, std::optional<int>>> pins = {
          {std::nullopt, std::nullopt}, {0, std::nullopt}, {std::nullopt, n - 1}, {0, n - 1}};
      for (auto [u, v] : pins) {
        auto ans = hamiltonian_path_oracle(g, u, v);
        REQUIRE(ans.yes == permutation_has_path(g, u, v));
        if (ans.yes) {
          REQUIRE(validate_path(g, *ans.path));
          REQUIRE(ans.path->size() == n);
          if (u) REQUIRE(ans.path->verts.front() == *u);
          if (v) REQUIRE(ans.path->verts.back() == *v);
        }
      }
    }
}

TEST_CASE("path oracle cross-method agreement") {
  for (int n = 3; n <= 11; ++n)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Graph g = sample_graph(n, seed * 577 + n, 40);
      auto dp = hamiltonian_path_oracle(g, {}, {}, OracleMethod::DP);
      auto bt = hamiltonian_path_oracle(g, {}, {}, OracleMethod::BACKTRACK);
      REQUIRE(dp.yes == bt.yes);
      auto dp0 = hamiltonian_path_oracle(g, 0, {}, OracleMethod::DP);
      auto bt0 = hamiltonian_path_oracle(g, 0, {}, OracleMethod::BACKTRACK);
      REQUIRE(dp0.yes == bt0.yes);
    }
}

TEST_CASE("minimum path cover oracle") {
  REQUIRE(min_path_cover_oracle(complete_graph(5)).size == 1);
  REQUIRE(min_path_cover_oracle(Graph(4)).size == 4);
  REQUIRE(min_path_cover_oracle(disjoint_union({complete_graph(3), complete_graph(3)})).size == 2);
  REQUIRE(min_path_cover_oracle(complete_bipartite_graph(1, 3)).size == 2);
  REQUIRE(min_path_cover_oracle(complete_bipartite_graph(2, 5)).size == 3);

  for (int n = 2; n <= 8; ++n)
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      Graph g = sample_graph(n, seed * 37 + n, 40);
      auto ans = min_path_cover_oracle(g);
      REQUIRE(ans.size == permutation_min_cover(g));
      REQUIRE(validate_path_cover(g, ans.cover));
      REQUIRE(ans.cover.size() == ans.size);
    }

  REQUIRE_THROWS_AS(min_path_cover_oracle(Graph(15)), std::invalid_argument);
}

TEST_CASE("validators reject corrupted witnesses") {
  Graph c5 = cycle_graph(5);
  REQUIRE(validate_cycle(c5, Cycle{{0, 1, 2, 3, 4}}));
  REQUIRE(is_hamiltonian_cycle(c5, Cycle{{0, 1, 2, 3, 4}}));
  std::string why;
  REQUIRE(!is_hamiltonian_cycle(c5, Cycle{{0, 1, 2, 3}}, &why));  // skips vertex 4
  REQUIRE(!validate_cycle(c5, Cycle{{0, 1, 3, 2, 4}}, &why));     // 1-3 not an edge
  REQUIRE(!validate_cycle(c5, Cycle{{0, 1, 2, 1, 4}}, &why));     // repeats

  PathCover overlap;
  overlap.paths.push_back(Path{{0, 1, 2}});
  overlap.paths.push_back(Path{{2, 3, 4}});
  REQUIRE(!validate_path_cover(c5, overlap, &why));
  REQUIRE(why.find("two paths") != std::string::npos);

  PathCover good;
  good.paths.push_back(Path{{0, 1, 2}});
  good.paths.push_back(Path{{3, 4}});
  REQUIRE(validate_path_cover(c5, good));

  PathCover missing;
  missing.paths.push_back(Path{{0, 1, 2}});
  REQUIRE(!validate_path_cover(c5, missing, &why));
}
