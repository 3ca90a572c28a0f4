#include <catch2/catch_amalgamated.hpp>

#include "toughham/families.hpp"
#include "toughham/io.hpp"

using namespace toughham;

namespace {

Graph sample_graph(int n, std::uint64_t seed) {
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
      if (next() % 100 < 40) es.emplace_back(u, v);
  return Graph(n, es);
}

bool same_graph(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  for (int u = 0; u < a.n(); ++u)
    for (int v = u + 1; v < a.n(); ++v)
      if (a.has_edge(u, v) != b.has_edge(u, v)) return false;
  return true;
}

}  // namespace

TEST_CASE("graph6 known encodings") {
  REQUIRE(emit_graph6(complete_graph(3)) == "Bw");
  REQUIRE(emit_graph6(Graph(1)) == "@");
  REQUIRE(emit_graph6(Graph(2)) == "A?");
  REQUIRE(emit_graph6(complete_graph(2)) == "A_");
  REQUIRE(emit_graph6(path_graph(4)) == "Ch");  // edges 01,12,23
  REQUIRE(emit_graph6(complete_graph(4)) == "C~");

  Graph k3 = parse_graph6("Bw");
  REQUIRE(k3.n() == 3);
  REQUIRE(k3.m() == 3);
}

TEST_CASE("graph6 roundtrip including long form") {
  for (int n : {1, 2, 5, 20, 62, 63, 64, 70}) {
    Graph g = sample_graph(n, 17 * static_cast<std::uint64_t>(n) + 5);
    std::string enc = emit_graph6(g);
    if (n >= 63) REQUIRE(enc[0] == '~');
    Graph back = parse_graph6(enc);
    REQUIRE(same_graph(g, back));
  }
  Graph pet = petersen_graph();
  REQUIRE(same_graph(pet, parse_graph6(emit_graph6(pet))));
}

TEST_CASE("graph6 parse errors carry positions") {
  try {
    parse_graph6("");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.position == 0);
  }
  // byte below 63 inside the body
  try {
    parse_graph6("B ");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.position == 1);
  }
  // truncated body for the declared size
  REQUIRE_THROWS_AS(parse_graph6("D"), ParseError);
  // trailing garbage after a complete graph
  REQUIRE_THROWS_AS(parse_graph6("BwBw"), ParseError);
  // nonzero padding bits
  REQUIRE_THROWS_AS(parse_graph6("B~"), ParseError);
}

TEST_CASE("edge list roundtrip and validation") {
  Graph g = sample_graph(9, 99);
  std::string text = emit_edge_list(g);
  Graph back = parse_edge_list(text);
  REQUIRE(same_graph(g, back));

  Graph p = parse_edge_list("# a path\n4 3\n0 1\n1 2\n\n2 3\n");
  REQUIRE(same_graph(p, path_graph(4)));

  REQUIRE_THROWS_AS(parse_edge_list("4 2\n0 1\n"), ParseError);        // missing edge
  REQUIRE_THROWS_AS(parse_edge_list("4 1\n0 1\n1 2\n"), ParseError);   // extra edge
  REQUIRE_THROWS_AS(parse_edge_list("4 1\n0 4\n"), ParseError);        // out of range
  REQUIRE_THROWS_AS(parse_edge_list("4 1\n2 2\n"), ParseError);        // self loop
  REQUIRE_THROWS_AS(parse_edge_list("nope\n"), ParseError);
}

TEST_CASE("format sniffing") {
  REQUIRE(same_graph(parse_graph_auto("Bw"), complete_graph(3)));
  REQUIRE(same_graph(parse_graph_auto("  \n# comment\nBw\n"), complete_graph(3)));
  REQUIRE(same_graph(parse_graph_auto("3 3\n0 1\n1 2\n0 2\n"), complete_graph(3)));
  REQUIRE_THROWS_AS(parse_graph_auto("hello world\n"), ParseError);
  REQUIRE_THROWS_AS(parse_graph_auto(""), ParseError);
}
