#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

#include "graph.hpp"

namespace toughham {

// graph6: n encoded as one byte n+63 for n <= 62, or '~' + 3 bytes
// (18 bits, big-endian 6-bit groups) for 63 <= n <= 258047. Then the
// upper triangle in column order x(0,1), x(0,2), x(1,2), x(0,3), ...
// packed into 6-bit groups, MSB first, zero-padded, each group + 63.
inline std::string emit_graph6(const Graph& g) {
  int n = g.n();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
    out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
    out.push_back(static_cast<char>(63 + (n & 63)));
  } else {
    throw std::invalid_argument("graph6: n too large");
  }
  int acc = 0, bits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - bits))));
  return out;
}

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at byte " + std::to_string(pos) + ")"), position(pos) {}
};

inline Graph parse_graph6(const std::string& s) {
  std::size_t pos = 0;
  auto need = [&](std::size_t k) {
    if (pos + k > s.size()) throw ParseError("graph6: truncated input", s.size());
  };
  auto byte = [&]() {
    need(1);
    unsigned char c = static_cast<unsigned char>(s[pos]);
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range 63..126", pos);
    ++pos;
    return static_cast<int>(c - 63);
  };
  need(1);
  int n;
  if (s[0] == '~') {
    ++pos;
    need(3);
    int a = byte(), b = byte(), c = byte();
    n = (a << 12) | (b << 6) | c;
    if (n < 63) throw ParseError("graph6: long form used for small n", 0);
  } else {
    n = byte();
  }
  Graph base(n);
  std::vector<std::pair<int, int>> es;
  int acc = 0, bits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (bits == 0) {
        acc = byte();
        bits = 6;
      }
      if ((acc >> (bits - 1)) & 1) es.emplace_back(i, j);
      --bits;
    }
  }
  if (bits > 0 && (acc & ((1 << bits) - 1)) != 0)
    throw ParseError("graph6: nonzero padding bits", pos - 1);
  if (pos != s.size()) throw ParseError("graph6: trailing bytes", pos);
  return Graph(n, es);
}

// Edge list: first non-comment line "n m", then m lines "u v".
// '#' starts a comment; blank lines are skipped.
inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  int n = -1;
  long long m = -1, seen = 0;
  std::vector<std::pair<int, int>> es;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m)) {
        std::string tok;
        std::istringstream probe(line);
        if (!(probe >> tok)) continue;  // blank or comment-only line
        throw ParseError("edge list: expected 'n m' header on line " + std::to_string(lineno), 0);
      }
      if (n < 0 || m < 0) throw ParseError("edge list: negative header values", 0);
      continue;
    }
    int u, v;
    if (!(ls >> u)) continue;
    if (!(ls >> v)) throw ParseError("edge list: lone endpoint on line " + std::to_string(lineno), 0);
    std::string extra;
    if (ls >> extra) throw ParseError("edge list: trailing tokens on line " + std::to_string(lineno), 0);
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError("edge list: endpoint out of range on line " + std::to_string(lineno), 0);
    if (u == v) throw ParseError("edge list: self loop on line " + std::to_string(lineno), 0);
    es.emplace_back(u, v);
    ++seen;
  }
  if (n < 0) throw ParseError("edge list: missing 'n m' header", 0);
  if (seen != m)
    throw ParseError("edge list: header announced " + std::to_string(m) + " edges, found " +
                         std::to_string(seen),
                     0);
  return Graph(n, es);
}

inline std::string emit_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << " " << g.m() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

// Sniffs the format: a first non-blank, non-comment line made of two
// integers is an edge list, a single token is graph6.
inline Graph parse_graph_auto(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (ls >> b) {
      bool numeric = true;
      for (char ch : a + b) numeric = numeric && std::isdigit(static_cast<unsigned char>(ch));
      if (!numeric) throw ParseError("unrecognized graph format", 0);
      return parse_edge_list(text);
    }
    return parse_graph6(a);
  }
  throw ParseError("empty graph input", 0);
}

}  // namespace toughham
