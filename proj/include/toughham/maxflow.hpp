#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "graph.hpp"

namespace toughham {

// Dinic max-flow on a small directed network. Capacities are ints; the
// graphs here have at most a few hundred nodes, so no scaling tricks.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

  int add_edge(int u, int v, int cap) {
    int id = static_cast<int>(to_.size());
    to_.push_back(v);
    cap_.push_back(cap);
    next_.push_back(head_[static_cast<std::size_t>(u)]);
    head_[static_cast<std::size_t>(u)] = id;
    to_.push_back(u);
    cap_.push_back(0);
    next_.push_back(head_[static_cast<std::size_t>(v)]);
    head_[static_cast<std::size_t>(v)] = id + 1;
    return id;
  }

  // Max flow from s to t, stopping early once `limit` is reached.
  int max_flow(int s, int t, int limit = std::numeric_limits<int>::max()) {
    int total = 0;
    while (total < limit && bfs(s, t)) {
      iter_ = head_;
      while (total < limit) {
        int pushed = dfs(s, t, limit - total);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  int flow_on(int edge_id) const { return cap_[static_cast<std::size_t>(edge_id ^ 1)]; }
  int residual(int edge_id) const { return cap_[static_cast<std::size_t>(edge_id)]; }

  // Nodes reachable from s in the residual network (source side of the
  // minimal min cut).
  std::vector<bool> residual_reachable(int s) const {
    std::vector<bool> seen(head_.size(), false);
    std::queue<int> q;
    q.push(s);
    seen[static_cast<std::size_t>(s)] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
        int v = to_[static_cast<std::size_t>(e)];
        if (cap_[static_cast<std::size_t>(e)] > 0 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          q.push(v);
        }
      }
    }
    return seen;
  }

  // Nodes that can reach t in the residual network. Complement = sink side
  // of the maximal min cut.
  std::vector<bool> residual_coreachable(int t) const {
    std::vector<bool> seen(head_.size(), false);
    std::queue<int> q;
    q.push(t);
    seen[static_cast<std::size_t>(t)] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      // edge e: x -> u with residual > 0 means x reaches t through u
      for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
        int x = to_[static_cast<std::size_t>(e)];
        // reverse edge e^1 is x -> u; its residual is cap_[e^1]
        if (cap_[static_cast<std::size_t>(e ^ 1)] > 0 && !seen[static_cast<std::size_t>(x)]) {
          seen[static_cast<std::size_t>(x)] = true;
          q.push(x);
        }
      }
    }
    return seen;
  }

 private:
  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    q.push(s);
    level_[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
        int v = to_[static_cast<std::size_t>(e)];
        if (cap_[static_cast<std::size_t>(e)] > 0 && level_[static_cast<std::size_t>(v)] < 0) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  int dfs(int u, int t, int budget) {
    if (u == t) return budget;
    for (int& e = iter_[static_cast<std::size_t>(u)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
      int v = to_[static_cast<std::size_t>(e)];
      if (cap_[static_cast<std::size_t>(e)] > 0 &&
          level_[static_cast<std::size_t>(v)] == level_[static_cast<std::size_t>(u)] + 1) {
        int pushed = dfs(v, t, std::min(budget, cap_[static_cast<std::size_t>(e)]));
        if (pushed > 0) {
          cap_[static_cast<std::size_t>(e)] -= pushed;
          cap_[static_cast<std::size_t>(e ^ 1)] += pushed;
          return pushed;
        }
      }
    }
    return 0;
  }

  std::vector<int> head_, next_, to_, cap_, level_, iter_;
};

}  // namespace toughham
