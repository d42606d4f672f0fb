#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace spanembed {

/// Dinic max-flow on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

  void add_edge(std::size_t from, std::size_t to, std::int64_t cap, std::int64_t rev_cap = 0) {
    arcs_.push_back({static_cast<int>(to), head_[from], cap});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({static_cast<int>(from), head_[to], rev_cap});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  std::int64_t run(std::size_t s, std::size_t t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::copy(head_.begin(), head_.end(), iter_.begin());
      while (std::int64_t pushed = dfs(static_cast<int>(s), static_cast<int>(t),
                                       std::numeric_limits<std::int64_t>::max())) {
        flow += pushed;
      }
    }
    return flow;
  }

  /// Nodes reachable from s in the residual graph after run().
  std::vector<char> source_side(std::size_t s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{static_cast<int>(s)};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int next;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{static_cast<int>(s)};
    level_[s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int v = queue[h];
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          queue.push_back(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int v, int t, std::int64_t limit) {
    if (v == t) return limit;
    for (int& a = iter_[v]; a != -1; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
      if (std::int64_t got = dfs(arc.to, t, std::min(limit, arc.cap))) {
        arc.cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace spanembed
