#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace spanembed {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// Left-to-right adjacency of a bipartite graph, by index.
using BipartiteAdjacency = std::vector<std::vector<std::size_t>>;

struct BipartiteMatching {
  std::vector<std::size_t> mate_left;
  std::vector<std::size_t> mate_right;
  std::size_t size = 0;
  /// Left set U with |N(U)| < |U|, present iff the matching misses a left vertex.
  std::optional<std::vector<std::size_t>> hall_witness;

  bool saturating() const { return size == mate_left.size(); }
};

namespace detail {

class HopcroftKarp {
 public:
  HopcroftKarp(const BipartiteAdjacency& adj, std::size_t right_count)
      : adj_(adj), mate_left_(adj.size(), kUnmatched), mate_right_(right_count, kUnmatched), dist_(adj.size()) {}

  BipartiteMatching run() {
    std::size_t size = 0;
    while (layer()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (mate_left_[u] == kUnmatched && augment(u)) ++size;
      }
    }
    BipartiteMatching out{std::move(mate_left_), std::move(mate_right_), size, std::nullopt};
    if (!out.saturating()) out.hall_witness = deficient_set(out);
    return out;
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool layer() {
    std::vector<std::size_t> queue;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (mate_left_[u] == kUnmatched) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      std::size_t u = queue[h];
      for (std::size_t r : adj_[u]) {
        std::size_t next = mate_right_[r];
        if (next == kUnmatched) {
          found = true;
        } else if (dist_[next] == kInf) {
          dist_[next] = dist_[u] + 1;
          queue.push_back(next);
        }
      }
    }
    return found;
  }

  bool augment(std::size_t u) {
    for (std::size_t r : adj_[u]) {
      std::size_t next = mate_right_[r];
      if (next == kUnmatched || (dist_[next] == dist_[u] + 1 && augment(next))) {
        mate_left_[u] = r;
        mate_right_[r] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  /// Left vertices reachable by alternating paths from unmatched left vertices.
  /// For a maximum matching their neighborhood is matched back into the set,
  /// so |N(Z)| = |Z| - #unmatched < |Z|.
  std::vector<std::size_t> deficient_set(const BipartiteMatching& m) const {
    std::vector<char> seen_left(adj_.size(), 0), seen_right(m.mate_right.size(), 0);
    std::vector<std::size_t> queue;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (m.mate_left[u] == kUnmatched) {
        seen_left[u] = 1;
        queue.push_back(u);
      }
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (std::size_t r : adj_[queue[h]]) {
        if (seen_right[r]) continue;
        seen_right[r] = 1;
        std::size_t back = m.mate_right[r];
        if (back != kUnmatched && !seen_left[back]) {
          seen_left[back] = 1;
          queue.push_back(back);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

  const BipartiteAdjacency& adj_;
  std::vector<std::size_t> mate_left_;
  std::vector<std::size_t> mate_right_;
  std::vector<std::size_t> dist_;
};

}  // namespace detail

/// Maximum bipartite matching (Hopcroft-Karp) with a Hall witness on deficiency.
inline BipartiteMatching hopcroft_karp(const BipartiteAdjacency& adj, std::size_t right_count) {
  return detail::HopcroftKarp(adj, right_count).run();
}

/// |N(U)| for a set of left indices.
inline std::size_t neighborhood_size(const BipartiteAdjacency& adj, std::size_t right_count,
                                     const std::vector<std::size_t>& left) {
  std::vector<char> hit(right_count, 0);
  std::size_t count = 0;
  for (std::size_t u : left) {
    for (std::size_t r : adj[u]) {
      if (!hit[r]) {
        hit[r] = 1;
        ++count;
      }
    }
  }
  return count;
}

}  // namespace spanembed
