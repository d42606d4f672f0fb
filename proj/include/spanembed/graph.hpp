#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spanembed {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 0..n-1. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  /// Builds from an edge list. Each pair is stored once with u < v.
  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range ends.
  Graph(std::size_t n, std::vector<Edge> edges) : adj_(n) {
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n) throw std::invalid_argument("Graph: endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("Graph: self-loop at " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
      throw std::invalid_argument("Graph: duplicate edge " + std::to_string(dup->u) + " " +
                                  std::to_string(dup->v));
    }
    for (const auto& e : edges) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
    edges_ = std::move(edges);
  }

  std::size_t n() const { return adj_.size(); }
  std::size_t m() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= n() || v >= n()) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), other);
  }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& list : adj_) best = std::max(best, list.size());
    return best;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
};

/// Graph with one color in [1..c] per edge.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  /// `colors[i]` belongs to `base.edges()[i]`.
  ColoredGraph(Graph base, std::uint32_t color_count, std::vector<std::uint32_t> colors)
      : base_(std::move(base)), color_count_(color_count), colors_(std::move(colors)) {
    if (color_count_ == 0) throw std::invalid_argument("ColoredGraph: color count must be positive");
    if (colors_.size() != base_.m()) throw std::invalid_argument("ColoredGraph: one color per edge required");
    for (auto c : colors_) {
      if (c < 1 || c > color_count_) throw std::invalid_argument("ColoredGraph: color out of range");
    }
  }

  const Graph& base() const { return base_; }
  std::uint32_t color_count() const { return color_count_; }
  std::span<const std::uint32_t> colors() const { return colors_; }

  /// Color of {u,v}, or 0 when the edge is absent.
  std::uint32_t color(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    auto edges = base_.edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
    if (it == edges.end() || it->u != u || it->v != v) return 0;
    return colors_[static_cast<std::size_t>(it - edges.begin())];
  }

 private:
  Graph base_;
  std::uint32_t color_count_ = 1;
  std::vector<std::uint32_t> colors_;
};

/// Subgraph induced by `keep` (mask over vertices), vertex ids preserved.
inline Graph induced_subgraph(const Graph& g, const std::vector<char>& keep) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (keep[e.u] && keep[e.v]) edges.push_back(e);
  }
  return Graph(g.n(), std::move(edges));
}

/// Radius-bounded BFS with a reusable visit stamp, for repeated ball queries.
class BallQuery {
 public:
  explicit BallQuery(const Graph& g) : g_(&g), stamp_(g.n(), 0) {}

  /// All vertices within distance <= radius of `source` (including it).
  std::vector<Vertex> operator()(Vertex source, std::size_t radius) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    std::vector<Vertex> out{source};
    std::vector<std::size_t> depth{0};
    stamp_[source] = epoch_;
    for (std::size_t head = 0; head < out.size(); ++head) {
      if (depth[head] == radius) continue;
      for (Vertex w : g_->neighbors(out[head])) {
        if (stamp_[w] == epoch_) continue;
        stamp_[w] = epoch_;
        out.push_back(w);
        depth.push_back(depth[head] + 1);
      }
    }
    return out;
  }

 private:
  const Graph* g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

inline std::vector<Vertex> ball(const Graph& g, Vertex source, std::size_t radius) {
  return BallQuery(g)(source, radius);
}

/// BFS distances from `source`; unreachable vertices get SIZE_MAX.
inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::size_t> dist(g.n(), std::numeric_limits<std::size_t>::max());
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] != std::numeric_limits<std::size_t>::max()) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace spanembed
