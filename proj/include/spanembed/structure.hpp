#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spanembed/expected.hpp"
#include "spanembed/graph.hpp"
#include "spanembed/maxflow.hpp"
#include "spanembed/rational.hpp"

namespace spanembed {

// ---------------------------------------------------------------------------
// Maximum density d(G) = max over nonempty subgraphs of 2|E|/|V|.
// ---------------------------------------------------------------------------

namespace detail {

/// Vertex set maximizing b|E(S)| - a|S| when that maximum is positive,
/// otherwise empty. Goldberg's cut network scaled to integers.
inline std::vector<Vertex> denser_than(const Graph& g, std::int64_t a, std::int64_t b) {
  const std::size_t n = g.n();
  const auto m = static_cast<std::int64_t>(g.m());
  const std::size_t s = n, t = n + 1;
  MaxFlow flow(n + 2);
  for (Vertex v = 0; v < n; ++v) {
    flow.add_edge(s, v, b * m);
    flow.add_edge(v, t, b * m + 2 * a - b * static_cast<std::int64_t>(g.degree(v)));
  }
  for (const auto& e : g.edges()) flow.add_edge(e.u, e.v, b, b);
  flow.run(s, t);
  auto side = flow.source_side(s);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (side[v]) out.push_back(v);
  }
  return out;
}

inline std::size_t edges_inside(const Graph& g, const std::vector<Vertex>& set) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : set) in[v] = 1;
  std::size_t count = 0;
  for (const auto& e : g.edges()) count += (in[e.u] && in[e.v]);
  return count;
}

}  // namespace detail

struct DensestSubgraph {
  Rational density;             // 2|E(S)|/|S|
  std::vector<Vertex> vertices;  // a maximizer S
};

/// Exact densest subgraph by Dinkelbach iteration over min cuts: each round
/// either certifies the current ratio optimal or strictly improves it.
inline DensestSubgraph densest_subgraph(const Graph& g) {
  if (g.n() == 0) throw std::invalid_argument("densest_subgraph: empty vertex set");
  std::vector<Vertex> best(g.n());
  for (Vertex v = 0; v < g.n(); ++v) best[v] = v;
  std::int64_t edges = static_cast<std::int64_t>(g.m());
  std::int64_t verts = static_cast<std::int64_t>(g.n());
  if (edges == 0) return {Rational(0), {0}};
  for (;;) {
    Rational ratio(edges, verts);
    auto better = detail::denser_than(g, ratio.num(), ratio.den());
    if (better.empty()) break;
    auto e = static_cast<std::int64_t>(detail::edges_inside(g, better));
    auto v = static_cast<std::int64_t>(better.size());
    if (Rational(e, v) <= ratio) break;
    edges = e;
    verts = v;
    best = std::move(better);
  }
  return {Rational(2 * edges, verts), std::move(best)};
}

inline Rational max_density(const Graph& g) { return densest_subgraph(g).density; }

// ---------------------------------------------------------------------------
// Girth.
// ---------------------------------------------------------------------------

/// A shortest cycle as a vertex sequence, or nullopt for forests.
inline std::optional<std::vector<Vertex>> shortest_cycle(const Graph& g) {
  const std::size_t n = g.n();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::size_t best = kUnset;
  std::vector<Vertex> best_cycle;
  std::vector<std::size_t> dist(n, kUnset);
  std::vector<Vertex> parent(n, kNoVertex);
  for (Vertex root = 0; root < n; ++root) {
    std::vector<Vertex> queue{root};
    dist[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      if (best != kUnset && 2 * dist[u] + 1 >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (w == parent[u]) continue;
        if (dist[w] == kUnset) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
          continue;
        }
        std::size_t len = dist[u] + dist[w] + 1;
        if (len >= best) continue;
        std::vector<Vertex> left{u}, right{w};
        while (parent[left.back()] != kNoVertex) left.push_back(parent[left.back()]);
        while (parent[right.back()] != kNoVertex) right.push_back(parent[right.back()]);
        while (left.size() > 1 && right.size() > 1 &&
               left[left.size() - 2] == right[right.size() - 2]) {
          left.pop_back();
          right.pop_back();
        }
        right.pop_back();  // shared meeting vertex appears once
        best_cycle = left;
        best_cycle.insert(best_cycle.end(), right.rbegin(), right.rend());
        best = best_cycle.size();
      }
    }
    for (Vertex v : queue) {
      dist[v] = kUnset;
      parent[v] = kNoVertex;
    }
  }
  if (best == kUnset) return std::nullopt;
  return best_cycle;
}

/// Length of the shortest cycle; nullopt means infinite girth.
inline std::optional<std::size_t> girth(const Graph& g) {
  auto cycle = shortest_cycle(g);
  if (!cycle) return std::nullopt;
  return cycle->size();
}

// ---------------------------------------------------------------------------
// Degeneracy.
// ---------------------------------------------------------------------------

struct NotDDegenerate {
  std::vector<Vertex> witness;  // induced subgraph with minimum degree > d
};

/// Ordering with at most d earlier neighbors per vertex, or the core that blocks it.
inline Expected<std::vector<Vertex>, NotDDegenerate> degeneracy_order(const Graph& h, std::size_t d) {
  const std::size_t n = h.n();
  std::vector<std::size_t> deg(n);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = h.degree(v);
    queue.insert({deg[v], v});
  }
  std::vector<char> removed(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!queue.empty()) {
    auto [dv, v] = *queue.begin();
    if (dv > d) {
      std::vector<Vertex> witness;
      for (const auto& entry : queue) witness.push_back(entry.second);
      std::sort(witness.begin(), witness.end());
      return unexpected(NotDDegenerate{std::move(witness)});
    }
    queue.erase(queue.begin());
    removed[v] = 1;
    order.push_back(v);
    for (Vertex w : h.neighbors(v)) {
      if (removed[w]) continue;
      queue.erase({deg[w], w});
      --deg[w];
      queue.insert({deg[w], w});
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

// ---------------------------------------------------------------------------
// k-independent sets.
// ---------------------------------------------------------------------------

struct DegreeCapViolated : std::invalid_argument {
  Vertex vertex;
  DegreeCapViolated(Vertex v, std::size_t degree, std::size_t cap)
      : std::invalid_argument("vertex " + std::to_string(v) + " has degree " + std::to_string(degree) +
                              " > cap " + std::to_string(cap)),
        vertex(v) {}
};

struct PreconditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Degrees inside the subgraph induced by `alive`.
inline std::vector<std::size_t> degrees_within(const Graph& g, const std::vector<char>& alive) {
  std::vector<std::size_t> deg(g.n(), 0);
  for (const auto& e : g.edges()) {
    if (alive[e.u] && alive[e.v]) {
      ++deg[e.u];
      ++deg[e.v];
    }
  }
  return deg;
}

/// D_{<=d}(G).
inline std::vector<Vertex> low_degree_vertices(const Graph& g, std::size_t d) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.degree(v) <= d) out.push_back(v);
  }
  return out;
}

/// Greedy k-independent subset of S: take the lowest remaining vertex, drop
/// its k-ball from the candidates, repeat. Every S-vertex must have degree <= d.
inline std::vector<Vertex> k_independent_in_subset(const Graph& g, std::vector<Vertex> subset, std::size_t k,
                                                   std::size_t d) {
  for (Vertex v : subset) {
    if (g.degree(v) > d) throw DegreeCapViolated(v, g.degree(v), d);
  }
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<char> candidate(g.n(), 0);
  for (Vertex v : subset) candidate[v] = 1;
  BallQuery balls(g);
  std::vector<Vertex> chosen;
  for (Vertex v : subset) {
    if (!candidate[v]) continue;
    chosen.push_back(v);
    for (Vertex x : balls(v, k)) candidate[x] = 0;
  }
  return chosen;
}

/// k-independent subset of D_{<=d}(G); requires d*n >= 2|E(G)|.
inline std::vector<Vertex> k_independent_low_degree(const Graph& g, std::size_t d, std::size_t k) {
  if (d * g.n() < 2 * g.m()) {
    throw PreconditionViolated("k_independent_low_degree: d*n = " + std::to_string(d * g.n()) +
                               " < 2|E| = " + std::to_string(2 * g.m()));
  }
  auto low = low_degree_vertices(g, d);
  if (low.size() * (d + 1) < g.n()) {
    throw std::logic_error("k_independent_low_degree: |D_<=d| < n/(d+1) despite d*n >= 2|E|");
  }
  return k_independent_in_subset(g, std::move(low), k, d);
}

}  // namespace spanembed
