#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanembed/graph.hpp"
#include "spanembed/random.hpp"

namespace spanembed {

struct InfeasibleParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class TargetFamily { SpanningTree, BoundedDensity, Girth7Subdivided };

inline const char* to_string(TargetFamily f) {
  switch (f) {
    case TargetFamily::SpanningTree: return "spanning_tree";
    case TargetFamily::BoundedDensity: return "bounded_density";
    case TargetFamily::Girth7Subdivided: return "girth7_subdivided";
  }
  return "?";
}

inline std::optional<TargetFamily> parse_family(const std::string& s) {
  if (s == "spanning_tree") return TargetFamily::SpanningTree;
  if (s == "bounded_density") return TargetFamily::BoundedDensity;
  if (s == "girth7_subdivided") return TargetFamily::Girth7Subdivided;
  return std::nullopt;
}

namespace detail {

/// Random forest on `n` vertices: vertices arrive in random order and each
/// attaches to a uniformly random earlier vertex of degree < cap that is not
/// already joined to it in `taken`. Arrivals with no such vertex start a new
/// component. Appends edges to `out` and marks them in `taken`.
inline void grow_forest(std::size_t n, std::size_t cap, RandomSource& rng, std::vector<std::vector<Vertex>>& taken,
                        std::vector<Edge>& out) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng.engine());
  std::vector<std::size_t> deg(n, 0);
  std::vector<Vertex> open;  // arrived vertices with deg < cap
  std::vector<Vertex> candidates;
  for (Vertex v : order) {
    candidates.clear();
    for (Vertex u : open) {
      if (std::find(taken[u].begin(), taken[u].end(), v) == taken[u].end()) candidates.push_back(u);
    }
    if (!candidates.empty()) {
      Vertex u = candidates[rng.uniform_int<std::size_t>(0, candidates.size() - 1)];
      out.push_back({std::min(u, v), std::max(u, v)});
      taken[u].push_back(v);
      taken[v].push_back(u);
      ++deg[v];
      if (++deg[u] >= cap) open.erase(std::find(open.begin(), open.end(), u));
    }
    if (deg[v] < cap) open.push_back(v);
  }
}

}  // namespace detail

/// Random spanning tree with maximum degree at most Δ.
inline Graph spanning_tree(std::size_t n, std::size_t max_deg, RandomSource& rng) {
  if (n == 0) throw InfeasibleParameters("spanning_tree: n must be positive");
  if (max_deg < 2 && n > 2) throw InfeasibleParameters("spanning_tree: need Δ >= 2 for n > 2");
  std::vector<std::vector<Vertex>> taken(n);
  std::vector<Edge> edges;
  detail::grow_forest(n, std::max<std::size_t>(max_deg, 1), rng, taken, edges);
  return Graph(n, std::move(edges));
}

/// Union of k = max(1, ⌊d/2⌋) edge-disjoint random forests, each with degree
/// cap ⌊Δ/k⌋. Any vertex set S spans at most k(|S| - 1) edges, so the maximum
/// density is below 2k <= d.
inline Graph bounded_density(std::size_t n, std::size_t max_deg, std::size_t d, RandomSource& rng) {
  if (n == 0) throw InfeasibleParameters("bounded_density: n must be positive");
  if (d < 2) throw InfeasibleParameters("bounded_density: need d >= 2");
  const std::size_t forests = std::max<std::size_t>(1, d / 2);
  const std::size_t cap = max_deg / forests;
  if (cap < 1) throw InfeasibleParameters("bounded_density: Δ too small for " + std::to_string(forests) + " forests");
  std::vector<std::vector<Vertex>> taken(n);
  std::vector<Edge> edges;
  for (std::size_t f = 0; f < forests; ++f) {
    RandomSource stream = rng.derive("forest" + std::to_string(f));
    detail::grow_forest(n, cap, stream, taken, edges);
  }
  return Graph(n, std::move(edges));
}

/// Replaces every edge by a path of length 3. Base vertices keep their ids;
/// edge i of the base gets the new vertices n + 2i and n + 2i + 1.
inline Graph subdivide_twice(const Graph& base) {
  const auto n = static_cast<Vertex>(base.n());
  std::vector<Edge> edges;
  edges.reserve(3 * base.m());
  Vertex next = n;
  for (const auto& e : base.edges()) {
    Vertex a = next++, b = next++;
    edges.push_back({e.u, a});
    edges.push_back({a, b});
    edges.push_back({std::min(b, e.v), std::max(b, e.v)});
  }
  return Graph(next, std::move(edges));
}

/// Pads with isolated vertices up to `n`.
inline Graph pad_to(const Graph& g, std::size_t n) {
  if (g.n() > n) throw InfeasibleParameters("pad_to: graph already has more than n vertices");
  return Graph(n, std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

/// Double subdivision of a bounded-degree base, padded to n vertices. For d = 2
/// the base is a spanning tree plus one chord (density of the result <= 2);
/// otherwise it is the union of two forests with degree cap ⌊Δ/2⌋ (density < 12/5).
inline Graph girth7_subdivided(std::size_t n, std::size_t max_deg, std::size_t d, RandomSource& rng) {
  if (d < 2) throw InfeasibleParameters("girth7_subdivided: need d >= 2");
  if (max_deg < 2) throw InfeasibleParameters("girth7_subdivided: need Δ >= 2");
  Graph base(0, {});
  if (d == 2) {
    const std::size_t b = n / 3;
    if (b < 1) throw InfeasibleParameters("girth7_subdivided: n too small");
    Graph tree = spanning_tree(b, max_deg, rng);
    std::vector<Edge> edges(tree.edges().begin(), tree.edges().end());
    // one chord between two non-adjacent vertices of degree < Δ
    std::vector<Vertex> low;
    for (Vertex v = 0; v < b; ++v) {
      if (tree.degree(v) < max_deg) low.push_back(v);
    }
    std::shuffle(low.begin(), low.end(), rng.engine());
    bool added = false;
    for (std::size_t i = 0; i < low.size() && !added; ++i) {
      for (std::size_t j = i + 1; j < low.size() && !added; ++j) {
        if (!tree.has_edge(low[i], low[j])) {
          edges.push_back({std::min(low[i], low[j]), std::max(low[i], low[j])});
          added = true;
        }
      }
    }
    base = Graph(b, std::move(edges));
  } else {
    const std::size_t b = n / 5;
    if (b < 1) throw InfeasibleParameters("girth7_subdivided: n too small");
    const std::size_t cap = std::max<std::size_t>(max_deg / 2, 1);
    std::vector<std::vector<Vertex>> taken(b);
    std::vector<Edge> edges;
    RandomSource first = rng.derive("forest0");
    RandomSource second = rng.derive("forest1");
    detail::grow_forest(b, cap, first, taken, edges);
    detail::grow_forest(b, cap, second, taken, edges);
    base = Graph(b, std::move(edges));
  }
  return pad_to(subdivide_twice(base), n);
}

inline Graph generate_target(TargetFamily family, std::size_t n, std::size_t max_deg, std::size_t d,
                             RandomSource& rng) {
  switch (family) {
    case TargetFamily::SpanningTree: return spanning_tree(n, max_deg, rng);
    case TargetFamily::BoundedDensity: return bounded_density(n, max_deg, d, rng);
    case TargetFamily::Girth7Subdivided: return girth7_subdivided(n, max_deg, d, rng);
  }
  throw InfeasibleParameters("unknown target family");
}

}  // namespace spanembed
