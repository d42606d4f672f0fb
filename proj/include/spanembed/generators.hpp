#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spanembed/graph.hpp"
#include "spanembed/random.hpp"

namespace spanembed {

/// G(n,p): every pair {u,v} independently with probability p.
inline Graph gnp_generate(std::size_t n, double p, RandomSource& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp_generate: p outside [0,1]");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

/// Per-copy density q with 1-p = (1-q)^2, so G1 ∪ G2 ~ G(n,p).
inline double split_density(double p) { return 1.0 - std::sqrt(1.0 - p); }

struct SplitHosts {
  Graph g1;
  Graph g2;
  double q = 0.0;
};

/// Two independent G(n,q) samples whose union is distributed as G(n,p).
inline SplitHosts gnp_split_generate(std::size_t n, double p, const RandomSource& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp_split_generate: p outside [0,1]");
  double q = split_density(p);
  auto r1 = rng.derive("G1");
  auto r2 = rng.derive("G2");
  return {gnp_generate(n, q, r1), gnp_generate(n, q, r2), q};
}

inline Graph graph_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  for (const auto& e : b.edges()) {
    if (!a.has_edge(e.u, e.v)) edges.push_back(e);
  }
  return Graph(std::max(a.n(), b.n()), std::move(edges));
}

/// Colors every edge of `g` i.i.d. uniformly on [1..c].
inline ColoredGraph color_uniformly(Graph g, std::uint32_t c, RandomSource& rng) {
  if (c < 1) throw std::invalid_argument("color_uniformly: c must be >= 1");
  std::vector<std::uint32_t> colors(g.m());
  for (auto& col : colors) col = rng.uniform_int<std::uint32_t>(1, c);
  return ColoredGraph(std::move(g), c, std::move(colors));
}

/// G_c(n,p).
inline ColoredGraph gcnp_generate(std::size_t n, double p, std::uint32_t c, RandomSource& rng) {
  if (c < 1) throw std::invalid_argument("gcnp_generate: c must be >= 1");
  auto edge_rng = rng.derive("edges");
  auto color_rng = rng.derive("colors");
  return color_uniformly(gnp_generate(n, p, edge_rng), c, color_rng);
}

}  // namespace spanembed
