#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spanembed/embed.hpp"
#include "spanembed/expected.hpp"
#include "spanembed/generators.hpp"
#include "spanembed/graph.hpp"
#include "spanembed/matching.hpp"
#include "spanembed/random.hpp"
#include "spanembed/rational.hpp"
#include "spanembed/structure.hpp"

namespace spanembed {

inline double log_squared(std::size_t n) {
  double l = std::log(static_cast<double>(n));
  return l * l;
}

/// ⌈ln² n⌉, the default out-degree of the second phase.
inline std::size_t default_out_degree(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(log_squared(n)));
}

/// Number of target vertices held back for the second phase: ⌈α n / (5 ln² n)⌉.
inline std::size_t tail_size(std::size_t n, double alpha) {
  if (n < 2) throw std::invalid_argument("tail_size: n must be >= 2");
  return static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) / (5.0 * log_squared(n))));
}

/// Color budget ⌈(1+α)|E(H)|⌉.
inline std::uint32_t rainbow_color_count(std::size_t edges, double alpha) {
  return static_cast<std::uint32_t>(std::ceil((1.0 + alpha) * static_cast<double>(edges) - 1e-9));
}

// ---------------------------------------------------------------------------
// Target split.
// ---------------------------------------------------------------------------

struct RainbowSplit {
  enum class TailKind { IsolatedVertices, TwoIndependentLowDegree };
  std::vector<Vertex> spine;  // degeneracy order of H - W
  std::vector<Vertex> tail;   // W
  TailKind tail_kind = TailKind::IsolatedVertices;
  Rational average_degree;        // 2|E(H)|/n
  std::size_t boundary_edges = 0;  // |E(W, V \ W)|
  bool few_final_edges = true;     // boundary < α|E(H)| / (2⌈ln² n⌉)
  std::size_t max_degree = 0;
  std::size_t back_degree_cap = 0;
  double alpha = 0.0;
};

struct SplitError {
  enum class Kind { NotInFamily, TailUnavailable, NotDegenerate };
  Kind kind;
  std::size_t required = 0;
  std::size_t achievable = 0;
  std::string detail;
};

inline const char* to_string(SplitError::Kind k) {
  switch (k) {
    case SplitError::Kind::NotInFamily: return "NotInFamily";
    case SplitError::Kind::TailUnavailable: return "TailUnavailable";
    case SplitError::Kind::NotDegenerate: return "NotDegenerate";
  }
  return "?";
}

/// Splits V(H) into an ordered spine and a tail W of ⌈αn/(5 ln² n)⌉ vertices:
/// isolated vertices when there are enough, otherwise a 2-independent set of
/// non-isolated vertices of degree at most the average degree.
inline Expected<RainbowSplit, SplitError> split_target(const Graph& h, std::size_t max_deg, std::size_t d,
                                                       double alpha) {
  using Kind = SplitError::Kind;
  if (!(alpha > 0.0)) throw std::invalid_argument("split_target: alpha must be positive");
  const std::size_t n = h.n();
  if (h.max_degree() > max_deg) {
    return unexpected(SplitError{Kind::NotInFamily, max_deg, h.max_degree(), "maximum degree exceeds cap"});
  }
  const std::size_t want = tail_size(n, alpha);
  if (want >= n) return unexpected(SplitError{Kind::TailUnavailable, want, n, "tail would swallow the target"});

  RainbowSplit split;
  split.average_degree = Rational(2 * static_cast<std::int64_t>(h.m()), static_cast<std::int64_t>(n));
  split.max_degree = max_deg;
  split.back_degree_cap = d;
  split.alpha = alpha;

  std::vector<Vertex> isolated;
  for (Vertex v = 0; v < n; ++v) {
    if (h.degree(v) == 0) isolated.push_back(v);
  }
  if (isolated.size() >= want) {
    split.tail.assign(isolated.begin(), isolated.begin() + static_cast<std::ptrdiff_t>(want));
    split.tail_kind = RainbowSplit::TailKind::IsolatedVertices;
  } else {
    std::vector<Vertex> eligible;
    std::size_t cap = 0;
    for (Vertex v = 0; v < n; ++v) {
      // 1 <= deg(v) <= 2|E|/n
      if (h.degree(v) >= 1 && h.degree(v) * n <= 2 * h.m()) {
        eligible.push_back(v);
        cap = std::max(cap, h.degree(v));
      }
    }
    auto pool = k_independent_in_subset(h, std::move(eligible), 2, std::max<std::size_t>(cap, 1));
    if (pool.size() < want) {
      return unexpected(SplitError{Kind::TailUnavailable, want, pool.size(),
                                   "2-independent low-degree pool has " + std::to_string(pool.size()) +
                                       " vertices, need " + std::to_string(want)});
    }
    split.tail.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
    split.tail_kind = RainbowSplit::TailKind::TwoIndependentLowDegree;
  }
  for (Vertex w : split.tail) split.boundary_edges += h.degree(w);
  split.few_final_edges = static_cast<double>(split.boundary_edges) <
                          alpha * static_cast<double>(h.m()) / (2.0 * static_cast<double>(default_out_degree(n)));

  std::vector<char> keep(n, 1);
  for (Vertex w : split.tail) keep[w] = 0;
  auto order = degeneracy_order(induced_subgraph(h, keep), d);
  if (!order) {
    return unexpected(SplitError{Kind::NotDegenerate, d, order.error().witness.size(),
                                 "H - W is not " + std::to_string(d) + "-degenerate"});
  }
  for (Vertex v : order.value()) {
    if (keep[v]) split.spine.push_back(v);
  }
  return split;
}

// ---------------------------------------------------------------------------
// Phase I: greedy rainbow embedding of the spine into G1.
// ---------------------------------------------------------------------------

/// Bookkeeping threaded through both phases.
struct RainbowState {
  std::vector<Vertex> map;                 // target -> host
  std::vector<std::uint32_t> edge_colors;  // per target edge (index into H.edges()), 0 = not yet embedded
  std::vector<char> color_available;       // index 1..c
  std::size_t available_color_count = 0;
  std::vector<char> vertex_available;  // V'
  std::size_t available_vertex_count = 0;
  std::vector<std::vector<Vertex>> pool_removed;  // per host v: vertices deleted from U_v
  std::unordered_set<std::uint64_t> exposed;      // host pairs revealed in G1
  std::size_t committed_colors = 0;               // distinct colors on embedded edges
  std::size_t retired_colors = 0;                 // colors removed in phase II steps
  std::size_t pool_size = 0;                      // s
  std::size_t min_available_colors = 0;

  bool pool_contains(Vertex v, Vertex x) const {
    const auto& r = pool_removed[v];
    return x != v && std::find(r.begin(), r.end(), x) == r.end();
  }
};

struct RainbowFailure {
  enum class Kind { PoolExhausted, NoCandidate, ProcessStalled, NoPerfectMatching, SizeMismatch };
  Kind kind;
  std::size_t step = 0;  // spine position (phase I) or tail index (phase II), 1-based
  Vertex vertex = kNoVertex;
  std::optional<HallWitness> witness;
  std::string detail;
};

inline const char* to_string(RainbowFailure::Kind k) {
  switch (k) {
    case RainbowFailure::Kind::PoolExhausted: return "PoolExhausted";
    case RainbowFailure::Kind::NoCandidate: return "NoCandidate";
    case RainbowFailure::Kind::ProcessStalled: return "ProcessStalled";
    case RainbowFailure::Kind::NoPerfectMatching: return "NoPerfectMatching";
    case RainbowFailure::Kind::SizeMismatch: return "SizeMismatch";
  }
  return "?";
}

namespace detail {

inline std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Index of edge {u,v} in h.edges().
inline std::size_t edge_index(const Graph& h, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  auto edges = h.edges();
  auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
  return static_cast<std::size_t>(it - edges.begin());
}

}  // namespace detail

/// Candidate pool size s = ⌈α n / (4Δ ln n)²⌉.
inline std::size_t phase1_pool_size(std::size_t n, std::size_t max_deg, double alpha) {
  double denom = 4.0 * static_cast<double>(max_deg) * std::log(static_cast<double>(n));
  return static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) / (denom * denom)));
}

/// Embeds the spine vertex by vertex into G1, exposing only the pairs between
/// the images of already-embedded neighbors and a small candidate pool.
/// `pool_size` replaces s for sensitivity runs.
inline Expected<RainbowState, RainbowFailure> phase1_embed(const Graph& h, const RainbowSplit& split,
                                                           const ColoredGraph& g1, std::uint32_t c,
                                                           [[maybe_unused]] RandomSource& rng,
                                                           std::optional<std::size_t> pool_size = std::nullopt) {
  using Kind = RainbowFailure::Kind;
  const Graph& host = g1.base();
  const std::size_t n = host.n();
  if (h.n() > n) throw std::invalid_argument("phase1_embed: target larger than host");

  RainbowState st;
  st.map.assign(h.n(), kNoVertex);
  st.edge_colors.assign(h.m(), 0);
  st.color_available.assign(static_cast<std::size_t>(c) + 1, 1);
  st.color_available[0] = 0;
  st.available_color_count = c;
  st.min_available_colors = c;
  st.vertex_available.assign(n, 1);
  st.available_vertex_count = n;
  st.pool_removed.assign(n, {});
  st.pool_size = pool_size.value_or(phase1_pool_size(n, split.max_degree, split.alpha));
  const std::size_t delta = split.max_degree;
  const std::size_t reserve = split.tail.size();

  for (std::size_t pos = 0; pos < split.spine.size(); ++pos) {
    Vertex w = split.spine[pos];
    std::vector<Vertex> images;
    std::vector<Vertex> sources;
    for (Vertex x : h.neighbors(w)) {
      if (st.map[x] != kNoVertex) {
        images.push_back(st.map[x]);
        sources.push_back(x);
      }
    }

    Vertex chosen = kNoVertex;
    std::vector<std::uint32_t> chosen_colors;
    if (images.empty()) {
      for (Vertex x = 0; x < n; ++x) {
        if (st.vertex_available[x]) {
          chosen = x;
          break;
        }
      }
      if (chosen == kNoVertex) return unexpected(RainbowFailure{Kind::PoolExhausted, pos + 1, w, std::nullopt, "V' empty"});
    } else {
      std::vector<Vertex> pool;
      for (Vertex x = 0; x < n; ++x) {
        if (!st.vertex_available[x]) continue;
        if (std::all_of(images.begin(), images.end(), [&](Vertex v) { return st.pool_contains(v, x); })) {
          pool.push_back(x);
        }
      }
      if (st.available_vertex_count >= reserve) {
        auto floor_size = static_cast<std::int64_t>(st.available_vertex_count) - static_cast<std::int64_t>(delta) -
                          static_cast<std::int64_t>(delta * delta * st.pool_size);
        if (static_cast<std::int64_t>(pool.size()) < floor_size) {
          throw std::logic_error("phase1_embed: candidate pool below |V'| - Δ - Δ² s");
        }
      }
      if (pool.empty()) {
        return unexpected(RainbowFailure{Kind::PoolExhausted, pos + 1, w, std::nullopt, "A_w empty"});
      }
      pool.resize(std::min(pool.size(), st.pool_size));

      for (Vertex x : pool) {
        for (Vertex v : images) {
          if (!st.exposed.insert(detail::pair_key(v, x)).second) {
            throw std::logic_error("phase1_embed: host pair exposed twice");
          }
        }
      }
      for (Vertex x : pool) {
        std::vector<std::uint32_t> cols;
        bool ok = true;
        for (Vertex v : images) {
          std::uint32_t col = g1.color(v, x);
          if (col == 0 || !st.color_available[col] || std::find(cols.begin(), cols.end(), col) != cols.end()) {
            ok = false;
            break;
          }
          cols.push_back(col);
        }
        if (ok) {
          chosen = x;
          chosen_colors = std::move(cols);
          break;
        }
      }
      for (Vertex v : images) {
        auto& removed = st.pool_removed[v];
        removed.insert(removed.end(), pool.begin(), pool.end());
      }
      if (chosen == kNoVertex) {
        return unexpected(RainbowFailure{Kind::NoCandidate, pos + 1, w, std::nullopt,
                                         "no valid candidate among " + std::to_string(pool.size())});
      }
    }

    st.map[w] = chosen;
    st.vertex_available[chosen] = 0;
    --st.available_vertex_count;
    for (std::size_t j = 0; j < sources.size(); ++j) {
      st.edge_colors[detail::edge_index(h, w, sources[j])] = chosen_colors[j];
      st.color_available[chosen_colors[j]] = 0;
      --st.available_color_count;
      ++st.committed_colors;
    }
    st.min_available_colors = std::min(st.min_available_colors, st.available_color_count);
    if (static_cast<std::size_t>(c) - st.available_color_count != st.committed_colors + st.retired_colors) {
      throw std::logic_error("phase1_embed: color ledger out of balance");
    }
  }
  return st;
}

// ---------------------------------------------------------------------------
// k-out sampling and phase II.
// ---------------------------------------------------------------------------

/// Bipartite ground graph F over tuples and free host vertices: (L, v) is a
/// ground edge iff no vertex of L is joined to v in G1.
struct KOutGround {
  std::vector<std::vector<Vertex>> left_sets;
  std::vector<Vertex> right;
  BipartiteAdjacency adj;
  std::size_t out_degree = 0;
};

inline KOutGround build_ground(const Graph& g1, std::vector<std::vector<Vertex>> left_sets, std::vector<Vertex> right,
                               std::size_t out_degree) {
  KOutGround f{std::move(left_sets), std::move(right), {}, out_degree};
  f.adj.resize(f.left_sets.size());
  for (std::size_t l = 0; l < f.left_sets.size(); ++l) {
    for (std::size_t r = 0; r < f.right.size(); ++r) {
      Vertex v = f.right[r];
      bool clear = std::none_of(f.left_sets[l].begin(), f.left_sets[l].end(),
                                [&](Vertex u) { return g1.has_edge(u, v); });
      if (clear) f.adj[l].push_back(r);
    }
  }
  return f;
}

struct DegreeDeficient : std::invalid_argument {
  std::size_t left;
  std::size_t degree;
  DegreeDeficient(std::size_t l, std::size_t deg, std::size_t k)
      : std::invalid_argument("left element " + std::to_string(l) + " has ground degree " + std::to_string(deg) +
                              " < k = " + std::to_string(k)),
        left(l),
        degree(deg) {}
};

/// Keeps a uniformly random k-subset of every left vertex's ground edges.
inline BipartiteAdjacency sample_k_out(const BipartiteAdjacency& ground, std::size_t k, RandomSource& rng) {
  BipartiteAdjacency out(ground.size());
  for (std::size_t l = 0; l < ground.size(); ++l) {
    if (ground[l].size() < k) throw DegreeDeficient(l, ground[l].size(), k);
    std::vector<std::size_t> edges = ground[l];
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = rng.uniform_int<std::size_t>(i, edges.size() - 1);
      std::swap(edges[i], edges[j]);
    }
    edges.resize(k);
    std::sort(edges.begin(), edges.end());
    out[l] = std::move(edges);
  }
  return out;
}

inline BipartiteAdjacency sample_k_out(const KOutGround& f, std::size_t k, RandomSource& rng) {
  return sample_k_out(f.adj, k, rng);
}

/// Extends a phase-I state over the tail using edges of G2 \ G1.
///
/// Each tail tuple L_i draws ground neighbors uniformly without replacement
/// until `out_degree` of them are joined to all of L_i in G2 with distinct
/// still-available colors; colors on accepted edges are then retired. A
/// perfect matching of the resulting out-graph places the tail.
inline Expected<RainbowState, RainbowFailure> phase2_extend(const Graph& h, const RainbowSplit& split,
                                                            RainbowState state, const ColoredGraph& g1,
                                                            const ColoredGraph& g2, std::size_t out_degree,
                                                            RandomSource& rng) {
  using Kind = RainbowFailure::Kind;
  const std::size_t n = g1.base().n();
  std::vector<Vertex> free_vertices;
  for (Vertex v = 0; v < n; ++v) {
    if (state.vertex_available[v]) free_vertices.push_back(v);
  }
  if (split.tail_kind == RainbowSplit::TailKind::IsolatedVertices) {
    if (free_vertices.size() < split.tail.size()) {
      return unexpected(RainbowFailure{Kind::SizeMismatch, 0, kNoVertex, std::nullopt, "fewer free vertices than tail"});
    }
    for (std::size_t j = 0; j < split.tail.size(); ++j) {
      state.map[split.tail[j]] = free_vertices[j];
      state.vertex_available[free_vertices[j]] = 0;
      --state.available_vertex_count;
    }
    return state;
  }
  if (h.n() == n && free_vertices.size() != split.tail.size()) {
    throw std::logic_error("phase2_extend: |L| != |V*|");
  }

  std::vector<std::vector<Vertex>> tuples;
  for (Vertex w : split.tail) {
    std::vector<Vertex> images;
    for (Vertex x : h.neighbors(w)) {
      if (state.map[x] == kNoVertex) throw std::logic_error("phase2_extend: tail neighbor not embedded");
      images.push_back(state.map[x]);
    }
    std::sort(images.begin(), images.end());
    tuples.push_back(std::move(images));
  }
  auto ground = build_ground(g1.base(), tuples, free_vertices, out_degree);
  const bool ledger_bound_applies = split.few_final_edges && out_degree == default_out_degree(h.n());
  const double color_floor = split.alpha * static_cast<double>(h.m()) / 2.0;

  BipartiteAdjacency out_graph(tuples.size());
  // colors of accepted edges, per tuple and accepted right index
  std::vector<std::vector<std::vector<std::uint32_t>>> accepted_colors(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const auto& tuple = tuples[i];
    std::vector<std::size_t> remaining = ground.adj[i];
    std::vector<std::uint32_t> retired;
    while (out_graph[i].size() < out_degree) {
      if (remaining.empty()) {
        return unexpected(RainbowFailure{Kind::ProcessStalled, i + 1, split.tail[i], std::nullopt,
                                         "ground neighbors exhausted after " + std::to_string(out_graph[i].size()) +
                                             " of " + std::to_string(out_degree) + " edges"});
      }
      std::size_t pick = rng.uniform_int<std::size_t>(0, remaining.size() - 1);
      std::size_t r = remaining[pick];
      remaining[pick] = remaining.back();
      remaining.pop_back();
      Vertex v = ground.right[r];
      std::vector<std::uint32_t> cols;
      bool ok = true;
      for (Vertex u : tuple) {
        std::uint32_t col = g2.color(u, v);
        if (col == 0 || !state.color_available[col] || std::find(cols.begin(), cols.end(), col) != cols.end()) {
          ok = false;
          break;
        }
        cols.push_back(col);
      }
      if (!ok) continue;
      out_graph[i].push_back(r);
      retired.insert(retired.end(), cols.begin(), cols.end());
      accepted_colors[i].push_back(std::move(cols));
    }
    for (std::uint32_t col : retired) {
      if (state.color_available[col]) {
        state.color_available[col] = 0;
        --state.available_color_count;
        ++state.retired_colors;
      }
    }
    state.min_available_colors = std::min(state.min_available_colors, state.available_color_count);
    if (static_cast<std::size_t>(g1.color_count()) - state.available_color_count !=
        state.committed_colors + state.retired_colors) {
      throw std::logic_error("phase2_extend: color ledger out of balance");
    }
    if (ledger_bound_applies && static_cast<double>(state.available_color_count) < color_floor) {
      throw std::logic_error("phase2_extend: available colors fell below alpha |E(H)| / 2");
    }
  }

  auto matching = hopcroft_karp(out_graph, free_vertices.size());
  if (!matching.saturating()) {
    HallWitness witness{0, *matching.hall_witness,
                        neighborhood_size(out_graph, free_vertices.size(), *matching.hall_witness)};
    return unexpected(RainbowFailure{Kind::NoPerfectMatching, 0, kNoVertex, std::move(witness),
                                     "matched " + std::to_string(matching.size) + " of " +
                                         std::to_string(tuples.size())});
  }
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    std::size_t r = matching.mate_left[i];
    Vertex w = split.tail[i];
    Vertex v = ground.right[r];
    state.map[w] = v;
    state.vertex_available[v] = 0;
    --state.available_vertex_count;
    for (Vertex x : h.neighbors(w)) {
      state.edge_colors[detail::edge_index(h, w, x)] = g2.color(state.map[x], v);
    }
  }
  return state;
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

/// G1 ∪ G2 with each shared edge keeping its G1 color.
inline ColoredGraph union_coloring(const ColoredGraph& g1, const ColoredGraph& g2) {
  const Graph& a = g1.base();
  const Graph& b = g2.base();
  std::vector<std::pair<Edge, std::uint32_t>> tagged;
  for (std::size_t i = 0; i < a.m(); ++i) tagged.push_back({a.edges()[i], g1.colors()[i]});
  for (std::size_t i = 0; i < b.m(); ++i) {
    const auto& e = b.edges()[i];
    if (!a.has_edge(e.u, e.v)) tagged.push_back({e, g2.colors()[i]});
  }
  std::sort(tagged.begin(), tagged.end());
  std::vector<Edge> edges;
  std::vector<std::uint32_t> colors;
  for (const auto& [e, c] : tagged) {
    edges.push_back(e);
    colors.push_back(c);
  }
  return ColoredGraph(Graph(std::max(a.n(), b.n()), std::move(edges)),
                      std::max(g1.color_count(), g2.color_count()), std::move(colors));
}

struct RainbowCheck {
  bool ok = true;
  std::string detail;
  std::optional<std::pair<Edge, Edge>> collision;  // two target edges sharing a color
};

/// Embedding validity plus pairwise-distinct colors over all image edges.
inline RainbowCheck verify_rainbow(const Graph& h, const ColoredGraph& g, const std::vector<Vertex>& map) {
  auto base = verify_embedding(h, g.base(), map);
  if (!base.ok) return {false, base.detail, std::nullopt};
  std::vector<std::size_t> owner(static_cast<std::size_t>(g.color_count()) + 1, kUnmatched);
  auto edges = h.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::uint32_t col = g.color(map[edges[i].u], map[edges[i].v]);
    if (owner[col] != kUnmatched) {
      const Edge& first = edges[owner[col]];
      return {false,
              "edges " + std::to_string(first.u) + "-" + std::to_string(first.v) + " and " +
                  std::to_string(edges[i].u) + "-" + std::to_string(edges[i].v) + " share color " +
                  std::to_string(col),
              std::make_pair(first, edges[i])};
    }
    owner[col] = i;
  }
  return {};
}

}  // namespace spanembed
