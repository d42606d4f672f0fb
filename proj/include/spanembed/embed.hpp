#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spanembed/expected.hpp"
#include "spanembed/graph.hpp"
#include "spanembed/host_plan.hpp"
#include "spanembed/matching.hpp"
#include "spanembed/partition.hpp"
#include "spanembed/random.hpp"

namespace spanembed {

/// Bipartite graph B(L, U): tuple L is joined to u iff every vertex of L is a
/// neighbor of u in the host. The empty tuple is joined to every u.
struct AuxBipartite {
  std::vector<std::vector<Vertex>> left_sets;
  std::vector<Vertex> right;
  BipartiteAdjacency adj;  // left index -> right indices
};

struct OverlappingTuples : std::invalid_argument {
  Vertex vertex;
  explicit OverlappingTuples(Vertex v)
      : std::invalid_argument("tuples share vertex " + std::to_string(v)), vertex(v) {}
};

inline AuxBipartite build_aux(const Graph& g, std::vector<std::vector<Vertex>> left_sets, std::vector<Vertex> right) {
  std::vector<char> seen(g.n(), 0);
  for (const auto& set : left_sets) {
    for (Vertex v : set) {
      if (seen[v]) throw OverlappingTuples(v);
      seen[v] = 1;
    }
  }
  std::vector<std::size_t> right_index(g.n(), kUnmatched);
  for (std::size_t r = 0; r < right.size(); ++r) right_index[right[r]] = r;

  AuxBipartite b{std::move(left_sets), std::move(right), {}};
  b.adj.resize(b.left_sets.size());
  for (std::size_t l = 0; l < b.left_sets.size(); ++l) {
    const auto& set = b.left_sets[l];
    auto& out = b.adj[l];
    if (set.empty()) {
      out.resize(b.right.size());
      for (std::size_t r = 0; r < b.right.size(); ++r) out[r] = r;
      continue;
    }
    Vertex pivot = *std::min_element(set.begin(), set.end(),
                                     [&](Vertex a, Vertex c) { return g.degree(a) < g.degree(c); });
    for (Vertex u : g.neighbors(pivot)) {
      if (right_index[u] == kUnmatched) continue;
      bool all = std::all_of(set.begin(), set.end(), [&](Vertex x) { return g.has_edge(x, u); });
      if (all) out.push_back(right_index[u]);
    }
    std::sort(out.begin(), out.end());
  }
  return b;
}

inline BipartiteMatching max_matching(const AuxBipartite& b) { return hopcroft_karp(b.adj, b.right.size()); }

struct HallWitness {
  std::size_t step = 0;
  std::vector<std::size_t> left;  // indices into the step's left sets
  std::size_t neighborhood = 0;
};

/// Recounts |N(U)| for a witness straight from host adjacency.
inline std::size_t recount_neighborhood(const Graph& g, const AuxBipartite& b, const std::vector<std::size_t>& left) {
  std::size_t count = 0;
  for (Vertex u : b.right) {
    bool joined = std::any_of(left.begin(), left.end(), [&](std::size_t l) {
      const auto& set = b.left_sets[l];
      return std::all_of(set.begin(), set.end(), [&](Vertex x) { return g.has_edge(x, u); });
    });
    count += joined;
  }
  return count;
}

/// Injective map from target to host with the pairs matched at every step.
struct Embedding {
  std::vector<Vertex> map;  // target vertex -> host vertex, kNoVertex if unmapped
  std::vector<std::vector<std::pair<Vertex, Vertex>>> layer_log;
};

struct EmbedFailure {
  enum class Kind { Precondition, CliqueAssignment, PartitionInvalid, HallViolation };
  Kind kind;
  std::size_t step = 0;
  std::optional<HallWitness> witness;
  std::string detail;
};

inline const char* to_string(EmbedFailure::Kind k) {
  switch (k) {
    case EmbedFailure::Kind::Precondition: return "Precondition";
    case EmbedFailure::Kind::CliqueAssignment: return "CliqueAssignment";
    case EmbedFailure::Kind::PartitionInvalid: return "PartitionInvalid";
    case EmbedFailure::Kind::HallViolation: return "HallViolation";
  }
  return "?";
}

/// Layer-by-layer embedding of H into host G.
///
/// Step 0 sends the neighborhood of each top vertex into its own clique of the
/// plan. Step i matches the layer's back-neighborhood images L_i(w) into the
/// unused part of slices 0..i; the last step may use every unused vertex.
inline Expected<Embedding, EmbedFailure> embed(const Graph& h, const LayeredPartition& part, const Graph& g,
                                               const HostPlan& plan, [[maybe_unused]] RandomSource& rng) {
  using Kind = EmbedFailure::Kind;
  auto fail = [](Kind k, std::size_t step, std::string why) {
    return unexpected(EmbedFailure{k, step, std::nullopt, std::move(why)});
  };
  const std::size_t depth = part.layers.size() - 1;
  if (h.n() > g.n()) return fail(Kind::Precondition, 0, "target larger than host");
  if (plan.cliques.size() < part.top().size()) return fail(Kind::Precondition, 0, "fewer cliques than top vertices");
  if (plan.depth() < depth) return fail(Kind::Precondition, 0, "host plan shallower than partition");

  std::vector<std::size_t> layer_of(h.n(), kUnmatched);
  for (std::size_t i = 0; i < part.layers.size(); ++i) {
    for (Vertex v : part.layers[i]) layer_of[v] = i;
  }

  Embedding emb;
  emb.map.assign(h.n(), kNoVertex);
  emb.layer_log.assign(depth + 1, {});
  std::vector<char> used(g.n(), 0);

  // Step 0: neighborhoods of top vertices into cliques.
  std::vector<std::size_t> owner(h.n(), kUnmatched);
  const auto& top = part.top();
  for (std::size_t j = 0; j < top.size(); ++j) {
    Vertex w = top[j];
    auto nb = h.neighbors(w);
    Clique clique = plan.cliques[j];
    std::sort(clique.begin(), clique.end());
    if (nb.size() > clique.size()) {
      return fail(Kind::CliqueAssignment, 0,
                  "top vertex " + std::to_string(w) + " has " + std::to_string(nb.size()) +
                      " neighbors, clique size " + std::to_string(clique.size()));
    }
    for (std::size_t r = 0; r < nb.size(); ++r) {
      Vertex x = nb[r];
      if (layer_of[x] != 0) return fail(Kind::PartitionInvalid, 0, "top neighbor outside W_0");
      if (owner[x] != kUnmatched) {
        return fail(Kind::PartitionInvalid, 0, "W_0 vertex " + std::to_string(x) + " adjacent to two top vertices");
      }
      owner[x] = j;
      emb.map[x] = clique[r];
      used[clique[r]] = 1;
      emb.layer_log[0].emplace_back(x, clique[r]);
    }
  }
  for (Vertex x : part.layers[0]) {
    if (owner[x] == kUnmatched) return fail(Kind::PartitionInvalid, 0, "W_0 vertex not adjacent to the top");
    for (Vertex y : h.neighbors(x)) {
      if (layer_of[y] == 0 && owner[y] != owner[x]) {
        return fail(Kind::PartitionInvalid, 0,
                    "edge " + std::to_string(x) + "-" + std::to_string(y) + " joins two top neighborhoods");
      }
    }
  }

  for (std::size_t i = 1; i <= depth; ++i) {
    const auto& layer = part.layers[i];
    std::vector<Vertex> available;
    const std::size_t last_slice = (i == depth) ? plan.depth() : i;
    for (std::size_t s = 0; s <= last_slice; ++s) {
      for (Vertex v : plan.slices[s]) {
        if (!used[v]) available.push_back(v);
      }
    }
    std::sort(available.begin(), available.end());

    std::vector<std::vector<Vertex>> tuples;
    tuples.reserve(layer.size());
    std::vector<char> taken(g.n(), 0);
    for (Vertex w : layer) {
      std::vector<Vertex> images;
      for (Vertex x : h.neighbors(w)) {
        if (layer_of[x] < i) images.push_back(emb.map[x]);
        if (layer_of[x] == i) {
          return fail(Kind::PartitionInvalid, i, "edge inside layer " + std::to_string(i));
        }
      }
      std::sort(images.begin(), images.end());
      for (Vertex y : images) {
        if (taken[y]) {
          return fail(Kind::PartitionInvalid, i,
                      "back-neighborhoods overlap in layer " + std::to_string(i) + " at host vertex " +
                          std::to_string(y));
        }
        taken[y] = 1;
      }
      tuples.push_back(std::move(images));
    }

    auto aux = build_aux(g, std::move(tuples), std::move(available));
    auto matching = max_matching(aux);
    if (!matching.saturating()) {
      HallWitness witness{i, *matching.hall_witness,
                          neighborhood_size(aux.adj, aux.right.size(), *matching.hall_witness)};
      return unexpected(EmbedFailure{Kind::HallViolation, i, std::move(witness),
                                     "matched " + std::to_string(matching.size) + " of " +
                                         std::to_string(layer.size())});
    }
    for (std::size_t l = 0; l < layer.size(); ++l) {
      Vertex target = aux.right[matching.mate_left[l]];
      emb.map[layer[l]] = target;
      used[target] = 1;
      emb.layer_log[i].emplace_back(layer[l], target);
    }
  }
  return emb;
}

struct EmbeddingCheck {
  bool ok = true;
  std::string detail;
  std::optional<Edge> edge;  // first target edge not preserved
};

/// Injectivity and edge preservation, checked exhaustively.
inline EmbeddingCheck verify_embedding(const Graph& h, const Graph& g, const std::vector<Vertex>& map) {
  if (map.size() != h.n()) return {false, "map size differs from target order", std::nullopt};
  std::vector<Vertex> seen(g.n(), kNoVertex);
  for (Vertex v = 0; v < h.n(); ++v) {
    if (map[v] == kNoVertex) return {false, "vertex " + std::to_string(v) + " unmapped", std::nullopt};
    if (map[v] >= g.n()) return {false, "vertex " + std::to_string(v) + " mapped outside host", std::nullopt};
    if (seen[map[v]] != kNoVertex) {
      return {false,
              "vertices " + std::to_string(seen[map[v]]) + " and " + std::to_string(v) + " share image " +
                  std::to_string(map[v]),
              std::nullopt};
    }
    seen[map[v]] = v;
  }
  for (const auto& e : h.edges()) {
    if (!g.has_edge(map[e.u], map[e.v])) {
      return {false, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not preserved", e};
    }
  }
  return {};
}

}  // namespace spanembed
