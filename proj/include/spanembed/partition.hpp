#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spanembed/expected.hpp"
#include "spanembed/graph.hpp"
#include "spanembed/rational.hpp"
#include "spanembed/structure.hpp"

namespace spanembed {

/// Layered partition W_0, W_1, ..., W_T of a target graph.
///
/// `layers` is stored compactly: the nominal construction allows `nominal_depth`
/// layers, most of them empty at practical sizes, so only nonempty peeled layers
/// are kept. layers[0] = W_0 = N(top), layers.back() = top layer, and the
/// peeled layers sit in between in embedding order (the last one peeled comes
/// first). `effective_depth` is the index of the top layer.
struct LayeredPartition {
  std::vector<std::vector<Vertex>> layers;
  Rational epsilon;
  std::size_t back_degree_cap = 0;
  std::size_t nominal_depth = 0;
  std::size_t effective_depth = 0;

  struct Diagnostics {
    std::vector<std::size_t> peel_input_sizes;  // |V(H_i)| before each peel, in peel order
    std::vector<int> peel_case;                 // girth-7 construction: 1 or 2 per peel
    std::vector<std::string> notes;
  } diagnostics;

  const std::vector<Vertex>& top() const { return layers.back(); }
  const std::vector<Vertex>& bottom() const { return layers.front(); }
};

struct PartitionError {
  enum class Kind { NotInFamily, EpsilonTooSmall, WtTooSmall, PeelStalled, GirthTooSmall };
  Kind kind;
  std::size_t required = 0;
  std::size_t achievable = 0;
  std::vector<Vertex> witness;
  std::string detail;
};

inline const char* to_string(PartitionError::Kind k) {
  switch (k) {
    case PartitionError::Kind::NotInFamily: return "NotInFamily";
    case PartitionError::Kind::EpsilonTooSmall: return "EpsilonTooSmall";
    case PartitionError::Kind::WtTooSmall: return "WtTooSmall";
    case PartitionError::Kind::PeelStalled: return "PeelStalled";
    case PartitionError::Kind::GirthTooSmall: return "GirthTooSmall";
  }
  return "?";
}

using PartitionResult = Expected<LayeredPartition, PartitionError>;

namespace detail {

inline std::size_t nominal_depth_from(double coefficient, std::size_t n) {
  double t = std::ceil(coefficient * std::log(static_cast<double>(n)));
  if (!(t < 1e15)) t = 1e15;
  return static_cast<std::size_t>(std::max(0.0, t)) + 1;
}

inline double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline std::optional<PartitionError> check_family(const Graph& h, std::size_t max_deg, std::size_t d) {
  if (h.max_degree() > max_deg) {
    return PartitionError{PartitionError::Kind::NotInFamily, max_deg, h.max_degree(), {},
                          "maximum degree " + std::to_string(h.max_degree()) + " exceeds " +
                              std::to_string(max_deg)};
  }
  auto dense = densest_subgraph(h);
  if (dense.density > Rational(static_cast<std::int64_t>(d))) {
    return PartitionError{PartitionError::Kind::NotInFamily, d, 0, dense.vertices,
                          "maximum density " + dense.density.str() + " exceeds " + std::to_string(d)};
  }
  return std::nullopt;
}

struct TopSelection {
  std::vector<Vertex> top;
  std::vector<Vertex> bottom;
  std::vector<char> alive;
};

/// Picks the top layer from a `radius`-independent subset of D_{<=d}(H) and
/// sets W_0 = N(top); `alive` marks the vertices left for peeling.
inline Expected<TopSelection, PartitionError> select_top(const Graph& h, std::size_t d, std::size_t radius,
                                                         const Rational& eps) {
  const std::size_t n = h.n();
  auto wanted = eps.floor_times(static_cast<std::int64_t>(n));
  if (wanted < 1) {
    return unexpected(PartitionError{PartitionError::Kind::EpsilonTooSmall, 1, 0, {},
                                     "floor(eps*n) = " + std::to_string(wanted)});
  }
  auto pool = k_independent_low_degree(h, d, radius);
  if (pool.size() < static_cast<std::size_t>(wanted)) {
    return unexpected(PartitionError{PartitionError::Kind::WtTooSmall, static_cast<std::size_t>(wanted),
                                     pool.size(), {},
                                     std::to_string(radius) + "-independent low-degree pool too small"});
  }
  TopSelection sel;
  sel.top.assign(pool.begin(), pool.begin() + wanted);
  std::vector<char> mark(n, 0);
  for (Vertex w : sel.top) mark[w] = 2;
  for (Vertex w : sel.top) {
    for (Vertex x : h.neighbors(w)) {
      if (mark[x] == 0) mark[x] = 1;
    }
  }
  sel.alive.assign(n, 1);
  for (Vertex v = 0; v < n; ++v) {
    if (mark[v] == 1) sel.bottom.push_back(v);
    if (mark[v] != 0) sel.alive[v] = 0;
  }
  return sel;
}

inline LayeredPartition assemble(TopSelection sel, std::vector<std::vector<Vertex>> peeled, const Rational& eps,
                                 std::size_t cap, std::size_t nominal) {
  LayeredPartition p;
  p.layers.push_back(std::move(sel.bottom));
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) p.layers.push_back(std::move(*it));
  p.layers.push_back(std::move(sel.top));
  p.epsilon = eps;
  p.back_degree_cap = cap;
  p.nominal_depth = nominal;
  p.effective_depth = p.layers.size() - 1;
  return p;
}

/// Greedy 2-independent subset (distances in the full graph `h`) of the alive
/// vertices accepted by `eligible`.
template <class Pred>
std::vector<Vertex> peel_candidates(const Graph& h, const std::vector<char>& alive, Pred eligible) {
  std::vector<Vertex> subset;
  for (Vertex v = 0; v < h.n(); ++v) {
    if (alive[v] && eligible(v)) subset.push_back(v);
  }
  return k_independent_in_subset(h, std::move(subset), 2, h.max_degree());
}

}  // namespace detail

/// Layered partition with back-degree cap 2d for H with Δ(H) <= max_deg and
/// d(H) <= d. The top layer is drawn from a 4-independent subset of
/// D_{<=d}(H); the rest is peeled into 2-independent low-degree layers.
inline PartitionResult partition_general(const Graph& h, std::size_t max_deg, std::size_t d, const Rational& eps) {
  if (d < 2 || max_deg < 2) throw std::invalid_argument("partition_general: requires d >= 2 and Δ >= 2");
  if (h.n() == 0) throw std::invalid_argument("partition_general: empty target");
  if (auto bad = detail::check_family(h, max_deg, d)) return unexpected(std::move(*bad));

  const double delta = static_cast<double>(max_deg);
  const std::size_t nominal = detail::nominal_depth_from(4.0 * detail::int_pow(delta, 6), h.n());

  auto top = detail::select_top(h, d, 4, eps);
  if (!top) return unexpected(top.error());
  detail::TopSelection sel = std::move(top).value();

  LayeredPartition::Diagnostics diag;
  std::vector<std::vector<Vertex>> peeled;
  auto& alive = sel.alive;
  std::size_t remaining = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  while (remaining > 0) {
    if (peeled.size() + 1 >= nominal) {
      return unexpected(PartitionError{PartitionError::Kind::PeelStalled, 0, remaining, {},
                                       "nominal depth exhausted with vertices left"});
    }
    auto deg = degrees_within(h, alive);
    auto layer = detail::peel_candidates(h, alive, [&](Vertex v) { return deg[v] <= d; });
    // Greedy guarantees n_i / ((d+1) d Δ²) on a remainder of density <= d.
    double floor_size = static_cast<double>(remaining) / (static_cast<double>((d + 1) * d) * delta * delta);
    if (layer.empty() || static_cast<double>(layer.size()) < floor_size) {
      return unexpected(PartitionError{PartitionError::Kind::PeelStalled,
                                       static_cast<std::size_t>(std::ceil(floor_size)), layer.size(), {},
                                       "2-independent low-degree set below required size"});
    }
    diag.peel_input_sizes.push_back(remaining);
    for (Vertex v : layer) alive[v] = 0;
    remaining -= layer.size();
    peeled.push_back(std::move(layer));
  }
  auto p = detail::assemble(std::move(sel), std::move(peeled), eps, 2 * d, nominal);
  p.diagnostics = std::move(diag);
  return p;
}

/// Layered partition with back-degree cap d for targets of girth >= 7. The top
/// layer comes from a 6-independent subset of D_{<=d}(H); each peel prefers a
/// 2-independent subset of D_{<=d-1}(H_i) and otherwise avoids X = N(W_0).
inline PartitionResult partition_girth7(const Graph& h, std::size_t max_deg, std::size_t d, const Rational& eps) {
  if (d < 2) throw std::invalid_argument("partition_girth7: requires d >= 2");
  if (h.n() == 0) throw std::invalid_argument("partition_girth7: empty target");
  if (auto cycle = shortest_cycle(h); cycle && cycle->size() < 7) {
    return unexpected(PartitionError{PartitionError::Kind::GirthTooSmall, 7, cycle->size(), *cycle,
                                     "girth " + std::to_string(cycle->size()) + " < 7"});
  }
  if (auto bad = detail::check_family(h, max_deg, d)) return unexpected(std::move(*bad));

  const std::size_t n = h.n();
  const double delta = static_cast<double>(std::max<std::size_t>(max_deg, 1));
  const double dd = static_cast<double>(d);
  const double gamma = 1.0 / (8.0 * (dd + 1.0) * (dd - 1.0) * delta * delta);
  const std::size_t nominal = detail::nominal_depth_from(16.0 * dd * dd * delta * delta, n);

  auto top = detail::select_top(h, d, 6, eps);
  if (!top) return unexpected(top.error());
  detail::TopSelection sel = std::move(top).value();

  std::vector<char> in_top(n, 0), in_bottom(n, 0), in_x(n, 0);
  for (Vertex w : sel.top) in_top[w] = 1;
  for (Vertex w : sel.bottom) in_bottom[w] = 1;
  for (Vertex w : sel.bottom) {
    for (Vertex x : h.neighbors(w)) in_x[x] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (in_top[v]) continue;
    std::size_t hits = 0;
    for (Vertex x : h.neighbors(v)) hits += in_bottom[x];
    if (hits > 1) {
      throw std::logic_error("partition_girth7: vertex " + std::to_string(v) + " has " + std::to_string(hits) +
                             " neighbors in W_0");
    }
  }

  LayeredPartition::Diagnostics diag;
  std::vector<std::vector<Vertex>> peeled;
  auto& alive = sel.alive;
  std::size_t remaining = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  while (remaining > 0) {
    if (peeled.size() + 1 >= nominal) {
      return unexpected(PartitionError{PartitionError::Kind::PeelStalled, 0, remaining, {},
                                       "nominal depth exhausted with vertices left"});
    }
    auto deg = degrees_within(h, alive);
    const double threshold = gamma * static_cast<double>(remaining);
    auto layer = detail::peel_candidates(h, alive, [&](Vertex v) { return deg[v] + 1 <= d; });
    int which = 1;
    if (static_cast<double>(layer.size()) < threshold || layer.empty()) {
      // X restricted to H_i should be 2-independent there; re-check rather than assume.
      bool reported = false;
      for (Vertex v = 0; v < n && !reported; ++v) {
        if (!alive[v] || !in_x[v]) continue;
        for (Vertex a : h.neighbors(v)) {
          if (!alive[a] || reported) continue;
          if (in_x[a]) {
            diag.notes.push_back("X not 2-independent in H_i: " + std::to_string(v) + "," + std::to_string(a));
            reported = true;
            break;
          }
          for (Vertex b : h.neighbors(a)) {
            if (b != v && alive[b] && in_x[b]) {
              diag.notes.push_back("X not 2-independent in H_i: " + std::to_string(v) + "," + std::to_string(b));
              reported = true;
              break;
            }
          }
        }
      }
      layer = detail::peel_candidates(h, alive, [&](Vertex v) { return deg[v] <= d && !in_x[v]; });
      which = 2;
    }
    if (layer.empty() || static_cast<double>(layer.size()) < threshold) {
      return unexpected(PartitionError{PartitionError::Kind::PeelStalled,
                                       static_cast<std::size_t>(std::ceil(threshold)), layer.size(), {},
                                       "no 2-independent set reaches gamma * |V(H_i)|"});
    }
    diag.peel_input_sizes.push_back(remaining);
    diag.peel_case.push_back(which);
    for (Vertex v : layer) alive[v] = 0;
    remaining -= layer.size();
    peeled.push_back(std::move(layer));
  }
  auto p = detail::assemble(std::move(sel), std::move(peeled), eps, d, nominal);
  p.diagnostics = std::move(diag);
  return p;
}

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------

struct PropertyCheck {
  bool ok = true;
  std::string detail;
  std::optional<std::pair<Vertex, Vertex>> pair;  // independence witness
  std::optional<Vertex> vertex;                   // back-degree or membership witness
};

struct PartitionReport {
  PropertyCheck covers;              // layers partition V(H)
  PropertyCheck top_size;            // (i)
  PropertyCheck bottom_is_nbhd;      // (ii)
  PropertyCheck top_independent;     // (iii)
  PropertyCheck layers_independent;  // (iv)
  PropertyCheck back_degree;         // (v)

  bool passes() const {
    return covers.ok && top_size.ok && bottom_is_nbhd.ok && top_independent.ok && layers_independent.ok &&
           back_degree.ok;
  }
  std::string summary() const {
    std::string s;
    auto add = [&](const char* name, const PropertyCheck& c) {
      s += std::string(name) + (c.ok ? ": ok" : ": FAIL (" + c.detail + ")") + "\n";
    };
    add("cover", covers);
    add("(i) top size", top_size);
    add("(ii) W_0 = N(top)", bottom_is_nbhd);
    add("(iii) top 3-independent", top_independent);
    add("(iv) layers 2-independent", layers_independent);
    add("(v) back-degree", back_degree);
    return s;
  }
};

namespace detail {

/// First pair of `members` at distance <= radius, if any.
inline std::optional<std::pair<Vertex, Vertex>> close_pair(const Graph& h, const std::vector<Vertex>& members,
                                                           std::size_t radius) {
  std::vector<char> member(h.n(), 0);
  for (Vertex v : members) member[v] = 1;
  std::vector<std::size_t> dist(h.n(), std::numeric_limits<std::size_t>::max());
  for (Vertex src : members) {
    std::vector<Vertex> touched{src};
    dist[src] = 0;
    std::optional<std::pair<Vertex, Vertex>> found;
    for (std::size_t head = 0; head < touched.size() && !found; ++head) {
      Vertex v = touched[head];
      if (dist[v] == radius) continue;
      for (Vertex w : h.neighbors(v)) {
        if (dist[w] != std::numeric_limits<std::size_t>::max()) continue;
        dist[w] = dist[v] + 1;
        touched.push_back(w);
        if (member[w]) {
          found = std::make_pair(std::min(src, w), std::max(src, w));
          break;
        }
      }
    }
    for (Vertex v : touched) dist[v] = std::numeric_limits<std::size_t>::max();
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace detail

/// Re-checks every layered-partition property from scratch against H.
inline PartitionReport validate_partition(const Graph& h, const LayeredPartition& p) {
  PartitionReport r;
  const std::size_t n = h.n();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> layer_of(n, kNone);
  for (std::size_t i = 0; i < p.layers.size() && r.covers.ok; ++i) {
    for (Vertex v : p.layers[i]) {
      if (v >= n) {
        r.covers = {false, "vertex " + std::to_string(v) + " out of range", {}, v};
        break;
      }
      if (layer_of[v] != kNone) {
        r.covers = {false, "vertex " + std::to_string(v) + " in two layers", {}, v};
        break;
      }
      layer_of[v] = i;
    }
  }
  if (r.covers.ok) {
    for (Vertex v = 0; v < n; ++v) {
      if (layer_of[v] == kNone) {
        r.covers = {false, "vertex " + std::to_string(v) + " in no layer", {}, v};
        break;
      }
    }
  }
  if (p.layers.size() < 2) {
    r.covers = {false, "fewer than two layers", {}, {}};
    return r;
  }
  const std::size_t top = p.layers.size() - 1;

  auto expected_top = p.epsilon.floor_times(static_cast<std::int64_t>(n));
  if (static_cast<std::int64_t>(p.layers[top].size()) != expected_top) {
    r.top_size = {false,
                  "|top| = " + std::to_string(p.layers[top].size()) + ", floor(eps n) = " +
                      std::to_string(expected_top),
                  {},
                  {}};
  }

  std::vector<char> nbhd(n, 0);
  for (Vertex w : p.layers[top]) {
    for (Vertex x : h.neighbors(w)) nbhd[x] = 1;
  }
  std::vector<char> in_bottom(n, 0);
  for (Vertex v : p.layers[0]) {
    if (v < n) in_bottom[v] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (nbhd[v] != in_bottom[v]) {
      r.bottom_is_nbhd = {false,
                          "vertex " + std::to_string(v) + (nbhd[v] ? " in N(top) but not W_0" : " in W_0 but not N(top)"),
                          {},
                          v};
      break;
    }
  }

  if (auto bad = detail::close_pair(h, p.layers[top], 3)) {
    r.top_independent = {false,
                         "top vertices " + std::to_string(bad->first) + "," + std::to_string(bad->second) +
                             " within distance 3",
                         bad,
                         {}};
  }
  for (std::size_t i = 1; i < top && r.layers_independent.ok; ++i) {
    if (auto bad = detail::close_pair(h, p.layers[i], 2)) {
      r.layers_independent = {false,
                              "layer " + std::to_string(i) + " vertices " + std::to_string(bad->first) + "," +
                                  std::to_string(bad->second) + " within distance 2",
                              bad,
                              {}};
    }
  }

  if (r.covers.ok) {
    for (std::size_t i = 1; i <= top && r.back_degree.ok; ++i) {
      for (Vertex w : p.layers[i]) {
        std::size_t back = 0;
        for (Vertex x : h.neighbors(w)) back += (layer_of[x] < i);
        if (back > p.back_degree_cap) {
          r.back_degree = {false,
                           "vertex " + std::to_string(w) + " in layer " + std::to_string(i) + " has " +
                               std::to_string(back) + " back-neighbors > " + std::to_string(p.back_degree_cap),
                           {},
                           w};
          break;
        }
      }
    }
  }
  return r;
}

/// Largest observed back-degree over layers 1..T.
inline std::size_t max_back_degree(const Graph& h, const LayeredPartition& p) {
  std::vector<std::size_t> layer_of(h.n(), 0);
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    for (Vertex v : p.layers[i]) layer_of[v] = i;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.layers.size(); ++i) {
    for (Vertex w : p.layers[i]) {
      std::size_t back = 0;
      for (Vertex x : h.neighbors(w)) back += (layer_of[x] < i);
      best = std::max(best, back);
    }
  }
  return best;
}

}  // namespace spanembed
