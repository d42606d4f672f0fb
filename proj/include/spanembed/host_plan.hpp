#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "spanembed/expected.hpp"
#include "spanembed/graph.hpp"
#include "spanembed/random.hpp"
#include "spanembed/rational.hpp"

namespace spanembed {

using Clique = std::vector<Vertex>;

/// Host-side plan: slices V_0..V_T and vertex-disjoint d-cliques inside V_0.
struct HostPlan {
  std::vector<std::vector<Vertex>> slices;
  std::vector<Clique> cliques;
  std::size_t clique_size = 0;
  Rational epsilon;

  std::size_t depth() const { return slices.empty() ? 0 : slices.size() - 1; }
};

struct HostPlanError {
  enum class Kind { SliceTooSmall, CliqueShortfall };
  Kind kind;
  std::size_t found = 0;
  std::size_t needed = 0;
  std::string detail;
};

inline const char* to_string(HostPlanError::Kind k) {
  return k == HostPlanError::Kind::SliceTooSmall ? "SliceTooSmall" : "CliqueShortfall";
}

namespace detail {

inline bool extend_clique(const Graph& g, Clique& clique, const std::vector<Vertex>& candidates, std::size_t size) {
  if (clique.size() == size) return true;
  const std::size_t missing = size - clique.size();
  for (std::size_t i = 0; i + missing <= candidates.size(); ++i) {
    Vertex c = candidates[i];
    std::vector<Vertex> next;
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (g.has_edge(c, candidates[j])) next.push_back(candidates[j]);
    }
    if (next.size() + 1 < missing) continue;
    clique.push_back(c);
    if (extend_clique(g, clique, next, size)) return true;
    clique.pop_back();
  }
  return false;
}

}  // namespace detail

/// Greedy family of up to `count` pairwise disjoint `size`-cliques. Vertices
/// are scanned in ascending order and each is extended by the lexicographically
/// smallest clique among unused higher-index neighbors.
inline std::vector<Clique> find_clique_family(const Graph& g, std::size_t size, std::size_t count) {
  if (size < 1) throw std::invalid_argument("find_clique_family: clique size must be >= 1");
  std::vector<Clique> family;
  std::vector<char> used(g.n(), 0);
  for (Vertex v = 0; v < g.n() && family.size() < count; ++v) {
    if (used[v]) continue;
    std::vector<Vertex> candidates;
    for (Vertex w : g.neighbors(v)) {
      if (w > v && !used[w]) candidates.push_back(w);
    }
    Clique clique{v};
    if (!detail::extend_clique(g, clique, candidates, size)) continue;
    for (Vertex x : clique) used[x] = 1;
    family.push_back(std::move(clique));
  }
  return family;
}

/// Slice size floor(eps * n / (16 * depth)).
inline std::size_t slice_size(std::size_t n, std::size_t depth, const Rational& eps) {
  Rational share(eps.num() * static_cast<std::int64_t>(n), eps.den() * 16 * static_cast<std::int64_t>(depth));
  return static_cast<std::size_t>(std::max<std::int64_t>(0, share.floor_times(1)));
}

/// Slices V_1..V_depth of equal floor size drawn at random outside the
/// cliques; V_0 takes the cliques and every remainder. `min_slice` raises the
/// slice size for sensitivity runs; 0 keeps the floor rule.
inline Expected<HostPlan, HostPlanError> build_host_plan(const Graph& g, std::size_t depth, const Rational& eps,
                                                         std::size_t clique_size, RandomSource& rng,
                                                         std::size_t min_slice = 0) {
  const std::size_t n = g.n();
  if (depth < 1) throw std::invalid_argument("build_host_plan: depth must be >= 1");
  const std::size_t s = std::max(slice_size(n, depth, eps), min_slice);
  if (s < 1) {
    return unexpected(HostPlanError{HostPlanError::Kind::SliceTooSmall, 0, 1,
                                    "floor(eps n / 16 t) = 0 for t = " + std::to_string(depth)});
  }
  const auto needed = static_cast<std::size_t>(std::max<std::int64_t>(0, eps.floor_times(static_cast<std::int64_t>(n))));
  auto cliques = find_clique_family(g, clique_size, needed);
  if (cliques.size() < needed) {
    return unexpected(HostPlanError{HostPlanError::Kind::CliqueShortfall, cliques.size(), needed,
                                    "found " + std::to_string(cliques.size()) + " of " + std::to_string(needed) +
                                        " disjoint " + std::to_string(clique_size) + "-cliques"});
  }
  std::vector<char> in_clique(n, 0);
  for (const auto& c : cliques) {
    for (Vertex v : c) in_clique[v] = 1;
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_clique[v]) rest.push_back(v);
  }
  if (rest.size() < depth * s) {
    return unexpected(HostPlanError{HostPlanError::Kind::SliceTooSmall, rest.size(), depth * s,
                                    "not enough vertices outside the cliques for the slices"});
  }
  std::shuffle(rest.begin(), rest.end(), rng.engine());

  HostPlan plan;
  plan.slices.assign(depth + 1, {});
  for (std::size_t i = 1; i <= depth; ++i) {
    plan.slices[i].assign(rest.begin() + static_cast<std::ptrdiff_t>((i - 1) * s),
                          rest.begin() + static_cast<std::ptrdiff_t>(i * s));
    std::sort(plan.slices[i].begin(), plan.slices[i].end());
  }
  auto& bottom = plan.slices[0];
  bottom.assign(rest.begin() + static_cast<std::ptrdiff_t>(depth * s), rest.end());
  for (const auto& c : cliques) bottom.insert(bottom.end(), c.begin(), c.end());
  std::sort(bottom.begin(), bottom.end());
  plan.cliques = std::move(cliques);
  plan.clique_size = clique_size;
  plan.epsilon = eps;
  return plan;
}

struct HostPlanReport {
  bool ok = true;
  std::string detail;
};

/// Independent structural re-check of a plan against its host.
inline HostPlanReport validate_host_plan(const Graph& g, const HostPlan& plan) {
  const std::size_t n = g.n();
  std::vector<int> slice_of(n, -1);
  for (std::size_t i = 0; i < plan.slices.size(); ++i) {
    for (Vertex v : plan.slices[i]) {
      if (v >= n) return {false, "slice vertex out of range"};
      if (slice_of[v] != -1) return {false, "vertex " + std::to_string(v) + " in two slices"};
      slice_of[v] = static_cast<int>(i);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (slice_of[v] == -1) return {false, "vertex " + std::to_string(v) + " in no slice"};
  }
  for (std::size_t i = 2; i < plan.slices.size(); ++i) {
    if (plan.slices[i].size() != plan.slices[1].size()) return {false, "slices 1..t differ in size"};
  }
  std::vector<char> used(n, 0);
  for (const auto& c : plan.cliques) {
    if (c.size() != plan.clique_size) return {false, "clique of wrong size"};
    for (std::size_t a = 0; a < c.size(); ++a) {
      if (slice_of[c[a]] != 0) return {false, "clique vertex " + std::to_string(c[a]) + " outside V_0"};
      if (used[c[a]]) return {false, "cliques overlap at " + std::to_string(c[a])};
      used[c[a]] = 1;
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        if (!g.has_edge(c[a], c[b])) {
          return {false, "missing clique edge " + std::to_string(c[a]) + "-" + std::to_string(c[b])};
        }
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Sampled goodness diagnostics.
// ---------------------------------------------------------------------------

struct SampleClass {
  std::size_t k = 0;
  std::size_t samples = 0;
  std::size_t passed = 0;
  bool vacuous = false;
  std::string note;

  double pass_fraction() const { return samples == 0 ? 1.0 : static_cast<double>(passed) / samples; }
};

/// Monte-Carlo estimates of the clique-hitting property and the two expansion
/// clauses (small and large sets). Descriptive only.
struct GoodnessReport {
  SampleClass clique_hits;               // every small tuple sees a clique
  std::vector<SampleClass> small_sets;   // small-set clause, k = 1..d
  std::vector<SampleClass> large_sets;   // large-set clause, k = 1..d
};

namespace detail {

/// Size cap floor(x^{-e} / 2) with x <= 0 treated as unbounded.
inline std::size_t inverse_power_half(double x, std::size_t e, std::size_t limit) {
  if (x <= 0.0) return limit;
  double v = std::pow(x, -static_cast<double>(e)) / 2.0;
  if (!(v < static_cast<double>(limit))) return limit;
  return static_cast<std::size_t>(std::floor(v));
}

inline void partial_shuffle(std::vector<Vertex>& pool, std::size_t count, RandomSource& rng) {
  for (std::size_t i = 0; i < count && i + 1 < pool.size(); ++i) {
    std::size_t j = rng.uniform_int<std::size_t>(i, pool.size() - 1);
    std::swap(pool[i], pool[j]);
  }
}

inline bool covers_all(const Graph& g, Vertex v, const std::vector<Vertex>& set) {
  return std::all_of(set.begin(), set.end(), [&](Vertex x) { return g.has_edge(v, x); });
}

}  // namespace detail

inline GoodnessReport spot_check_goodness(const Graph& g, const HostPlan& plan, double p, std::size_t d,
                                          std::size_t samples, RandomSource& rng) {
  const std::size_t n = g.n();
  const double eps_n = plan.epsilon.to_double() * static_cast<double>(n);
  GoodnessReport report;

  std::vector<char> in_clique(n, 0);
  for (const auto& c : plan.cliques) {
    for (Vertex v : c) in_clique[v] = 1;
  }
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_clique[v]) outside.push_back(v);
  }

  report.clique_hits.k = d;
  std::size_t max_u = std::min(detail::inverse_power_half(p / 2.0, d, n), outside.size());
  if (max_u == 0) {
    report.clique_hits.vacuous = true;
    report.clique_hits.note = "no admissible U";
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      std::size_t size = rng.uniform_int<std::size_t>(1, max_u);
      detail::partial_shuffle(outside, size, rng);
      std::vector<Vertex> u_set(outside.begin(), outside.begin() + static_cast<std::ptrdiff_t>(size));
      std::size_t hit = 0;
      for (const auto& c : plan.cliques) {
        hit += std::any_of(u_set.begin(), u_set.end(), [&](Vertex u) { return detail::covers_all(g, u, c); });
      }
      double threshold = std::pow(p, static_cast<double>(d)) / std::pow(2.0, static_cast<double>(d + 2)) *
                         static_cast<double>(size) * eps_n;
      ++report.clique_hits.samples;
      report.clique_hits.passed += static_cast<double>(hit) >= threshold;
    }
  }

  const std::size_t depth = plan.depth();
  for (std::size_t k = 1; k <= d; ++k) {
    SampleClass small;
    small.k = k;
    if (depth == 0) {
      small.vacuous = true;
      small.note = "no slices";
    } else {
      for (std::size_t s = 0; s < samples; ++s) {
        std::size_t i = rng.uniform_int<std::size_t>(1, depth);
        const auto& slice = plan.slices[i];
        std::vector<char> in_slice(n, 0);
        for (Vertex v : slice) in_slice[v] = 1;
        std::vector<Vertex> pool;
        for (Vertex v = 0; v < n; ++v) {
          if (!in_slice[v]) pool.push_back(v);
        }
        std::size_t max_l = std::min(detail::inverse_power_half(p / 2.0, k, n), pool.size() / k);
        if (max_l == 0 || slice.empty()) {
          small.vacuous = true;
          small.note = "no admissible collection";
          break;
        }
        std::size_t count = rng.uniform_int<std::size_t>(1, max_l);
        detail::partial_shuffle(pool, count * k, rng);
        std::size_t reached = 0;
        for (Vertex v : slice) {
          bool any = false;
          for (std::size_t j = 0; j < count && !any; ++j) {
            std::vector<Vertex> tuple(pool.begin() + static_cast<std::ptrdiff_t>(j * k),
                                      pool.begin() + static_cast<std::ptrdiff_t>((j + 1) * k));
            any = detail::covers_all(g, v, tuple);
          }
          reached += any;
        }
        double threshold = std::pow(p / 2.0, static_cast<double>(k)) * static_cast<double>(count) *
                           static_cast<double>(slice.size()) / 2.0;
        ++small.samples;
        small.passed += static_cast<double>(reached) >= threshold;
      }
    }
    report.small_sets.push_back(std::move(small));

    SampleClass large;
    large.k = k;
    double size_d = (p <= 0.0 ? INFINITY : std::pow(p / 2.0, -static_cast<double>(k))) *
                    std::pow(std::log(static_cast<double>(n)), 2.0 * static_cast<double>(d - 1));
    if (!(size_d * static_cast<double>(k + 1) <= static_cast<double>(n))) {
      large.vacuous = true;
      large.note = "threshold " + std::to_string(size_d) + " leaves no room in n = " + std::to_string(n);
    } else {
      auto size = static_cast<std::size_t>(std::ceil(size_d));
      std::vector<Vertex> all(n);
      std::iota(all.begin(), all.end(), Vertex{0});
      for (std::size_t s = 0; s < samples; ++s) {
        detail::partial_shuffle(all, size * (k + 1), rng);
        bool edge = false;
        for (std::size_t j = 0; j < size && !edge; ++j) {
          std::vector<Vertex> tuple(all.begin() + static_cast<std::ptrdiff_t>(j * k),
                                    all.begin() + static_cast<std::ptrdiff_t>((j + 1) * k));
          for (std::size_t r = 0; r < size && !edge; ++r) {
            edge = detail::covers_all(g, all[size * k + r], tuple);
          }
        }
        ++large.samples;
        large.passed += edge;
      }
    }
    report.large_sets.push_back(std::move(large));
  }
  return report;
}

}  // namespace spanembed
