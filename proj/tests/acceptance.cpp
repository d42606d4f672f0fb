// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--expect-fail 6,8]
// Exit status is nonzero when a criterion fails that is not listed as expected.
// Expected failures still print FAIL; an expected failure that passes prints
// PASS and is reported as such.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "oracles.hpp"
#include "spanembed/harness.hpp"

using namespace spanembed;
using namespace testing_support;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Independent of verify_embedding: injectivity plus edge preservation.
bool is_embedding(const Graph& h, const Graph& g, const std::vector<Vertex>& map) {
  if (map.size() != h.n()) return false;
  std::set<Vertex> images(map.begin(), map.end());
  if (images.size() != map.size()) return false;
  for (Vertex v : map) {
    if (v >= g.n()) return false;
  }
  for (const auto& e : h.edges()) {
    if (!g.has_edge(map[e.u], map[e.v])) return false;
  }
  return true;
}

bool is_rainbow(const Graph& h, const ColoredGraph& g, const std::vector<Vertex>& map) {
  if (!is_embedding(h, g.base(), map)) return false;
  std::set<std::uint32_t> seen;
  for (const auto& e : h.edges()) {
    if (!seen.insert(g.color(map[e.u], map[e.v])).second) return false;
  }
  return seen.size() == h.m();
}

std::string csv_of(const SweepSummary& s) {
  std::ostringstream out;
  write_csv(out, s);
  return out.str();
}

std::string curve_text(const SweepSummary& s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  for (const auto& pt : s.points) out << ' ' << format_p(pt.p) << ':' << pt.fraction(Outcome::Success);
  return out.str();
}

std::size_t inversions(const std::vector<double>& curve) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) count += curve[i + 1] < curve[i];
  return count;
}

// ---------------------------------------------------------------------------

Verdict density_oracle() {
  RandomSource rng(101, "acceptance/density");
  for (int i = 0; i < 500; ++i) {
    const auto n = rng.uniform_int<std::size_t>(1, 10);
    Graph g = random_graph(n, rng.uniform01(), rng);
    if (max_density(g) != oracle::max_density(g)) {
      return {false, "mismatch on graph " + std::to_string(i)};
    }
  }
  return {true, "500 graphs, exact rational equality"};
}

Verdict matching_oracle() {
  RandomSource rng(102, "acceptance/matching");
  std::size_t witnesses = 0;
  for (int i = 0; i < 1000; ++i) {
    // half plain bipartite instances, half auxiliary graphs over a host
    BipartiteMatching m;
    BipartiteAdjacency adj;
    std::size_t right_count = 0;
    std::optional<std::size_t> recount;
    if (i % 2 == 0) {
      const auto left = rng.uniform_int<std::size_t>(1, 8);
      right_count = rng.uniform_int<std::size_t>(1, 8);
      const double p = rng.uniform01();
      adj.assign(left, {});
      for (auto& row : adj) {
        for (std::size_t r = 0; r < right_count; ++r) {
          if (rng.bernoulli(p)) row.push_back(r);
        }
      }
      m = hopcroft_karp(adj, right_count);
      if (m.hall_witness) recount = oracle::neighborhood(adj, *m.hall_witness);
    } else {
      Graph g = random_graph(18, rng.uniform01(), rng);
      const auto left = rng.uniform_int<std::size_t>(1, 8);
      std::vector<std::vector<Vertex>> tuples;
      Vertex next = 0;
      for (std::size_t l = 0; l < left; ++l) {
        const auto size = rng.uniform_int<std::size_t>(0, 1);
        std::vector<Vertex> t;
        for (std::size_t j = 0; j < size; ++j) t.push_back(next++);
        tuples.push_back(std::move(t));
      }
      std::vector<Vertex> right;
      for (Vertex v = next; v < g.n(); ++v) right.push_back(v);
      auto b = build_aux(g, tuples, right);
      adj = b.adj;
      right_count = right.size();
      m = max_matching(b);
      if (m.hall_witness) recount = recount_neighborhood(g, b, *m.hall_witness);
    }
    if (m.size != oracle::max_matching(adj, right_count)) return {false, "size mismatch on instance " + std::to_string(i)};
    if (m.hall_witness) {
      ++witnesses;
      if (!(*recount < m.hall_witness->size())) return {false, "witness not deficient on instance " + std::to_string(i)};
    } else if (m.size != adj.size()) {
      return {false, "unsaturated without witness on instance " + std::to_string(i)};
    }
  }
  return {true, "1000 instances, " + std::to_string(witnesses) + " Hall witnesses recounted"};
}

struct CorpusItem {
  Graph graph;
  std::size_t delta;
  std::size_t d;
  bool general;
  bool girth7;
};

std::vector<CorpusItem> build_corpus() {
  std::vector<CorpusItem> corpus;
  RandomSource rng(103, "acceptance/corpus");
  for (int i = 0; i < 200; ++i) {
    const auto n = rng.uniform_int<std::size_t>(200, 2000);
    const auto delta = rng.uniform_int<std::size_t>(2, 5);
    corpus.push_back({spanning_tree(n, delta, rng), delta, 2, true, true});
  }
  for (int i = 0; i < 150; ++i) {
    const auto n = rng.uniform_int<std::size_t>(150, 500);
    const auto delta = rng.uniform_int<std::size_t>(3, 6);
    const auto d = rng.uniform_int<std::size_t>(2, 4);
    corpus.push_back({bounded_density(n, delta, d, rng), delta, d, true, false});
  }
  for (int i = 0; i < 150; ++i) {
    const auto n = rng.uniform_int<std::size_t>(150, 1000);
    const auto delta = rng.uniform_int<std::size_t>(3, 4);
    const auto d = rng.uniform_int<std::size_t>(2, 3);
    corpus.push_back({girth7_subdivided(n, delta, d, rng), delta, d, false, true});
  }
  return corpus;
}

Verdict partition_soundness(const std::vector<CorpusItem>& corpus) {
  const Rational eps(1, 50);
  std::size_t outputs = 0, errors = 0, invalid = 0, cap_mismatch = 0;
  std::string first_problem;
  auto note = [&](const std::string& s) {
    if (first_problem.empty()) first_problem = s;
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& item = corpus[i];
    for (bool girth7 : {false, true}) {
      if (girth7 ? !item.girth7 : !item.general) continue;
      auto r = girth7 ? partition_girth7(item.graph, item.delta, item.d, eps)
                      : partition_general(item.graph, item.delta, item.d, eps);
      if (!r) {
        ++errors;
        note("target " + std::to_string(i) + ": " + to_string(r.error().kind));
        continue;
      }
      ++outputs;
      const std::size_t cap = girth7 ? item.d : 2 * item.d;
      if (!validate_partition(item.graph, r.value()).passes()) {
        ++invalid;
        note("target " + std::to_string(i) + " failed validation");
      }
      if (r.value().back_degree_cap != cap || max_back_degree(item.graph, r.value()) > cap) {
        ++cap_mismatch;
        note("target " + std::to_string(i) + " back-degree cap");
      }
    }
  }
  std::ostringstream d;
  d << corpus.size() << " targets, " << outputs << " partitions, " << invalid << " invalid, " << cap_mismatch
    << " cap mismatches, " << errors << " construction errors";
  if (!first_problem.empty()) d << " (first: " << first_problem << ")";
  return {invalid == 0 && cap_mismatch == 0 && errors == 0 && corpus.size() >= 500, d.str()};
}

Verdict independent_set_bounds(const std::vector<CorpusItem>& corpus) {
  RandomSource rng(104, "acceptance/independent-sets");
  std::size_t checks = 0, violations = 0;
  for (const auto& item : corpus) {
    const Graph& g = item.graph;
    const double big_delta = static_cast<double>(std::max<std::size_t>(g.max_degree(), 1));
    for (std::size_t k = 1; k <= 3; ++k) {
      // subset of vertices with degree at most some cap
      const auto cap = rng.uniform_int<std::size_t>(1, std::max<std::size_t>(g.max_degree(), 1));
      std::vector<Vertex> subset;
      for (Vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) <= cap && rng.bernoulli(0.5)) subset.push_back(v);
      }
      auto u = k_independent_in_subset(g, subset, k, cap);
      ++checks;
      if (static_cast<double>(u.size()) < static_cast<double>(subset.size()) / (cap * std::pow(big_delta, k)) ||
          !oracle::is_k_independent(g, u, k)) {
        ++violations;
      }
      // smallest d with d n >= 2|E|
      const std::size_t d = std::max<std::size_t>(1, (2 * g.m() + g.n() - 1) / g.n());
      auto low = k_independent_low_degree(g, d, k);
      ++checks;
      const double bound = static_cast<double>(g.n()) / (static_cast<double>((d + 1) * d) * std::pow(big_delta, k));
      if (static_cast<double>(low.size()) < bound || !oracle::is_k_independent(g, low, k)) ++violations;
    }
  }
  return {violations == 0, std::to_string(checks) + " greedy sets, " + std::to_string(violations) + " below bound"};
}

struct EmbedAudit {
  std::size_t successes = 0;
  std::size_t bad = 0;
  void attach(ExperimentConfig& cfg) {
    cfg.on_embed_success = [this](const Graph& h, const Graph& g, const std::vector<Vertex>& map) {
      ++successes;
      if (!is_embedding(h, g, map)) ++bad;
    };
  }
};

ExperimentConfig universality_config() {
  ExperimentConfig cfg;
  cfg.mode = Mode::Embed;
  cfg.target = "spanning_tree";
  cfg.n = 400;
  cfg.delta = 4;
  cfg.d = 2;
  cfg.eps = Rational(1, 10);
  cfg.p_grid = parse_p_grid("0.1:0.9:0.1");
  cfg.trials = 30;
  cfg.seed = 6;
  return cfg;
}

ExperimentConfig rainbow_config() {
  ExperimentConfig cfg;
  cfg.mode = Mode::Rainbow;
  cfg.target = "spanning_tree";
  cfg.n = 300;
  cfg.delta = 5;
  cfg.d = 2;
  cfg.alpha = 0.5;
  cfg.p_grid = {0.6};
  cfg.trials = 20;
  cfg.seed = 8;
  return cfg;
}

BipartiteAdjacency circulant(std::size_t n, std::size_t width) {
  BipartiteAdjacency f(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((j + n - i) % n < width) f[i].push_back(j);
    }
  }
  return f;
}

// Per-sample outcome string, so determinism can be checked like a CSV.
std::string k_out_trace(const BipartiteAdjacency& f, std::size_t right, std::size_t k, std::uint64_t seed,
                        std::size_t& perfect) {
  std::ostringstream out;
  perfect = 0;
  for (std::size_t s = 0; s < 30; ++s) {
    RandomSource rng(derive_seed(seed, {s}, "k-out"), "k-out");
    auto m = hopcroft_karp(sample_k_out(f, k, rng), right);
    perfect += m.saturating();
    out << s << ',' << m.size << '\n';
  }
  return out.str();
}

Verdict k_out_matching(std::string* trace) {
  const std::size_t n = 400;
  const std::size_t k = 2 * default_out_degree(n);
  std::size_t dense_ok = 0, adversarial_ok = 0;
  std::string a = k_out_trace(circulant(n, 300), n, k, 107, dense_ok);
  BipartiteAdjacency single(n, std::vector<std::size_t>{0});
  std::string b = k_out_trace(single, n, 1, 108, adversarial_ok);
  if (trace) *trace = a + b;
  std::ostringstream d;
  d << "δ(F)=300, k=" << k << ": " << dense_ok << "/30 perfect; k=1 adversarial: " << adversarial_ok << "/30";
  return {dense_ok >= 29 && adversarial_ok == 0, d.str()};
}

Verdict marginal_frequency() {
  BipartiteAdjacency f{{0, 1, 2, 3, 4}};
  RandomSource rng(110, "acceptance/marginal");
  std::vector<std::size_t> hits(5, 0);
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    auto sample = sample_k_out(f, 2, rng);
    for (auto r : sample[0]) ++hits[r];
  }
  double worst = 0.0;
  std::ostringstream d;
  d << std::fixed << std::setprecision(4) << "frequencies";
  for (auto h : hits) {
    const double fr = static_cast<double>(h) / samples;
    worst = std::max(worst, std::abs(fr - 0.4));
    d << ' ' << fr;
  }
  return {worst <= 0.03, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) expected_fail.insert(std::stoi(item));
    } else {
      std::cerr << "usage: acceptance [--expect-fail 6,8]\n";
      return 2;
    }
  }

  int unexpected = 0;
  auto report = [&](int id, const std::string& name, const std::function<Verdict()>& run) {
    auto start = std::chrono::steady_clock::now();
    Verdict v = run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool known = expected_fail.count(id) > 0;
    if (!v.pass && !known) ++unexpected;
    std::printf("criterion %2d %-26s %s  %s [%.1fs]%s\n", id, name.c_str(), v.pass ? "PASS" : "FAIL", v.detail.c_str(),
                secs, (!v.pass && known) ? " (expected at desk scale)" : "");
    std::fflush(stdout);
  };

  report(1, "density-oracle", density_oracle);
  report(2, "matching-oracle", matching_oracle);
  const auto corpus = build_corpus();
  report(3, "partition-soundness", [&] { return partition_soundness(corpus); });
  report(4, "independent-set-bounds", [&] { return independent_set_bounds(corpus); });

  // Sweeps feed criteria 5, 6, 8 and 9.
  EmbedAudit audit;
  auto faithful = universality_config();
  audit.attach(faithful);
  SweepSummary faithful_run, floor_run, large_run;
  std::string faithful_csv;

  report(6, "universality-signal", [&] {
    faithful_run = run_sweep(faithful);
    faithful_csv = csv_of(faithful_run);
    const auto curve = faithful_run.success_curve();
    const std::size_t inv = inversions(curve);
    std::ostringstream d;
    d << "success" << curve_text(faithful_run) << "; inversions " << inv << "; host_prep_fail at p=0.9 "
      << std::fixed << std::setprecision(3) << faithful_run.points.back().fraction(Outcome::HostPrepFail);
    return Verdict{curve.back() >= 0.9 && inv <= 1, d.str()};
  });
  {
    // informational: same sweep with one vertex per slice
    auto cfg = universality_config();
    cfg.min_slice = 1;
    audit.attach(cfg);
    floor_run = run_sweep(cfg);
    std::printf("   info: criterion 6 with --min-slice 1: success%s; inversions %zu\n", curve_text(floor_run).c_str(),
                inversions(floor_run.success_curve()));
    // informational: faithful construction at a size where slices are nonempty
    auto big = universality_config();
    big.n = 2000;
    big.p_grid = {0.1, 0.5, 0.9};
    big.trials = 5;
    audit.attach(big);
    large_run = run_sweep(big);
    std::printf("   info: faithful n=2000, 5 trials: success%s\n", curve_text(large_run).c_str());
  }

  std::string k_out_first;
  report(7, "k-out-matching", [&] { return k_out_matching(&k_out_first); });

  std::size_t rainbow_successes = 0, rainbow_bad = 0, ledger_violations = 0;
  auto rainbow_cfg = rainbow_config();
  rainbow_cfg.on_rainbow_success = [&](const Graph& h, const ColoredGraph& g, const RainbowState& st) {
    ++rainbow_successes;
    if (!is_rainbow(h, g, st.map)) ++rainbow_bad;
    if (static_cast<double>(st.min_available_colors) < rainbow_cfg.alpha * static_cast<double>(h.m()) / 2.0) {
      ++ledger_violations;
    }
  };
  SweepSummary rainbow_run;
  report(8, "rainbow-pipeline", [&] {
    rainbow_run = run_sweep(rainbow_cfg);
    const double frac = rainbow_run.points[0].fraction(Outcome::Success);
    std::ostringstream d;
    d << std::fixed << std::setprecision(3) << "success " << frac << " over 20 seeds";
    for (Outcome o : kAllOutcomes) {
      if (o != Outcome::Success && rainbow_run.points[0].counts[o] > 0) {
        d << ", " << to_string(o) << ' ' << rainbow_run.points[0].counts[o];
      }
    }
    d << "; " << rainbow_bad << " bad copies, " << ledger_violations << " ledger violations";
    if (!rainbow_run.records.empty() && rainbow_run.records[0].outcome != Outcome::Success) {
      d << "; first failure: " << rainbow_run.records[0].detail.substr(0, 60);
    }
    return Verdict{frac >= 0.8 && rainbow_bad == 0 && ledger_violations == 0, d.str()};
  });

  report(5, "embedding-correctness", [&] {
    return Verdict{audit.bad == 0, std::to_string(audit.successes) + " successes re-checked, " +
                                       std::to_string(audit.bad) + " invalid"};
  });

  report(9, "determinism", [&] {
    auto again6 = universality_config();
    auto again8 = rainbow_config();
    std::string k_out_second;
    k_out_matching(&k_out_second);
    const bool same6 = csv_of(run_sweep(again6)) == faithful_csv;
    const bool same7 = k_out_second == k_out_first;
    const bool same8 = csv_of(run_sweep(again8)) == csv_of(rainbow_run);
    std::ostringstream d;
    d << "criterion 6 " << (same6 ? "identical" : "differs") << ", 7 " << (same7 ? "identical" : "differs")
      << ", 8 " << (same8 ? "identical" : "differs");
    return Verdict{same6 && same7 && same8, d.str()};
  });

  report(10, "k-out-marginal", marginal_frequency);

  return unexpected == 0 ? 0 : 1;
}
