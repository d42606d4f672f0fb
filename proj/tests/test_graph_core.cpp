#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "oracles.hpp"
#include "spanembed/generators.hpp"
#include "spanembed/structure.hpp"

using namespace spanembed;
using namespace testing_support;

TEST(GraphType, RejectsLoopsDuplicatesAndRange) {
  EXPECT_THROW(make_graph(3, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(make_graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(make_graph(3, {{0, 3}}), std::invalid_argument);
}

TEST(GraphType, AdjacencyMatchesEdges) {
  Graph g = make_graph(5, {{3, 1}, {0, 4}, {1, 2}});
  EXPECT_EQ(g.m(), 3u);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_TRUE(g.has_edge(1, 3));
  EXPECT_TRUE(g.has_edge(3, 1));
  EXPECT_FALSE(g.has_edge(0, 1));
  std::size_t total = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    total += g.degree(v);
    EXPECT_TRUE(std::is_sorted(g.neighbors(v).begin(), g.neighbors(v).end()));
  }
  EXPECT_EQ(total, 2 * g.m());
}

TEST(Ball, IncludesSourceAndRespectsRadius) {
  Graph g = path(6);
  auto b = ball(g, 2, 2);
  std::sort(b.begin(), b.end());
  EXPECT_EQ(b, (std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_EQ(ball(g, 0, 0), (std::vector<Vertex>{0}));
}

TEST(Gnp, ExtremeProbabilities) {
  RandomSource rng(3);
  EXPECT_EQ(gnp_generate(4, 1.0, rng).m(), 6u);
  EXPECT_EQ(gnp_generate(5, 0.0, rng).m(), 0u);
  EXPECT_THROW(gnp_generate(5, 1.5, rng), std::invalid_argument);
}

TEST(Gnp, EdgeCountConcentrates) {
  RandomSource rng(7);
  Graph g = gnp_generate(2000, 0.5, rng);
  const double mean = 2000.0 * 1999.0 / 2.0 * 0.5;
  const double sd = std::sqrt(mean * 0.5);
  EXPECT_LE(std::abs(static_cast<double>(g.m()) - mean), 4.0 * sd);
}

TEST(Gnp, DeterministicPerSeed) {
  RandomSource a(11), b(11);
  Graph ga = gnp_generate(200, 0.2, a), gb = gnp_generate(200, 0.2, b);
  ASSERT_EQ(ga.m(), gb.m());
  EXPECT_TRUE(std::equal(ga.edges().begin(), ga.edges().end(), gb.edges().begin()));
}

TEST(GnpSplit, DensityFormula) {
  EXPECT_DOUBLE_EQ(split_density(0.0), 0.0);
  EXPECT_DOUBLE_EQ(split_density(0.75), 0.5);
  EXPECT_NEAR(split_density(0.19), 0.1, 1e-12);
  auto hosts = gnp_split_generate(30, 0.0, RandomSource(1));
  EXPECT_EQ(hosts.g1.m() + hosts.g2.m(), 0u);
}

TEST(GnpSplit, UnionMarginalIsP) {
  const std::size_t n = 200, trials = 200;
  const double p = 0.3;
  std::vector<std::uint32_t> hits(n * n, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    auto hosts = gnp_split_generate(n, p, RandomSource(derive_seed(5, {t}, "split")));
    Graph u = graph_union(hosts.g1, hosts.g2);
    for (const auto& e : u.edges()) ++hits[e.u * n + e.v];
  }
  std::size_t pairs = 0, within = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++pairs;
      within += std::abs(static_cast<double>(hits[i * n + j]) / trials - p) <= 0.1;
    }
  }
  EXPECT_GE(static_cast<double>(within), 0.99 * static_cast<double>(pairs));
}

TEST(Gcnp, ColorsInRangeAndUniform) {
  RandomSource rng(1);
  auto tri = gcnp_generate(3, 1.0, 1, rng);
  for (auto c : tri.colors()) EXPECT_EQ(c, 1u);
  auto wide = gcnp_generate(3, 1.0, 1000000, rng);
  for (auto c : wide.colors()) {
    EXPECT_GE(c, 1u);
    EXPECT_LE(c, 1000000u);
  }
  auto g = gcnp_generate(1000, 0.1, 5, rng);
  std::map<std::uint32_t, std::size_t> freq;
  for (auto c : g.colors()) ++freq[c];
  const double expected = static_cast<double>(g.base().m()) / 5.0;
  ASSERT_EQ(freq.size(), 5u);
  for (auto [c, f] : freq) EXPECT_LE(std::abs(static_cast<double>(f) - expected), 0.05 * expected) << c;
}

TEST(MaxDensity, Examples) {
  EXPECT_EQ(max_density(make_graph(2, {{0, 1}})), Rational(1));
  EXPECT_EQ(max_density(path(7)), Rational(12, 7));
  EXPECT_EQ(max_density(complete(4)), Rational(3));
  Graph k4_pendant = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
  EXPECT_EQ(max_density(k4_pendant), Rational(3));
  EXPECT_EQ(oracle::max_density(k4_pendant), Rational(3));
  EXPECT_EQ(max_density(Graph(4)), Rational(0));
}

TEST(MaxDensity, MatchesBruteForceOnSmallGraphs) {
  RandomSource rng(2024);
  for (int i = 0; i < 120; ++i) {
    std::size_t n = rng.uniform_int<std::size_t>(1, 10);
    Graph g = random_graph(n, rng.uniform01(), rng);
    ASSERT_EQ(max_density(g), oracle::max_density(g)) << "instance " << i;
  }
}

TEST(MaxDensity, Bounds) {
  RandomSource rng(9);
  for (int i = 0; i < 30; ++i) {
    Graph g = random_graph(40, 0.1, rng);
    Rational d = max_density(g);
    EXPECT_LE(Rational(2 * static_cast<std::int64_t>(g.m()), 40), d);
    EXPECT_LE(d, Rational(static_cast<std::int64_t>(g.max_degree())));
  }
}

TEST(DensestSubgraph, WitnessAchievesDensity) {
  Graph g = make_graph(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  auto ds = densest_subgraph(g);
  EXPECT_EQ(ds.density, Rational(3));
  EXPECT_EQ(ds.vertices, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Girth, Examples) {
  EXPECT_EQ(girth(cycle(5)), 5u);
  EXPECT_FALSE(girth(path(8)).has_value());
  EXPECT_EQ(girth(petersen()), 5u);
  EXPECT_EQ(oracle::girth(petersen()), 5u);
}

TEST(Girth, MatchesBruteForce) {
  RandomSource rng(77);
  for (int i = 0; i < 150; ++i) {
    std::size_t n = rng.uniform_int<std::size_t>(1, 9);
    Graph g = random_graph(n, rng.uniform01() * 0.6, rng);
    ASSERT_EQ(girth(g), oracle::girth(g)) << "instance " << i;
  }
}

TEST(Girth, CycleWitnessIsACycle) {
  RandomSource rng(78);
  for (int i = 0; i < 50; ++i) {
    Graph g = random_graph(12, 0.25, rng);
    auto c = shortest_cycle(g);
    if (!c) continue;
    ASSERT_EQ(c->size(), *girth(g));
    for (std::size_t j = 0; j < c->size(); ++j) {
      EXPECT_TRUE(g.has_edge((*c)[j], (*c)[(j + 1) % c->size()]));
    }
    auto sorted = *c;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  }
}

TEST(Degeneracy, StarAndCycle) {
  auto star_order = degeneracy_order(star(5), 1);
  ASSERT_TRUE(star_order);
  EXPECT_LE(oracle::max_back_degree(star(5), star_order.value()), 1u);
  auto c6 = degeneracy_order(cycle(6), 2);
  ASSERT_TRUE(c6);
  EXPECT_LE(oracle::max_back_degree(cycle(6), c6.value()), 2u);
}

TEST(Degeneracy, K4FailsWithWholeWitness) {
  auto r = degeneracy_order(complete(4), 2);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().witness, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Degeneracy, OrdersValidOrWitnessIsCore) {
  RandomSource rng(31);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_graph(15, 0.3, rng);
    std::size_t d = rng.uniform_int<std::size_t>(1, 4);
    auto r = degeneracy_order(g, d);
    if (r) {
      EXPECT_EQ(r.value().size(), g.n());
      EXPECT_LE(oracle::max_back_degree(g, r.value()), d);
    } else {
      EXPECT_GT(oracle::induced_min_degree(g, r.error().witness), d);
    }
  }
}

TEST(KIndependent, Examples) {
  EXPECT_EQ(k_independent_in_subset(Graph(5), {0, 1, 2, 3, 4}, 2, 0).size(), 5u);
  EXPECT_EQ(k_independent_in_subset(path(5), {0, 1, 2, 3, 4}, 2, 2), (std::vector<Vertex>{0, 3}));
  EXPECT_EQ(k_independent_low_degree(Graph(6), 1, 3).size(), 6u);
  EXPECT_EQ(k_independent_low_degree(cycle(6), 2, 1), (std::vector<Vertex>{0, 2, 4}));
  EXPECT_THROW(k_independent_in_subset(star(3), {0, 1}, 1, 2), DegreeCapViolated);
  EXPECT_THROW(k_independent_low_degree(complete(5), 2, 1), PreconditionViolated);
}

TEST(KIndependent, DistanceAndSizeBounds) {
  RandomSource rng(55);
  for (int i = 0; i < 60; ++i) {
    Graph g = random_graph(40, 0.06, rng);
    const std::size_t delta = std::max<std::size_t>(g.max_degree(), 2);
    const std::size_t k = rng.uniform_int<std::size_t>(1, 3);
    std::vector<Vertex> subset;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (rng.bernoulli(0.5)) subset.push_back(v);
    }
    auto u = k_independent_in_subset(g, subset, k, g.max_degree());
    EXPECT_TRUE(oracle::is_k_independent(g, u, k));
    const double bound = static_cast<double>(subset.size()) /
                         (static_cast<double>(std::max<std::size_t>(g.max_degree(), 1)) * std::pow(delta, k));
    EXPECT_GE(static_cast<double>(u.size()), std::ceil(bound - 1e-9));

    const std::size_t d = (2 * g.m() + g.n() - 1) / g.n() + 1;
    auto low = k_independent_low_degree(g, d, k);
    EXPECT_TRUE(oracle::is_k_independent(g, low, k));
    for (Vertex v : low) EXPECT_LE(g.degree(v), d);
    EXPECT_GE(static_cast<double>(low.size()),
              std::ceil(static_cast<double>(g.n()) / ((d + 1) * d * std::pow(delta, k)) - 1e-9));
  }
}
