#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "newsattn/community.hpp"
#include "oracles.hpp"

using namespace newsattn;

namespace {

WeightedGraph triangles() {
  GraphBuilder b(false);
  for (auto [u, v] : {std::pair{"a", "b"}, {"b", "c"}, {"a", "c"}, {"d", "e"}, {"e", "f"}, {"d", "f"}, {"c", "d"}}) {
    b.add_edge(u, v, 1.0);
  }
  return std::move(b).build();
}

WeightedGraph complete(std::size_t n) {
  GraphBuilder b(false);
  b.add_nodes(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) b.add_edge(u, v, 1.0);
  }
  return std::move(b).build();
}

}  // namespace

TEST(Cpm, HandExamples) {
  GraphBuilder b(false);
  b.add_edge("a", "b", 1);
  b.add_edge("b", "c", 1);
  b.add_edge("a", "c", 1);
  auto tri = std::move(b).build();
  EXPECT_DOUBLE_EQ(cpm_quality(tri, std::vector<std::uint32_t>{0, 1, 2}, 0.7), 0.0);
  EXPECT_DOUBLE_EQ(cpm_quality(tri, std::vector<std::uint32_t>{0, 0, 0}, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(cpm_quality(tri, std::vector<std::uint32_t>{0, 0, 0}, 0.0), 3.0);
  EXPECT_THROW(cpm_quality(tri, std::vector<std::uint32_t>{0, 0}, 0.5), DataError);
}

TEST(Leiden, TwoTriangles) {
  auto g = triangles();
  auto p = leiden_cpm_best_of(g, 0.5, 0, 10);
  EXPECT_DOUBLE_EQ(p.quality, 3.0);
  EXPECT_NEAR(p.quality, oracle::cpm_optimum(g, 0.5), 1e-12);
  EXPECT_EQ(p.community_count(), 2u);
  EXPECT_EQ(p.membership[*g.find("a")], p.membership[*g.find("c")]);
  EXPECT_NE(p.membership[*g.find("c")], p.membership[*g.find("d")]);
}

TEST(Leiden, EmptyEdgeGraphStaysSingletons) {
  GraphBuilder b(false);
  b.add_nodes(5);
  auto p = leiden_cpm(std::move(b).build(), 0.1, 3);
  EXPECT_EQ(p.community_count(), 5u);
  EXPECT_DOUBLE_EQ(p.quality, 0.0);
}

TEST(Leiden, CompleteGraphTie) {
  auto g = complete(4);
  auto p = leiden_cpm_best_of(g, 1.0, 0, 10);
  EXPECT_NEAR(p.quality, oracle::cpm_optimum(g, 1.0), 1e-12);
  EXPECT_NEAR(p.quality, 0.0, 1e-12);
}

TEST(Leiden, MatchesExhaustiveOptimumOnSmallGraphs) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    auto g = oracle::random_graph(rng, n, 0.55, trial % 4 == 0);
    const double gamma = std::vector<double>{0.05, 0.2, 0.5, 1.0}[trial % 4];
    auto p = leiden_cpm_best_of(g, gamma, 0, 10);
    const double opt = oracle::cpm_optimum(g, gamma);
    EXPECT_NEAR(p.quality, opt, 1e-9) << "trial " << trial;
    EXPECT_LE(p.quality, opt + 1e-9);
    EXPECT_NEAR(p.quality, cpm_quality(g, p.membership, gamma), 1e-9);
  }
}

TEST(Leiden, NeverWorseThanTrivialPartitions) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = oracle::random_graph(rng, 12 + rng() % 20, 0.3, trial % 2 == 0);
    for (double gamma : {0.01, 0.3, 2.0}) {
      auto p = leiden_cpm(g, gamma, trial);
      const double one = cpm_quality(g, std::vector<std::uint32_t>(g.size(), 0), gamma);
      EXPECT_GE(p.quality, std::max(0.0, one) - 1e-9);
    }
  }
}

TEST(Leiden, DeterministicPerSeed) {
  std::mt19937_64 rng(4);
  auto g = oracle::random_graph(rng, 40, 0.15, false);
  auto a = leiden_cpm(g, 0.2, 17);
  auto b = leiden_cpm(g, 0.2, 17);
  EXPECT_EQ(a.membership, b.membership);
  EXPECT_EQ(a.quality, b.quality);
  EXPECT_EQ(a.seed, 17u);
  EXPECT_DOUBLE_EQ(a.resolution, 0.2);
}

TEST(Leiden, DenseCommunityIdsAndValidation) {
  auto p = leiden_cpm(triangles(), 0.5, 1);
  std::set<std::uint32_t> ids(p.membership.begin(), p.membership.end());
  EXPECT_EQ(*ids.rbegin() + 1, ids.size());
  EXPECT_EQ(canonical_membership(std::vector<std::uint32_t>{5, 5, 2, 9}), (std::vector<std::uint32_t>{0, 0, 1, 2}));
  EXPECT_THROW(leiden_cpm(triangles(), -1.0, 0), ConfigError);
}

TEST(Partition, TsvRoundTrip) {
  auto g = triangles();
  auto p = leiden_cpm(g, 0.5, 2);
  std::ostringstream out;
  p.write_tsv(g, out);
  std::istringstream in(out.str());
  auto back = Partition::read_tsv(g, in);
  EXPECT_EQ(back.membership, p.membership);
}
