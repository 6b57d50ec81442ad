#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <fmt/format.h>

#include "newsattn/graph.hpp"
#include "oracles.hpp"

using namespace newsattn;

TEST(Graph, BuilderDropsSelfLoopsAndMergesUndirectedDuplicates) {
  GraphBuilder b(false);
  b.add_edge("a", "b", 1.0);
  b.add_edge("b", "a", 2.0);
  b.add_edge("a", "a", 5.0);
  auto g = std::move(b).build();
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(*g.weight(*g.find("a"), *g.find("b")), 3.0);
  EXPECT_DOUBLE_EQ(*g.weight(*g.find("b"), *g.find("a")), 3.0);
}

TEST(Graph, EdgelistRoundTrip) {
  GraphBuilder b(true);
  b.add_edge("x y", "z", 2.5);
  b.add_edge("z", "x y", 1.0);
  auto g = std::move(b).build();
  std::ostringstream out;
  g.write_edgelist(out);
  std::istringstream in(out.str());
  EXPECT_EQ(WeightedGraph::read_edgelist(in, true), g);
}

TEST(Graph, UndirectedProjections) {
  GraphBuilder b(true);
  b.add_edge("a", "b", 3.0);
  b.add_edge("b", "a", 4.0);
  b.add_edge("b", "c", 2.0);
  auto g = std::move(b).build();
  auto unit = g.undirected(WeightedGraph::Projection::Unit);
  auto sum = g.undirected(WeightedGraph::Projection::Sum);
  EXPECT_EQ(unit.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(*unit.weight(*unit.find("a"), *unit.find("b")), 1.0);
  EXPECT_DOUBLE_EQ(*sum.weight(*sum.find("a"), *sum.find("b")), 7.0);
}

TEST(PageRank, DirectedCycleIsUniform) {
  GraphBuilder b(true);
  b.add_edge("a", "b", 1);
  b.add_edge("b", "c", 1);
  b.add_edge("c", "a", 1);
  for (double x : pagerank(std::move(b).build())) EXPECT_NEAR(x, 1.0 / 3.0, 1e-9);
}

TEST(PageRank, SingleNode) {
  GraphBuilder b(true);
  b.node("only");
  EXPECT_EQ(pagerank(std::move(b).build()), std::vector<double>{1.0});
}

TEST(PageRank, StarMatchesDenseSolve) {
  GraphBuilder b(true);
  for (int i = 0; i < 4; ++i) b.add_edge(fmt::format("leaf{}", i), "hub", 1.0);
  auto g = std::move(b).build();
  auto x = pagerank(g);
  auto expected = oracle::dense_pagerank(g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(x[i], expected[i], 1e-8);
  EXPECT_GT(x[*g.find("hub")], x[*g.find("leaf0")]);
}

TEST(PageRank, RandomWeightedGraphsMatchDenseSolve) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    GraphBuilder b(trial % 2 == 0);
    b.add_nodes(n);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u != v && rng() % 3 == 0) b.add_edge(u, v, w(rng));
      }
    }
    auto g = std::move(b).build();
    auto x = pagerank(g, {0.85, 1e-13, 10000});
    auto expected = oracle::dense_pagerank(g);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(x[i], expected[i], 1e-10);
      EXPECT_GE(x[i], 0.0);
      total += x[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(PageRank, NonConvergenceCarriesLastIterate) {
  GraphBuilder b(true);
  b.add_edge("a", "b", 1);
  b.add_edge("b", "c", 5);
  auto g = std::move(b).build();
  try {
    pagerank(g, {0.85, 1e-15, 1});
    FAIL() << "expected PageRankNotConverged";
  } catch (const PageRankNotConverged& e) {
    EXPECT_EQ(e.last_iterate().size(), 3u);
    EXPECT_EQ(e.iterations(), 1);
  }
}

TEST(PageRank, RejectsEmptyGraph) { EXPECT_THROW(pagerank(WeightedGraph{}), ConfigError); }

TEST(WeightedJaccard, Examples) {
  NodeWeights a({{"a", 0.5}, {"b", 0.5}});
  NodeWeights c({{"a", 0.5}, {"c", 0.5}});
  NodeWeights d({{"x", 1.0}});
  EXPECT_DOUBLE_EQ(weighted_jaccard(a, a), 1.0);
  EXPECT_DOUBLE_EQ(weighted_jaccard(a, d), 0.0);
  EXPECT_DOUBLE_EQ(weighted_jaccard(a, c), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(weighted_jaccard(NodeWeights{}, NodeWeights{}), 0.0);
  EXPECT_DOUBLE_EQ(weighted_jaccard(NodeWeights({{"z", 0.0}}), NodeWeights({{"z", 0.0}})), 0.0);
}

TEST(WeightedJaccard, NegativeWeightIsAnError) {
  EXPECT_THROW(NodeWeights({{"a", -0.1}}), DataError);
}

TEST(WeightedJaccard, MatchesSetJaccardAndOracleOnRandomInputs) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<std::string, double> ma, mb;
    std::set<std::string> sa, sb;
    std::vector<NodeWeights::Entry> ea, eb, ua, ub;
    for (int k = 0; k < 8; ++k) {
      const auto key = fmt::format("k{}", k);
      if (rng() % 2) {
        ma[key] = w(rng);
        sa.insert(key);
        ea.emplace_back(key, ma[key]);
        ua.emplace_back(key, 1.0);
      }
      if (rng() % 2) {
        mb[key] = w(rng);
        sb.insert(key);
        eb.emplace_back(key, mb[key]);
        ub.emplace_back(key, 1.0);
      }
    }
    NodeWeights a(ea), b(eb);
    EXPECT_NEAR(weighted_jaccard(a, b), oracle::weighted_jaccard(ma, mb), 1e-12);
    EXPECT_EQ(weighted_jaccard(a, b), weighted_jaccard(b, a));

    std::set<std::string> inter, uni;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.end()));
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(uni, uni.end()));
    const double set_j = uni.empty() ? 0.0 : static_cast<double>(inter.size()) / uni.size();
    EXPECT_NEAR(weighted_jaccard(NodeWeights(ua), NodeWeights(ub)), set_j, 1e-15);

    auto scaled = [](std::vector<NodeWeights::Entry> e) {
      for (auto& [k, v] : e) v *= 4.0;  // power of two keeps the ratio exact
      return NodeWeights(e);
    };
    EXPECT_EQ(weighted_jaccard(scaled(ea), scaled(eb)), weighted_jaccard(a, b));
  }
}
