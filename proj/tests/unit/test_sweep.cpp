#include <gtest/gtest.h>

#include <random>

#include "newsattn/partition_similarity.hpp"
#include "newsattn/sweep.hpp"

using namespace newsattn;

namespace {

/// Four planted blocks of eight nodes; dense inside, sparse between.
std::pair<WeightedGraph, std::vector<std::uint32_t>> planted(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution in(0.8), out(0.05);
  GraphBuilder b(false);
  b.add_nodes(32);
  std::vector<std::uint32_t> truth(32);
  for (NodeId u = 0; u < 32; ++u) {
    truth[u] = u / 8;
    for (NodeId v = u + 1; v < 32; ++v) {
      if (u / 8 == v / 8 ? in(rng) : out(rng)) b.add_edge(u, v, 1.0);
    }
  }
  return {std::move(b).build(), truth};
}

}  // namespace

TEST(Grid, GeometricDefaults) {
  auto v = GeometricGrid{}.values();
  ASSERT_EQ(v.size(), 40u);
  EXPECT_NEAR(v.front(), std::exp(-9.0), 1e-15);
  EXPECT_DOUBLE_EQ(v.back(), 1.0);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_NEAR(v[i] / v[i - 1], v[1] / v[0], 1e-12);
}

TEST(Sweep, RejectsShortOrUnsortedGrid) {
  auto [g, truth] = planted(1);
  std::vector<WeightedGraph> graphs{g};
  EXPECT_THROW(resolution_sweep(graphs, std::vector<double>{0.5}), ConfigError);
  EXPECT_THROW(resolution_sweep(graphs, std::vector<double>{0.5, 0.1}), ConfigError);
}

TEST(Sweep, PlantedGraphsHaveInteriorMaximum) {
  std::vector<WeightedGraph> graphs;
  std::vector<std::vector<std::uint32_t>> truths;
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto [g, t] = planted(s);
    graphs.push_back(std::move(g));
    truths.push_back(std::move(t));
  }
  GeometricGrid grid{0.01, 5.0, 25};
  SweepOptions options;
  options.keep_partitions = true;
  auto result = resolution_sweep(graphs, grid.values(), options);
  ASSERT_EQ(result.status, SweepStatus::Interior);
  ASSERT_TRUE(result.chosen_index.has_value());
  EXPECT_GT(*result.chosen_index, 0u);
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    EXPECT_GE(element_centric(result.partitions[g][*result.chosen_index].membership, truths[g]), 0.9);
  }
  EXPECT_EQ(result.ami.size(), grid.points - 1);
  EXPECT_FALSE(result.to_json().empty());
}

TEST(Sweep, NarrowGridWithoutInteriorIsFlat) {
  auto [g, truth] = planted(2);
  std::vector<WeightedGraph> graphs{g};
  auto result = resolution_sweep(graphs, GeometricGrid{0.3, 0.4, 3}.values());
  EXPECT_EQ(result.status, SweepStatus::Flat);
  EXPECT_FALSE(result.chosen.has_value());
}
