#include <gtest/gtest.h>

#include <random>

#include "newsattn/partition_similarity.hpp"
#include "oracles.hpp"

using namespace newsattn;

using M = std::vector<std::uint32_t>;

TEST(Ami, IdenticalAndRelabelled) {
  M p = {0, 0, 1, 1, 2, 2, 2};
  M q = {7, 7, 3, 3, 1, 1, 1};
  EXPECT_DOUBLE_EQ(ami(p, p), 1.0);
  EXPECT_DOUBLE_EQ(ami(p, q), 1.0);
}

TEST(Ami, SingletonsVersusOneCommunity) {
  M single(10), one(10, 0);
  for (std::uint32_t i = 0; i < 10; ++i) single[i] = i;
  EXPECT_NEAR(ami(single, one), oracle::ami(single, one), 1e-12);
  EXPECT_NEAR(ami(single, one), 0.0, 1e-12);
}

TEST(Ami, ReferenceValues) {
  // Computed offline with a reference implementation (scikit-learn, arithmetic normalizer).
  EXPECT_NEAR(ami(M{0, 0, 0, 1, 1, 1}, M{0, 0, 1, 1, 1, 2}), 0.1828238172792423, 1e-12);
  EXPECT_NEAR(ami(M{0, 0, 1, 1, 2, 2}, M{0, 1, 0, 1, 0, 1}), -0.4481886872563349, 1e-12);
  EXPECT_NEAR(ami(M{0, 0, 0, 0, 1, 1, 2, 2, 2, 3}, M{1, 1, 0, 0, 0, 2, 2, 2, 3, 3}), 0.23858391007234978, 1e-12);
}

TEST(Ami, SizeMismatch) { EXPECT_THROW(ami(M{0, 1}, M{0}), DataError); }

TEST(ElementCentric, IdenticalRelabelledAndReference) {
  M p = {0, 0, 0, 1, 1, 1};
  EXPECT_DOUBLE_EQ(element_centric(p, p), 1.0);
  EXPECT_DOUBLE_EQ(element_centric(p, M{4, 4, 4, 2, 2, 2}), 1.0);
  // Reference values computed offline with CluSim (alpha 0.9).
  EXPECT_NEAR(element_centric(p, M{0, 0, 1, 1, 1, 2}), 0.5555555555555555, 1e-12);
  EXPECT_NEAR(element_centric(M{0, 0, 1, 1, 2, 2}, M{0, 1, 0, 1, 0, 1}), 0.3333333333333333, 1e-12);
  EXPECT_NEAR(element_centric(M{0, 0, 0, 0, 1, 1, 2, 2, 2, 3}, M{1, 1, 0, 0, 0, 2, 2, 2, 3, 3}), 0.4833333333333333,
              1e-12);
}

TEST(ElementCentric, Validation) {
  EXPECT_THROW(element_centric(M{0, 1}, M{0}), DataError);
  EXPECT_THROW(element_centric(M{0}, M{0}, 1.0), ConfigError);
  EXPECT_THROW(element_centric(M{0}, M{0}, 0.0), ConfigError);
}

TEST(Similarity, RandomInputsMatchOraclesAndAreSymmetric) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 14;
    auto a = oracle::random_membership(rng, n, 1 + rng() % 5);
    auto b = oracle::random_membership(rng, n, 1 + rng() % 5);
    EXPECT_NEAR(ami(a, b), oracle::ami(a, b), 1e-12);
    EXPECT_NEAR(element_centric(a, b), oracle::element_centric(a, b), 1e-12);
    EXPECT_NEAR(element_centric(a, b, 0.5), oracle::element_centric(a, b, 0.5), 1e-12);
    EXPECT_NEAR(ami(a, b), ami(b, a), 1e-12);
    EXPECT_NEAR(element_centric(a, b), element_centric(b, a), 1e-12);
    M shifted = a;
    for (auto& x : shifted) x = 10 - x;
    EXPECT_NEAR(ami(shifted, b), ami(a, b), 1e-12);
    EXPECT_NEAR(element_centric(shifted, b), element_centric(a, b), 1e-12);
  }
}
