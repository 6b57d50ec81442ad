#include <gtest/gtest.h>

#include "newsattn/correlation.hpp"
#include "newsattn/synth.hpp"
#include "tempdir.hpp"

using namespace newsattn;

namespace {

SynthConfig small(double noise = 1.0) {
  SynthConfig c;
  c.events = 4;
  c.topics = 2;
  c.topic_articles = 10;
  c.background_communities = 2;
  c.community_articles = 10;
  c.noise = noise;
  c.seed = 3;
  return c;
}

}  // namespace

TEST(SynthConfig, ValidationAndJson) {
  SynthConfig c = small();
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(SynthConfig::from_json(c.to_json()), c);
  auto bad = c;
  bad.p_in = 1.5;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = c;
  bad.spike_amplitude = -1;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = c;
  bad.events = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Synth, SeedFixedGenerationIsByteIdentical) {
  fixture::TempDir a("synth_a"), b("synth_b");
  write_corpus(generate_corpus(small()), a.path());
  write_corpus(generate_corpus(small()), b.path());
  EXPECT_EQ(fixture::snapshot(a.path()), fixture::snapshot(b.path()));
  auto other = small();
  other.seed = 4;
  fixture::TempDir c("synth_c");
  write_corpus(generate_corpus(other), c.path());
  EXPECT_NE(fixture::snapshot(a.path()), fixture::snapshot(c.path()));
}

TEST(Synth, CorpusPassesIngestChecks) {
  auto corpus = generate_corpus(small());
  Diagnostics diag;
  auto nets = build_corpus_networks(corpus, diag);
  ASSERT_EQ(nets.size(), corpus.config.events);
  for (const auto& net : nets) {
    EXPECT_FALSE(net.degenerate);
    EXPECT_TRUE(net.dropped_core.empty());
    for (const auto& title : corpus.spiking_articles(net.event.event_id)) {
      EXPECT_TRUE(net.graph.find(title).has_value()) << title;
    }
  }
  // Page views of aliased titles come back merged onto the canonical title.
  ASSERT_FALSE(corpus.aliases.empty());
  for (const auto& [canonical, alias] : corpus.aliases) {
    EXPECT_EQ(corpus.redirects.resolve(alias), canonical);
  }
}

TEST(Synth, NoiselessSpikesAreFullyCorrelated) {
  auto corpus = generate_corpus(small(0.0));
  Diagnostics diag;
  auto nets = build_corpus_networks(corpus, diag);
  for (const auto& net : nets) {
    const auto spiking = corpus.spiking_articles(net.event.event_id);
    auto w = rolling_correlations(net);
    std::size_t checked = 0;
    for (std::size_t p = 0; p < w.pairs.size(); ++p) {
      const auto& u = net.graph.label(w.pairs[p].first);
      const auto& v = net.graph.label(w.pairs[p].second);
      if (!std::binary_search(spiking.begin(), spiking.end(), u) || !std::binary_search(spiking.begin(), spiking.end(), v)) {
        continue;
      }
      // Views are whole counts, so proportional series agree only up to rounding.
      for (std::size_t l = 24; l <= 30; ++l) EXPECT_NEAR(w.value(p, l), 1.0, 1e-6);
      ++checked;
    }
    EXPECT_GT(checked, 0u);
  }
}

TEST(Synth, NoiselessRecoveryIsExact) {
  auto c = small(0.0);
  c.events = 6;
  auto report = run_benchmark(generate_corpus(c));
  EXPECT_GE(report.exact_fraction, 0.95);
  EXPECT_DOUBLE_EQ(report.reaction_ecs_mean, 1.0);
}

TEST(Synth, SetSimilarityOfPerfectDetection) {
  std::vector<std::string> planted = {"a", "b", "c"};
  EXPECT_DOUBLE_EQ(set_element_centric(planted, planted), 1.0);
  EXPECT_DOUBLE_EQ(set_ami(planted, planted), 1.0);
  EXPECT_LT(set_element_centric(std::vector<std::string>{"a", "x"}, planted), 1.0);
}
