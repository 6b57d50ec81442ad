#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "newsattn/clickstream.hpp"
#include "newsattn/event_network.hpp"
#include "newsattn/events.hpp"
#include "newsattn/reactions.hpp"
#include "newsattn/series_store.hpp"
#include "newsattn/titles.hpp"
#include "newsattn/topics.hpp"

namespace newsattn {

/// Planted-partition corpus generator settings.
///
/// Every event gets its own hub article (the single core article) linked to a
/// spiking community and to event-local background communities. The spiking
/// community is the event's topic group: events of the same topic share it,
/// which plants the topic structure.
struct SynthConfig {
  std::size_t events = 20;
  std::size_t topics = 5;
  std::size_t topic_articles = 20;
  std::size_t background_communities = 4;
  std::size_t community_articles = 20;
  double p_in = 0.7;
  double p_out = 0.02;
  /// Probability that the hub links to a given background article.
  double hub_link_prob = 1.0;
  std::int64_t intra_clicks_min = 300;
  std::int64_t intra_clicks_max = 3000;
  std::int64_t inter_clicks_min = 120;
  std::int64_t inter_clicks_max = 600;
  std::int64_t hub_clicks_min = 150;
  std::int64_t hub_clicks_max = 1500;
  double base_views_min = 200.0;
  double base_views_max = 5000.0;
  /// Extra multiple of the base rate on the event day; halves on each following spike day.
  double spike_amplitude = 10.0;
  std::size_t spike_days = 4;
  /// 1 = Poisson day noise, 0 = noiseless, larger values exaggerate it.
  double noise = 1.0;
  std::string start_date = "2018-01-01";
  std::size_t event_spacing = 64;
  std::uint64_t seed = 1;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  std::string to_json() const;
  static SynthConfig from_json(const std::string& text);
  bool operator==(const SynthConfig&) const = default;
};

struct PlantedArticle {
  std::string event_id;
  std::string article;
  std::size_t community = 0;  // 0 is the spiking community
};

struct SynthCorpus {
  SynthConfig config;
  std::vector<EventRecord> events;
  /// Portal wikitext per day, keyed by "YYYY-MM-DD".
  std::map<std::string, std::string> wikitext;
  std::vector<ClickRecord> clicks;
  DailySeriesStore views;
  RedirectMap redirects;
  /// Canonical title -> alias receiving part of its page views in the dumps.
  std::map<std::string, std::string> aliases;
  std::vector<PlantedArticle> truth;
  std::map<std::string, std::size_t> event_topic;
  Day first_day{};
  Day last_day{};

  ClickstreamStore click_store() const;
  /// Articles of the spiking community of `event_id`, sorted.
  std::vector<std::string> spiking_articles(const std::string& event_id) const;
};

SynthCorpus generate_corpus(const SynthConfig& config);

/// Writes the corpus in the ingest layout:
///   events/YYYY-MM-DD.wiki, clickstream/clickstream-enwiki-YYYY-MM.tsv,
///   pageviews/pageviews-YYYYMMDD-000000, redirects.tsv, truth.tsv,
///   topics_truth.tsv and synth_config.json.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

/// Event networks built through the regular ingest path.
std::vector<EventNetwork> build_corpus_networks(const SynthCorpus& corpus, Diagnostics& diag);

struct EventRecovery {
  std::string event_id;
  std::size_t reactions = 0;
  /// Best element-centric / AMI agreement between any reaction and the spiking community.
  double best_ecs = 0.0;
  double best_ami = 0.0;
  bool exact = false;
  ComparisonResult excess;
};

struct RecoveryReport {
  std::vector<EventRecovery> events;
  double reaction_ecs_mean = 0.0;
  double reaction_ami_mean = 0.0;
  double exact_fraction = 0.0;
  std::size_t topics = 0;
  double topic_ecs = 0.0;
  double topic_ami = 0.0;
  /// Share of events with temporal excess >= the baseline's.
  double temporal_ge_structural = 0.0;
  double temporal_ge_navigational = 0.0;
  /// Same shares using the distinct-article temporal excess.
  double distinct_ge_structural = 0.0;
  double distinct_ge_navigational = 0.0;
  /// Over events where both sides are positive.
  double geo_mean_structural = 0.0;
  double geo_mean_navigational = 0.0;
  double median_structural = 0.0;
  double median_navigational = 0.0;

  std::string to_json() const;
};

/// Agreement of one detected article set with one planted set, scored over
/// their union (every other element a singleton on both sides).
double set_element_centric(const std::vector<std::string>& detected, const std::vector<std::string>& planted);
double set_ami(const std::vector<std::string>& detected, const std::vector<std::string>& planted);

/// Scores detections against the planted truth. `reactions` holds every
/// event's reactions in event order; topics index into it.
RecoveryReport evaluate_recovery(const SynthCorpus& corpus, const std::vector<EventReaction>& reactions,
                                 const std::vector<TopicOfAttention>& topics,
                                 const std::vector<ComparisonResult>& comparisons);

struct BenchParams {
  ReactionParams reaction;
  ComparisonParams comparison;
  double topic_resolution = kTopicResolution;
};

/// Full pipeline on a generated corpus followed by evaluate_recovery.
RecoveryReport run_benchmark(const SynthCorpus& corpus, const BenchParams& params = {});

/// Four 8-cliques in a chain, every article sharing one noisy view series.
EventNetwork uniform_correlation_fixture(std::uint64_t seed = 7);

/// Five 8-cliques; one article of each also belongs to a cross-clique 5-clique
/// whose members alone spike at the event. `spikers` receives their titles.
EventNetwork orthogonal_spike_fixture(std::uint64_t seed, std::vector<std::string>* spikers = nullptr);

}  // namespace newsattn
