#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newsattn/community.hpp"
#include "newsattn/event_network.hpp"
#include "newsattn/reactions.hpp"

namespace newsattn {

inline constexpr double kTopicResolution = 0.067;

/// PageRank-weighted view total of a reaction, re-centred so that the largest
/// value within one day of the event date lands on the event index.
struct ReactionSeries {
  std::vector<double> values;
  int shift = 0;  // -1, 0 or +1 positions applied
};

ReactionSeries reaction_series(const EventReaction& reaction, const EventNetwork& network);

/// Stable reaction ids "<event_id>/<k>", k counting reactions of the same event in order.
std::vector<std::string> reaction_ids(std::span<const EventReaction> reactions);

/// Undirected reaction similarity graph; node i is reactions[i], labelled by
/// its reaction id. Pairs sharing no article are never compared.
WeightedGraph build_higher_network(std::span<const EventReaction> reactions);

struct TopicFeatures {
  std::size_t event_count = 0;
  double prominence = 0.0;
  double magnitude = 0.0;
  double deviance = 0.0;
  /// Members left out of the deviance mean because their baseline median is 0.
  std::size_t deviance_excluded = 0;

  bool operator==(const TopicFeatures&) const = default;
};

struct TopicOfAttention {
  std::size_t topic_id = 0;
  std::vector<std::size_t> reactions;  // indices into the reaction list, ascending
  TopicFeatures features;
};

/// One topic per community of leiden_cpm on `higher`; topic ids follow the
/// lowest member index.
std::vector<TopicOfAttention> detect_topics(const WeightedGraph& higher, double resolution = kTopicResolution,
                                            std::uint64_t seed = 0);

struct FeatureParams {
  /// Whether the baseline median window ends on the event day (inclusive) or the day before.
  bool baseline_includes_event_day = true;
};

/// Features over centred member series (event day at index len / 2).
TopicFeatures topic_features(std::span<const std::vector<double>> member_series, const FeatureParams& params = {});

enum class TopicFeature { EventCount, Prominence, Magnitude, Deviance };

/// Accepts event_count, prominence, magnitude, deviance; throws ConfigError otherwise.
TopicFeature parse_topic_feature(std::string_view name);
std::string_view topic_feature_name(TopicFeature feature);

/// Topic ids ordered by the feature, largest first, ties by topic id; at most k.
std::vector<std::size_t> rank_topics(std::span<const TopicOfAttention> topics, TopicFeature feature, std::size_t k);

/// Union of the top-k topics over all four features, in ascending topic id.
std::vector<std::size_t> labeling_subset(std::span<const TopicOfAttention> topics, std::size_t k = 20);

struct ExportOptions {
  std::size_t top_core_articles = 10;
  std::size_t top_articles = 20;
  /// Only these topic ids are exported (all when empty).
  std::vector<std::size_t> subset;
};

inline constexpr int kTopicExportSchemaVersion = 1;

/// JSON document consumed by the labeling interface.
std::string export_topics_json(std::span<const TopicOfAttention> topics, std::span<const EventReaction> reactions,
                               const std::map<std::string, EventRecord>& events, const ExportOptions& options = {});

}  // namespace newsattn
