#include "newsattn/topics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

namespace newsattn {

ReactionSeries reaction_series(const EventReaction& reaction, const EventNetwork& network) {
  std::vector<double> raw(network.window_days, 0.0);
  for (const auto& [title, w] : reaction.pagerank.entries()) {
    auto v = network.graph.find(title);
    if (!v) throw DataError(fmt::format("{}: article '{}' not in the event network", reaction.event_id, title));
    const auto& s = network.series.at(*v);
    for (std::size_t t = 0; t < raw.size(); ++t) raw[t] += w * s[t];
  }

  const auto t0 = static_cast<long>(network.event_index());
  const long n = static_cast<long>(raw.size());
  long peak = t0;
  for (long t : {t0 - 1, t0 + 1}) {
    if (t >= 0 && t < n && raw[t] > raw[peak]) peak = t;
  }
  const long offset = peak - t0;

  ReactionSeries out;
  out.shift = static_cast<int>(-offset);
  out.values.resize(raw.size());
  for (long t = 0; t < n; ++t) out.values[t] = raw[std::clamp(t + offset, 0L, n - 1)];
  return out;
}

std::vector<std::string> reaction_ids(std::span<const EventReaction> reactions) {
  std::vector<std::string> out;
  std::map<std::string, std::size_t> counter;
  for (const auto& r : reactions) out.push_back(fmt::format("{}/{}", r.event_id, counter[r.event_id]++));
  return out;
}

WeightedGraph build_higher_network(std::span<const EventReaction> reactions) {
  GraphBuilder builder(false);
  for (const auto& id : reaction_ids(reactions)) builder.node(id);

  std::unordered_map<std::string, std::vector<NodeId>> index;
  for (NodeId i = 0; i < reactions.size(); ++i) {
    for (const auto& [title, w] : reactions[i].pagerank.entries()) index[title].push_back(i);
  }
  std::vector<char> seen(reactions.size(), 0);
  std::vector<NodeId> candidates;
  for (NodeId i = 0; i < reactions.size(); ++i) {
    candidates.clear();
    for (const auto& [title, w] : reactions[i].pagerank.entries()) {
      for (auto j : index[title]) {
        if (j > i && !seen[j]) {
          seen[j] = 1;
          candidates.push_back(j);
        }
      }
    }
    std::sort(candidates.begin(), candidates.end());
    for (auto j : candidates) {
      seen[j] = 0;
      const double w = weighted_jaccard(reactions[i].pagerank, reactions[j].pagerank);
      if (w > 0.0) builder.add_edge(i, j, w);
    }
  }
  return std::move(builder).build();
}

std::vector<TopicOfAttention> detect_topics(const WeightedGraph& higher, double resolution, std::uint64_t seed) {
  std::vector<TopicOfAttention> out;
  if (higher.empty()) return out;
  const auto partition = leiden_cpm(higher, resolution, seed);
  for (const auto& members : partition.communities()) {
    TopicOfAttention topic;
    topic.topic_id = out.size();
    topic.reactions.assign(members.begin(), members.end());
    topic.features.event_count = members.size();
    out.push_back(std::move(topic));
  }
  return out;
}

TopicFeatures topic_features(std::span<const std::vector<double>> member_series, const FeatureParams& params) {
  TopicFeatures f;
  f.event_count = member_series.size();
  if (member_series.empty()) return f;
  double prominence = 0.0, magnitude = 0.0, deviance = 0.0;
  std::size_t deviance_members = 0;
  for (const auto& w : member_series) {
    const std::size_t t0 = w.size() / 2;
    const std::size_t end = params.baseline_includes_event_day ? t0 + 1 : t0;
    const double base = median(std::span(w).subspan(0, end));
    const double jump = w[t0] - base;
    prominence += base;
    magnitude += jump;
    if (base != 0.0) {
      deviance += jump / base;
      ++deviance_members;
    } else {
      ++f.deviance_excluded;
    }
  }
  const double n = static_cast<double>(member_series.size());
  f.prominence = prominence / n;
  f.magnitude = magnitude / n;
  f.deviance = deviance_members > 0 ? deviance / static_cast<double>(deviance_members) : 0.0;
  return f;
}

TopicFeature parse_topic_feature(std::string_view name) {
  if (name == "event_count") return TopicFeature::EventCount;
  if (name == "prominence") return TopicFeature::Prominence;
  if (name == "magnitude") return TopicFeature::Magnitude;
  if (name == "deviance") return TopicFeature::Deviance;
  throw ConfigError(fmt::format("unknown topic feature '{}'", name));
}

std::string_view topic_feature_name(TopicFeature feature) {
  switch (feature) {
    case TopicFeature::EventCount: return "event_count";
    case TopicFeature::Prominence: return "prominence";
    case TopicFeature::Magnitude: return "magnitude";
    case TopicFeature::Deviance: return "deviance";
  }
  return "";
}

namespace {

double feature_value(const TopicFeatures& f, TopicFeature feature) {
  switch (feature) {
    case TopicFeature::EventCount: return static_cast<double>(f.event_count);
    case TopicFeature::Prominence: return f.prominence;
    case TopicFeature::Magnitude: return f.magnitude;
    case TopicFeature::Deviance: return f.deviance;
  }
  return 0.0;
}

}  // namespace

std::vector<std::size_t> rank_topics(std::span<const TopicOfAttention> topics, TopicFeature feature, std::size_t k) {
  std::vector<const TopicOfAttention*> order;
  for (const auto& t : topics) order.push_back(&t);
  std::sort(order.begin(), order.end(), [&](const TopicOfAttention* a, const TopicOfAttention* b) {
    const double fa = feature_value(a->features, feature);
    const double fb = feature_value(b->features, feature);
    if (fa != fb) return fa > fb;
    return a->topic_id < b->topic_id;
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < order.size() && i < k; ++i) out.push_back(order[i]->topic_id);
  return out;
}

std::vector<std::size_t> labeling_subset(std::span<const TopicOfAttention> topics, std::size_t k) {
  std::set<std::size_t> ids;
  for (auto f : {TopicFeature::EventCount, TopicFeature::Prominence, TopicFeature::Magnitude, TopicFeature::Deviance}) {
    for (auto id : rank_topics(topics, f, k)) ids.insert(id);
  }
  return {ids.begin(), ids.end()};
}

std::string export_topics_json(std::span<const TopicOfAttention> topics, std::span<const EventReaction> reactions,
                               const std::map<std::string, EventRecord>& events, const ExportOptions& options) {
  const std::set<std::size_t> subset(options.subset.begin(), options.subset.end());
  nlohmann::json list = nlohmann::json::array();
  for (const auto& topic : topics) {
    if (!subset.empty() && subset.count(topic.topic_id) == 0) continue;

    std::map<std::string, std::size_t> core_counts;
    std::map<std::string, double> weight_sums;
    std::set<std::string> event_ids;
    for (auto i : topic.reactions) {
      const auto& r = reactions[i];
      event_ids.insert(r.event_id);
      auto ev = events.find(r.event_id);
      for (const auto& [title, w] : r.pagerank.entries()) {
        weight_sums[title] += w;
        if (ev != events.end() && std::binary_search(ev->second.core_articles.begin(),
                                                     ev->second.core_articles.end(), title)) {
          ++core_counts[title];
        }
      }
    }

    std::vector<std::pair<std::string, std::size_t>> cores(core_counts.begin(), core_counts.end());
    std::stable_sort(cores.begin(), cores.end(), [](auto& a, auto& b) { return a.second > b.second; });
    if (cores.size() > options.top_core_articles) cores.resize(options.top_core_articles);
    std::vector<std::pair<std::string, double>> tops(weight_sums.begin(), weight_sums.end());
    std::stable_sort(tops.begin(), tops.end(), [](auto& a, auto& b) { return a.second > b.second; });
    if (tops.size() > options.top_articles) tops.resize(options.top_articles);

    nlohmann::json core_json = nlohmann::json::array();
    for (const auto& [title, count] : cores) core_json.push_back({{"title", title}, {"count", count}});
    nlohmann::json top_json = nlohmann::json::array();
    for (const auto& [title, w] : tops) top_json.push_back({{"title", title}, {"weight", w}});

    std::vector<const EventRecord*> member_events;
    for (const auto& id : event_ids) {
      if (auto ev = events.find(id); ev != events.end()) member_events.push_back(&ev->second);
    }
    std::stable_sort(member_events.begin(), member_events.end(),
                     [](const EventRecord* a, const EventRecord* b) { return a->date < b->date; });
    nlohmann::json event_json = nlohmann::json::array();
    for (const auto* ev : member_events) {
      event_json.push_back({{"event_id", ev->event_id},
                            {"date", format_day(ev->date)},
                            {"category", ev->category},
                            {"description", ev->description}});
    }

    list.push_back({{"topic_id", topic.topic_id},
                    {"core_articles", core_json},
                    {"top_articles", top_json},
                    {"events", event_json},
                    {"features",
                     {{"event_count", topic.features.event_count},
                      {"prominence", topic.features.prominence},
                      {"magnitude", topic.features.magnitude},
                      {"deviance", topic.features.deviance},
                      {"deviance_excluded", topic.features.deviance_excluded}}}});
  }
  nlohmann::json doc{{"schema_version", kTopicExportSchemaVersion}, {"topics", list}};
  return doc.dump(2);
}

}  // namespace newsattn
