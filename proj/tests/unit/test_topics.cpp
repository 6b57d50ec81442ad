#include <gtest/gtest.h>

#include <fmt/format.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "newsattn/topics.hpp"

using namespace newsattn;

namespace {

EventReaction reaction(std::string event_id, std::vector<NodeWeights::Entry> weights) {
  EventReaction r;
  r.event_id = std::move(event_id);
  for (const auto& [t, w] : weights) r.articles.push_back(t);
  std::sort(r.articles.begin(), r.articles.end());
  r.pagerank = NodeWeights(std::move(weights));
  r.contains_core = true;
  return r;
}

std::vector<double> peaked(std::size_t peak_day) {
  std::vector<double> s(61);
  for (std::size_t t = 0; t < 61; ++t) s[t] = 10.0 + static_cast<double>(t);
  s[peak_day] = 500.0;
  return s;
}

TopicOfAttention topic(std::size_t id, std::size_t events, double prominence, double magnitude, double deviance) {
  TopicOfAttention t;
  t.topic_id = id;
  t.features = {events, prominence, magnitude, deviance, 0};
  return t;
}

}  // namespace

TEST(ReactionSeries, SingleArticleIsItsSeries) {
  auto s = peaked(30);
  auto net = fixture::network({{"a", "b", 500}}, {{"a", s}}, {"a"});
  auto w = reaction_series(reaction(net.event.event_id, {{"a", 1.0}}), net);
  EXPECT_EQ(w.values, s);
  EXPECT_EQ(w.shift, 0);
}

TEST(ReactionSeries, LatePeakIsShiftedBack) {
  auto s = peaked(31);
  auto net = fixture::network({{"a", "b", 500}}, {{"a", s}}, {"a"});
  auto w = reaction_series(reaction(net.event.event_id, {{"a", 1.0}}), net);
  EXPECT_EQ(w.shift, -1);
  EXPECT_EQ(w.values[30], 500.0);
  EXPECT_EQ(w.values[29], s[30 - 0]);
  EXPECT_EQ(w.values[60], s[60]);  // boundary value padding
  EXPECT_EQ(w.values[0], s[1]);
}

TEST(ReactionSeries, EarlyPeakIsShiftedForward) {
  auto s = peaked(29);
  auto net = fixture::network({{"a", "b", 500}}, {{"a", s}}, {"a"});
  auto w = reaction_series(reaction(net.event.event_id, {{"a", 1.0}}), net);
  EXPECT_EQ(w.shift, 1);
  EXPECT_EQ(w.values[30], 500.0);
  EXPECT_EQ(w.values[0], s[0]);
}

TEST(ReactionSeries, WeightedSumMatchesDotProduct) {
  std::vector<double> x(61), y(61);
  for (std::size_t t = 0; t < 61; ++t) {
    x[t] = static_cast<double>(t % 7) * 4;
    y[t] = 100.0 - static_cast<double>(t);
  }
  x[30] = 1000;
  auto net = fixture::network({{"a", "b", 500}}, {{"a", x}, {"b", y}}, {"a"});
  auto w = reaction_series(reaction(net.event.event_id, {{"a", 0.75}, {"b", 0.25}}), net);
  ASSERT_EQ(w.shift, 0);
  for (std::size_t t = 0; t < 61; ++t) EXPECT_DOUBLE_EQ(w.values[t], 0.75 * x[t] + 0.25 * y[t]);
}

TEST(HigherNetwork, Edges) {
  std::vector<EventReaction> rs = {
      reaction("e1", {{"a", 0.5}, {"b", 0.5}}),
      reaction("e2", {{"a", 0.5}, {"c", 0.5}}),
      reaction("e3", {{"a", 0.5}, {"b", 0.5}}),
      reaction("e4", {{"z", 1.0}}),
  };
  auto h = build_higher_network(rs);
  const auto ids = reaction_ids(rs);
  EXPECT_EQ(ids[0], "e1/0");
  EXPECT_EQ(h.size(), 4u);
  EXPECT_DOUBLE_EQ(*h.weight(*h.find("e1/0"), *h.find("e3/0")), 1.0);
  EXPECT_DOUBLE_EQ(*h.weight(*h.find("e1/0"), *h.find("e2/0")), 1.0 / 3.0);
  EXPECT_FALSE(h.weight(*h.find("e4/0"), *h.find("e1/0")).has_value());
  for (const auto& e : h.edges()) {
    EXPECT_GT(e.weight, 0.0);
    EXPECT_NE(e.source, e.target);
  }
}

TEST(Topics, DisconnectedBlocksBecomeTopics) {
  std::vector<EventReaction> rs;
  for (int i = 0; i < 4; ++i) rs.push_back(reaction(fmt::format("x{}", i), {{"p", 0.6}, {"q", 0.4}}));
  for (int i = 0; i < 3; ++i) rs.push_back(reaction(fmt::format("y{}", i), {{"r", 0.5}, {"s", 0.5}}));
  auto topics = detect_topics(build_higher_network(rs), kTopicResolution, 0);
  ASSERT_EQ(topics.size(), 2u);
  std::set<std::size_t> covered;
  for (const auto& t : topics) {
    for (auto i : t.reactions) EXPECT_TRUE(covered.insert(i).second);
  }
  EXPECT_EQ(covered.size(), rs.size());
  EXPECT_TRUE(detect_topics(WeightedGraph{}).empty());
}

TEST(Features, ConstantSeries) {
  std::vector<std::vector<double>> members = {std::vector<double>(61, 100.0)};
  auto f = topic_features(members);
  EXPECT_EQ(f.event_count, 1u);
  EXPECT_DOUBLE_EQ(f.prominence, 100.0);
  EXPECT_DOUBLE_EQ(f.magnitude, 0.0);
  EXPECT_DOUBLE_EQ(f.deviance, 0.0);
}

TEST(Features, HandComputedJump) {
  std::vector<double> w(61, 0.0);
  for (std::size_t t = 0; t < 30; ++t) w[t] = t % 2 ? 40.0 : 50.0;
  w[30] = 150.0;
  std::vector<std::vector<double>> members = {w};
  auto f = topic_features(members);
  EXPECT_DOUBLE_EQ(f.prominence, 50.0);
  EXPECT_DOUBLE_EQ(f.magnitude, 100.0);
  EXPECT_DOUBLE_EQ(f.deviance, 2.0);
  auto g = topic_features(members, {false});  // baseline over days -30..-1
  EXPECT_DOUBLE_EQ(g.prominence, 45.0);
  EXPECT_DOUBLE_EQ(g.magnitude, 105.0);
}

TEST(Features, ZeroMedianMembersLeaveDevianceOnly) {
  std::vector<double> zero(61, 0.0);
  zero[30] = 10.0;
  std::vector<double> steady(61, 20.0);
  steady[30] = 60.0;
  std::vector<std::vector<double>> members = {zero, steady};
  auto f = topic_features(members);
  EXPECT_EQ(f.event_count, 2u);
  EXPECT_DOUBLE_EQ(f.prominence, 10.0);
  EXPECT_DOUBLE_EQ(f.magnitude, 25.0);
  EXPECT_DOUBLE_EQ(f.deviance, 2.0);
  EXPECT_EQ(f.deviance_excluded, 1u);
}

TEST(Ranking, OrderTiesAndSubset) {
  std::vector<TopicOfAttention> ts = {topic(0, 3, 10, 5, 0.5), topic(1, 5, 2, 5, 2.5), topic(2, 5, 7, 1, 0.1)};
  EXPECT_EQ(rank_topics(ts, TopicFeature::EventCount, 10), (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_EQ(rank_topics(ts, TopicFeature::Magnitude, 2), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rank_topics(ts, parse_topic_feature("prominence"), 1), (std::vector<std::size_t>{0}));
  EXPECT_EQ(labeling_subset(ts, 1), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(labeling_subset(ts, 20).size(), 3u);
  EXPECT_THROW(parse_topic_feature("popularity"), ConfigError);
  EXPECT_EQ(topic_feature_name(TopicFeature::Deviance), "deviance");
}

TEST(Export, SchemaFields) {
  std::vector<EventReaction> rs = {reaction("2018-06-01_1", {{"a", 0.7}, {"b", 0.3}}),
                                   reaction("2018-06-02_1", {{"a", 0.2}, {"c", 0.8}})};
  std::map<std::string, EventRecord> events;
  for (const auto* id : {"2018-06-01_1", "2018-06-02_1"}) {
    EventRecord e;
    e.event_id = id;
    e.date = parse_day(std::string(id).substr(0, 10));
    e.category = "Sports";
    e.description = "Something happened.";
    e.core_articles = {"a"};
    events[id] = e;
  }
  TopicOfAttention t;
  t.topic_id = 0;
  t.reactions = {0, 1};
  t.features = topic_features(std::vector<std::vector<double>>{std::vector<double>(61, 1.0)});
  auto doc = nlohmann::json::parse(export_topics_json(std::vector{t}, rs, events));
  EXPECT_EQ(doc["schema_version"], kTopicExportSchemaVersion);
  const auto& card = doc["topics"][0];
  EXPECT_EQ(card["topic_id"], 0);
  EXPECT_EQ(card["core_articles"][0]["title"], "a");
  EXPECT_EQ(card["core_articles"][0]["count"], 2);
  EXPECT_EQ(card["top_articles"][0]["title"], "a");  // 0.9 summed weight
  EXPECT_NEAR(card["top_articles"][0]["weight"].get<double>(), 0.9, 1e-12);
  EXPECT_EQ(card["events"].size(), 2u);
  EXPECT_EQ(card["events"][0]["date"], "2018-06-01");
  for (const auto* key : {"event_count", "prominence", "magnitude", "deviance"}) {
    EXPECT_TRUE(card["features"].contains(key)) << key;
  }
}
