#include "newsattn/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "newsattn/partition_similarity.hpp"

namespace newsattn {

void SynthConfig::validate() const {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("{} must lie in [0, 1]", name));
  };
  prob(p_in, "p_in");
  prob(p_out, "p_out");
  prob(hub_link_prob, "hub_link_prob");
  if (events == 0 || topics == 0) throw ConfigError("need at least one event and one topic");
  if (topic_articles == 0) throw ConfigError("topic_articles must be positive");
  if (intra_clicks_min > intra_clicks_max || inter_clicks_min > inter_clicks_max || hub_clicks_min > hub_clicks_max) {
    throw ConfigError("click ranges must have min <= max");
  }
  if (intra_clicks_min < kClickstreamMinCount || inter_clicks_min < kClickstreamMinCount ||
      hub_clicks_min < kClickstreamMinCount) {
    throw ConfigError(fmt::format("click counts below {} never appear in the dumps", kClickstreamMinCount));
  }
  if (!(base_views_min > 0.0) || base_views_min > base_views_max) throw ConfigError("bad base view range");
  if (!(spike_amplitude >= 0.0)) throw ConfigError("spike_amplitude must be non-negative");
  if (!(noise >= 0.0)) throw ConfigError("noise must be non-negative");
  if (spike_days == 0 || spike_days > kEventDayIndex) throw ConfigError("bad spike_days");
  if (event_spacing <= kEventDayIndex + spike_days || (topics - 1) * 3 >= event_spacing) {
    throw ConfigError("event_spacing too small for non-overlapping windows");
  }
  parse_day(start_date);
}

std::string SynthConfig::to_json() const {
  nlohmann::json j{{"events", events},
                   {"topics", topics},
                   {"topic_articles", topic_articles},
                   {"background_communities", background_communities},
                   {"community_articles", community_articles},
                   {"p_in", p_in},
                   {"p_out", p_out},
                   {"hub_link_prob", hub_link_prob},
                   {"intra_clicks", {intra_clicks_min, intra_clicks_max}},
                   {"inter_clicks", {inter_clicks_min, inter_clicks_max}},
                   {"hub_clicks", {hub_clicks_min, hub_clicks_max}},
                   {"base_views", {base_views_min, base_views_max}},
                   {"spike_amplitude", spike_amplitude},
                   {"spike_days", spike_days},
                   {"noise", noise},
                   {"start_date", start_date},
                   {"event_spacing", event_spacing},
                   {"seed", seed}};
  return j.dump(2);
}

SynthConfig SynthConfig::from_json(const std::string& text) {
  SynthConfig c;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("synth config: {}", e.what()));
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  auto range = [&](const char* key, auto& lo, auto& hi) {
    if (j.contains(key)) {
      lo = j.at(key).at(0).get<std::decay_t<decltype(lo)>>();
      hi = j.at(key).at(1).get<std::decay_t<decltype(hi)>>();
    }
  };
  try {
    get("events", c.events);
    get("topics", c.topics);
    get("topic_articles", c.topic_articles);
    get("background_communities", c.background_communities);
    get("community_articles", c.community_articles);
    get("p_in", c.p_in);
    get("p_out", c.p_out);
    get("hub_link_prob", c.hub_link_prob);
    range("intra_clicks", c.intra_clicks_min, c.intra_clicks_max);
    range("inter_clicks", c.inter_clicks_min, c.inter_clicks_max);
    range("hub_clicks", c.hub_clicks_min, c.hub_clicks_max);
    range("base_views", c.base_views_min, c.base_views_max);
    get("spike_amplitude", c.spike_amplitude);
    get("spike_days", c.spike_days);
    get("noise", c.noise);
    get("start_date", c.start_date);
    get("event_spacing", c.event_spacing);
    get("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("synth config: {}", e.what()));
  }
  c.validate();
  return c;
}

ClickstreamStore SynthCorpus::click_store() const {
  ClickstreamStore store;
  for (const auto& r : clicks) store.add(r);
  return store;
}

std::vector<std::string> SynthCorpus::spiking_articles(const std::string& event_id) const {
  std::vector<std::string> out;
  for (const auto& t : truth) {
    if (t.event_id == event_id && t.community == 0) out.push_back(t.article);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng_));
  }
  std::int64_t noisy(double rate, double noise) {
    if (noise == 0.0 || rate <= 0.0) return std::llround(rate);
    const double draw = static_cast<double>(std::poisson_distribution<std::int64_t>(rate)(rng_));
    return std::max<std::int64_t>(0, std::llround(rate + noise * (draw - rate)));
  }

 private:
  std::mt19937_64 rng_;
};

double spike_factor(long offset, double amplitude, std::size_t days) {
  if (offset < 0 || offset >= static_cast<long>(days)) return 1.0;
  return 1.0 + amplitude * std::ldexp(1.0, -static_cast<int>(offset));
}

std::string topic_article(std::size_t topic, std::size_t i) { return fmt::format("Synth topic {} article {}", topic, i); }

}  // namespace

SynthCorpus generate_corpus(const SynthConfig& config) {
  config.validate();
  Sampler sample(config.seed);
  SynthCorpus corpus;
  corpus.config = config;

  const Day start = parse_day(config.start_date);
  std::vector<Day> dates(config.events);
  for (std::size_t e = 0; e < config.events; ++e) {
    const auto round = e / config.topics;
    const auto topic = e % config.topics;
    dates[e] = add_days(start, static_cast<long>(kEventDayIndex + 10 + round * config.event_spacing + topic * 3));
  }
  corpus.first_day = start;
  corpus.last_day = add_days(*std::max_element(dates.begin(), dates.end()), static_cast<long>(kEventDayIndex + 10));

  // Static monthly click counts per directed pair.
  std::map<std::pair<std::string, std::string>, std::int64_t> counts;
  auto link = [&](const std::string& a, const std::string& b, std::int64_t lo, std::int64_t hi) {
    counts[{a, b}] = sample.integer(lo, hi);
    counts[{b, a}] = sample.integer(lo, hi);
  };
  auto wire_community = [&](const std::vector<std::string>& members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (sample.chance(config.p_in)) link(members[i], members[j], config.intra_clicks_min, config.intra_clicks_max);
      }
    }
  };

  std::vector<std::vector<std::string>> topic_groups(config.topics);
  for (std::size_t t = 0; t < config.topics; ++t) {
    for (std::size_t i = 0; i < config.topic_articles; ++i) topic_groups[t].push_back(topic_article(t, i));
    wire_community(topic_groups[t]);
    const auto alias = fmt::format("Synth topic {} lead", t);
    corpus.aliases[topic_groups[t][0]] = alias;
    corpus.redirects.add(alias, topic_groups[t][0]);
  }
  corpus.redirects.finalize();

  // Spike schedule: article -> event days it spikes on.
  std::map<std::string, std::vector<Day>> spikes;
  std::vector<std::vector<std::vector<std::string>>> planted(config.events);
  std::vector<std::string> hubs(config.events);

  for (std::size_t e = 0; e < config.events; ++e) {
    const auto topic = e % config.topics;
    hubs[e] = fmt::format("Synth event {}", e);
    auto& groups = planted[e];
    groups.push_back(topic_groups[topic]);
    groups[0].push_back(hubs[e]);
    for (std::size_t b = 1; b <= config.background_communities; ++b) {
      std::vector<std::string> members;
      for (std::size_t i = 0; i < config.community_articles; ++i) {
        members.push_back(fmt::format("Synth event {} group {} article {}", e, b, i));
      }
      wire_community(members);
      groups.push_back(std::move(members));
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::size_t h = g + 1; h < groups.size(); ++h) {
        for (const auto& a : groups[g]) {
          if (a == hubs[e]) continue;
          for (const auto& b : groups[h]) {
            if (sample.chance(config.p_out)) link(a, b, config.inter_clicks_min, config.inter_clicks_max);
          }
        }
      }
    }
    for (const auto& a : topic_groups[topic]) link(hubs[e], a, config.hub_clicks_min, config.hub_clicks_max);
    for (std::size_t g = 1; g < groups.size(); ++g) {
      for (const auto& a : groups[g]) {
        if (sample.chance(config.hub_link_prob)) link(hubs[e], a, config.hub_clicks_min, config.hub_clicks_max);
      }
    }
    for (const auto& a : groups[0]) spikes[a].push_back(dates[e]);
  }

  for (Month m = month_of(corpus.first_day); m <= month_of(corpus.last_day); m = m.next()) {
    for (const auto& [pair, n] : counts) corpus.clicks.push_back({pair.first, pair.second, m, n});
  }

  // Portal pages, parsed back so ids and titles follow the ingest rules.
  std::map<Day, std::vector<std::size_t>> by_day;
  for (std::size_t e = 0; e < config.events; ++e) by_day[dates[e]].push_back(e);
  Diagnostics diag;
  std::vector<std::string> event_ids(config.events);
  for (const auto& [day, list] : by_day) {
    std::string text = fmt::format("{{{{Current events header|{}}}}}\n", format_day(day));
    for (auto e : list) {
      text += fmt::format("'''{}'''\n", kEventCategories[e % kEventCategories.size()]);
      text += fmt::format("* [[{}|Synthetic event {}]] draws sudden attention to topic {}.\n", hubs[e], e,
                          e % config.topics);
    }
    auto records = parse_event_records(text, day, corpus.redirects, diag);
    if (records.size() != list.size()) throw DataError("synthetic portal page did not parse back");
    for (std::size_t k = 0; k < list.size(); ++k) event_ids[list[k]] = records[k].event_id;
    corpus.events.insert(corpus.events.end(), records.begin(), records.end());
    corpus.wikitext[format_day(day)] = std::move(text);
  }

  for (std::size_t e = 0; e < config.events; ++e) {
    corpus.event_topic[event_ids[e]] = e % config.topics;
    for (std::size_t g = 0; g < planted[e].size(); ++g) {
      for (const auto& a : planted[e][g]) corpus.truth.push_back({event_ids[e], a, g});
    }
  }

  std::set<std::string> articles;
  for (const auto& [pair, n] : counts) {
    articles.insert(pair.first);
    articles.insert(pair.second);
  }
  const long span = days_between(corpus.first_day, corpus.last_day) + 1;
  for (const auto& a : articles) {
    const double base = sample.log_uniform(config.base_views_min, config.base_views_max);
    const auto it = spikes.find(a);
    for (long t = 0; t < span; ++t) {
      const Day day = add_days(corpus.first_day, t);
      double factor = 1.0;
      if (it != spikes.end()) {
        for (const auto& d : it->second) factor *= spike_factor(days_between(d, day), config.spike_amplitude, config.spike_days);
      }
      corpus.views.add(a, day, sample.noisy(base * factor, config.noise));
    }
  }
  return corpus;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "events");
  fs::create_directories(dir / "clickstream");
  fs::create_directories(dir / "pageviews");

  for (const auto& [day, text] : corpus.wikitext) {
    std::ofstream out(dir / "events" / (day + ".wiki"), std::ios::trunc);
    out << text;
  }

  std::map<Month, std::vector<const ClickRecord*>> by_month;
  for (const auto& r : corpus.clicks) by_month[r.month].push_back(&r);
  for (const auto& [month, rows] : by_month) {
    std::ofstream out(dir / "clickstream" / fmt::format("clickstream-enwiki-{}.tsv", format_month(month)),
                      std::ios::trunc);
    // Rows the parser must drop.
    out << "other-search\t" << dump_title(rows.front()->target) << "\texternal\t5000\n";
    out << "Main_Page\t" << dump_title(rows.front()->target) << "\tlink\t900\n";
    for (const auto* r : rows) {
      out << dump_title(r->source) << '\t' << dump_title(r->target) << "\tlink\t" << r->count << '\n';
    }
  }

  const auto titles = corpus.views.titles();
  for (Day day = corpus.first_day; day <= corpus.last_day; day = add_days(day, 1)) {
    std::ofstream out(dir / "pageviews" / fmt::format("pageviews-{}-000000", format_compact_day(day)),
                      std::ios::trunc);
    for (const auto& title : titles) {
      auto views = corpus.views.get(title, day);
      auto alias = corpus.aliases.find(title);
      if (alias != corpus.aliases.end()) {
        const auto moved = views / 3;
        out << "en.m " << dump_title(alias->second) << ' ' << moved << " 0\n";
        views -= moved;
      }
      out << "en.z " << dump_title(title) << ' ' << views << " 0\n";
    }
    out << "de.z " << dump_title(titles.front()) << " 123 0\n";
  }

  {
    std::ofstream out(dir / "redirects.tsv", std::ios::trunc);
    corpus.redirects.write_tsv(out);
  }
  {
    std::ofstream out(dir / "truth.tsv", std::ios::trunc);
    for (const auto& t : corpus.truth) out << t.event_id << '\t' << t.article << '\t' << t.community << '\n';
  }
  {
    std::ofstream out(dir / "topics_truth.tsv", std::ios::trunc);
    for (const auto& [id, topic] : corpus.event_topic) out << id << '\t' << topic << '\n';
  }
  std::ofstream out(dir / "synth_config.json", std::ios::trunc);
  out << corpus.config.to_json() << '\n';
}

std::vector<EventNetwork> build_corpus_networks(const SynthCorpus& corpus, Diagnostics& diag) {
  const auto store = corpus.click_store();
  std::vector<EventNetwork> out;
  for (const auto& event : corpus.events) {
    auto net = build_event_network(event, store);
    attach_series(net, corpus.views, diag);
    out.push_back(std::move(net));
  }
  return out;
}

namespace {

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> set_labels(const std::vector<std::string>& detected,
                                                                             const std::vector<std::string>& planted) {
  std::set<std::string> universe(detected.begin(), detected.end());
  universe.insert(planted.begin(), planted.end());
  const std::set<std::string> d(detected.begin(), detected.end());
  const std::set<std::string> p(planted.begin(), planted.end());
  std::vector<std::uint32_t> a, b;
  std::uint32_t next = 1;
  for (const auto& x : universe) {
    a.push_back(d.count(x) ? 0 : next);
    b.push_back(p.count(x) ? 0 : next);
    ++next;
  }
  return {a, b};
}

double geometric_mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += std::log(x);
  return std::exp(s / static_cast<double>(xs.size()));
}

}  // namespace

double set_element_centric(const std::vector<std::string>& detected, const std::vector<std::string>& planted) {
  auto [a, b] = set_labels(detected, planted);
  return element_centric(a, b);
}

double set_ami(const std::vector<std::string>& detected, const std::vector<std::string>& planted) {
  auto [a, b] = set_labels(detected, planted);
  return ami(a, b);
}

RecoveryReport evaluate_recovery(const SynthCorpus& corpus, const std::vector<EventReaction>& reactions,
                                 const std::vector<TopicOfAttention>& topics,
                                 const std::vector<ComparisonResult>& comparisons) {
  RecoveryReport report;
  std::map<std::string, const ComparisonResult*> by_event;
  for (const auto& c : comparisons) by_event[c.event_id] = &c;

  std::size_t exact = 0;
  std::vector<double> ratio_s, ratio_n;
  std::size_t ge_s = 0, ge_n = 0, dge_s = 0, dge_n = 0, compared = 0;
  for (const auto& event : corpus.events) {
    EventRecovery rec;
    rec.event_id = event.event_id;
    const auto planted = corpus.spiking_articles(event.event_id);
    for (const auto& r : reactions) {
      if (r.event_id != event.event_id) continue;
      ++rec.reactions;
      const double ecs = set_element_centric(r.articles, planted);
      if (ecs > rec.best_ecs) {
        rec.best_ecs = ecs;
        rec.best_ami = set_ami(r.articles, planted);
      }
      rec.exact = rec.exact || r.articles == planted;
    }
    if (auto it = by_event.find(event.event_id); it != by_event.end()) {
      rec.excess = *it->second;
      ++compared;
      if (rec.excess.excess_temporal >= rec.excess.excess_structural) ++ge_s;
      if (rec.excess.excess_temporal >= rec.excess.excess_navigational) ++ge_n;
      if (rec.excess.excess_temporal_distinct >= rec.excess.excess_structural) ++dge_s;
      if (rec.excess.excess_temporal_distinct >= rec.excess.excess_navigational) ++dge_n;
      if (rec.excess.excess_temporal > 0 && rec.excess.excess_structural > 0) {
        ratio_s.push_back(rec.excess.excess_temporal / rec.excess.excess_structural);
      }
      if (rec.excess.excess_temporal > 0 && rec.excess.excess_navigational > 0) {
        ratio_n.push_back(rec.excess.excess_temporal / rec.excess.excess_navigational);
      }
    }
    report.reaction_ecs_mean += rec.best_ecs;
    report.reaction_ami_mean += rec.best_ami;
    exact += rec.exact ? 1 : 0;
    report.events.push_back(std::move(rec));
  }
  if (!corpus.events.empty()) {
    const double n = static_cast<double>(corpus.events.size());
    report.reaction_ecs_mean /= n;
    report.reaction_ami_mean /= n;
    report.exact_fraction = static_cast<double>(exact) / n;
  }
  if (compared > 0) {
    report.temporal_ge_structural = static_cast<double>(ge_s) / static_cast<double>(compared);
    report.temporal_ge_navigational = static_cast<double>(ge_n) / static_cast<double>(compared);
    report.distinct_ge_structural = static_cast<double>(dge_s) / static_cast<double>(compared);
    report.distinct_ge_navigational = static_cast<double>(dge_n) / static_cast<double>(compared);
  }
  report.geo_mean_structural = geometric_mean(ratio_s);
  report.geo_mean_navigational = geometric_mean(ratio_n);
  report.median_structural = ratio_s.empty() ? 0.0 : median(ratio_s);
  report.median_navigational = ratio_n.empty() ? 0.0 : median(ratio_n);

  report.topics = topics.size();
  if (!reactions.empty()) {
    std::vector<std::uint32_t> truth(reactions.size()), detected(reactions.size(), 0);
    for (std::size_t i = 0; i < reactions.size(); ++i) {
      truth[i] = static_cast<std::uint32_t>(corpus.event_topic.at(reactions[i].event_id));
    }
    for (const auto& t : topics) {
      for (auto i : t.reactions) detected[i] = static_cast<std::uint32_t>(t.topic_id);
    }
    report.topic_ecs = element_centric(detected, truth);
    report.topic_ami = ami(detected, truth);
  }
  return report;
}

RecoveryReport run_benchmark(const SynthCorpus& corpus, const BenchParams& params) {
  Diagnostics diag;
  const auto networks = build_corpus_networks(corpus, diag);
  std::vector<EventReaction> reactions;
  std::vector<ComparisonResult> comparisons;
  for (const auto& net : networks) {
    if (net.degenerate) continue;
    auto detection = detect_event_reactions(net, params.reaction);
    comparisons.push_back(compare_excess(net, detection.reactions, params.comparison));
    reactions.insert(reactions.end(), detection.reactions.begin(), detection.reactions.end());
  }
  const auto higher = build_higher_network(reactions);
  const auto topics = detect_topics(higher, params.topic_resolution, params.reaction.seed);
  return evaluate_recovery(corpus, reactions, topics, comparisons);
}

std::string RecoveryReport::to_json() const {
  nlohmann::json per_event = nlohmann::json::array();
  for (const auto& e : events) {
    per_event.push_back({{"event_id", e.event_id},
                         {"reactions", e.reactions},
                         {"best_element_centric", e.best_ecs},
                         {"best_ami", e.best_ami},
                         {"exact", e.exact},
                         {"excess_temporal", e.excess.excess_temporal},
                         {"excess_temporal_distinct", e.excess.excess_temporal_distinct},
                         {"excess_structural", e.excess.excess_structural},
                         {"excess_navigational", e.excess.excess_navigational}});
  }
  nlohmann::json j{{"reaction_element_centric_mean", reaction_ecs_mean},
                   {"reaction_ami_mean", reaction_ami_mean},
                   {"exact_fraction", exact_fraction},
                   {"topics", topics},
                   {"topic_element_centric", topic_ecs},
                   {"topic_ami", topic_ami},
                   {"temporal_ge_structural", temporal_ge_structural},
                   {"temporal_ge_navigational", temporal_ge_navigational},
                   {"distinct_ge_structural", distinct_ge_structural},
                   {"distinct_ge_navigational", distinct_ge_navigational},
                   {"geo_mean_ratio_structural", geo_mean_structural},
                   {"geo_mean_ratio_navigational", geo_mean_navigational},
                   {"median_ratio_structural", median_structural},
                   {"median_ratio_navigational", median_navigational},
                   {"events", per_event}};
  return j.dump(2);
}

namespace {

EventNetwork fixture_network(const std::string& title_prefix, Day date, std::string core) {
  EventNetwork net;
  net.event.event_id = format_day(date) + "_0";
  net.event.date = date;
  net.event.category = std::string(kEventCategories[0]);
  net.event.description = title_prefix + " fixture";
  net.event.core_articles = {std::move(core)};
  net.window_start = window_start_for(date);
  net.window_days = kWindowDays;
  return net;
}

}  // namespace

EventNetwork uniform_correlation_fixture(std::uint64_t seed) {
  Sampler sample(seed);
  auto net = fixture_network("Uniform", parse_day("2018-06-15"), "Uniform 0 0");
  GraphBuilder builder(true);
  constexpr std::size_t cliques = 4, size = 8;
  for (std::size_t q = 0; q < cliques; ++q) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        if (i != j) builder.add_edge(fmt::format("Uniform {} {}", q, i), fmt::format("Uniform {} {}", q, j), 500.0);
      }
    }
    if (q + 1 < cliques) {
      builder.add_edge(fmt::format("Uniform {} {}", q, size - 1), fmt::format("Uniform {} 0", q + 1), 200.0);
    }
  }
  net.graph = std::move(builder).build();
  std::vector<double> shared(net.window_days);
  for (std::size_t t = 0; t < shared.size(); ++t) {
    const double rate = 1000.0 * spike_factor(static_cast<long>(t) - static_cast<long>(kEventDayIndex), 10.0, 4);
    shared[t] = static_cast<double>(sample.noisy(rate, 1.0));
  }
  net.series.assign(net.graph.size(), shared);
  return net;
}

EventNetwork orthogonal_spike_fixture(std::uint64_t seed, std::vector<std::string>* spikers) {
  Sampler sample(seed);
  auto net = fixture_network("Orthogonal", parse_day("2018-06-15"), "Ortho 0 0");
  GraphBuilder builder(true);
  constexpr std::size_t cliques = 5, size = 8;
  std::vector<std::string> spiking;
  for (std::size_t q = 0; q < cliques; ++q) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        if (i != j) builder.add_edge(fmt::format("Ortho {} {}", q, i), fmt::format("Ortho {} {}", q, j), 500.0);
      }
    }
    spiking.push_back(fmt::format("Ortho {} 0", q));
  }
  for (const auto& a : spiking) {
    for (const auto& b : spiking) {
      if (a != b) builder.add_edge(a, b, 300.0);
    }
  }
  net.graph = std::move(builder).build();
  const std::set<std::string> spike_set(spiking.begin(), spiking.end());
  for (NodeId v = 0; v < net.graph.size(); ++v) {
    const double base = sample.log_uniform(500.0, 5000.0);
    const bool spikes = spike_set.count(net.graph.label(v)) != 0;
    std::vector<double> s(net.window_days);
    for (std::size_t t = 0; t < s.size(); ++t) {
      const double factor =
          spikes ? spike_factor(static_cast<long>(t) - static_cast<long>(kEventDayIndex), 10.0, 4) : 1.0;
      s[t] = static_cast<double>(sample.noisy(base * factor, 1.0));
    }
    net.series.push_back(std::move(s));
  }
  if (spikers) *spikers = std::move(spiking);
  return net;
}

}  // namespace newsattn
