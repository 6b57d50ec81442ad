#include "newsattn/reactions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

namespace newsattn {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[lo + 1] - values[lo]) * frac;
}

double median(std::span<const double> values) { return quantile({values.begin(), values.end()}, 0.5); }

NodeWeights subgraph_pagerank(const EventNetwork& network, std::span<const NodeId> nodes, bool weighted,
                              const PageRankOptions& options) {
  auto sub = network.graph.induced(nodes);
  if (!weighted) {
    GraphBuilder unit(true);
    for (const auto& label : sub.labels()) unit.node(label);
    for (const auto& e : sub.edges()) unit.add_edge(e.source, e.target, 1.0);
    sub = std::move(unit).build();
  }
  return pagerank_weights(sub, options);
}

namespace {

bool overlaps_event(std::size_t layer, std::size_t window, std::size_t event_day, OverlapRule rule) {
  if (rule == OverlapRule::LayerAtEventDay) return layer == event_day;
  return layer <= event_day && event_day < layer + window;
}

}  // namespace

std::vector<EventReaction> extract_reactions(const Partition& partition, const FlatMultilayerGraph& flat,
                                             const EventNetwork& network, const ReactionParams& params) {
  if (partition.size() != flat.graph.size()) throw DataError("partition does not match the multilayer graph");
  if (flat.articles != network.graph.size()) throw DataError("multilayer graph does not match the event network");

  const std::size_t window = network.window_days - flat.layers + 1;
  std::vector<EventReaction> out;
  for (const auto& members : partition.communities()) {
    if (members.empty()) continue;
    std::set<NodeId> articles;
    std::size_t layer_min = flat.layers, layer_max = 0;
    bool overlap = false;
    for (auto copy : members) {
      const auto layer = flat.layer_of(copy);
      articles.insert(flat.article_of(copy));
      layer_min = std::min(layer_min, layer);
      layer_max = std::max(layer_max, layer);
      overlap = overlap || overlaps_event(layer, window, network.event_index(), params.overlap);
    }
    const bool core = std::any_of(articles.begin(), articles.end(), [&](NodeId v) { return network.is_core(v); });
    if (!core || !overlap) continue;

    EventReaction reaction;
    reaction.event_id = network.event.event_id;
    std::vector<NodeId> nodes(articles.begin(), articles.end());
    for (auto v : nodes) reaction.articles.push_back(network.graph.label(v));
    std::sort(reaction.articles.begin(), reaction.articles.end());
    reaction.layer_min = layer_min;
    reaction.layer_max = layer_max;
    reaction.contains_core = true;
    reaction.pagerank = subgraph_pagerank(network, nodes, params.weighted_pagerank, params.pagerank);
    out.push_back(std::move(reaction));
  }
  return out;
}

TemporalDetection detect_event_reactions(const EventNetwork& network, const ReactionParams& params) {
  TemporalDetection d;
  if (network.graph.empty()) return d;
  d.correlations = rolling_correlations(network, params.correlation);
  d.flat = flatten_multilayer(d.correlations, params.tau);
  d.partition = leiden_cpm(d.flat.graph, params.resolution, params.seed);
  d.reactions = extract_reactions(d.partition, d.flat, network, params);
  return d;
}

std::vector<NodeId> reaction_nodes(const EventReaction& reaction, const EventNetwork& network) {
  std::vector<NodeId> out;
  for (const auto& title : reaction.articles) {
    auto v = network.graph.find(title);
    if (!v) throw DataError(fmt::format("{}: article '{}' not in the event network", reaction.event_id, title));
    out.push_back(*v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> scaled_series(const EventNetwork& network, std::span<const NodeId> members) {
  std::vector<double> total(network.window_days, 0.0);
  for (auto v : members) {
    const auto& s = network.series.at(v);
    for (std::size_t t = 0; t < total.size(); ++t) total[t] += s[t];
  }
  const double med = quantile(total, 0.5);
  const double iqr = quantile(total, 0.75) - quantile(total, 0.25);
  for (auto& x : total) x = iqr > 0.0 ? (x - med) / iqr : 0.0;
  return total;
}

double group_excess(const EventNetwork& network, std::span<const NodeId> members) {
  const std::size_t t0 = network.event_index();
  double sum = 0.0;
  for (auto v : members) {
    const auto& s = network.series.at(v);
    const double med = median(s);
    for (std::size_t t = t0; t < t0 + 7 && t < s.size(); ++t) sum += s[t] - med;
  }
  return sum;
}

bool passes_gate(const EventNetwork& network, std::span<const NodeId> members, double gate) {
  const auto q = scaled_series(network, members);
  const std::size_t t0 = network.event_index();
  double peak = q[t0];
  if (t0 > 0) peak = std::max(peak, q[t0 - 1]);
  if (t0 + 1 < q.size()) peak = std::max(peak, q[t0 + 1]);
  return peak > gate;
}

double excess_views(const EventNetwork& network, const std::vector<std::vector<NodeId>>& groups, double gate) {
  double total = 0.0;
  for (const auto& group : groups) {
    if (passes_gate(network, group, gate)) total += group_excess(network, group);
  }
  return total;
}

WeightedGraph static_graph(const EventNetwork& network, StaticMode mode) {
  return network.graph.undirected(mode == StaticMode::Structural ? WeightedGraph::Projection::Unit
                                                                 : WeightedGraph::Projection::Sum);
}

Partition static_partition(const EventNetwork& network, StaticMode mode, double resolution, std::uint64_t seed) {
  return leiden_cpm(static_graph(network, mode), resolution, seed);
}

std::vector<std::vector<NodeId>> core_communities(const Partition& partition, const EventNetwork& network) {
  std::vector<std::vector<NodeId>> out;
  for (auto& members : partition.communities()) {
    if (std::any_of(members.begin(), members.end(), [&](NodeId v) { return network.is_core(v); })) {
      out.push_back(std::move(members));
    }
  }
  return out;
}

StaticCommunityIndex::StaticCommunityIndex(const EventNetwork& network, std::span<const double> grid,
                                           std::uint64_t seed, bool weighted_pagerank,
                                           const PageRankOptions& options) {
  const auto graph = static_graph(network, StaticMode::Structural);
  std::set<std::vector<NodeId>> seen;
  for (double r : grid) {
    for (auto& members : leiden_cpm(graph, r, seed).communities()) {
      if (!seen.insert(members).second) continue;
      communities_.push_back(subgraph_pagerank(network, members, weighted_pagerank, options));
    }
  }
}

double StaticCommunityIndex::best_similarity(const NodeWeights& weights) const {
  double best = 0.0;
  for (const auto& c : communities_) best = std::max(best, weighted_jaccard(weights, c));
  return best;
}

void score_structural_similarity(std::vector<EventReaction>& reactions, const EventNetwork& network,
                                 std::span<const double> grid, std::uint64_t seed, bool weighted_pagerank) {
  if (reactions.empty()) return;
  StaticCommunityIndex index(network, grid, seed, weighted_pagerank);
  for (auto& r : reactions) r.structural_similarity = index.best_similarity(r.pagerank);
}

ComparisonResult compare_excess(const EventNetwork& network, const std::vector<EventReaction>& reactions,
                                const ComparisonParams& params) {
  ComparisonResult out;
  out.event_id = network.event.event_id;
  if (network.graph.empty()) return out;
  std::vector<std::vector<NodeId>> temporal;
  for (const auto& r : reactions) temporal.push_back(reaction_nodes(r, network));
  out.excess_temporal = excess_views(network, temporal, params.gate);
  std::set<NodeId> distinct;
  for (const auto& group : temporal) {
    if (passes_gate(network, group, params.gate)) distinct.insert(group.begin(), group.end());
  }
  out.excess_temporal_distinct = group_excess(network, std::vector<NodeId>(distinct.begin(), distinct.end()));
  out.excess_structural = excess_views(
      network,
      core_communities(static_partition(network, StaticMode::Structural, params.structural_resolution, params.seed),
                       network),
      params.gate);
  out.excess_navigational = excess_views(
      network,
      core_communities(
          static_partition(network, StaticMode::Navigational, params.navigational_resolution, params.seed), network),
      params.gate);
  return out;
}

void write_reactions_jsonl(const std::vector<EventReaction>& reactions, std::ostream& out) {
  for (const auto& r : reactions) {
    nlohmann::json weights = nlohmann::json::object();
    for (const auto& [title, w] : r.pagerank.entries()) weights[title] = w;
    nlohmann::json line{{"event_id", r.event_id},
                        {"articles", r.articles},
                        {"weights", weights},
                        {"span", {r.layer_min, r.layer_max}},
                        {"s", r.structural_similarity},
                        {"contains_core", r.contains_core}};
    out << line.dump() << '\n';
  }
}

std::vector<EventReaction> read_reactions_jsonl(std::istream& in) {
  std::vector<EventReaction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      EventReaction r;
      r.event_id = j.at("event_id").get<std::string>();
      r.articles = j.at("articles").get<std::vector<std::string>>();
      std::vector<NodeWeights::Entry> entries;
      for (const auto& [title, w] : j.at("weights").items()) entries.emplace_back(title, w.get<double>());
      r.pagerank = NodeWeights(std::move(entries));
      r.layer_min = j.at("span").at(0).get<std::size_t>();
      r.layer_max = j.at("span").at(1).get<std::size_t>();
      r.structural_similarity = j.at("s").get<double>();
      r.contains_core = j.at("contains_core").get<bool>();
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(fmt::format("reactions line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

}  // namespace newsattn
