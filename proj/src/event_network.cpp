#include "newsattn/event_network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace newsattn {

bool EventNetwork::is_core(NodeId v) const {
  return std::binary_search(event.core_articles.begin(), event.core_articles.end(), graph.label(v));
}

std::vector<NodeId> EventNetwork::core_nodes() const {
  std::vector<NodeId> out;
  for (const auto& title : event.core_articles) {
    if (auto v = graph.find(title)) out.push_back(*v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Day window_start_for(Day date, std::size_t window_days) {
  return add_days(date, -static_cast<long>(window_days / 2));
}

namespace {

/// (month, number of window days in it), chronological.
std::vector<std::pair<Month, long>> window_month_days(Day date, std::size_t window_days) {
  std::vector<std::pair<Month, long>> out;
  auto start = window_start_for(date, window_days);
  for (std::size_t i = 0; i < window_days; ++i) {
    auto m = month_of(add_days(start, static_cast<long>(i)));
    if (out.empty() || out.back().first != m) {
      out.emplace_back(m, 1);
    } else {
      ++out.back().second;
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<Month, double>> window_month_weights(Day date, std::size_t window_days) {
  std::vector<std::pair<Month, double>> out;
  for (const auto& [month, days] : window_month_days(date, window_days)) {
    out.emplace_back(month, static_cast<double>(days) / static_cast<double>(window_days));
  }
  return out;
}

EventNetwork build_event_network(const EventRecord& event, const ClickstreamStore& clicks,
                                 const NetworkParams& params) {
  EventNetwork net;
  net.event = event;
  net.window_days = params.window_days;
  net.window_start = window_start_for(event.date, params.window_days);

  const auto months = window_month_days(event.date, params.window_days);

  std::set<std::string> nodes(event.core_articles.begin(), event.core_articles.end());
  for (const auto& core : event.core_articles) {
    for (const auto& [month, days] : months) {
      for (auto& [title, count] : clicks.out_neighbors(month, core)) nodes.insert(title);
      for (auto& [title, count] : clicks.in_neighbors(month, core)) nodes.insert(title);
    }
  }

  // Integer day-weighted click totals; divided once so the threshold test is exact.
  std::map<std::pair<std::string, std::string>, std::int64_t> day_clicks;
  for (const auto& [month, days] : months) {
    for (const auto& source : nodes) {
      for (const auto& [target, count] : clicks.out_neighbors(month, source)) {
        if (target == source || nodes.count(target) == 0) continue;
        day_clicks[{source, target}] += days * count;
      }
    }
  }

  const double window = static_cast<double>(params.window_days);
  std::set<std::string> connected;
  std::vector<std::tuple<std::string, std::string, double>> kept;
  for (const auto& [pair, total] : day_clicks) {
    double w = static_cast<double>(total) / window;
    if (w > params.edge_threshold) {
      kept.emplace_back(pair.first, pair.second, w);
      connected.insert(pair.first);
      connected.insert(pair.second);
    }
  }

  GraphBuilder builder(true);
  for (const auto& title : connected) builder.node(title);
  for (const auto& [u, v, w] : kept) builder.add_edge(u, v, w);
  net.graph = std::move(builder).build();

  for (const auto& core : event.core_articles) {
    if (connected.count(core) == 0) net.dropped_core.push_back(core);
  }
  net.degenerate = net.graph.empty();
  return net;
}

void attach_series(EventNetwork& network, const DailySeriesStore& store, Diagnostics& diag) {
  network.series.clear();
  network.series.reserve(network.graph.size());
  for (NodeId v = 0; v < network.graph.size(); ++v) {
    const auto& title = network.graph.label(v);
    if (!store.contains(title)) {
      diag.warn(fmt::format("{}: no page views for '{}', using zeros", network.event.event_id, title));
    }
    network.series.push_back(store.window(title, network.window_start, network.window_days));
  }
}

void save_event_network(const EventNetwork& network, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "edges.tsv", std::ios::trunc);
    network.graph.write_edgelist(out);
  }
  {
    std::ofstream out(dir / "series.tsv", std::ios::trunc);
    for (NodeId v = 0; v < network.graph.size(); ++v) {
      out << network.graph.label(v);
      if (v < network.series.size()) {
        for (double x : network.series[v]) out << '\t' << fmt::format("{}", x);
      }
      out << '\n';
    }
  }
  nlohmann::json manifest{{"event", nlohmann::json::parse(event_to_json(network.event))},
                          {"window_start", format_day(network.window_start)},
                          {"window_days", network.window_days},
                          {"nodes", network.graph.size()},
                          {"edges", network.graph.edge_count()},
                          {"degenerate", network.degenerate},
                          {"dropped_core", network.dropped_core},
                          {"has_series", !network.series.empty()}};
  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  out << manifest.dump(2) << '\n';
}

EventNetwork load_event_network(const std::filesystem::path& dir) {
  std::ifstream manifest_in(dir / "manifest.json");
  if (!manifest_in) throw DataError(fmt::format("no event network at {}", dir.string()));
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("{}: {}", (dir / "manifest.json").string(), e.what()));
  }

  EventNetwork net;
  net.event = event_from_json(manifest.at("event").dump());
  net.window_start = parse_day(manifest.at("window_start").get<std::string>());
  net.window_days = manifest.at("window_days").get<std::size_t>();
  net.degenerate = manifest.at("degenerate").get<bool>();
  net.dropped_core = manifest.at("dropped_core").get<std::vector<std::string>>();
  const bool has_series = manifest.value("has_series", true);

  GraphBuilder builder(true);
  std::ifstream series_in(dir / "series.tsv");
  std::string line;
  while (std::getline(series_in, line)) {
    if (line.empty()) continue;
    std::string_view rest(line);
    auto tab = rest.find('\t');
    builder.node(rest.substr(0, tab));
    if (!has_series) continue;
    std::vector<double> values;
    while (tab != std::string_view::npos) {
      rest.remove_prefix(tab + 1);
      tab = rest.find('\t');
      auto field = rest.substr(0, tab);
      double x = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
      if (ec != std::errc{}) throw ParseError(fmt::format("{}: bad series value", dir.string()));
      values.push_back(x);
    }
    if (values.size() != net.window_days) {
      throw ParseError(fmt::format("{}: series of length {}, expected {}", dir.string(), values.size(),
                                   net.window_days));
    }
    net.series.push_back(std::move(values));
  }
  std::ifstream edges_in(dir / "edges.tsv");
  auto edges = WeightedGraph::read_edgelist(edges_in, true);
  for (const auto& e : edges.edges()) {
    auto u = builder.node(edges.label(e.source));
    auto v = builder.node(edges.label(e.target));
    builder.add_edge(u, v, e.weight);
  }
  net.graph = std::move(builder).build();
  return net;
}

}  // namespace newsattn
