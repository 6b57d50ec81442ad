#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "newsattn/date.hpp"
#include "newsattn/event_network.hpp"

namespace fixture {

using newsattn::EventNetwork;

struct Link {
  std::string source, target;
  double clicks;
};

/// Hand-made event network; articles without a series get a constant 100.
inline EventNetwork network(const std::vector<Link>& links, const std::map<std::string, std::vector<double>>& series,
                            std::vector<std::string> core, const std::string& id = "2018-06-01_1") {
  EventNetwork net;
  net.event.event_id = id;
  net.event.date = newsattn::parse_day(id.substr(0, 10));
  net.event.category = "Sports";
  net.event.description = "fixture";
  std::sort(core.begin(), core.end());
  net.event.core_articles = core;
  net.window_start = newsattn::window_start_for(net.event.date);
  newsattn::GraphBuilder b(true);
  for (const auto& l : links) b.add_edge(l.source, l.target, l.clicks);
  net.graph = std::move(b).build();
  for (newsattn::NodeId v = 0; v < net.graph.size(); ++v) {
    auto it = series.find(net.graph.label(v));
    net.series.push_back(it != series.end() ? it->second : std::vector<double>(net.window_days, 100.0));
  }
  return net;
}

/// 61-day series: base everywhere, `spike` added on days 30..30+len-1.
inline std::vector<double> spiky(double base, double spike, std::size_t len = 4, std::size_t wiggle = 0) {
  std::vector<double> s(61, base);
  for (std::size_t t = 0; t < 61; ++t) s[t] += static_cast<double>((t * 7 + wiggle * 3) % 5);
  for (std::size_t t = 30; t < 30 + len && t < 61; ++t) s[t] += spike / static_cast<double>(1 + t - 30);
  return s;
}

}  // namespace fixture
