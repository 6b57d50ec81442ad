#include "newsattn/correlation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace newsattn {

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

TemporalEdgeWeights rolling_correlations(const EventNetwork& network, const CorrelationParams& params) {
  const auto& g = network.graph;
  if (network.series.size() != g.size()) throw DataError("rolling_correlations: series not attached");
  if (params.window < 2 || params.window > network.window_days) throw ConfigError("bad correlation window");

  TemporalEdgeWeights out;
  out.articles = g.size();
  out.layers = network.window_days - params.window + 1;

  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const auto& e : g.edges()) pairs.insert(std::minmax(e.source, e.target));
  out.pairs.assign(pairs.begin(), pairs.end());
  out.rho.resize(out.pairs.size() * out.layers);

  for (std::size_t p = 0; p < out.pairs.size(); ++p) {
    const auto& xs = network.series[out.pairs[p].first];
    const auto& ys = network.series[out.pairs[p].second];
    for (std::size_t l = 0; l < out.layers; ++l) {
      out.rho[p * out.layers + l] = pearson(std::span(xs).subspan(l, params.window),
                                            std::span(ys).subspan(l, params.window));
    }
  }
  return out;
}

void TemporalEdgeWeights::write_tsv(const WeightedGraph& graph, std::ostream& out) const {
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t l = 0; l < layers; ++l) {
      out << graph.label(pairs[p].first) << '\t' << graph.label(pairs[p].second) << '\t' << l << '\t'
          << fmt::format("{}", value(p, l)) << '\n';
    }
  }
}

TemporalEdgeWeights TemporalEdgeWeights::read_tsv(const WeightedGraph& graph, std::size_t layers, std::istream& in) {
  TemporalEdgeWeights out;
  out.articles = graph.size();
  out.layers = layers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    while (true) {
      auto tab = rest.find('\t');
      f.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (f.size() != 4) throw ParseError(fmt::format("correlation dump line {}: expected 4 columns", line_no));
    auto u = graph.find(f[0]);
    auto v = graph.find(f[1]);
    std::size_t layer = 0;
    double rho = 0;
    auto r1 = std::from_chars(f[2].data(), f[2].data() + f[2].size(), layer);
    auto r2 = std::from_chars(f[3].data(), f[3].data() + f[3].size(), rho);
    if (!u || !v || r1.ec != std::errc{} || r2.ec != std::errc{} || layer >= layers) {
      throw ParseError(fmt::format("correlation dump line {}: bad row", line_no));
    }
    std::pair<NodeId, NodeId> pair{*u, *v};
    if (out.pairs.empty() || out.pairs.back() != pair) {
      out.pairs.push_back(pair);
      out.rho.resize(out.pairs.size() * layers, 0.0);
    }
    out.rho[(out.pairs.size() - 1) * layers + layer] = rho;
  }
  return out;
}

FlatMultilayerGraph flatten_multilayer(const TemporalEdgeWeights& weights, double tau) {
  if (!(tau >= 0.0)) throw ConfigError("tau must be non-negative");
  FlatMultilayerGraph flat;
  flat.articles = weights.articles;
  flat.layers = weights.layers;
  flat.tau = tau;

  GraphBuilder builder(false);
  builder.add_nodes(weights.articles * weights.layers);
  for (std::size_t l = 0; l < weights.layers; ++l) {
    for (std::size_t p = 0; p < weights.pairs.size(); ++p) {
      builder.add_edge(flat.copy(weights.pairs[p].first, l), flat.copy(weights.pairs[p].second, l),
                       weights.value(p, l));
    }
  }
  for (std::size_t l = 0; l + 1 < weights.layers; ++l) {
    for (NodeId a = 0; a < weights.articles; ++a) builder.add_edge(flat.copy(a, l), flat.copy(a, l + 1), tau);
  }
  flat.graph = std::move(builder).build();
  return flat;
}

}  // namespace newsattn
