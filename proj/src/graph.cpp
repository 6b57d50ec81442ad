#include "newsattn/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace newsattn {

std::optional<NodeId> WeightedGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> WeightedGraph::weight(NodeId u, NodeId v) const {
  if (!directed_ && u > v) std::swap(u, v);
  for (const auto& arc : out_arcs(u)) {
    if (arc.node == v) return arc.weight;
  }
  return std::nullopt;
}

WeightedGraph WeightedGraph::induced(std::span<const NodeId> nodes) const {
  GraphBuilder builder(directed_);
  std::vector<std::int64_t> remap(size(), -1);
  for (auto v : nodes) {
    if (remap[v] >= 0) continue;
    remap[v] = labels_[v].empty() ? builder.add_nodes(1) : builder.node(labels_[v]);
  }
  for (const auto& e : edges_) {
    if (remap[e.source] >= 0 && remap[e.target] >= 0) {
      builder.add_edge(static_cast<NodeId>(remap[e.source]), static_cast<NodeId>(remap[e.target]), e.weight);
    }
  }
  return std::move(builder).build();
}

WeightedGraph WeightedGraph::undirected(Projection mode) const {
  GraphBuilder builder(false);
  for (const auto& label : labels_) {
    if (label.empty()) {
      builder.add_nodes(1);
    } else {
      builder.node(label);
    }
  }
  for (const auto& e : edges_) builder.add_edge(e.source, e.target, e.weight);
  if (mode == Projection::Sum) return std::move(builder).build();
  auto summed = std::move(builder).build();
  GraphBuilder unit(false);
  for (const auto& label : summed.labels_) {
    if (label.empty()) {
      unit.add_nodes(1);
    } else {
      unit.node(label);
    }
  }
  for (const auto& e : summed.edges_) unit.add_edge(e.source, e.target, 1.0);
  return std::move(unit).build();
}

void WeightedGraph::write_edgelist(std::ostream& out) const {
  for (const auto& e : edges_) {
    out << labels_[e.source] << '\t' << labels_[e.target] << '\t' << fmt::format("{}", e.weight) << '\n';
  }
}

WeightedGraph WeightedGraph::read_edgelist(std::istream& in, bool directed) {
  GraphBuilder builder(directed);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw ParseError(fmt::format("edgelist line {}: expected u<TAB>v<TAB>weight", line_no));
    }
    double w = 0;
    const char* begin = line.data() + t2 + 1;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, w);
    if (ec != std::errc{} || ptr != end) {
      throw ParseError(fmt::format("edgelist line {}: bad weight", line_no));
    }
    builder.add_edge(std::string_view(line).substr(0, t1), std::string_view(line).substr(t1 + 1, t2 - t1 - 1), w);
  }
  return std::move(builder).build();
}

NodeId GraphBuilder::node(std::string_view label) {
  if (label.empty()) return add_nodes(1);
  auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<NodeId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

NodeId GraphBuilder::add_nodes(std::size_t count) {
  auto first = static_cast<NodeId>(labels_.size());
  labels_.resize(labels_.size() + count);
  return first;
}

void GraphBuilder::add_edge(NodeId u, NodeId v, double weight) {
  if (!std::isfinite(weight)) throw DataError("non-finite edge weight");
  if (u >= labels_.size() || v >= labels_.size()) throw DataError("edge endpoint out of range");
  if (u == v) return;
  if (!directed_ && u > v) std::swap(u, v);
  edges_.push_back({u, v, weight});
}

WeightedGraph GraphBuilder::build() && {
  std::sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  std::vector<WeightedGraph::Edge> merged;
  merged.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (!merged.empty() && merged.back().source == e.source && merged.back().target == e.target) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }

  WeightedGraph g;
  g.directed_ = directed_;
  g.labels_ = std::move(labels_);
  g.index_ = std::move(index_);
  g.edges_ = std::move(merged);

  const std::size_t n = g.labels_.size();
  std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0);
  for (const auto& e : g.edges_) {
    ++out_deg[e.source];
    ++in_deg[e.target];
    if (!directed_) {
      ++out_deg[e.target];
      ++in_deg[e.source];
    }
  }
  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    g.out_offsets_[v + 1] = g.out_offsets_[v] + out_deg[v];
    g.in_offsets_[v + 1] = g.in_offsets_[v] + in_deg[v];
  }
  g.out_arcs_.resize(g.out_offsets_[n]);
  g.in_arcs_.resize(g.in_offsets_[n]);
  std::vector<std::size_t> out_pos(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  std::vector<std::size_t> in_pos(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.out_arcs_[out_pos[e.source]++] = {e.target, e.weight};
    g.in_arcs_[in_pos[e.target]++] = {e.source, e.weight};
    if (!directed_) {
      g.out_arcs_[out_pos[e.target]++] = {e.source, e.weight};
      g.in_arcs_[in_pos[e.source]++] = {e.target, e.weight};
    }
  }
  return g;
}

NodeWeights::NodeWeights(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!(entries_[i].second >= 0.0) || !std::isfinite(entries_[i].second)) {
      throw DataError(fmt::format("invalid weight {} for '{}'", entries_[i].second, entries_[i].first));
    }
    if (i > 0 && entries_[i].first == entries_[i - 1].first) {
      throw DataError(fmt::format("duplicate key '{}'", entries_[i].first));
    }
  }
}

double NodeWeights::get(std::string_view key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, std::string_view k) { return e.first < k; });
  return it != entries_.end() && it->first == key ? it->second : 0.0;
}

double NodeWeights::sum() const {
  double s = 0;
  for (const auto& [k, w] : entries_) s += w;
  return s;
}

PageRankNotConverged::PageRankNotConverged(std::vector<double> last_iterate, int iterations)
    : Error(fmt::format("PageRank did not converge after {} iterations", iterations)),
      last_(std::move(last_iterate)),
      iterations_(iterations) {}

std::vector<double> pagerank(const WeightedGraph& graph, const PageRankOptions& options) {
  const std::size_t n = graph.size();
  if (n == 0) throw ConfigError("PageRank of an empty graph");
  if (!(options.damping > 0.0 && options.damping < 1.0)) throw ConfigError("damping must lie in (0, 1)");

  std::vector<double> out_weight(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& arc : graph.out_arcs(v)) {
      if (arc.weight < 0) throw DataError("PageRank needs non-negative edge weights");
      out_weight[v] += arc.weight;
    }
  }

  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> x(n, inv_n), next(n);
  for (int it = 1; it <= options.max_iterations; ++it) {
    double dangling = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (out_weight[v] <= 0.0) dangling += x[v];
    }
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    for (NodeId v = 0; v < n; ++v) {
      double acc = 0.0;
      for (const auto& arc : graph.in_arcs(v)) {
        if (out_weight[arc.node] > 0.0) acc += x[arc.node] * arc.weight / out_weight[arc.node];
      }
      next[v] = base + d * acc;
    }
    double sum = 0.0;
    for (double value : next) sum += value;
    double diff = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      next[v] /= sum;
      diff += std::abs(next[v] - x[v]);
    }
    x.swap(next);
    if (diff < options.tolerance) return x;
  }
  throw PageRankNotConverged(std::move(x), options.max_iterations);
}

NodeWeights pagerank_weights(const WeightedGraph& graph, const PageRankOptions& options) {
  auto scores = pagerank(graph, options);
  std::vector<NodeWeights::Entry> entries;
  entries.reserve(scores.size());
  for (NodeId v = 0; v < scores.size(); ++v) entries.emplace_back(graph.label(v), scores[v]);
  return NodeWeights(std::move(entries));
}

double weighted_jaccard(const NodeWeights& a, const NodeWeights& b) {
  double num = 0.0, den = 0.0;
  auto ia = a.entries().begin(), ea = a.entries().end();
  auto ib = b.entries().begin(), eb = b.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      den += ia->second;
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      den += ib->second;
      ++ib;
    } else {
      num += std::min(ia->second, ib->second);
      den += std::max(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace newsattn
