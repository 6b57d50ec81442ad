#pragma once

#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "newsattn/event_network.hpp"
#include "newsattn/graph.hpp"

namespace newsattn {

/// Pearson correlation of two equal-length samples (two-pass formula).
/// Returns 0 when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Rolling correlations for every hyperlink-adjacent article pair.
///
/// Pair (u, v) with u < v is present iff u->v or v->u exists; direction is
/// discarded. Layer l covers days l .. l + window - 1.
struct TemporalEdgeWeights {
  std::size_t articles = 0;
  std::size_t layers = 0;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<double> rho;  // pairs.size() * layers, pair-major

  double value(std::size_t pair, std::size_t layer) const { return rho[pair * layers + layer]; }

  /// "u<TAB>v<TAB>layer<TAB>rho" using article labels from `graph`.
  void write_tsv(const WeightedGraph& graph, std::ostream& out) const;
  static TemporalEdgeWeights read_tsv(const WeightedGraph& graph, std::size_t layers, std::istream& in);

  bool operator==(const TemporalEdgeWeights&) const = default;
};

struct CorrelationParams {
  std::size_t window = 7;
};

TemporalEdgeWeights rolling_correlations(const EventNetwork& network, const CorrelationParams& params = {});

/// Static graph with one copy of every article per layer.
///
/// Node id = layer * articles + article. Intralayer edges carry the layer's
/// correlation (sign preserved, zeros kept); interlayer edges of weight tau
/// chain each article's consecutive copies.
struct FlatMultilayerGraph {
  WeightedGraph graph;
  std::size_t articles = 0;
  std::size_t layers = 0;
  double tau = 1.0;

  NodeId copy(NodeId article, std::size_t layer) const { return static_cast<NodeId>(layer * articles + article); }
  NodeId article_of(NodeId node) const { return static_cast<NodeId>(node % articles); }
  std::size_t layer_of(NodeId node) const { return node / articles; }
};

FlatMultilayerGraph flatten_multilayer(const TemporalEdgeWeights& weights, double tau = 1.0);

}  // namespace newsattn
