#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "newsattn/error.hpp"

namespace newsattn {

using NodeId = std::uint32_t;

/// Immutable weighted graph with string-labelled nodes.
///
/// Edges are unique per (source, target) pair; undirected graphs store each
/// edge once with source < target. Self-loops never survive construction.
class WeightedGraph {
 public:
  struct Edge {
    NodeId source;
    NodeId target;
    double weight;
    bool operator==(const Edge&) const = default;
  };
  struct Arc {
    NodeId node;
    double weight;
  };

  WeightedGraph() = default;

  bool directed() const { return directed_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  std::span<const Edge> edges() const { return edges_; }

  /// Outgoing arcs (all incident arcs for undirected graphs).
  std::span<const Arc> out_arcs(NodeId v) const {
    return {out_arcs_.data() + out_offsets_[v], out_arcs_.data() + out_offsets_[v + 1]};
  }
  /// Incoming arcs (all incident arcs for undirected graphs).
  std::span<const Arc> in_arcs(NodeId v) const {
    return {in_arcs_.data() + in_offsets_[v], in_arcs_.data() + in_offsets_[v + 1]};
  }

  /// Edge weight or nullopt; for undirected graphs the order of u, v is irrelevant.
  std::optional<double> weight(NodeId u, NodeId v) const;

  std::size_t degree(NodeId v) const { return out_arcs(v).size() + (directed_ ? in_arcs(v).size() : 0); }

  /// Subgraph induced by `nodes` (labels kept, ids renumbered in the given order).
  WeightedGraph induced(std::span<const NodeId> nodes) const;

  enum class Projection { Unit, Sum };
  /// Undirected view: u->v and v->u collapse into one edge whose weight is 1
  /// (Unit) or the sum of both directions (Sum).
  WeightedGraph undirected(Projection mode) const;

  /// "u<TAB>v<TAB>weight" rows in edge order, weights printed round-trip exact.
  void write_edgelist(std::ostream& out) const;
  static WeightedGraph read_edgelist(std::istream& in, bool directed);

  bool operator==(const WeightedGraph& other) const {
    return directed_ == other.directed_ && labels_ == other.labels_ && edges_ == other.edges_;
  }

 private:
  friend class GraphBuilder;

  bool directed_ = false;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Arc> out_arcs_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Arc> in_arcs_;
};

/// Accumulates nodes and edges; duplicate edges are summed on build().
class GraphBuilder {
 public:
  explicit GraphBuilder(bool directed) : directed_(directed) {}

  /// Returns the id of `label`, adding the node if needed. Empty labels always
  /// create a fresh anonymous node.
  NodeId node(std::string_view label);
  /// Adds `count` anonymous nodes and returns the first id.
  NodeId add_nodes(std::size_t count);
  std::size_t size() const { return labels_.size(); }

  /// Self-loops are silently dropped; non-finite weights throw DataError.
  void add_edge(NodeId u, NodeId v, double weight);
  void add_edge(std::string_view u, std::string_view v, double weight) {
    const NodeId a = node(u);
    add_edge(a, node(v), weight);
  }

  WeightedGraph build() &&;

 private:
  bool directed_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<WeightedGraph::Edge> edges_;
};

/// Sparse non-negative weights keyed by article title, kept sorted by key.
class NodeWeights {
 public:
  using Entry = std::pair<std::string, double>;

  NodeWeights() = default;
  /// Throws DataError on negative or non-finite weights.
  explicit NodeWeights(std::vector<Entry> entries);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double get(std::string_view key) const;
  double sum() const;

  bool operator==(const NodeWeights&) const = default;

 private:
  std::vector<Entry> entries_;
};

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  int max_iterations = 1000;
};

/// Raised when power iteration does not reach the tolerance; carries the last iterate.
class PageRankNotConverged : public Error {
 public:
  PageRankNotConverged(std::vector<double> last_iterate, int iterations);
  const std::vector<double>& last_iterate() const { return last_; }
  int iterations() const { return iterations_; }

 private:
  std::vector<double> last_;
  int iterations_;
};

/// Power-iteration PageRank on the out-weight-normalized transition matrix.
/// Dangling nodes redistribute uniformly; the result sums to 1.
std::vector<double> pagerank(const WeightedGraph& graph, const PageRankOptions& options = {});

/// PageRank keyed by node label.
NodeWeights pagerank_weights(const WeightedGraph& graph, const PageRankOptions& options = {});

/// sum_k min(a_k, b_k) / sum_k max(a_k, b_k); 0 when both are all-zero.
double weighted_jaccard(const NodeWeights& a, const NodeWeights& b);

}  // namespace newsattn
