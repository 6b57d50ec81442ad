#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "newsattn/graph.hpp"

namespace newsattn {

/// Node -> community assignment. Community ids are dense from 0, numbered in
/// order of each community's lowest node id.
struct Partition {
  std::vector<std::uint32_t> membership;
  double quality = 0.0;
  double resolution = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return membership.size(); }
  std::size_t community_count() const;
  /// Member node ids per community, ascending.
  std::vector<std::vector<NodeId>> communities() const;

  /// "node<TAB>community" using node labels (or ids for anonymous nodes).
  void write_tsv(const WeightedGraph& graph, std::ostream& out) const;
  static Partition read_tsv(const WeightedGraph& graph, std::istream& in);
};

/// Relabels arbitrary community ids to the dense canonical numbering.
std::vector<std::uint32_t> canonical_membership(std::span<const std::uint32_t> membership);

/// Constant Potts Model quality: sum over communities of internal edge weight
/// minus gamma * n_c (n_c - 1) / 2. Directed graphs count every internal arc.
double cpm_quality(const WeightedGraph& graph, std::span<const std::uint32_t> membership, double gamma);

struct LeidenOptions {
  /// Randomness of the refinement step; lower is greedier.
  double theta = 0.01;
  /// Full Leiden passes; stops earlier once a pass brings no improvement.
  int max_passes = 50;
};

/// Leiden optimisation of the CPM on an undirected view of `graph` (directed
/// graphs are symmetrised by summing both directions).
///
/// Deterministic for a given seed: node visiting orders are seeded shuffles
/// and equal gains resolve to the lowest community id. Negative weights are
/// supported. The result is never worse than the all-singletons or the
/// single-community partition.
Partition leiden_cpm(const WeightedGraph& graph, double gamma, std::uint64_t seed, const LeidenOptions& options = {});

/// Best of `seeds` runs (seed, seed + 1, ...); earliest seed wins ties.
Partition leiden_cpm_best_of(const WeightedGraph& graph, double gamma, std::uint64_t seed, int seeds,
                             const LeidenOptions& options = {});

}  // namespace newsattn
