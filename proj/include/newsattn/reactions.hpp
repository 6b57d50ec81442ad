#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "newsattn/community.hpp"
#include "newsattn/correlation.hpp"
#include "newsattn/event_network.hpp"
#include "newsattn/graph.hpp"
#include "newsattn/sweep.hpp"

namespace newsattn {

/// When a temporal community counts as overlapping the event day.
enum class OverlapRule {
  /// Some member copy sits in a layer whose correlation window contains the event day.
  WindowContainsEventDay,
  /// Some member copy sits in the layer whose window starts on the event day.
  LayerAtEventDay,
};

struct ReactionParams {
  CorrelationParams correlation;
  double tau = 1.0;
  double resolution = 0.25;
  std::uint64_t seed = 0;
  OverlapRule overlap = OverlapRule::WindowContainsEventDay;
  /// PageRank on click weights (true) or on unit weights.
  bool weighted_pagerank = true;
  PageRankOptions pagerank;
};

struct EventReaction {
  std::string event_id;
  std::vector<std::string> articles;  // sorted
  std::size_t layer_min = 0;
  std::size_t layer_max = 0;
  NodeWeights pagerank;
  bool contains_core = false;
  double structural_similarity = 0.0;

  bool operator==(const EventReaction&) const = default;
};

/// PageRank of the subgraph of the event's click graph induced by `nodes`.
NodeWeights subgraph_pagerank(const EventNetwork& network, std::span<const NodeId> nodes, bool weighted,
                              const PageRankOptions& options = {});

/// Projects temporal communities onto article sets and keeps those holding a
/// core article and overlapping the event day. Reactions are ordered by the
/// lowest node id of their community.
std::vector<EventReaction> extract_reactions(const Partition& partition, const FlatMultilayerGraph& flat,
                                             const EventNetwork& network, const ReactionParams& params = {});

/// Intermediate products of the temporal pipeline for one event.
struct TemporalDetection {
  TemporalEdgeWeights correlations;
  FlatMultilayerGraph flat;
  Partition partition;
  std::vector<EventReaction> reactions;
};

/// Correlate, flatten, partition and extract in one go.
TemporalDetection detect_event_reactions(const EventNetwork& network, const ReactionParams& params = {});

/// Network node ids of a reaction's articles.
std::vector<NodeId> reaction_nodes(const EventReaction& reaction, const EventNetwork& network);

/// Median / IQR scaled total views of a group of articles.
/// A zero interquartile range yields all zeros.
std::vector<double> scaled_series(const EventNetwork& network, std::span<const NodeId> members);

/// Views above each article's full-window median over the event week (event
/// day and the six days after it), summed over the group.
double group_excess(const EventNetwork& network, std::span<const NodeId> members);

/// Whether the scaled series of the group exceeds `gate` within one day of the event.
bool passes_gate(const EventNetwork& network, std::span<const NodeId> members, double gate = 3.0);

/// Excess views summed over the groups passing the gate. Articles appearing in
/// several groups are counted once per group.
double excess_views(const EventNetwork& network, const std::vector<std::vector<NodeId>>& groups, double gate = 3.0);

enum class StaticMode { Structural, Navigational };

inline constexpr double kStructuralResolution = 0.030;
inline constexpr double kNavigationalResolution = 54.6;

/// Static baseline graph: unit weights (structural) or summed click weights
/// (navigational) on the undirected projection of the event graph.
WeightedGraph static_graph(const EventNetwork& network, StaticMode mode);

Partition static_partition(const EventNetwork& network, StaticMode mode, double resolution, std::uint64_t seed);

/// Communities of `partition` that contain a core article, as node id lists.
std::vector<std::vector<NodeId>> core_communities(const Partition& partition, const EventNetwork& network);

/// PageRank-weighted communities of the structural graph over a resolution
/// grid, deduplicated, for scoring structural similarity.
class StaticCommunityIndex {
 public:
  StaticCommunityIndex(const EventNetwork& network, std::span<const double> grid, std::uint64_t seed,
                       bool weighted_pagerank = true, const PageRankOptions& options = {});

  /// Maximum weighted Jaccard between `weights` and any indexed community.
  double best_similarity(const NodeWeights& weights) const;
  std::size_t size() const { return communities_.size(); }

 private:
  std::vector<NodeWeights> communities_;
};

/// Fills structural_similarity on each reaction.
void score_structural_similarity(std::vector<EventReaction>& reactions, const EventNetwork& network,
                                 std::span<const double> grid, std::uint64_t seed, bool weighted_pagerank = true);

struct ComparisonResult {
  std::string event_id;
  double excess_temporal = 0.0;
  /// Temporal excess with each article counted once across gated reactions.
  double excess_temporal_distinct = 0.0;
  double excess_structural = 0.0;
  double excess_navigational = 0.0;
};

struct ComparisonParams {
  double gate = 3.0;
  double structural_resolution = kStructuralResolution;
  double navigational_resolution = kNavigationalResolution;
  std::uint64_t seed = 0;
};

ComparisonResult compare_excess(const EventNetwork& network, const std::vector<EventReaction>& reactions,
                                const ComparisonParams& params = {});

/// One JSON object per line: event_id, articles, weights, span, s, contains_core.
void write_reactions_jsonl(const std::vector<EventReaction>& reactions, std::ostream& out);
std::vector<EventReaction> read_reactions_jsonl(std::istream& in);

/// Linear-interpolation quantile of an unsorted sample (q in [0, 1]).
double quantile(std::vector<double> values, double q);
double median(std::span<const double> values);

}  // namespace newsattn
