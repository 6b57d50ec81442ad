#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "newsattn/clickstream.hpp"
#include "newsattn/date.hpp"
#include "newsattn/events.hpp"
#include "newsattn/graph.hpp"
#include "newsattn/series_store.hpp"

namespace newsattn {

inline constexpr std::size_t kWindowDays = 61;
inline constexpr std::size_t kEventDayIndex = 30;

struct NetworkParams {
  std::size_t window_days = kWindowDays;
  /// Edges survive only with averaged weight strictly above this.
  double edge_threshold = 100.0;
};

/// Per-event directed click graph plus the daily view series of its nodes.
struct EventNetwork {
  EventRecord event;
  WeightedGraph graph;  // directed, click-weighted
  Day window_start{};
  std::size_t window_days = kWindowDays;
  /// series[v] has window_days entries; index window_days/2 is the event date.
  std::vector<std::vector<double>> series;
  /// Core articles that did not survive thresholding / isolate removal.
  std::vector<std::string> dropped_core;
  bool degenerate = false;

  std::size_t event_index() const { return window_days / 2; }
  bool is_core(NodeId v) const;
  std::vector<NodeId> core_nodes() const;

  bool operator==(const EventNetwork&) const = default;
};

/// First day of the window centred on `date`.
Day window_start_for(Day date, std::size_t window_days = kWindowDays);

/// Fraction of the window falling into each calendar month (at most 3 months
/// for a 61-day window); fractions sum to 1.
std::vector<std::pair<Month, double>> window_month_weights(Day date, std::size_t window_days = kWindowDays);

/// Node set = core articles and their in/out click neighbours in the window
/// months; edge weight = sum over months of fraction * count; edges at or
/// below the threshold and then isolated nodes are removed. Series are left
/// empty (see attach_series). An empty result is flagged degenerate.
EventNetwork build_event_network(const EventRecord& event, const ClickstreamStore& clicks,
                                 const NetworkParams& params = {});

/// Fills one window of daily views per node; articles absent from the store
/// get zero vectors and a warning.
void attach_series(EventNetwork& network, const DailySeriesStore& store, Diagnostics& diag);

/// Directory layout: edges.tsv, series.tsv (article then one column per day)
/// and manifest.json.
void save_event_network(const EventNetwork& network, const std::filesystem::path& dir);
EventNetwork load_event_network(const std::filesystem::path& dir);

}  // namespace newsattn
