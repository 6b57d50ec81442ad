#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newsattn/community.hpp"
#include "newsattn/graph.hpp"

namespace newsattn {

/// `points` log-spaced values from `min` to `max` inclusive.
struct GeometricGrid {
  double min = std::exp(-9.0);
  double max = 1.0;
  std::size_t points = 40;

  std::vector<double> values() const;
  bool operator==(const GeometricGrid&) const = default;
};

enum class SweepStatus { Interior, Flat };

struct SweepResult {
  std::vector<double> resolutions;
  /// Per consecutive pair (i, i + 1), averaged over graphs.
  std::vector<double> ami;
  std::vector<double> ecs;
  /// Pairs where at least one graph had a non-trivial partition on either side.
  std::vector<bool> eligible;
  SweepStatus status = SweepStatus::Flat;
  std::optional<double> chosen;
  std::optional<std::size_t> chosen_index;
  /// partitions[g][k]: graph g at resolutions[k]; filled only on request.
  std::vector<std::vector<Partition>> partitions;  // [graph][grid point], when kept

  double score(std::size_t pair) const { return 0.5 * (ami[pair] + ecs[pair]); }
  std::string to_json() const;
};

struct SweepOptions {
  std::uint64_t seed = 0;
  int seeds_per_point = 1;
  double alpha = 0.9;
  bool keep_partitions = false;
  LeidenOptions leiden;
};

/// Runs leiden_cpm at every grid resolution on every graph and scores each
/// consecutive pair by mean AMI and element-centric similarity. Pairs in which
/// both partitions are trivial (one community or all singletons) are ignored
/// per graph. The chosen resolution sits in the middle of the widest run of
/// maximal scores; if that run touches either end of the eligible range the
/// status is Flat and nothing is chosen.
///
/// Throws ConfigError for grids with fewer than two points or that are not
/// strictly increasing.
SweepResult resolution_sweep(std::span<const WeightedGraph> graphs, std::span<const double> grid,
                             const SweepOptions& options = {});

}  // namespace newsattn
