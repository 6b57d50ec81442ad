#include "newsattn/sweep.hpp"

#include <algorithm>

#include <json.hpp>

#include "newsattn/partition_similarity.hpp"

namespace newsattn {

std::vector<double> GeometricGrid::values() const {
  if (points < 2) throw ConfigError("resolution grid needs at least two points");
  if (!(min > 0.0) || !(max > min)) throw ConfigError("resolution grid needs 0 < min < max");
  std::vector<double> out(points);
  const double lo = std::log(min);
  const double step = (std::log(max) - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = std::exp(lo + step * static_cast<double>(i));
  out.front() = min;
  out.back() = max;
  return out;
}

namespace {

bool trivial(const Partition& p) {
  const auto k = p.community_count();
  return k <= 1 || k == p.size();
}

}  // namespace

SweepResult resolution_sweep(std::span<const WeightedGraph> graphs, std::span<const double> grid,
                             const SweepOptions& options) {
  if (grid.size() < 2) throw ConfigError("resolution sweep needs at least two grid points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("resolution grid must be strictly increasing");
  }

  SweepResult result;
  result.resolutions.assign(grid.begin(), grid.end());
  const std::size_t pairs = grid.size() - 1;
  std::vector<double> ami_sum(pairs, 0.0), ecs_sum(pairs, 0.0), counted(pairs, 0.0);

  for (const auto& graph : graphs) {
    std::vector<Partition> parts;
    parts.reserve(grid.size());
    for (double r : grid) parts.push_back(leiden_cpm_best_of(graph, r, options.seed, options.seeds_per_point, options.leiden));
    for (std::size_t k = 0; k < pairs; ++k) {
      if (trivial(parts[k]) && trivial(parts[k + 1])) continue;
      ami_sum[k] += ami(parts[k].membership, parts[k + 1].membership);
      ecs_sum[k] += element_centric(parts[k].membership, parts[k + 1].membership, options.alpha);
      counted[k] += 1.0;
    }
    if (options.keep_partitions) result.partitions.push_back(std::move(parts));
  }

  result.ami.assign(pairs, 0.0);
  result.ecs.assign(pairs, 0.0);
  result.eligible.assign(pairs, false);
  std::optional<std::size_t> first, last;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pairs; ++k) {
    if (counted[k] == 0.0) continue;
    result.eligible[k] = true;
    result.ami[k] = ami_sum[k] / counted[k];
    result.ecs[k] = ecs_sum[k] / counted[k];
    if (!first) first = k;
    last = k;
    best = std::max(best, result.score(k));
  }
  if (!first) return result;

  // Widest run of eligible pairs scoring within tolerance of the maximum.
  constexpr double tol = 1e-9;
  std::size_t run_begin = 0, run_len = 0;
  for (std::size_t k = *first; k <= *last;) {
    if (!result.eligible[k] || result.score(k) < best - tol) {
      ++k;
      continue;
    }
    std::size_t j = k;
    while (j <= *last && result.eligible[j] && result.score(j) >= best - tol) ++j;
    if (j - k > run_len) {
      run_begin = k;
      run_len = j - k;
    }
    k = j;
  }
  const std::size_t run_end = run_begin + run_len - 1;
  if (run_begin == *first || run_end == *last) return result;

  result.status = SweepStatus::Interior;
  result.chosen_index = run_begin + run_len / 2;
  result.chosen = result.resolutions[*result.chosen_index];
  return result;
}

std::string SweepResult::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t k = 0; k < ami.size(); ++k) {
    pairs.push_back({{"low", resolutions[k]},
                     {"high", resolutions[k + 1]},
                     {"ami", ami[k]},
                     {"element_centric", ecs[k]},
                     {"eligible", static_cast<bool>(eligible[k])}});
  }
  nlohmann::json out{{"resolutions", resolutions},
                     {"pairs", pairs},
                     {"status", status == SweepStatus::Interior ? "interior" : "flat"},
                     {"chosen", chosen ? nlohmann::json(*chosen) : nlohmann::json(nullptr)}};
  return out.dump(2);
}

}  // namespace newsattn
