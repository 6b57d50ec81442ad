#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newsattn/error.hpp"
#include "newsattn/reactions.hpp"
#include "newsattn/sweep.hpp"
#include "newsattn/topics.hpp"

namespace newsattn {

/// Every tunable of the pipeline. Defaults are the published operating points.
struct PipelineConfig {
  std::filesystem::path corpus_dir = "corpus";
  std::filesystem::path work_dir = "work";
  std::optional<std::string> period_first;  // YYYY-MM-DD, inclusive
  std::optional<std::string> period_last;

  std::size_t window_days = 61;
  std::size_t correlation_window = 7;
  double tau = 1.0;
  double edge_threshold = 100.0;

  double temporal_resolution = 0.25;
  double structural_resolution = 0.030;
  double navigational_resolution = 54.6;
  double topic_resolution = 0.067;

  double gate = 3.0;
  OverlapRule overlap = OverlapRule::WindowContainsEventDay;
  bool weighted_pagerank = true;
  bool baseline_includes_event_day = true;

  GeometricGrid grid;
  std::size_t sweep_sample = 100;
  std::size_t label_top_k = 20;
  std::uint64_t seed = 0;
  std::size_t workers = 0;  // per-event threads; 0 = hardware concurrency. Not part of the fingerprint.

  std::string to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static PipelineConfig from_json(std::string_view text);
  /// Throws ConfigError on out-of-range values.
  void validate() const;
  bool operator==(const PipelineConfig&) const = default;

  /// JSON of the fields that influence results (paths excluded).
  std::string fingerprint() const;
  ReactionParams reaction_params() const;
};

/// A stage was run before its upstream stage produced artifacts.
class StageOrderError : public DataError {
 public:
  StageOrderError(std::string stage, std::string missing);
  const std::string& missing_stage() const { return missing_; }

 private:
  std::string missing_;
};

enum class Stage { Ingest, Networks, Correlate, Detect, Reactions, Topics, Export };

inline constexpr Stage kAllStages[] = {Stage::Ingest,    Stage::Networks, Stage::Correlate, Stage::Detect,
                                       Stage::Reactions, Stage::Topics,   Stage::Export};

std::string_view stage_name(Stage stage);
/// CLI verb of a stage ("build-networks", "export-ui", ...).
std::string_view stage_verb(Stage stage);
Stage parse_stage(std::string_view name);

struct StageOutcome {
  Stage stage;
  bool skipped = false;  // manifest matched, nothing recomputed
  std::vector<std::string> warnings;
};

/// Runs one stage, writing <work_dir>/<stage>/ and its manifest.json.
StageOutcome run_stage(Stage stage, const PipelineConfig& config);

/// Runs every stage in order.
std::vector<StageOutcome> run_pipeline(const PipelineConfig& config);

/// Hex SHA-256 of a byte string / file.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

enum class SweepTarget { Temporal, Structural, Navigational, Higher };
SweepTarget parse_sweep_target(std::string_view name);

/// Resolution sweep over a seeded sample of events (or over the reaction
/// network for Higher) using the artifacts already in the work directory.
SweepResult sweep_from_artifacts(const PipelineConfig& config, SweepTarget target);

}  // namespace newsattn
