#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "newsattn/agreement.hpp"
#include "newsattn/pipeline.hpp"
#include "newsattn/synth.hpp"

namespace {

using namespace newsattn;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw DataError(fmt::format("cannot write {}", out));
  f << text << '\n';
}

/// Flags that override PipelineConfig fields. Unset flags leave the config alone.
struct Overrides {
  std::optional<std::string> config_file, corpus, work, period_first, period_last, overlap;
  std::optional<std::size_t> window_days, correlation_window, grid_points, sweep_sample, label_top_k, workers;
  std::optional<double> tau, edge_threshold, temporal_res, structural_res, navigational_res, topic_res, gate,
      grid_min, grid_max;
  std::optional<bool> weighted_pagerank, baseline_includes_event_day;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "JSON config file (flags override it)");
    app.add_option("--corpus", corpus, "corpus directory [env NEWSATTN_CORPUS_DIR]");
    app.add_option("--work", work, "work directory for stage artifacts [env NEWSATTN_WORK_DIR]");
    app.add_option("--period-first", period_first, "first day of the corpus period, YYYY-MM-DD");
    app.add_option("--period-last", period_last, "last day of the corpus period, YYYY-MM-DD");
    app.add_option("--window-days", window_days, "days in an event window");
    app.add_option("--correlation-window", correlation_window, "days per rolling correlation layer");
    app.add_option("--tau", tau, "interlayer coupling");
    app.add_option("--edge-threshold", edge_threshold, "minimum monthly clicks for a network edge");
    app.add_option("--temporal-resolution", temporal_res);
    app.add_option("--structural-resolution", structural_res);
    app.add_option("--navigational-resolution", navigational_res);
    app.add_option("--topic-resolution", topic_res);
    app.add_option("--gate", gate, "excess-view gate on scaled views");
    app.add_option("--overlap", overlap, "event-day overlap rule: window|layer");
    app.add_option("--weighted-pagerank", weighted_pagerank, "click-weighted PageRank (true|false)");
    app.add_option("--baseline-includes-event-day", baseline_includes_event_day, "true|false");
    app.add_option("--grid-min", grid_min);
    app.add_option("--grid-max", grid_max);
    app.add_option("--grid-points", grid_points);
    app.add_option("--sweep-sample", sweep_sample, "events sampled per sweep");
    app.add_option("--label-top-k", label_top_k, "topics per feature in the labeling subset");
    app.add_option("--seed", seed);
    app.add_option("--workers", workers, "threads for per-event work (0 = all cores)");
  }

  PipelineConfig resolve() const {
    PipelineConfig c;
    if (config_file) c = PipelineConfig::from_json(slurp(*config_file));
    if (const char* env = std::getenv("NEWSATTN_CORPUS_DIR")) c.corpus_dir = env;
    if (const char* env = std::getenv("NEWSATTN_WORK_DIR")) c.work_dir = env;
    if (corpus) c.corpus_dir = *corpus;
    if (work) c.work_dir = *work;
    if (period_first) c.period_first = *period_first;
    if (period_last) c.period_last = *period_last;
    if (window_days) c.window_days = *window_days;
    if (correlation_window) c.correlation_window = *correlation_window;
    if (tau) c.tau = *tau;
    if (edge_threshold) c.edge_threshold = *edge_threshold;
    if (temporal_res) c.temporal_resolution = *temporal_res;
    if (structural_res) c.structural_resolution = *structural_res;
    if (navigational_res) c.navigational_resolution = *navigational_res;
    if (topic_res) c.topic_resolution = *topic_res;
    if (gate) c.gate = *gate;
    if (overlap) {
      if (*overlap == "window") c.overlap = OverlapRule::WindowContainsEventDay;
      else if (*overlap == "layer") c.overlap = OverlapRule::LayerAtEventDay;
      else throw ConfigError(fmt::format("unknown overlap rule '{}' (window|layer)", *overlap));
    }
    if (weighted_pagerank) c.weighted_pagerank = *weighted_pagerank;
    if (baseline_includes_event_day) c.baseline_includes_event_day = *baseline_includes_event_day;
    if (grid_min) c.grid.min = *grid_min;
    if (grid_max) c.grid.max = *grid_max;
    if (grid_points) c.grid.points = *grid_points;
    if (sweep_sample) c.sweep_sample = *sweep_sample;
    if (label_top_k) c.label_top_k = *label_top_k;
    if (seed) c.seed = *seed;
    if (workers) c.workers = *workers;
    return c;
  }
};

void report(const StageOutcome& o) {
  std::cerr << fmt::format("{}: {}", stage_name(o.stage), o.skipped ? "up to date" : "done");
  if (!o.warnings.empty()) std::cerr << fmt::format(" ({} warnings, see diagnostics.txt)", o.warnings.size());
  std::cerr << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"News-attention pipeline: event networks, reactions and topics from Wikipedia dumps"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides ov;
  ov.attach(app);

  std::vector<std::pair<CLI::App*, Stage>> stage_cmds;
  for (auto s : kAllStages) {
    auto* sub = app.add_subcommand(std::string(stage_verb(s)), fmt::format("run the {} stage", stage_name(s)));
    stage_cmds.emplace_back(sub, s);
  }
  auto* all = app.add_subcommand("run", "run every stage in order");
  auto* show = app.add_subcommand("show-config", "print the resolved config as JSON");

  std::string target = "temporal", sweep_out;
  auto* sweep = app.add_subcommand("sweep", "resolution sweep over sampled events");
  sweep->add_option("--target", target, "temporal|structural|navigational|higher");
  sweep->add_option("--out", sweep_out, "output JSON (default <work>/sweep/<target>.json)");

  std::optional<std::string> synth_config;
  std::optional<std::size_t> synth_events;
  std::optional<double> synth_noise, synth_amplitude;
  std::optional<std::uint64_t> synth_seed;
  std::string bench_out, corpus_out;
  auto add_synth = [&](CLI::App* sub) {
    sub->add_option("--synth-config", synth_config, "SynthConfig JSON file");
    sub->add_option("--events", synth_events);
    sub->add_option("--noise", synth_noise);
    sub->add_option("--amplitude", synth_amplitude);
    sub->add_option("--synth-seed", synth_seed);
  };
  auto* bench = app.add_subcommand("bench", "planted-structure benchmark on a synthetic corpus");
  add_synth(bench);
  bench->add_option("--out", bench_out, "report JSON (default stdout)");
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus in dump layout");
  add_synth(synth);
  synth->add_option("dir", corpus_out, "output directory")->required();

  std::vector<std::string> label_files;
  std::string agreement_out;
  auto* agreement = app.add_subcommand("agreement", "agreement breakdown of two coders' label files");
  agreement->add_option("files", label_files, "label JSON files")->required()->check(CLI::ExistingFile);
  agreement->add_option("--out", agreement_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto synth_cfg = [&] {
    SynthConfig s;
    if (synth_config) s = SynthConfig::from_json(slurp(*synth_config));
    if (synth_events) s.events = *synth_events;
    if (synth_noise) s.noise = *synth_noise;
    if (synth_amplitude) s.spike_amplitude = *synth_amplitude;
    if (synth_seed) s.seed = *synth_seed;
    s.validate();
    return s;
  };

  for (auto& [sub, stage] : stage_cmds) {
    if (sub->parsed()) {
      report(run_stage(stage, ov.resolve()));
      return 0;
    }
  }
  if (all->parsed()) {
    for (const auto& o : run_pipeline(ov.resolve())) report(o);
    return 0;
  }
  if (show->parsed()) {
    std::cout << ov.resolve().to_json() << '\n';
    return 0;
  }
  if (sweep->parsed()) {
    const auto config = ov.resolve();
    const auto result = sweep_from_artifacts(config, parse_sweep_target(target));
    if (sweep_out.empty()) {
      std::filesystem::create_directories(config.work_dir / "sweep");
      sweep_out = (config.work_dir / "sweep" / (target + ".json")).string();
    }
    emit(result.to_json(), sweep_out);
    if (result.chosen) {
      std::cerr << fmt::format("sweep {}: interior maximum at resolution {}\n", target, *result.chosen);
    } else {
      std::cerr << fmt::format("sweep {}: no interior maximum (flat or at the grid boundary)\n", target);
    }
    return 0;
  }
  if (bench->parsed()) {
    const auto config = ov.resolve();
    BenchParams params;
    params.reaction = config.reaction_params();
    params.comparison = {config.gate, config.structural_resolution, config.navigational_resolution, config.seed};
    params.topic_resolution = config.topic_resolution;
    emit(run_benchmark(generate_corpus(synth_cfg()), params).to_json(), bench_out);
    return 0;
  }
  if (synth->parsed()) {
    write_corpus(generate_corpus(synth_cfg()), corpus_out);
    return 0;
  }
  if (agreement->parsed()) {
    std::vector<LabelRecord> records;
    for (const auto& path : label_files) {
      std::ifstream in(path);
      auto part = read_label_file(in);
      records.insert(records.end(), part.begin(), part.end());
    }
    const auto summary = agreement_summary(records);
    if (!summary.excluded.empty()) {
      std::cerr << fmt::format("{} topics excluded (not exactly two coders): {}\n", summary.excluded.size(),
                               fmt::join(summary.excluded, ", "));
    }
    emit(summary.to_json(), agreement_out);
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const newsattn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
