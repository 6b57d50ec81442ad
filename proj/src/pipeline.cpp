#include "newsattn/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "newsattn/clickstream.hpp"
#include "newsattn/correlation.hpp"
#include "newsattn/event_network.hpp"
#include "newsattn/events.hpp"
#include "newsattn/series_store.hpp"

namespace newsattn {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- config

namespace {

std::string_view overlap_name(OverlapRule rule) {
  return rule == OverlapRule::WindowContainsEventDay ? "window" : "layer";
}

OverlapRule parse_overlap(std::string_view name) {
  if (name == "window") return OverlapRule::WindowContainsEventDay;
  if (name == "layer") return OverlapRule::LayerAtEventDay;
  throw ConfigError(fmt::format("unknown overlap rule '{}' (window|layer)", name));
}

json config_json(const PipelineConfig& c, bool with_paths) {
  json j{{"window_days", c.window_days},
         {"correlation_window", c.correlation_window},
         {"tau", c.tau},
         {"edge_threshold", c.edge_threshold},
         {"temporal_resolution", c.temporal_resolution},
         {"structural_resolution", c.structural_resolution},
         {"navigational_resolution", c.navigational_resolution},
         {"topic_resolution", c.topic_resolution},
         {"gate", c.gate},
         {"overlap", overlap_name(c.overlap)},
         {"weighted_pagerank", c.weighted_pagerank},
         {"baseline_includes_event_day", c.baseline_includes_event_day},
         {"grid", {{"min", c.grid.min}, {"max", c.grid.max}, {"points", c.grid.points}}},
         {"sweep_sample", c.sweep_sample},
         {"label_top_k", c.label_top_k},
         {"seed", c.seed},
         {"period_first", c.period_first ? json(*c.period_first) : json(nullptr)},
         {"period_last", c.period_last ? json(*c.period_last) : json(nullptr)}};
  if (with_paths) {
    j["workers"] = c.workers;
    j["corpus_dir"] = c.corpus_dir.string();
    j["work_dir"] = c.work_dir.string();
  }
  return j;
}

}  // namespace

std::string PipelineConfig::to_json() const { return config_json(*this, true).dump(2); }

std::string PipelineConfig::fingerprint() const { return config_json(*this, false).dump(); }

PipelineConfig PipelineConfig::from_json(std::string_view text) {
  PipelineConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "corpus_dir",   "work_dir",          "period_first",       "period_last",
      "window_days",  "correlation_window", "tau",               "edge_threshold",
      "temporal_resolution", "structural_resolution", "navigational_resolution", "topic_resolution",
      "gate",         "overlap",           "weighted_pagerank",  "baseline_includes_event_day",
      "grid",         "sweep_sample",      "label_top_k",        "seed",
      "workers"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError(fmt::format("config: unknown key '{}'", key));
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    auto get_opt = [&](const char* key, std::optional<std::string>& field) {
      if (j.contains(key) && !j.at(key).is_null()) field = j.at(key).get<std::string>();
    };
    if (j.contains("corpus_dir")) c.corpus_dir = j.at("corpus_dir").get<std::string>();
    if (j.contains("work_dir")) c.work_dir = j.at("work_dir").get<std::string>();
    get_opt("period_first", c.period_first);
    get_opt("period_last", c.period_last);
    get("window_days", c.window_days);
    get("correlation_window", c.correlation_window);
    get("tau", c.tau);
    get("edge_threshold", c.edge_threshold);
    get("temporal_resolution", c.temporal_resolution);
    get("structural_resolution", c.structural_resolution);
    get("navigational_resolution", c.navigational_resolution);
    get("topic_resolution", c.topic_resolution);
    get("gate", c.gate);
    if (j.contains("overlap")) c.overlap = parse_overlap(j.at("overlap").get<std::string>());
    get("weighted_pagerank", c.weighted_pagerank);
    get("baseline_includes_event_day", c.baseline_includes_event_day);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("min")) c.grid.min = g.at("min").get<double>();
      if (g.contains("max")) c.grid.max = g.at("max").get<double>();
      if (g.contains("points")) c.grid.points = g.at("points").get<std::size_t>();
    }
    get("sweep_sample", c.sweep_sample);
    get("label_top_k", c.label_top_k);
    get("seed", c.seed);
    get("workers", c.workers);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  c.validate();
  return c;
}

void PipelineConfig::validate() const {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ConfigError(fmt::format("config: {}", what));
  };
  require(window_days >= 3 && window_days % 2 == 1, "window_days must be odd and at least 3");
  require(correlation_window >= 2 && correlation_window <= window_days,
          "correlation_window must lie in [2, window_days]");
  require(tau >= 0.0, "tau must be non-negative");
  require(edge_threshold >= 0.0, "edge_threshold must be non-negative");
  for (double r : {temporal_resolution, structural_resolution, navigational_resolution, topic_resolution}) {
    require(r > 0.0, "resolutions must be positive");
  }
  require(gate > 0.0, "gate must be positive");
  require(grid.min > 0.0 && grid.max > grid.min && grid.points >= 2, "grid needs 0 < min < max and points >= 2");
  require(sweep_sample >= 1, "sweep_sample must be at least 1");
  try {
    if (period_first) parse_day(*period_first);
    if (period_last) parse_day(*period_last);
  } catch (const Error& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
}

ReactionParams PipelineConfig::reaction_params() const {
  ReactionParams p;
  p.correlation.window = correlation_window;
  p.tau = tau;
  p.resolution = temporal_resolution;
  p.seed = seed;
  p.overlap = overlap;
  p.weighted_pagerank = weighted_pagerank;
  return p;
}

StageOrderError::StageOrderError(std::string stage, std::string missing)
    : DataError(fmt::format("stage '{}' needs the outputs of stage '{}'; run `newsattn {}` first", stage, missing,
                            stage_verb(parse_stage(missing)))),
      missing_(std::move(missing)) {}

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Networks: return "networks";
    case Stage::Correlate: return "correlate";
    case Stage::Detect: return "detect";
    case Stage::Reactions: return "reactions";
    case Stage::Topics: return "topics";
    case Stage::Export: return "export";
  }
  return "";
}

std::string_view stage_verb(Stage stage) {
  switch (stage) {
    case Stage::Networks: return "build-networks";
    case Stage::Export: return "export-ui";
    default: return stage_name(stage);
  }
}

Stage parse_stage(std::string_view name) {
  for (auto s : kAllStages) {
    if (name == stage_name(s) || name == stage_verb(s)) return s;
  }
  throw ConfigError(fmt::format("unknown stage '{}'", name));
}

// ---------------------------------------------------------------- hashing / files

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  out << content;
}

/// Regular files under `dir`, sorted by relative path.
std::vector<fs::path> files_under(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::exists(dir)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) out.push_back(fs::relative(entry.path(), dir));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::exists(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

// ---------------------------------------------------------------- stages

namespace {

fs::path stage_dir(const PipelineConfig& c, Stage s) { return c.work_dir / std::string(stage_name(s)); }

std::vector<Stage> dependencies(Stage s) {
  switch (s) {
    case Stage::Ingest: return {};
    case Stage::Networks: return {Stage::Ingest};
    case Stage::Correlate: return {Stage::Networks};
    case Stage::Detect: return {Stage::Networks, Stage::Correlate};
    case Stage::Reactions: return {Stage::Networks, Stage::Correlate, Stage::Detect};
    case Stage::Topics: return {Stage::Networks, Stage::Reactions};
    case Stage::Export: return {Stage::Ingest, Stage::Reactions, Stage::Topics};
  }
  return {};
}

/// Config fields a stage reads. Upstream fields reach it through input manifests.
json stage_config(Stage stage, const PipelineConfig& c) {
  const auto all = json::parse(c.fingerprint());
  std::vector<const char*> keys;
  switch (stage) {
    case Stage::Ingest: keys = {"period_first", "period_last"}; break;
    case Stage::Networks: keys = {"window_days", "edge_threshold"}; break;
    case Stage::Correlate: keys = {"window_days", "correlation_window"}; break;
    case Stage::Detect: keys = {"window_days", "correlation_window", "tau", "temporal_resolution", "seed"}; break;
    case Stage::Reactions:
      keys = {"window_days", "correlation_window", "tau", "overlap", "weighted_pagerank", "gate",
              "structural_resolution", "navigational_resolution", "grid", "seed"};
      break;
    case Stage::Topics: keys = {"topic_resolution", "baseline_includes_event_day", "seed"}; break;
    case Stage::Export: keys = {"label_top_k"}; break;
  }
  json out = json::object();
  for (const auto* k : keys) out[k] = all.at(k);
  return out;
}

json output_hashes(const fs::path& dir) {
  json out = json::object();
  for (const auto& rel : files_under(dir)) {
    if (rel == "manifest.json") continue;
    out[rel.generic_string()] = sha256_file(dir / rel);
  }
  return out;
}

json input_hashes(Stage stage, const PipelineConfig& c) {
  json out = json::object();
  if (stage == Stage::Ingest) {
    if (!fs::is_directory(c.corpus_dir)) throw DataError(fmt::format("corpus directory {} not found", c.corpus_dir.string()));
    for (const auto& rel : files_under(c.corpus_dir)) out[rel.generic_string()] = sha256_file(c.corpus_dir / rel);
    return out;
  }
  for (auto dep : dependencies(stage)) {
    const auto manifest = stage_dir(c, dep) / "manifest.json";
    if (!fs::exists(manifest)) throw StageOrderError(std::string(stage_name(stage)), std::string(stage_name(dep)));
    out[std::string(stage_name(dep))] = sha256_file(manifest);
  }
  return out;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::vector<std::string> out;
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot read {}", path.string()));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<EventRecord> load_events(const PipelineConfig& c) {
  std::vector<EventRecord> out;
  for (const auto& line : read_lines(stage_dir(c, Stage::Ingest) / "events.jsonl")) out.push_back(event_from_json(line));
  return out;
}

struct NetworkEntry {
  std::string event_id;
  bool degenerate = false;
};

std::vector<NetworkEntry> load_network_index(const PipelineConfig& c) {
  std::vector<NetworkEntry> out;
  for (const auto& line : read_lines(stage_dir(c, Stage::Networks) / "index.tsv")) {
    if (line.front() == '#') continue;
    std::istringstream ss(line);
    NetworkEntry e;
    std::string nodes, edges, degenerate;
    std::getline(ss, e.event_id, '\t');
    std::getline(ss, nodes, '\t');
    std::getline(ss, edges, '\t');
    std::getline(ss, degenerate, '\t');
    e.degenerate = degenerate == "1";
    out.push_back(std::move(e));
  }
  return out;
}

EventNetwork load_network(const PipelineConfig& c, const std::string& event_id) {
  return load_event_network(stage_dir(c, Stage::Networks) / "events" / event_id);
}

std::size_t layer_count(const PipelineConfig& c) {
  if (c.correlation_window < 2 || c.correlation_window > c.window_days) throw ConfigError("bad correlation window");
  return c.window_days - c.correlation_window + 1;
}

TemporalEdgeWeights load_correlations(const PipelineConfig& c, const EventNetwork& net) {
  std::ifstream in(stage_dir(c, Stage::Correlate) / (net.event.event_id + ".tsv"));
  if (!in) throw StageOrderError("detect", "correlate");
  return TemporalEdgeWeights::read_tsv(net.graph, layer_count(c), in);
}

Partition load_partition(const PipelineConfig& c, const std::string& event_id, const WeightedGraph& flat) {
  std::ifstream in(stage_dir(c, Stage::Detect) / (event_id + ".tsv"));
  if (!in) throw DataError(fmt::format("no partition for event {}", event_id));
  return Partition::read_tsv(flat, in);
}

std::vector<EventReaction> load_reactions(const PipelineConfig& c) {
  std::ifstream in(stage_dir(c, Stage::Reactions) / "reactions.jsonl");
  if (!in) throw DataError("reactions.jsonl missing");
  return read_reactions_jsonl(in);
}

/// Runs fn(i) for i in [0, n) over a pool of threads; results keep index order.
template <class Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  std::vector<decltype(fn(std::size_t{}))> out(n);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void merge(Diagnostics& into, const Diagnostics& from) {
  into.skipped += from.skipped;
  into.warnings.insert(into.warnings.end(), from.warnings.begin(), from.warnings.end());
}

std::vector<std::string> live_events(const PipelineConfig& c) {
  std::vector<std::string> out;
  for (const auto& e : load_network_index(c)) {
    if (!e.degenerate) out.push_back(e.event_id);
  }
  return out;
}

std::optional<Month> month_from_filename(const std::string& name) {
  static const std::regex pattern(R"((\d{4}-\d{2}))");
  std::smatch m;
  if (!std::regex_search(name, m, pattern)) return std::nullopt;
  return parse_month(m[1].str());
}

void write_diagnostics(const fs::path& path, const Diagnostics& diag) {
  std::string text;
  for (const auto& w : diag.warnings) text += w + '\n';
  write_file(path, text);
}

void stage_ingest(const PipelineConfig& c, const fs::path& out, Diagnostics& diag) {
  RedirectMap redirects;
  if (fs::exists(c.corpus_dir / "redirects.tsv")) {
    std::ifstream in(c.corpus_dir / "redirects.tsv");
    redirects = RedirectMap::read_tsv(in);
  }
  std::optional<CorpusPeriod> period;
  if (c.period_first || c.period_last) {
    period = CorpusPeriod{c.period_first ? parse_day(*c.period_first) : Day::min(),
                          c.period_last ? parse_day(*c.period_last) : Day::max()};
  }

  std::string events_text;
  std::set<std::string> wanted;
  for (const auto& path : files_in(c.corpus_dir / "events")) {
    if (path.extension() != ".wiki") continue;
    Day day;
    try {
      day = parse_day(path.stem().string());
    } catch (const ParseError&) {
      diag.skip(fmt::format("{}: file name is not a date, ignored", path.filename().string()));
      continue;
    }
    for (const auto& record : parse_event_records(read_file(path), day, redirects, diag, period)) {
      events_text += event_to_json(record) + '\n';
      wanted.insert(record.core_articles.begin(), record.core_articles.end());
    }
  }
  write_file(out / "events.jsonl", events_text);

  ClickstreamStore clicks;
  for (const auto& path : files_in(c.corpus_dir / "clickstream")) {
    auto month = month_from_filename(path.filename().string());
    if (!month) {
      diag.skip(fmt::format("{}: no YYYY-MM in file name, ignored", path.filename().string()));
      continue;
    }
    std::ifstream in(path);
    parse_clickstream(in, *month, redirects, diag, [&](ClickRecord&& r) {
      wanted.insert(r.source);
      wanted.insert(r.target);
      clicks.add(r);
    });
  }
  for (auto month : clicks.months()) {
    std::ostringstream ss;
    clicks.write_month_tsv(month, ss);
    write_file(out / "clickstream" / (format_month(month) + ".tsv"), ss.str());
  }

  DailyAggregator aggregator(redirects);
  aggregator.restrict_to(std::move(wanted));
  for (const auto& path : files_in(c.corpus_dir / "pageviews")) {
    auto stamp = parse_hourly_filename(path.filename().string());
    if (!stamp) {
      diag.skip(fmt::format("{}: not an hourly dump name, ignored", path.filename().string()));
      continue;
    }
    std::ifstream in(path);
    aggregator.add_hourly(stamp->first, in, diag);
  }
  if (aggregator.lines_skipped() > 0) {
    diag.warn(fmt::format("{} unparseable page-view lines skipped", aggregator.lines_skipped()));
  }
  aggregator.take().save(out / "views");
  {
    std::ostringstream ss;
    redirects.write_tsv(ss);
    write_file(out / "redirects.tsv", ss.str());
  }
}

void stage_networks(const PipelineConfig& c, const fs::path& out, Diagnostics& diag) {
  const auto events = load_events(c);
  const auto ingest = stage_dir(c, Stage::Ingest);
  ClickstreamStore clicks;
  RedirectMap identity;
  for (const auto& path : files_in(ingest / "clickstream")) {
    auto month = month_from_filename(path.filename().string());
    if (!month) continue;
    std::ifstream in(path);
    parse_clickstream(in, *month, identity, diag, [&](ClickRecord&& r) { clicks.add(r); });
  }
  const auto views = DailySeriesStore::load(ingest / "views");

  NetworkParams params{c.window_days, c.edge_threshold};
  struct Built {
    std::string row;
    Diagnostics diag;
  };
  auto built = parallel_map(events.size(), c.workers, [&](std::size_t i) {
    const auto& event = events[i];
    Built b;
    auto net = build_event_network(event, clicks, params);
    attach_series(net, views, b.diag);
    if (!net.dropped_core.empty()) {
      b.diag.warn(fmt::format("{}: core articles dropped by thresholding: {}", event.event_id,
                              fmt::join(net.dropped_core, ", ")));
    }
    if (net.degenerate) b.diag.warn(fmt::format("{}: empty network, event excluded downstream", event.event_id));
    save_event_network(net, out / "events" / event.event_id);
    b.row = fmt::format("{}\t{}\t{}\t{}\n", event.event_id, net.graph.size(), net.graph.edge_count(),
                        net.degenerate ? 1 : 0);
    return b;
  });
  std::string index = "# event_id\tnodes\tedges\tdegenerate\n";
  for (const auto& b : built) {
    index += b.row;
    merge(diag, b.diag);
  }
  write_file(out / "index.tsv", index);
}

void stage_correlate(const PipelineConfig& c, const fs::path& out, Diagnostics&) {
  CorrelationParams params{c.correlation_window};
  const auto ids = live_events(c);
  parallel_map(ids.size(), c.workers, [&](std::size_t i) {
    const auto net = load_network(c, ids[i]);
    std::ostringstream ss;
    rolling_correlations(net, params).write_tsv(net.graph, ss);
    write_file(out / (ids[i] + ".tsv"), ss.str());
    return 0;
  });
}

void stage_detect(const PipelineConfig& c, const fs::path& out, Diagnostics&) {
  const auto ids = live_events(c);
  auto rows = parallel_map(ids.size(), c.workers, [&](std::size_t i) {
    const auto net = load_network(c, ids[i]);
    const auto flat = flatten_multilayer(load_correlations(c, net), c.tau);
    const auto partition = leiden_cpm(flat.graph, c.temporal_resolution, c.seed);
    std::ostringstream ss;
    partition.write_tsv(flat.graph, ss);
    write_file(out / (ids[i] + ".tsv"), ss.str());
    return fmt::format("{}\t{}\t{}\n", ids[i], partition.quality, partition.community_count());
  });
  std::string index = "# event_id\tquality\tcommunities\n";
  for (const auto& r : rows) index += r;
  write_file(out / "index.tsv", index);
}

void stage_reactions(const PipelineConfig& c, const fs::path& out, Diagnostics& diag) {
  const auto params = c.reaction_params();
  const auto grid = c.grid.values();
  ComparisonParams cmp{c.gate, c.structural_resolution, c.navigational_resolution, c.seed};
  const auto ids = live_events(c);
  struct PerEvent {
    std::vector<EventReaction> reactions;
    ComparisonResult result;
    Diagnostics diag;
  };
  auto done = parallel_map(ids.size(), c.workers, [&](std::size_t i) {
    PerEvent p;
    const auto net = load_network(c, ids[i]);
    const auto flat = flatten_multilayer(load_correlations(c, net), c.tau);
    const auto partition = load_partition(c, ids[i], flat.graph);
    p.reactions = extract_reactions(partition, flat, net, params);
    if (p.reactions.empty()) p.diag.warn(fmt::format("{}: no event reactions", ids[i]));
    score_structural_similarity(p.reactions, net, grid, c.seed, c.weighted_pagerank);
    p.result = compare_excess(net, p.reactions, cmp);
    return p;
  });
  std::vector<EventReaction> all;
  std::string table =
      "# event_id\treactions\texcess_temporal\texcess_temporal_distinct\texcess_structural\texcess_navigational\n";
  std::size_t events = 0, ge_s = 0, ge_n = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& r = done[i].result;
    table += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", ids[i], done[i].reactions.size(), r.excess_temporal,
                         r.excess_temporal_distinct, r.excess_structural, r.excess_navigational);
    ++events;
    ge_s += r.excess_temporal >= r.excess_structural ? 1 : 0;
    ge_n += r.excess_temporal >= r.excess_navigational ? 1 : 0;
    merge(diag, done[i].diag);
    all.insert(all.end(), done[i].reactions.begin(), done[i].reactions.end());
  }
  std::ostringstream ss;
  write_reactions_jsonl(all, ss);
  write_file(out / "reactions.jsonl", ss.str());
  write_file(out / "comparison.tsv", table);
  const double n = events > 0 ? static_cast<double>(events) : 1.0;
  write_file(out / "summary.json", json{{"events", events},
                                        {"reactions", all.size()},
                                        {"temporal_ge_structural", static_cast<double>(ge_s) / n},
                                        {"temporal_ge_navigational", static_cast<double>(ge_n) / n}}
                                       .dump(2) + "\n");
}

json features_json(const TopicFeatures& f) {
  return json{{"event_count", f.event_count},
              {"prominence", f.prominence},
              {"magnitude", f.magnitude},
              {"deviance", f.deviance},
              {"deviance_excluded", f.deviance_excluded}};
}

void stage_topics(const PipelineConfig& c, const fs::path& out, Diagnostics&) {
  const auto reactions = load_reactions(c);
  const auto ids = reaction_ids(reactions);
  const auto higher = build_higher_network(reactions);
  {
    std::ostringstream ss;
    higher.write_edgelist(ss);
    write_file(out / "higher.tsv", ss.str());
  }
  auto topics = detect_topics(higher, c.topic_resolution, c.seed);

  std::vector<std::vector<double>> series(reactions.size());
  std::map<std::string, std::vector<std::size_t>> by_event;
  for (std::size_t i = 0; i < reactions.size(); ++i) by_event[reactions[i].event_id].push_back(i);
  for (const auto& [event_id, members] : by_event) {
    const auto net = load_network(c, event_id);
    for (auto i : members) series[i] = reaction_series(reactions[i], net).values;
  }
  FeatureParams fp{c.baseline_includes_event_day};
  json list = json::array();
  for (auto& topic : topics) {
    std::vector<std::vector<double>> member_series;
    for (auto i : topic.reactions) member_series.push_back(series[i]);
    topic.features = topic_features(member_series, fp);
    std::vector<std::string> member_ids;
    for (auto i : topic.reactions) member_ids.push_back(ids[i]);
    list.push_back({{"topic_id", topic.topic_id}, {"reactions", member_ids}, {"features", features_json(topic.features)}});
  }
  write_file(out / "topics.json", json{{"resolution", c.topic_resolution}, {"topics", list}}.dump(2) + "\n");
}

std::vector<TopicOfAttention> load_topics(const PipelineConfig& c, const std::vector<EventReaction>& reactions) {
  const auto ids = reaction_ids(reactions);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
  std::vector<TopicOfAttention> out;
  try {
    auto doc = json::parse(read_file(stage_dir(c, Stage::Topics) / "topics.json"));
    for (const auto& t : doc.at("topics")) {
      TopicOfAttention topic;
      topic.topic_id = t.at("topic_id").get<std::size_t>();
      for (const auto& id : t.at("reactions")) {
        auto it = index.find(id.get<std::string>());
        if (it == index.end()) throw DataError(fmt::format("topic {} names an unknown reaction", topic.topic_id));
        topic.reactions.push_back(it->second);
      }
      const auto& f = t.at("features");
      topic.features.event_count = f.at("event_count").get<std::size_t>();
      topic.features.prominence = f.at("prominence").get<double>();
      topic.features.magnitude = f.at("magnitude").get<double>();
      topic.features.deviance = f.at("deviance").get<double>();
      topic.features.deviance_excluded = f.at("deviance_excluded").get<std::size_t>();
      out.push_back(std::move(topic));
    }
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("topics.json: {}", e.what()));
  }
  return out;
}

void stage_export(const PipelineConfig& c, const fs::path& out, Diagnostics&) {
  const auto reactions = load_reactions(c);
  const auto topics = load_topics(c, reactions);
  std::map<std::string, EventRecord> events;
  for (auto& e : load_events(c)) events.emplace(e.event_id, std::move(e));
  ExportOptions options;
  options.subset = labeling_subset(topics, c.label_top_k);
  write_file(out / "topics_export.json", export_topics_json(topics, reactions, events, options) + "\n");
  options.subset.clear();
  write_file(out / "topics_all.json", export_topics_json(topics, reactions, events, options) + "\n");
}

}  // namespace

StageOutcome run_stage(Stage stage, const PipelineConfig& config) {
  config.validate();
  StageOutcome outcome{stage, false, {}};
  const auto dir = stage_dir(config, stage);
  const auto inputs = input_hashes(stage, config);
  const auto fingerprint = stage_config(stage, config);

  const auto manifest_path = dir / "manifest.json";
  if (fs::exists(manifest_path)) {
    try {
      auto old = json::parse(read_file(manifest_path));
      if (old.at("stage") == stage_name(stage) && old.at("config") == fingerprint && old.at("inputs") == inputs &&
          old.at("outputs") == output_hashes(dir)) {
        outcome.skipped = true;
        return outcome;
      }
    } catch (const json::exception&) {
      // Unreadable manifest: recompute.
    }
  }

  fs::remove_all(dir);
  fs::create_directories(dir);
  Diagnostics diag;
  switch (stage) {
    case Stage::Ingest: stage_ingest(config, dir, diag); break;
    case Stage::Networks: stage_networks(config, dir, diag); break;
    case Stage::Correlate: stage_correlate(config, dir, diag); break;
    case Stage::Detect: stage_detect(config, dir, diag); break;
    case Stage::Reactions: stage_reactions(config, dir, diag); break;
    case Stage::Topics: stage_topics(config, dir, diag); break;
    case Stage::Export: stage_export(config, dir, diag); break;
  }
  write_diagnostics(dir / "diagnostics.txt", diag);

  json manifest{{"stage", stage_name(stage)},
                {"config", fingerprint},
                {"seed", config.seed},
                {"inputs", inputs},
                {"outputs", output_hashes(dir)}};
  write_file(manifest_path, manifest.dump(2) + "\n");
  outcome.warnings = std::move(diag.warnings);
  return outcome;
}

std::vector<StageOutcome> run_pipeline(const PipelineConfig& config) {
  std::vector<StageOutcome> out;
  for (auto s : kAllStages) out.push_back(run_stage(s, config));
  return out;
}

SweepTarget parse_sweep_target(std::string_view name) {
  if (name == "temporal") return SweepTarget::Temporal;
  if (name == "structural") return SweepTarget::Structural;
  if (name == "navigational") return SweepTarget::Navigational;
  if (name == "higher") return SweepTarget::Higher;
  throw ConfigError(fmt::format("unknown sweep target '{}' (temporal|structural|navigational|higher)", name));
}

SweepResult sweep_from_artifacts(const PipelineConfig& config, SweepTarget target) {
  config.validate();
  const auto grid = config.grid.values();
  SweepOptions options;
  options.seed = config.seed;
  std::vector<WeightedGraph> graphs;

  if (target == SweepTarget::Higher) {
    if (!fs::exists(stage_dir(config, Stage::Reactions) / "manifest.json")) throw StageOrderError("sweep", "reactions");
    graphs.push_back(build_higher_network(load_reactions(config)));
    return resolution_sweep(graphs, grid, options);
  }

  if (!fs::exists(stage_dir(config, Stage::Networks) / "manifest.json")) throw StageOrderError("sweep", "networks");
  if (target == SweepTarget::Temporal && !fs::exists(stage_dir(config, Stage::Correlate) / "manifest.json")) {
    throw StageOrderError("sweep", "correlate");
  }
  std::vector<std::string> ids;
  for (const auto& e : load_network_index(config)) {
    if (!e.degenerate) ids.push_back(e.event_id);
  }
  std::mt19937_64 rng(config.seed);
  for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng() % i]);
  if (ids.size() > config.sweep_sample) ids.resize(config.sweep_sample);
  std::sort(ids.begin(), ids.end());

  for (const auto& id : ids) {
    const auto net = load_network(config, id);
    switch (target) {
      case SweepTarget::Temporal:
        graphs.push_back(flatten_multilayer(load_correlations(config, net), config.tau).graph);
        break;
      case SweepTarget::Structural: graphs.push_back(static_graph(net, StaticMode::Structural)); break;
      case SweepTarget::Navigational: graphs.push_back(static_graph(net, StaticMode::Navigational)); break;
      case SweepTarget::Higher: break;
    }
  }
  return resolution_sweep(graphs, grid, options);
}

}  // namespace newsattn
