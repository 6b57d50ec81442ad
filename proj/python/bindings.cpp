#include <fstream>
#include <tuple>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "newsattn/agreement.hpp"
#include "newsattn/community.hpp"
#include "newsattn/graph.hpp"
#include "newsattn/partition_similarity.hpp"
#include "newsattn/pipeline.hpp"
#include "newsattn/sweep.hpp"
#include "newsattn/synth.hpp"
#include "newsattn/topics.hpp"

namespace py = pybind11;
using namespace newsattn;

namespace {

using Edge = std::tuple<NodeId, NodeId, double>;

WeightedGraph make_graph(std::size_t nodes, const std::vector<Edge>& edges, bool directed) {
  GraphBuilder b(directed);
  b.add_nodes(nodes);
  for (const auto& [u, v, w] : edges) {
    if (u >= nodes || v >= nodes) throw ConfigError("edge endpoint out of range");
    b.add_edge(u, v, w);
  }
  return std::move(b).build();
}

std::vector<std::pair<std::string, bool>> outcomes(const std::vector<StageOutcome>& runs) {
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& r : runs) out.emplace_back(std::string(stage_name(r.stage)), r.skipped);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Attention-reaction detection core";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def(
      "leiden_cpm",
      [](std::size_t nodes, const std::vector<Edge>& edges, double gamma, std::uint64_t seed, int seeds) {
        auto g = make_graph(nodes, edges, false);
        py::gil_scoped_release release;
        auto p = leiden_cpm_best_of(g, gamma, seed, seeds);
        return std::make_pair(p.membership, p.quality);
      },
      py::arg("nodes"), py::arg("edges"), py::arg("gamma"), py::arg("seed") = 0, py::arg("seeds") = 1,
      "Undirected CPM partition; returns (membership, quality).");

  m.def(
      "cpm_quality",
      [](std::size_t nodes, const std::vector<Edge>& edges, const std::vector<std::uint32_t>& membership,
         double gamma) { return cpm_quality(make_graph(nodes, edges, false), membership, gamma); },
      py::arg("nodes"), py::arg("edges"), py::arg("membership"), py::arg("gamma"));

  m.def(
      "ami", [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) { return ami(a, b); },
      py::arg("a"), py::arg("b"));
  m.def(
      "element_centric",
      [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b, double alpha) {
        return element_centric(a, b, alpha);
      },
      py::arg("a"), py::arg("b"), py::arg("alpha") = 0.9);

  m.def(
      "weighted_jaccard",
      [](const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
        std::vector<NodeWeights::Entry> ea(a.begin(), a.end()), eb(b.begin(), b.end());
        return weighted_jaccard(NodeWeights(std::move(ea)), NodeWeights(std::move(eb)));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "topic_features",
      [](const std::vector<std::vector<double>>& series, bool baseline_includes_event_day) {
        FeatureParams params;
        params.baseline_includes_event_day = baseline_includes_event_day;
        auto f = topic_features(series, params);
        py::dict d;
        d["event_count"] = f.event_count;
        d["prominence"] = f.prominence;
        d["magnitude"] = f.magnitude;
        d["deviance"] = f.deviance;
        d["deviance_excluded"] = f.deviance_excluded;
        return d;
      },
      py::arg("series"), py::arg("baseline_includes_event_day") = true,
      "Features of one topic from its members' centred view windows.");

  m.def(
      "resolution_sweep",
      [](const std::vector<std::pair<std::size_t, std::vector<Edge>>>& graphs, std::vector<double> grid,
         std::uint64_t seed) {
        std::vector<WeightedGraph> gs;
        for (const auto& [n, edges] : graphs) gs.push_back(make_graph(n, edges, false));
        if (grid.empty()) grid = GeometricGrid{}.values();
        SweepOptions options;
        options.seed = seed;
        py::gil_scoped_release release;
        return resolution_sweep(gs, grid, options).to_json();
      },
      py::arg("graphs"), py::arg("grid") = std::vector<double>{}, py::arg("seed") = 0,
      "Sweep over (nodes, edges) graphs; returns the report as JSON text.");

  m.def("default_synth_config", [] { return SynthConfig{}.to_json(); });
  m.def(
      "write_synth_corpus",
      [](const std::string& config_json, const std::filesystem::path& dir) {
        auto config = SynthConfig::from_json(config_json);
        py::gil_scoped_release release;
        write_corpus(generate_corpus(config), dir);
      },
      py::arg("config_json"), py::arg("dir"));
  m.def(
      "run_benchmark",
      [](const std::string& config_json) {
        auto config = SynthConfig::from_json(config_json);
        py::gil_scoped_release release;
        return run_benchmark(generate_corpus(config)).to_json();
      },
      py::arg("config_json"), "Planted-recovery report as JSON text.");

  m.def("default_pipeline_config", [] { return PipelineConfig{}.to_json(); });
  m.def(
      "run_pipeline",
      [](const std::string& config_json) {
        auto config = PipelineConfig::from_json(config_json);
        py::gil_scoped_release release;
        return outcomes(run_pipeline(config));
      },
      py::arg("config_json"), "Runs every stage; returns [(stage, skipped)].");
  m.def(
      "run_stage",
      [](const std::string& stage, const std::string& config_json) {
        auto config = PipelineConfig::from_json(config_json);
        auto which = parse_stage(stage);
        py::gil_scoped_release release;
        return run_stage(which, config).skipped;
      },
      py::arg("stage"), py::arg("config_json"), "Runs one stage; True when it was up to date.");

  m.def(
      "agreement_summary",
      [](const std::vector<std::filesystem::path>& files) {
        std::vector<LabelRecord> records;
        for (const auto& path : files) {
          std::ifstream in(path);
          if (!in) throw DataError("cannot open " + path.string());
          auto part = read_label_file(in);
          records.insert(records.end(), part.begin(), part.end());
        }
        return agreement_summary(records).to_json();
      },
      py::arg("files"));
}
