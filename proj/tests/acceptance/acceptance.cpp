// One line per headline criterion: PASS/FAIL, name, measured values.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <fmt/format.h>

#include "newsattn/correlation.hpp"
#include "newsattn/partition_similarity.hpp"
#include "newsattn/pipeline.hpp"
#include "newsattn/synth.hpp"
#include "oracles.hpp"
#include "tempdir.hpp"

using namespace newsattn;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome cpm_oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  int matched = 0;
  double worst = 0;
  const double gammas[] = {0.02, 0.1, 0.3, 0.7, 1.5};
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + rng() % 7;
    auto g = oracle::random_graph(rng, n, 0.3 + 0.1 * (i % 6), i % 3 == 0);
    const double gamma = gammas[i % 5];
    const double got = leiden_cpm_best_of(g, gamma, static_cast<std::uint64_t>(i), 10).quality;
    const double opt = oracle::cpm_optimum(g, gamma);
    worst = std::max(worst, std::fabs(got - opt));
    matched += std::fabs(got - opt) <= 1e-9 ? 1 : 0;
  }
  const double secs = seconds_since(start);
  return {matched == 50 && secs < 60.0,
          fmt::format("{}/50 graphs at the enumerated optimum, max |dQ| {:.2e}, {:.2f}s", matched, worst, secs)};
}

Outcome metric_oracles() {
  std::mt19937_64 rng(77);
  double err_j = 0, err_ami = 0, err_ecs = 0, err_rho = 0;
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  std::uniform_int_distribution<int> views(0, 5000);
  for (int i = 0; i < 200; ++i) {
    std::map<std::string, double> ma, mb;
    std::vector<NodeWeights::Entry> ea, eb;
    for (int k = 0; k < 10; ++k) {
      const auto key = fmt::format("a{}", k);
      if (rng() % 3) ea.emplace_back(key, ma[key] = weight(rng));
      if (rng() % 3) eb.emplace_back(key, mb[key] = weight(rng));
    }
    err_j = std::max(err_j, std::fabs(weighted_jaccard(NodeWeights(ea), NodeWeights(eb)) - oracle::weighted_jaccard(ma, mb)));

    const std::size_t n = 2 + rng() % 14;
    auto a = oracle::random_membership(rng, n, 1 + rng() % 5);
    auto b = oracle::random_membership(rng, n, 1 + rng() % 5);
    err_ami = std::max(err_ami, std::fabs(ami(a, b) - oracle::ami(a, b)));
    err_ecs = std::max(err_ecs, std::fabs(element_centric(a, b) - oracle::element_centric(a, b)));

    EventNetwork net;
    GraphBuilder gb(true);
    gb.add_edge("u", "v", 500.0);
    net.graph = std::move(gb).build();
    for (int s = 0; s < 2; ++s) {
      std::vector<double> series(net.window_days);
      for (auto& x : series) x = views(rng);
      net.series.push_back(series);
    }
    auto w = rolling_correlations(net);
    for (std::size_t l = 0; l < w.layers; ++l) {
      std::vector<double> x(net.series[0].begin() + l, net.series[0].begin() + l + 7);
      std::vector<double> y(net.series[1].begin() + l, net.series[1].begin() + l + 7);
      err_rho = std::max(err_rho, std::fabs(w.value(0, l) - oracle::pearson(x, y)));
    }
  }
  const double worst = std::max({err_j, err_ami, err_ecs, err_rho});
  return {worst <= 1e-12, fmt::format("200 inputs each; max error jaccard {:.1e}, ami {:.1e}, element-centric {:.1e}, "
                                      "pearson {:.1e}",
                                      err_j, err_ami, err_ecs, err_rho)};
}

struct BenchRun {
  RecoveryReport report;
  double seconds = 0;
};

const BenchRun& default_benchmark() {
  static const BenchRun run = [] {
    const auto start = Clock::now();
    BenchRun r;
    r.report = run_benchmark(generate_corpus(SynthConfig{}));
    r.seconds = seconds_since(start);
    return r;
  }();
  return run;
}

Outcome planted_recovery() {
  const auto& run = default_benchmark();
  const auto& r = run.report;
  return {r.reaction_ecs_mean >= 0.9 && r.topic_ecs >= 0.9 && run.seconds < 300.0,
          fmt::format("reaction element-centric mean {:.3f} (exact {:.0f}%), topic element-centric {:.3f} over {} "
                      "topics, {:.1f}s",
                      r.reaction_ecs_mean, 100 * r.exact_fraction, r.topic_ecs, r.topics, run.seconds)};
}

Outcome excess_comparison() {
  const auto& r = default_benchmark().report;
  return {r.temporal_ge_structural >= 0.7,
          fmt::format("temporal >= structural on {:.0f}% of events (navigational {:.0f}%); distinct-article variant "
                      "{:.0f}% / {:.0f}%",
                      100 * r.temporal_ge_structural, 100 * r.temporal_ge_navigational, 100 * r.distinct_ge_structural,
                      100 * r.distinct_ge_navigational)};
}

Outcome structural_similarity_extremes() {
  const auto grid = GeometricGrid{}.values();

  auto uniform = uniform_correlation_fixture();
  auto u = detect_event_reactions(uniform);
  score_structural_similarity(u.reactions, uniform, grid, 0);
  double uniform_min = 1.0;
  for (const auto& r : u.reactions) uniform_min = std::min(uniform_min, r.structural_similarity);

  std::vector<std::string> spikers;
  auto ortho = orthogonal_spike_fixture(7, &spikers);
  auto o = detect_event_reactions(ortho);
  score_structural_similarity(o.reactions, ortho, grid, 0);
  std::sort(spikers.begin(), spikers.end());
  const EventReaction* spiking = nullptr;
  double best = -1;
  for (const auto& r : o.reactions) {
    const double score = set_element_centric(r.articles, spikers);
    if (score > best) {
      best = score;
      spiking = &r;
    }
  }
  const double ortho_s = spiking ? spiking->structural_similarity : 1.0;
  const bool pass = !u.reactions.empty() && uniform_min >= 0.99 && spiking != nullptr && ortho_s <= 0.5;
  return {pass, fmt::format("uniform fixture: {} reactions, min s {:.3f}; orthogonal fixture: spiking reaction s {:.3f} "
                            "(match {:.2f})",
                            u.reactions.size(), uniform_min, ortho_s, best)};
}

/// Planted-partition graphs: four blocks of ten, unit weights.
std::pair<WeightedGraph, std::vector<std::uint32_t>> planted_graph(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution in(0.7), out(0.05);
  GraphBuilder b(false);
  b.add_nodes(40);
  std::vector<std::uint32_t> truth(40);
  for (NodeId u = 0; u < 40; ++u) {
    truth[u] = u / 10;
    for (NodeId v = u + 1; v < 40; ++v) {
      if (u / 10 == v / 10 ? in(rng) : out(rng)) b.add_edge(u, v, 1.0);
    }
  }
  return {std::move(b).build(), truth};
}

Outcome sweep_interior() {
  std::vector<WeightedGraph> graphs;
  std::vector<std::vector<std::uint32_t>> truths;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto [g, t] = planted_graph(100 + s);
    graphs.push_back(std::move(g));
    truths.push_back(std::move(t));
  }
  SweepOptions options;
  options.keep_partitions = true;
  auto result = resolution_sweep(graphs, GeometricGrid{}.values(), options);
  if (result.status != SweepStatus::Interior) return {false, "no interior similarity maximum"};
  double worst = 1.0;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    worst = std::min(worst, element_centric(result.partitions[g][*result.chosen_index].membership, truths[g]));
  }
  return {worst >= 0.9, fmt::format("interior maximum at r={:.4f} (pair {} of {}), min element-centric vs planted {:.3f}",
                                    *result.chosen, *result.chosen_index, result.ami.size(), worst)};
}

Outcome end_to_end_determinism() {
  fixture::TempDir dir("acceptance_det");
  auto synth = SynthConfig::from_json(
      fixture::read_text(std::filesystem::path(NEWSATTN_FIXTURE_DIR) / "fixture_synth.json"));
  write_corpus(generate_corpus(synth), dir / "corpus");
  std::map<std::string, std::string> runs[2];
  for (int i = 0; i < 2; ++i) {
    PipelineConfig c;
    c.corpus_dir = dir / "corpus";
    c.work_dir = dir / fmt::format("work{}", i);
    c.workers = i == 0 ? 1 : 0;
    run_pipeline(c);
    runs[i] = fixture::snapshot(c.work_dir);
  }
  std::size_t differing = 0;
  for (const auto& [path, bytes] : runs[0]) differing += runs[1].count(path) && runs[1][path] == bytes ? 0 : 1;
  const bool pass = differing == 0 && runs[0].size() == runs[1].size() && !runs[0].empty();
  return {pass, fmt::format("{} artifact files compared, {} differ", runs[0].size(), differing)};
}

Outcome feature_formulas() {
  std::vector<std::vector<double>> constant = {std::vector<double>(61, 100.0)};
  auto f = topic_features(constant);
  std::vector<double> jump(61, 0.0);
  for (std::size_t t = 0; t < 30; ++t) jump[t] = t % 2 ? 40.0 : 50.0;
  jump[30] = 150.0;  // baseline median over t in [-30, 0] is 50
  std::vector<std::vector<double>> one = {jump};
  auto g = topic_features(one);
  const bool pass = f.prominence == 100.0 && f.magnitude == 0.0 && f.deviance == 0.0 && g.prominence == 50.0 &&
                    g.magnitude == 100.0 && g.deviance == 2.0;
  return {pass, fmt::format("constant: ({}, {}, {}); jump: ({}, {}, {})", f.prominence, f.magnitude, f.deviance,
                            g.prominence, g.magnitude, g.deviance)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"cpm-oracle-equivalence", cpm_oracle_equivalence},
      {"metric-oracles", metric_oracles},
      {"planted-recovery", planted_recovery},
      {"excess-views-comparison", excess_comparison},
      {"structural-similarity-extremes", structural_similarity_extremes},
      {"resolution-sweep-interior", sweep_interior},
      {"end-to-end-determinism", end_to_end_determinism},
      {"feature-formulas", feature_formulas},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    failed += o.pass ? 0 : 1;
    fmt::print("{} {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", std::size(criteria) - failed, std::size(criteria));
  return failed;
}
