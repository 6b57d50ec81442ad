#include "newsattn/community.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>

namespace newsattn {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(engine_() % i);
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Undirected graph in CSR form. Aggregated nodes carry a size (number of
/// original nodes) and the internal weight they absorbed.
struct Csr {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;
  std::vector<double> node_size;
  std::vector<double> self_weight;

  std::size_t size() const { return node_size.size(); }
};

Csr to_csr(const WeightedGraph& input) {
  const WeightedGraph* g = &input;
  WeightedGraph symmetric;
  if (input.directed()) {
    symmetric = input.undirected(WeightedGraph::Projection::Sum);
    g = &symmetric;
  }
  Csr csr;
  const std::size_t n = g->size();
  csr.node_size.assign(n, 1.0);
  csr.self_weight.assign(n, 0.0);
  csr.offsets.assign(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& arc : g->out_arcs(v)) {
      csr.targets.push_back(arc.node);
      csr.weights.push_back(arc.weight);
    }
    csr.offsets[v + 1] = csr.targets.size();
  }
  return csr;
}

double csr_quality(const Csr& g, const std::vector<std::uint32_t>& comm, double gamma) {
  double internal = 0.0;
  std::vector<double> csize(g.size(), 0.0);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    internal += g.self_weight[v];
    csize[comm[v]] += g.node_size[v];
    for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      if (comm[g.targets[k]] == comm[v]) internal += 0.5 * g.weights[k];
    }
  }
  double penalty = 0.0;
  for (double s : csize) penalty += s * (s - 1.0) / 2.0;
  return internal - gamma * penalty;
}

/// Dense relabel in order of first appearance; returns the number of groups.
std::size_t densify(std::vector<std::uint32_t>& labels) {
  std::vector<std::int64_t> map(labels.size(), -1);
  std::uint32_t next = 0;
  for (auto& label : labels) {
    if (map[label] < 0) map[label] = next++;
    label = static_cast<std::uint32_t>(map[label]);
  }
  return next;
}

Csr aggregate(const Csr& g, const std::vector<std::uint32_t>& group, std::size_t groups) {
  Csr out;
  out.node_size.assign(groups, 0.0);
  out.self_weight.assign(groups, 0.0);
  out.offsets.assign(groups + 1, 0);

  std::vector<std::vector<std::uint32_t>> members(groups);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    members[group[v]].push_back(v);
    out.node_size[group[v]] += g.node_size[v];
    out.self_weight[group[v]] += g.self_weight[v];
  }

  std::vector<double> acc(groups, 0.0);
  std::vector<char> seen(groups, 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t c = 0; c < groups; ++c) {
    touched.clear();
    for (auto v : members[c]) {
      for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
        const auto d = group[g.targets[k]];
        if (d == c) {
          out.self_weight[c] += 0.5 * g.weights[k];
          continue;
        }
        if (!seen[d]) {
          seen[d] = 1;
          touched.push_back(d);
        }
        acc[d] += g.weights[k];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto d : touched) {
      out.targets.push_back(d);
      out.weights.push_back(acc[d]);
      acc[d] = 0.0;
      seen[d] = 0;
    }
    out.offsets[c + 1] = out.targets.size();
  }
  return out;
}

double abs_strength(const Csr& g, std::uint32_t v) {
  double s = 0.0;
  for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) s += std::abs(g.weights[k]);
  return s;
}

/// Queue-based local moving. Returns true if any node changed community.
bool move_nodes(const Csr& g, std::vector<std::uint32_t>& comm, double gamma, Rng& rng) {
  const std::size_t n = g.size();
  double total_size = 0.0;
  std::vector<double> csize(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    csize[comm[v]] += g.node_size[v];
    total_size += g.node_size[v];
  }
  std::set<std::uint32_t> empty;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (csize[c] == 0.0) empty.insert(c);
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);
  std::deque<std::uint32_t> queue(order.begin(), order.end());
  std::vector<char> queued(n, 1);

  std::vector<double> acc(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> touched;
  bool changed = false;

  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    queued[v] = 0;

    const auto old = comm[v];
    const double sv = g.node_size[v];
    touched.clear();
    for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      const auto c = comm[g.targets[k]];
      if (!seen[c]) {
        seen[c] = 1;
        touched.push_back(c);
      }
      acc[c] += g.weights[k];
    }

    csize[old] -= sv;
    const double stay = acc[old] - gamma * sv * csize[old];
    const double eps = 1e-12 * (1.0 + abs_strength(g, v) + gamma * sv * total_size);

    std::uint32_t best = old;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (auto c : touched) {
      if (c == old) continue;
      const double gain = acc[c] - gamma * sv * csize[c];
      if (gain > best_gain || (gain == best_gain && c < best)) {
        best = c;
        best_gain = gain;
      }
    }
    if (csize[old] > 0.0 && !empty.empty()) {
      const auto e = *empty.begin();
      if (0.0 > best_gain || (0.0 == best_gain && e < best)) {
        best = e;
        best_gain = 0.0;
      }
    }

    if (best != old && best_gain > stay + eps) {
      comm[v] = best;
      csize[best] += sv;
      empty.erase(best);
      if (csize[old] == 0.0) empty.insert(old);
      changed = true;
      for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
        const auto u = g.targets[k];
        if (!queued[u] && comm[u] != best) {
          queued[u] = 1;
          queue.push_back(u);
        }
      }
    } else {
      csize[old] += sv;
    }

    for (auto c : touched) {
      acc[c] = 0.0;
      seen[c] = 0;
    }
  }
  return changed;
}

/// Refinement: inside each community, well-connected singletons merge into
/// well-connected sub-communities chosen at random with probability
/// proportional to exp(gain / theta).
std::vector<std::uint32_t> refine(const Csr& g, const std::vector<std::uint32_t>& comm, double gamma, double theta,
                                  Rng& rng) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> refined(n);
  std::iota(refined.begin(), refined.end(), 0u);
  std::vector<double> rsize(g.node_size);
  std::vector<std::uint32_t> rcount(n, 1);

  std::vector<double> ctotal(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) ctotal[comm[v]] += g.node_size[v];

  std::vector<double> ext(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      if (comm[g.targets[k]] == comm[v]) ext[v] += g.weights[k];
    }
  }
  std::vector<double> rext(ext);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);

  std::vector<double> acc(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::pair<std::uint32_t, double>> candidates;

  for (auto v : order) {
    if (rcount[refined[v]] != 1) continue;
    const auto c = comm[v];
    const double total = ctotal[c];
    const double sv = g.node_size[v];
    if (ext[v] < gamma * sv * (total - sv)) continue;

    touched.clear();
    for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      const auto u = g.targets[k];
      if (comm[u] != c) continue;
      const auto r = refined[u];
      if (r == refined[v]) continue;
      if (!seen[r]) {
        seen[r] = 1;
        touched.push_back(r);
      }
      acc[r] += g.weights[k];
    }
    std::sort(touched.begin(), touched.end());

    candidates.clear();
    candidates.emplace_back(refined[v], 0.0);
    double max_gain = 0.0;
    for (auto r : touched) {
      if (rext[r] < gamma * rsize[r] * (total - rsize[r])) continue;
      const double gain = acc[r] - gamma * sv * rsize[r];
      if (gain < 0.0) continue;
      candidates.emplace_back(r, gain);
      max_gain = std::max(max_gain, gain);
    }

    std::uint32_t chosen = refined[v];
    if (candidates.size() > 1) {
      double weight_sum = 0.0;
      for (auto& [r, gain] : candidates) {
        gain = std::exp((gain - max_gain) / theta);
        weight_sum += gain;
      }
      double draw = rng.uniform() * weight_sum;
      chosen = candidates.back().first;
      for (const auto& [r, weight] : candidates) {
        if (draw < weight) {
          chosen = r;
          break;
        }
        draw -= weight;
      }
    }

    if (chosen != refined[v]) {
      const auto old = refined[v];
      refined[v] = chosen;
      rsize[chosen] += sv;
      rsize[old] -= sv;
      ++rcount[chosen];
      --rcount[old];
      rext[chosen] = rext[chosen] + ext[v] - 2.0 * acc[chosen];
    }

    for (auto r : touched) {
      acc[r] = 0.0;
      seen[r] = 0;
    }
  }
  return refined;
}

/// One Leiden run starting from `membership` on the base graph.
std::vector<std::uint32_t> leiden_pass(const Csr& base, std::vector<std::uint32_t> membership, double gamma,
                                       double theta, Rng& rng) {
  Csr g = base;
  std::vector<std::uint32_t> node_of(base.size());
  std::iota(node_of.begin(), node_of.end(), 0u);
  std::vector<std::uint32_t> comm = std::move(membership);
  densify(comm);

  while (true) {
    move_nodes(g, comm, gamma, rng);
    std::vector<std::uint32_t> dense(comm);
    const auto ncomm = densify(dense);
    comm = dense;
    if (ncomm == g.size()) break;

    auto groups = refine(g, comm, gamma, theta, rng);
    auto m = densify(groups);
    if (m == g.size()) {
      groups = comm;
      m = ncomm;
    }

    auto next = aggregate(g, groups, m);
    std::vector<std::uint32_t> next_comm(m);
    for (std::uint32_t v = 0; v < g.size(); ++v) next_comm[groups[v]] = comm[v];
    densify(next_comm);
    for (auto& node : node_of) node = groups[node];
    g = std::move(next);
    comm = std::move(next_comm);
  }

  std::vector<std::uint32_t> result(base.size());
  for (std::size_t o = 0; o < base.size(); ++o) result[o] = comm[node_of[o]];
  return result;
}

}  // namespace

std::size_t Partition::community_count() const {
  std::uint32_t max_id = 0;
  for (auto c : membership) max_id = std::max(max_id, c);
  return membership.empty() ? 0 : max_id + 1;
}

std::vector<std::vector<NodeId>> Partition::communities() const {
  std::vector<std::vector<NodeId>> out(community_count());
  for (NodeId v = 0; v < membership.size(); ++v) out[membership[v]].push_back(v);
  return out;
}

void Partition::write_tsv(const WeightedGraph& graph, std::ostream& out) const {
  for (NodeId v = 0; v < membership.size(); ++v) {
    if (v < graph.size() && !graph.label(v).empty()) {
      out << graph.label(v);
    } else {
      out << v;
    }
    out << '\t' << membership[v] << '\n';
  }
}

Partition Partition::read_tsv(const WeightedGraph& graph, std::istream& in) {
  Partition p;
  p.membership.assign(graph.size(), 0);
  std::vector<char> assigned(graph.size(), 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(fmt::format("partition line {}: expected node<TAB>community", line_no));
    std::string_view node(line.data(), tab);
    std::string_view comm(line.data() + tab + 1, line.size() - tab - 1);
    std::optional<NodeId> v = graph.find(node);
    if (!v) {
      NodeId id = 0;
      auto [ptr, ec] = std::from_chars(node.data(), node.data() + node.size(), id);
      if (ec != std::errc{} || ptr != node.data() + node.size() || id >= graph.size()) {
        throw ParseError(fmt::format("partition line {}: unknown node '{}'", line_no, node));
      }
      v = id;
    }
    std::uint32_t c = 0;
    auto [ptr, ec] = std::from_chars(comm.data(), comm.data() + comm.size(), c);
    if (ec != std::errc{} || ptr != comm.data() + comm.size()) {
      throw ParseError(fmt::format("partition line {}: bad community id", line_no));
    }
    if (assigned[*v]) throw ParseError(fmt::format("partition line {}: node assigned twice", line_no));
    assigned[*v] = 1;
    p.membership[*v] = c;
  }
  if (std::find(assigned.begin(), assigned.end(), 0) != assigned.end()) {
    throw ParseError("partition does not cover every node");
  }
  return p;
}

std::vector<std::uint32_t> canonical_membership(std::span<const std::uint32_t> membership) {
  std::vector<std::uint32_t> out(membership.begin(), membership.end());
  if (out.empty()) return out;
  auto max_id = *std::max_element(out.begin(), out.end());
  std::vector<std::int64_t> map(static_cast<std::size_t>(max_id) + 1, -1);
  std::uint32_t next = 0;
  for (auto& c : out) {
    if (map[c] < 0) map[c] = next++;
    c = static_cast<std::uint32_t>(map[c]);
  }
  return out;
}

double cpm_quality(const WeightedGraph& graph, std::span<const std::uint32_t> membership, double gamma) {
  if (membership.size() != graph.size()) throw DataError("partition does not cover the graph");
  double internal = 0.0;
  for (const auto& e : graph.edges()) {
    if (membership[e.source] == membership[e.target]) internal += e.weight;
  }
  std::vector<double> sizes;
  for (auto c : membership) {
    if (c >= sizes.size()) sizes.resize(c + 1, 0.0);
    sizes[c] += 1.0;
  }
  double pairs = 0.0;
  for (double s : sizes) pairs += s * (s - 1.0) / 2.0;
  return internal - gamma * pairs;
}

Partition leiden_cpm(const WeightedGraph& graph, double gamma, std::uint64_t seed, const LeidenOptions& options) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("resolution must be finite and non-negative");
  if (!(options.theta > 0.0)) throw ConfigError("theta must be positive");

  Partition result;
  result.resolution = gamma;
  result.seed = seed;
  const std::size_t n = graph.size();
  if (n == 0) return result;

  const Csr base = to_csr(graph);
  Rng rng(seed);

  std::vector<std::uint32_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0u);
  double quality = csr_quality(base, membership, gamma);
  for (int pass = 0; pass < options.max_passes; ++pass) {
    auto next = leiden_pass(base, membership, gamma, options.theta, rng);
    const double q = csr_quality(base, next, gamma);
    if (!(q > quality + 1e-12 * (1.0 + std::abs(quality)))) break;
    membership = std::move(next);
    quality = q;
  }

  membership = canonical_membership(membership);
  quality = cpm_quality(graph, membership, gamma);

  // Trivial partitions act as a floor.
  std::vector<std::uint32_t> whole(n, 0);
  const double whole_q = cpm_quality(graph, whole, gamma);
  std::vector<std::uint32_t> singletons(n);
  std::iota(singletons.begin(), singletons.end(), 0u);
  const double single_q = cpm_quality(graph, singletons, gamma);
  if (whole_q > quality && whole_q >= single_q) {
    membership = std::move(whole);
    quality = whole_q;
  } else if (single_q > quality) {
    membership = std::move(singletons);
    quality = single_q;
  }

  result.membership = std::move(membership);
  result.quality = quality;
  return result;
}

Partition leiden_cpm_best_of(const WeightedGraph& graph, double gamma, std::uint64_t seed, int seeds,
                             const LeidenOptions& options) {
  if (seeds < 1) throw ConfigError("need at least one seed");
  Partition best = leiden_cpm(graph, gamma, seed, options);
  for (int i = 1; i < seeds; ++i) {
    auto p = leiden_cpm(graph, gamma, seed + static_cast<std::uint64_t>(i), options);
    if (p.quality > best.quality) best = std::move(p);
  }
  return best;
}

}  // namespace newsattn
