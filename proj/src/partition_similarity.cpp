#include "newsattn/partition_similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include <fmt/format.h>

#include "newsattn/community.hpp"
#include "newsattn/error.hpp"

namespace newsattn {

namespace {

void check_sizes(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) {
    throw DataError(fmt::format("partitions cover different node sets ({} vs {} nodes)", a.size(), b.size()));
  }
}

std::vector<double> cluster_sizes(const std::vector<std::uint32_t>& labels) {
  std::vector<double> sizes;
  for (auto c : labels) {
    if (c >= sizes.size()) sizes.resize(c + 1, 0.0);
    sizes[c] += 1.0;
  }
  return sizes;
}

double entropy(const std::vector<double>& sizes, double n) {
  double h = 0.0;
  for (double s : sizes) {
    if (s > 0) h -= (s / n) * std::log(s / n);
  }
  return h;
}

/// Expected mutual information of two random partitions with the given
/// cluster sizes (hypergeometric model). Equal sizes are grouped.
double expected_mutual_information(const std::vector<double>& a, const std::vector<double>& b, double n) {
  std::map<double, double> ga, gb;
  for (double s : a) ga[s] += 1.0;
  for (double s : b) gb[s] += 1.0;
  const double log_n = std::log(n);
  const double lg_n = std::lgamma(n + 1.0);
  double emi = 0.0;
  for (const auto& [ai, ca] : ga) {
    for (const auto& [bj, cb] : gb) {
      const double base = std::lgamma(ai + 1.0) + std::lgamma(bj + 1.0) + std::lgamma(n - ai + 1.0) +
                          std::lgamma(n - bj + 1.0) - lg_n;
      double sum = 0.0;
      const double lo = std::max(1.0, ai + bj - n);
      const double hi = std::min(ai, bj);
      for (double nij = lo; nij <= hi; nij += 1.0) {
        const double log_p = base - std::lgamma(nij + 1.0) - std::lgamma(ai - nij + 1.0) -
                             std::lgamma(bj - nij + 1.0) - std::lgamma(n - ai - bj + nij + 1.0);
        sum += nij / n * (log_n + std::log(nij) - std::log(ai) - std::log(bj)) * std::exp(log_p);
      }
      emi += ca * cb * sum;
    }
  }
  return emi;
}

}  // namespace

double ami(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  check_sizes(a, b);
  const auto ca = canonical_membership(a);
  const auto cb = canonical_membership(b);
  if (ca == cb) return 1.0;

  const double n = static_cast<double>(a.size());
  const auto sa = cluster_sizes(ca);
  const auto sb = cluster_sizes(cb);

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  for (std::size_t i = 0; i < ca.size(); ++i) joint[{ca[i], cb[i]}] += 1.0;
  double mi = 0.0;
  for (const auto& [key, nij] : joint) {
    mi += nij / n * (std::log(n) + std::log(nij) - std::log(sa[key.first]) - std::log(sb[key.second]));
  }
  mi = std::max(mi, 0.0);

  const double emi = expected_mutual_information(sa, sb, n);
  const double mean_h = 0.5 * (entropy(sa, n) + entropy(sb, n));
  double denominator = mean_h - emi;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  denominator = denominator < 0 ? std::min(denominator, -eps) : std::max(denominator, eps);
  return (mi - emi) / denominator;
}

double element_centric(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, double alpha) {
  check_sizes(a, b);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("element-centric alpha must lie in (0, 1)");
  if (a.empty()) return 1.0;
  const auto ca = canonical_membership(a);
  const auto cb = canonical_membership(b);
  const auto sa = cluster_sizes(ca);
  const auto sb = cluster_sizes(cb);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  for (std::size_t i = 0; i < ca.size(); ++i) joint[{ca[i], cb[i]}] += 1.0;

  // Affinity of i to j is alpha / |C| + (1 - alpha) [i == j]; the restart mass
  // cancels, leaving a closed form in the overlap k = |A ∩ B|.
  double total = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double na = sa[ca[i]];
    const double nb = sb[cb[i]];
    const double k = joint[{ca[i], cb[i]}];
    const double l1 = alpha * (k * std::abs(1.0 / na - 1.0 / nb) + (na - k) / na + (nb - k) / nb);
    total += 1.0 - l1 / (2.0 * alpha);
  }
  return total / static_cast<double>(ca.size());
}

}  // namespace newsattn
