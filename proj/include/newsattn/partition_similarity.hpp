#pragma once

#include <cstdint>
#include <span>

namespace newsattn {

/// Adjusted mutual information under the permutation model with the
/// arithmetic-mean normalizer. Identical partitions (up to relabeling) score 1.
/// Throws DataError when the memberships differ in length.
double ami(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Element-centric similarity of two hard partitions: 1 minus the mean
/// corrected L1 distance between per-element cluster affinity vectors, where
/// an element's affinity is personalized PageRank (restart 1 - alpha) on its
/// own cluster. 0 < alpha < 1.
double element_centric(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, double alpha = 0.9);

}  // namespace newsattn
