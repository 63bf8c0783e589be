#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sparsemod/graph.hpp"
#include "sparsemod/modularity.hpp"

namespace sparsemod {

inline constexpr std::int64_t kNoFollowee = -1;

struct FollowingResult {
    Partition partition;
    /// followee_of[v] is v's followee, or kNoFollowee when v is a followee.
    std::vector<std::int64_t> followee_of;
    /// Number of followers attached to each node (zero for followers).
    std::vector<std::size_t> follower_counts;
    std::size_t d0 = 1;
};

/// Following heuristic: nodes of degree <= d0, taken in non-decreasing
/// degree order, attach to their minimum-degree neighbor that is not itself
/// a follower. Each followee and its followers form one community. Ties
/// break by node id.
FollowingResult following(const Graph& g, std::size_t d0 = 1);

/// 1 / (2 zeta(beta - 1)); defined for beta > 2.
double following_lower_bound(double beta);

/// n1 / 2m - 8D, with n1 the number of degree-one nodes.
double leaf_bound_estimate(const Graph& g);

}  // namespace sparsemod
