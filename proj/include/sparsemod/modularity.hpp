#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sparsemod/graph.hpp"

namespace sparsemod {

using CommunityId = std::uint32_t;

/**
 * Assignment of every node to exactly one community.
 *
 * Always stored in canonical form: ids are 0..k-1, ordered by the smallest
 * member node, so two partitions are equal iff they group nodes identically.
 */
class Partition {
public:
    Partition() = default;

    /// Accepts arbitrary community labels and canonicalizes them.
    static Partition from_membership(std::span<const std::uint32_t> labels);
    static Partition single(std::size_t n);
    static Partition singletons(std::size_t n);

    std::size_t size() const noexcept { return membership_.size(); }
    std::size_t community_count() const noexcept { return community_count_; }
    CommunityId operator[](NodeId v) const { return membership_[v]; }
    const std::vector<CommunityId>& membership() const noexcept { return membership_; }

    /// Members of each community, each list sorted.
    std::vector<std::vector<NodeId>> communities() const;

    bool same_community(NodeId u, NodeId v) const { return membership_[u] == membership_[v]; }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<CommunityId> membership_;
    std::size_t community_count_ = 0;
};

class PartitionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ModularityValue {
    double q = 0.0;
    double lambda = 1.0;
};

/// Q_lambda over ordered pairs including the diagonal, evaluated from
/// per-community intra-edge counts and degree totals.
ModularityValue modularity(const Graph& g, const Partition& p, double lambda = 1.0);

/// (1/4m) x^T B^lambda x for x in {-1,+1}^n.
ModularityValue modularity_bipartition(const Graph& g, std::span<const int> x, double lambda = 1.0);

/// Assigns each community of `p` uniformly to one of k groups; empty
/// groups vanish, so the result can have fewer than k communities.
Partition random_k_grouping(const Partition& p, std::size_t k, std::mt19937_64& rng);

struct GroupingEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

class GroupingBlowup : public std::length_error {
public:
    using std::length_error::length_error;
};

inline constexpr std::uint64_t kExhaustiveGroupingCap = 1'000'000;

/// Averages Q over all k^c assignments of the c communities of `p` to k groups.
GroupingEstimate expected_grouping_exhaustive(const Graph& g, const Partition& p, std::size_t k,
                                              double lambda = 1.0);

/// Monte-Carlo estimate. Trial t draws from its own engine seeded by (seed, t),
/// so the result does not depend on `threads`.
GroupingEstimate expected_grouping_monte_carlo(const Graph& g, const Partition& p, std::size_t k,
                                               std::uint64_t trials, std::uint64_t seed,
                                               double lambda = 1.0, unsigned threads = 0);

}  // namespace sparsemod
