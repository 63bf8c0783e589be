#include "sparsemod/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sparsemod/zeta.hpp"

namespace sparsemod {

FollowingResult following(const Graph& g, std::size_t d0) {
    if (d0 < 1) throw std::invalid_argument("d0 must be at least 1");
    const std::size_t n = g.node_count();
    enum class Label : std::uint8_t { unlabeled, follower, followee };
    std::vector<Label> label(n, Label::unlabeled);

    FollowingResult result;
    result.d0 = d0;
    result.followee_of.assign(n, kNoFollowee);
    result.follower_counts.assign(n, 0);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return g.degree(a) < g.degree(b); });

    for (NodeId v : order) {
        if (g.degree(v) > d0) break;
        if (label[v] != Label::unlabeled) continue;
        std::int64_t chosen = kNoFollowee;
        for (NodeId u : g.neighbors(v)) {  // ascending id, so ties keep the smallest
            if (label[u] == Label::follower) continue;
            if (chosen == kNoFollowee || g.degree(u) < g.degree(static_cast<NodeId>(chosen))) chosen = u;
        }
        if (chosen == kNoFollowee) continue;  // stays unlabeled, becomes its own followee
        label[v] = Label::follower;
        label[chosen] = Label::followee;
        result.followee_of[v] = chosen;
        ++result.follower_counts[chosen];
    }

    std::vector<std::uint32_t> community(n);
    for (NodeId v = 0; v < n; ++v) {
        community[v] = result.followee_of[v] == kNoFollowee ? v : static_cast<std::uint32_t>(result.followee_of[v]);
    }
    result.partition = Partition::from_membership(community);
    return result;
}

double following_lower_bound(double beta) {
    if (!(beta > 2.0)) throw std::domain_error("the constant-factor bound needs beta > 2");
    return 1.0 / (2.0 * riemann_zeta(beta - 1.0));
}

double leaf_bound_estimate(const Graph& g) {
    const auto stats = graph_stats(g);
    std::size_t leaves = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) leaves += g.degree(v) == 1 ? 1 : 0;
    return static_cast<double>(leaves) / g.two_m() - 8.0 * stats.D;
}

}  // namespace sparsemod
