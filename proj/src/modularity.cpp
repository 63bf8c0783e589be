#include "sparsemod/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace sparsemod {

Partition Partition::from_membership(std::span<const std::uint32_t> labels) {
    Partition p;
    p.membership_.resize(labels.size());
    std::vector<CommunityId> lookup;
    const auto max_label = labels.empty() ? 0u : *std::max_element(labels.begin(), labels.end());
    constexpr auto unset = std::numeric_limits<CommunityId>::max();
    lookup.assign(static_cast<std::size_t>(max_label) + 1, unset);
    CommunityId next = 0;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto& id = lookup[labels[v]];
        if (id == unset) id = next++;
        p.membership_[v] = id;
    }
    p.community_count_ = next;
    return p;
}

Partition Partition::single(std::size_t n) {
    std::vector<std::uint32_t> labels(n, 0);
    return from_membership(labels);
}

Partition Partition::singletons(std::size_t n) {
    std::vector<std::uint32_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0u);
    return from_membership(labels);
}

std::vector<std::vector<NodeId>> Partition::communities() const {
    std::vector<std::vector<NodeId>> out(community_count_);
    for (NodeId v = 0; v < membership_.size(); ++v) out[membership_[v]].push_back(v);
    return out;
}

ModularityValue modularity(const Graph& g, const Partition& p, double lambda) {
    if (p.size() != g.node_count()) {
        throw PartitionMismatch("partition covers " + std::to_string(p.size()) + " nodes, graph has " +
                                std::to_string(g.node_count()));
    }
    const std::size_t k = p.community_count();
    std::vector<double> intra(k, 0.0);   // ordered intra-community pairs, i.e. 2 * edges
    std::vector<double> volume(k, 0.0);  // degree totals
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const CommunityId c = p[u];
        volume[c] += static_cast<double>(g.degree(u));
        for (NodeId v : g.neighbors(u)) {
            if (p[v] == c) intra[c] += 1.0;
        }
    }
    const double two_m = g.two_m();
    double q = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        q += intra[c] / two_m - lambda * (volume[c] / two_m) * (volume[c] / two_m);
    }
    return {q, lambda};
}

ModularityValue modularity_bipartition(const Graph& g, std::span<const int> x, double lambda) {
    if (x.size() != g.node_count()) {
        throw PartitionMismatch("sign vector length does not match node count");
    }
    double adjacency_form = 0.0;  // x^T A x
    double weighted = 0.0;        // sum_i d_i x_i
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (x[u] != 1 && x[u] != -1) {
            throw std::invalid_argument("sign vector entries must be +1 or -1");
        }
        weighted += static_cast<double>(g.degree(u)) * x[u];
        for (NodeId v : g.neighbors(u)) adjacency_form += x[u] * x[v];
    }
    const double two_m = g.two_m();
    const double quad = adjacency_form - lambda * weighted * weighted / two_m;
    return {quad / (2.0 * two_m), lambda};
}

Partition random_k_grouping(const Partition& p, std::size_t k, std::mt19937_64& rng) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(k - 1));
    std::vector<std::uint32_t> group(p.community_count());
    for (auto& gid : group) gid = pick(rng);
    std::vector<std::uint32_t> labels(p.size());
    for (NodeId v = 0; v < p.size(); ++v) labels[v] = group[p[v]];
    return Partition::from_membership(labels);
}

namespace {

// Community-level aggregates: a grouping of communities only needs the
// inter-community edge counts and volumes.
struct CoarseView {
    std::size_t c = 0;
    std::vector<double> links;   // c x c ordered edge counts between communities
    std::vector<double> volume;  // c
    double two_m = 0.0;
    double lambda = 1.0;

    CoarseView(const Graph& g, const Partition& p, double lam)
        : c(p.community_count()), links(c * c, 0.0), volume(c, 0.0), two_m(g.two_m()), lambda(lam) {
        if (p.size() != g.node_count()) {
            throw PartitionMismatch("partition does not match graph");
        }
        for (NodeId u = 0; u < g.node_count(); ++u) {
            volume[p[u]] += static_cast<double>(g.degree(u));
            for (NodeId v : g.neighbors(u)) links[p[u] * c + p[v]] += 1.0;
        }
    }

    double grouped_q(std::span<const std::uint32_t> group, std::size_t k,
                     std::vector<double>& group_volume) const {
        group_volume.assign(k, 0.0);
        double intra = 0.0;
        for (std::size_t a = 0; a < c; ++a) {
            group_volume[group[a]] += volume[a];
            for (std::size_t b = 0; b < c; ++b) {
                if (group[a] == group[b]) intra += links[a * c + b];
            }
        }
        double q = intra / two_m;
        for (double vol : group_volume) q -= lambda * (vol / two_m) * (vol / two_m);
        return q;
    }
};

GroupingEstimate summarize(std::span<const double> samples) {
    GroupingEstimate est;
    est.samples = samples.size();
    if (samples.empty()) return est;
    double sum = 0.0;
    for (double s : samples) sum += s;
    est.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double s : samples) ss += (s - est.mean) * (s - est.mean);
        const double var = ss / static_cast<double>(samples.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return est;
}

}  // namespace

GroupingEstimate expected_grouping_exhaustive(const Graph& g, const Partition& p, std::size_t k,
                                              double lambda) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    const CoarseView view(g, p, lambda);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < view.c; ++i) {
        if (total > kExhaustiveGroupingCap / k + 1) {
            total = kExhaustiveGroupingCap + 1;
            break;
        }
        total *= k;
    }
    if (total > kExhaustiveGroupingCap) {
        throw GroupingBlowup("exhaustive grouping needs k^c > " + std::to_string(kExhaustiveGroupingCap) +
                             " assignments");
    }
    std::vector<std::uint32_t> group(view.c, 0);
    std::vector<double> scratch;
    std::vector<double> samples;
    samples.reserve(total);
    for (std::uint64_t it = 0; it < total; ++it) {
        samples.push_back(view.grouped_q(group, k, scratch));
        for (std::size_t pos = 0; pos < view.c; ++pos) {
            if (++group[pos] < k) break;
            group[pos] = 0;
        }
    }
    auto est = summarize(samples);
    est.std_error = 0.0;  // exact average
    return est;
}

GroupingEstimate expected_grouping_monte_carlo(const Graph& g, const Partition& p, std::size_t k,
                                               std::uint64_t trials, std::uint64_t seed, double lambda,
                                               unsigned threads) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (trials == 0) throw std::invalid_argument("need at least one trial");
    const CoarseView view(g, p, lambda);
    std::vector<double> samples(trials);

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> group(view.c);
        std::vector<double> scratch;
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(k - 1));
        for (std::uint64_t t = begin; t < end; ++t) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
            std::mt19937_64 rng(seq);
            for (auto& gid : group) gid = pick(rng);
            samples[t] = view.grouped_q(group, k, scratch);
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(trials, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
    return summarize(samples);
}

}  // namespace sparsemod
