#include "sparsemod/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "sparsemod/zeta.hpp"

namespace sparsemod {

const char* to_string(Realization r) {
    return r == Realization::havel_hakimi_shuffled ? "havel_hakimi_shuffled" : "configuration_erased";
}

PowerLawSpec PowerLawSpec::from_scale(double e_alpha, double beta, std::uint64_t seed) {
    if (!(e_alpha > 0.0)) throw std::invalid_argument("e^alpha must be positive");
    PowerLawSpec spec;
    spec.alpha = std::log(e_alpha);
    spec.beta = beta;
    spec.seed = seed;
    return spec;
}

double PowerLawSpec::scale() const { return std::exp(alpha); }

std::size_t DegreeSequence::count_of(std::uint32_t degree) const {
    return static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), degree));
}

namespace {

// floor() that forgives the last few ulps, so exact powers such as
// 1000^(1/3) land on 10 rather than 9.
std::size_t safe_floor(double v) { return static_cast<std::size_t>(std::floor(v * (1.0 + 1e-12))); }

}  // namespace

DegreeSequence degree_sequence(const PowerLawSpec& spec) {
    if (!(spec.beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const double scale = spec.scale();
    if (scale < 1.0 - 1e-12) throw std::invalid_argument("e^alpha must be at least 1");

    DegreeSequence seq;
    const std::size_t max_degree = safe_floor(std::exp(spec.alpha / spec.beta));
    for (std::size_t x = 1; x <= max_degree; ++x) {
        const std::size_t count = safe_floor(scale / std::pow(static_cast<double>(x), spec.beta));
        seq.degrees.insert(seq.degrees.end(), count, static_cast<std::uint32_t>(x));
    }
    if (seq.degrees.empty()) throw std::invalid_argument("degree sequence is empty; alpha too small");
    const std::uint64_t total = std::accumulate(seq.degrees.begin(), seq.degrees.end(), std::uint64_t{0});
    if (total % 2 == 1) {
        // The first entry is a minimum-degree node; bumping it keeps the order.
        auto it = std::upper_bound(seq.degrees.begin(), seq.degrees.end(), seq.degrees.front());
        --it;  // last node of minimum degree, so the sequence stays sorted
        ++*it;
        seq.parity_fixed = true;
    }
    seq.max_degree = *std::max_element(seq.degrees.begin(), seq.degrees.end());
    return seq;
}

NotGraphical::NotGraphical(std::size_t index, const std::string& what) : std::invalid_argument(what), index_(index) {}

std::optional<std::size_t> erdos_gallai_violation(std::span<const std::uint32_t> degrees) {
    std::vector<std::uint64_t> d(degrees.begin(), degrees.end());
    std::sort(d.begin(), d.end(), std::greater<>());
    const std::size_t n = d.size();
    const std::uint64_t total = std::accumulate(d.begin(), d.end(), std::uint64_t{0});
    if (total % 2 == 1) return 0;
    std::vector<std::uint64_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];

    std::uint64_t prefix = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        prefix += d[k - 1];
        // Among positions k..n-1 (0-based), those with d >= k contribute k.
        const auto first_small = std::partition_point(
            d.begin() + static_cast<std::ptrdiff_t>(k), d.end(), [k](std::uint64_t x) { return x >= k; });
        const auto boundary = static_cast<std::size_t>(first_small - d.begin());
        const std::uint64_t rhs = k * (k - 1) + k * (boundary - k) + suffix[boundary];
        if (prefix > rhs) return k;
    }
    return std::nullopt;
}

namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<Edge> havel_hakimi(std::span<const std::uint32_t> degrees) {
    // (residual degree, node); largest residual first, smaller id first on ties.
    auto cmp = [](const std::pair<std::uint32_t, NodeId>& a, const std::pair<std::uint32_t, NodeId>& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    };
    std::set<std::pair<std::uint32_t, NodeId>, decltype(cmp)> open(cmp);
    for (NodeId v = 0; v < degrees.size(); ++v) {
        if (degrees[v] > 0) open.emplace(degrees[v], v);
    }
    std::vector<Edge> edges;
    std::vector<std::pair<std::uint32_t, NodeId>> taken;
    while (!open.empty()) {
        const auto [need, v] = *open.begin();
        open.erase(open.begin());
        taken.clear();
        auto it = open.begin();
        for (std::uint32_t i = 0; i < need; ++i) {
            if (it == open.end()) throw NotGraphical(0, "Havel-Hakimi ran out of partners");
            taken.push_back(*it);
            it = open.erase(it);
        }
        for (const auto& [residual, u] : taken) {
            edges.emplace_back(v, u);
            if (residual > 1) open.emplace(residual - 1, u);
        }
    }
    return edges;
}

}  // namespace

RealizedGraph realize_graph(const DegreeSequence& seq, const PowerLawSpec& spec) {
    const std::size_t n = seq.degrees.size();
    RealizedGraph out;
    std::mt19937_64 rng(spec.seed);

    if (spec.realization == Realization::havel_hakimi_shuffled) {
        if (const auto bad = erdos_gallai_violation(seq.degrees)) {
            throw NotGraphical(*bad, *bad == 0 ? "degree sum is odd"
                                               : "Erdos-Gallai inequality fails at k=" + std::to_string(*bad));
        }
        std::vector<Edge> edges = havel_hakimi(seq.degrees);
        std::unordered_set<std::uint64_t> present;
        present.reserve(edges.size() * 2);
        for (const auto& [a, b] : edges) present.insert(edge_key(a, b));

        const std::size_t attempts = spec.swap_rounds * edges.size();
        if (edges.size() >= 2) {
            std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
            std::bernoulli_distribution flip(0.5);
            for (std::size_t t = 0; t < attempts; ++t) {
                const std::size_t i = pick(rng);
                const std::size_t j = pick(rng);
                if (i == j) continue;
                auto [a, b] = edges[i];
                auto [c, d] = edges[j];
                if (flip(rng)) std::swap(c, d);
                // (a,b),(c,d) -> (a,d),(c,b)
                if (a == d || c == b) continue;
                const auto k1 = edge_key(a, d), k2 = edge_key(c, b);
                if (present.contains(k1) || present.contains(k2)) continue;
                present.erase(edge_key(a, b));
                present.erase(edge_key(c, d));
                present.insert(k1);
                present.insert(k2);
                edges[i] = {a, d};
                edges[j] = {c, b};
                ++out.swaps_accepted;
            }
        }
        out.swaps_attempted = attempts;
        out.graph = Graph(n, edges);
        return out;
    }

    std::vector<NodeId> stubs;
    for (NodeId v = 0; v < n; ++v) stubs.insert(stubs.end(), seq.degrees[v], v);
    if (stubs.size() % 2 == 1) throw NotGraphical(0, "degree sum is odd");
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::unordered_set<std::uint64_t> present;
    std::vector<Edge> edges;
    for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
        const NodeId a = stubs[s], b = stubs[s + 1];
        if (a == b || !present.insert(edge_key(a, b)).second) continue;
        edges.emplace_back(a, b);
    }
    if (edges.empty()) throw NotGraphical(0, "configuration model produced no edges");
    out.degree_deficit = stubs.size() - 2 * edges.size();
    auto [graph, dropped] = compact_graph(n, edges);
    out.graph = std::move(graph);
    out.dropped_isolated = dropped;
    return out;
}

ModelStats theoretical_counts(double alpha, double beta) {
    if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
    const double scale = std::exp(alpha);
    constexpr double eps = 1e-12;
    ModelStats stats;
    stats.max_degree_theory = std::exp(alpha / beta);

    if (std::abs(beta - 1.0) < eps) {
        stats.n_theory = alpha * scale;
    } else if (beta > 1.0) {
        stats.n_theory = riemann_zeta(beta) * scale;
    } else {
        stats.n_theory = std::exp(alpha / beta) / (1.0 - beta);
    }

    if (std::abs(beta - 2.0) < eps) {
        stats.m_theory = 0.25 * alpha * scale;
    } else if (beta > 2.0) {
        stats.m_theory = 0.5 * riemann_zeta(beta - 1.0) * scale;
    } else {
        stats.m_theory = 0.5 * std::exp(2.0 * alpha / beta) / (2.0 - beta);
    }
    return stats;
}

}  // namespace sparsemod
