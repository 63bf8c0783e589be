#include "sparsemod/rounding.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sparsemod/heuristics.hpp"
#include "sparsemod/lp_model.hpp"

namespace sparsemod {

const char* to_string(PivotOrder order) {
    switch (order) {
        case PivotOrder::by_node_id: return "by_node_id";
        case PivotOrder::by_degree_desc: return "by_degree_desc";
        case PivotOrder::random: return "random";
    }
    return "unknown";
}

PivotOrder pivot_order_from_string(const std::string& name) {
    if (name == "by_node_id" || name == "id") return PivotOrder::by_node_id;
    if (name == "by_degree_desc" || name == "degree") return PivotOrder::by_degree_desc;
    if (name == "random") return PivotOrder::random;
    throw std::invalid_argument("unknown pivot order '" + name + "'");
}

void RoundingConfig::validate() const {
    if (thresholds.empty()) throw std::invalid_argument("rounding needs at least one threshold");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double t = thresholds[i];
        if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("rounding thresholds must lie in (0, 1)");
        if (i > 0 && !(t > thresholds[i - 1])) throw std::invalid_argument("rounding thresholds must increase");
    }
}

namespace {

std::vector<NodeId> pivot_sequence(const Graph& g, const RoundingConfig& config) {
    std::vector<NodeId> order(g.node_count());
    std::iota(order.begin(), order.end(), 0u);
    switch (config.pivot_order) {
        case PivotOrder::by_node_id: break;
        case PivotOrder::by_degree_desc:
            std::stable_sort(order.begin(), order.end(),
                             [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
            break;
        case PivotOrder::random: {
            std::mt19937_64 rng(config.seed);
            std::shuffle(order.begin(), order.end(), rng);
            break;
        }
    }
    return order;
}

}  // namespace

RoundingResult round_distances_detailed(const Graph& g, const PairIndex& pairs, std::span<const double> distances,
                                        const RoundingConfig& config, double lambda) {
    config.validate();
    const std::size_t n = g.node_count();
    if (pairs.node_count() != n || distances.size() != pairs.size()) {
        throw std::invalid_argument("distance vector does not match graph");
    }
    const auto order = pivot_sequence(g, config);

    RoundingResult best;
    bool have_best = false;
    constexpr std::uint32_t unassigned = ~0u;
    std::vector<std::uint32_t> labels(n);
    for (double t : config.thresholds) {
        std::fill(labels.begin(), labels.end(), unassigned);
        std::uint32_t next = 0;
        for (NodeId u : order) {
            if (labels[u] != unassigned) continue;
            labels[u] = next;
            for (NodeId v = 0; v < n; ++v) {
                if (labels[v] == unassigned && distances[pairs(u, v)] <= t + 1e-12) labels[v] = next;
            }
            ++next;
        }
        auto partition = Partition::from_membership(labels);
        const double q = modularity(g, partition, lambda).q;
        best.per_threshold.push_back({t, q, partition.community_count()});
        if (!have_best || q > best.modularity + 1e-12) {
            have_best = true;
            best.partition = std::move(partition);
            best.threshold = t;
            best.modularity = q;
        }
    }
    return best;
}

Partition round_distances(const Graph& g, const PairIndex& pairs, std::span<const double> distances,
                          const RoundingConfig& config, double lambda) {
    return round_distances_detailed(g, pairs, distances, config, lambda).partition;
}

namespace {

class MoveState {
public:
    MoveState(const Graph& g, const Partition& p, double lambda)
        : g_(g), lambda_(lambda), m_(static_cast<double>(g.edge_count())), community_(p.membership()),
          volume_(g.node_count(), 0.0), size_(g.node_count(), 0), link_(g.node_count(), 0) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
            volume_[community_[v]] += static_cast<double>(g.degree(v));
            ++size_[community_[v]];
        }
        for (std::uint32_t c = 0; c < g.node_count(); ++c) {
            if (size_[c] == 0) empty_.push_back(c);
        }
        std::sort(empty_.rbegin(), empty_.rend());  // pop_back yields the smallest id
    }

    struct Move {
        NodeId node = 0;
        std::uint32_t target = 0;
        bool fresh = false;
        double gain = 0.0;
    };

    /// Best move of `v`; false if v has nowhere to go.
    bool best_move(NodeId v, Move& out) {
        const std::uint32_t own = community_[v];
        touched_.clear();
        for (NodeId u : g_.neighbors(v)) {
            const std::uint32_t c = community_[u];
            if (link_[c]++ == 0) touched_.push_back(c);
        }
        const double d = static_cast<double>(g_.degree(v));
        const double k_own = link_[own];
        const double vol_own = volume_[own];
        bool found = false;
        const auto consider = [&](std::uint32_t target, bool fresh, double k_target, double vol_target) {
            const double gain =
                (k_target - k_own) / m_ - lambda_ * d * (vol_target - vol_own + d) / (2.0 * m_ * m_);
            if (!found || gain > out.gain) {
                found = true;
                out = {v, target, fresh, gain};
            }
        };
        for (std::uint32_t c : touched_) {
            if (c != own) consider(c, false, link_[c], volume_[c]);
        }
        if (size_[own] > 1 && !empty_.empty()) consider(empty_.back(), true, 0.0, 0.0);
        for (std::uint32_t c : touched_) link_[c] = 0;
        return found;
    }

    void apply(NodeId v, std::uint32_t target) {
        const std::uint32_t own = community_[v];
        const double d = static_cast<double>(g_.degree(v));
        if (size_[target] == 0) {
            empty_.erase(std::find(empty_.begin(), empty_.end(), target));
        }
        volume_[own] -= d;
        volume_[target] += d;
        --size_[own];
        ++size_[target];
        community_[v] = target;
        if (size_[own] == 0) {
            empty_.push_back(own);
            std::sort(empty_.rbegin(), empty_.rend());
        }
    }

    const std::vector<CommunityId>& membership() const { return community_; }

private:
    const Graph& g_;
    double lambda_;
    double m_;
    std::vector<CommunityId> community_;
    std::vector<double> volume_;
    std::vector<std::size_t> size_;
    std::vector<std::uint32_t> link_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::uint32_t> empty_;
};

}  // namespace

Partition kl_refine(const Graph& g, const Partition& start, double lambda, RefineStats* stats) {
    if (start.size() != g.node_count()) throw PartitionMismatch("partition does not match graph");
    const std::size_t n = g.node_count();
    Partition current = start;
    RefineStats local;

    for (std::size_t pass = 0; pass < kRefinePassLimit; ++pass) {
        ++local.passes;
        MoveState state(g, current, lambda);
        std::vector<char> moved(n, 0);
        double running = 0.0;
        double best_gain = 0.0;
        std::vector<CommunityId> best_membership = current.membership();
        std::size_t best_prefix = 0;

        for (std::size_t step = 0; step < n; ++step) {
            MoveState::Move best{};
            bool any = false;
            for (NodeId v = 0; v < n; ++v) {
                if (moved[v]) continue;
                MoveState::Move candidate;
                if (state.best_move(v, candidate) && (!any || candidate.gain > best.gain)) {
                    best = candidate;
                    any = true;
                }
            }
            if (!any) break;
            state.apply(best.node, best.target);
            moved[best.node] = 1;
            running += best.gain;
            if (running > best_gain + 1e-12) {
                best_gain = running;
                best_membership = state.membership();
                best_prefix = step + 1;
            }
        }
        if (best_gain <= 1e-9) break;
        local.moves += best_prefix;
        current = Partition::from_membership(best_membership);
    }
    if (stats != nullptr) *stats = local;
    return current;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

DetectionReport detect(const Graph& g, double lambda, const RoundingConfig& config, const SolverOptions& solver,
                       LpBackend* backend, LpSolution* lp_out) {
    config.validate();
    const auto total_start = Clock::now();
    DetectionReport report;
    report.n = g.node_count();
    report.m = g.edge_count();
    report.lambda = lambda;
    report.config = config;
    report.solver = solver;

    auto phase = Clock::now();
    const LpProblem lp = build_sparse(g, lambda, false);
    report.timings_ms["build"] = ms_since(phase);
    report.lp_rows = lp.constraint_count();

    phase = Clock::now();
    const LpSolution sol = solve_lp(lp, solver, backend);
    report.timings_ms["solve"] = ms_since(phase);
    report.lp_status = sol.status;
    report.lp_iterations = sol.iterations;
    if (lp_out != nullptr) *lp_out = sol;

    if (sol.status != LpStatus::optimal) {
        phase = Clock::now();
        Partition kl = kl_refine(g, Partition::singletons(g.node_count()), lambda, &report.refine);
        Partition follow = following(g, 1).partition;
        const double q_kl = modularity(g, kl, lambda).q;
        const double q_follow = modularity(g, follow, lambda).q;
        report.partition = q_kl >= q_follow ? std::move(kl) : std::move(follow);
        report.modularity = std::max(q_kl, q_follow);
        report.method = "heuristic-fallback";
        report.timings_ms["fallback"] = ms_since(phase);
        report.timings_ms["total"] = ms_since(total_start);
        return report;
    }

    report.lp_bound = sol.objective;
    report.lp_integral = sol.integral;
    if (sol.integral) {
        phase = Clock::now();
        report.partition = decode_partition(lp.pairs, sol.values, solver.integrality_tol);
        report.method = "lp-integral";
        report.timings_ms["decode"] = ms_since(phase);
    } else {
        phase = Clock::now();
        const auto completed = metric_completion(g, lp.pairs, sol.values);
        report.timings_ms["completion"] = ms_since(phase);

        phase = Clock::now();
        auto rounded = round_distances_detailed(g, lp.pairs, completed, config, lambda);
        report.timings_ms["round"] = ms_since(phase);
        report.rounding_threshold = rounded.threshold;
        report.threshold_scores = std::move(rounded.per_threshold);
        report.partition = std::move(rounded.partition);
        report.method = "lp-rounding";

        if (config.refine) {
            phase = Clock::now();
            report.partition = kl_refine(g, report.partition, lambda, &report.refine);
            report.timings_ms["refine"] = ms_since(phase);
        }
    }
    report.modularity = modularity(g, report.partition, lambda).q;
    report.gap = *report.lp_bound - report.modularity;
    report.timings_ms["total"] = ms_since(total_start);
    return report;
}

}  // namespace sparsemod
