#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sparsemod/graph.hpp"
#include "sparsemod/lp_solver.hpp"
#include "sparsemod/modularity.hpp"

namespace sparsemod {

enum class PivotOrder { by_node_id, by_degree_desc, random };

const char* to_string(PivotOrder order);
PivotOrder pivot_order_from_string(const std::string& name);

struct RoundingConfig {
    std::vector<double> thresholds{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    PivotOrder pivot_order = PivotOrder::by_node_id;
    std::uint64_t seed = 0;
    bool refine = true;

    /// Throws std::invalid_argument unless thresholds are non-empty,
    /// strictly increasing and inside (0, 1).
    void validate() const;
};

struct ThresholdScore {
    double threshold = 0.0;
    double modularity = 0.0;
    std::size_t communities = 0;
};

struct RoundingResult {
    Partition partition;
    double threshold = 0.0;
    double modularity = 0.0;
    std::vector<ThresholdScore> per_threshold;
};

/// Ball rounding: for each threshold t, repeatedly take the first unassigned
/// pivot u and group it with every unassigned v having d_uv <= t. Keeps the
/// threshold with the best modularity (smallest t on ties).
RoundingResult round_distances_detailed(const Graph& g, const PairIndex& pairs, std::span<const double> distances,
                                        const RoundingConfig& config, double lambda = 1.0);

Partition round_distances(const Graph& g, const PairIndex& pairs, std::span<const double> distances,
                          const RoundingConfig& config, double lambda = 1.0);

struct RefineStats {
    std::size_t passes = 0;
    std::size_t moves = 0;
};

inline constexpr std::size_t kRefinePassLimit = 100;

/// Kernighan-Lin style single-node refinement.
///
/// Each pass moves every node exactly once, always taking the best
/// remaining move (into a neighboring community or a fresh singleton) even
/// when it lowers Q, then rolls back to the best prefix of the pass. Stops
/// when a pass gains no more than 1e-9.
Partition kl_refine(const Graph& g, const Partition& start, double lambda = 1.0, RefineStats* stats = nullptr);

struct DetectionReport {
    std::size_t n = 0;
    std::size_t m = 0;
    double lambda = 1.0;
    /// Absent when the LP could not be solved within limits.
    std::optional<double> lp_bound;
    bool lp_integral = false;
    LpStatus lp_status = LpStatus::optimal;
    std::size_t lp_rows = 0;
    std::size_t lp_iterations = 0;
    Partition partition;
    double modularity = 0.0;
    std::optional<double> gap;
    /// "lp-integral", "lp-rounding" or "heuristic-fallback".
    std::string method;
    std::optional<double> rounding_threshold;
    std::vector<ThresholdScore> threshold_scores;
    RefineStats refine;
    std::map<std::string, double> timings_ms;
    RoundingConfig config;
    SolverOptions solver;

    bool fallback() const { return !lp_bound.has_value(); }
};

/// build_sparse -> solve_lp -> decode (integral) or complete, round and
/// refine (fractional). Falls back to the better of KL-from-singletons and
/// Following when the LP hits its limits. `lp_out` receives the raw LP
/// solution when non-null.
DetectionReport detect(const Graph& g, double lambda, const RoundingConfig& config, const SolverOptions& solver,
                       LpBackend* backend = nullptr, LpSolution* lp_out = nullptr);

}  // namespace sparsemod
