#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sparsemod/dual_simplex.hpp"
#include "sparsemod/graph.hpp"
#include "sparsemod/lp_model.hpp"
#include "sparsemod/modularity.hpp"

namespace sparsemod {

enum class LpStatus { optimal, iteration_limit, infeasible };

const char* to_string(LpStatus status);

struct SolverOptions {
    double feasibility_tol = 1e-7;
    double optimality_tol = 1e-9;
    double integrality_tol = 1e-6;
    std::size_t iteration_limit = 10'000'000;
    double time_limit_sec = 3600.0;
    std::size_t ilp_node_limit = 200'000;
};

struct LpSolution {
    /// One distance per pair variable, clipped to [0, 1].
    std::vector<double> values;
    /// Modularity-scale objective. With status iteration_limit this is still
    /// an upper bound (the dual simplex iterate stays dual feasible), but
    /// `values` may violate rows.
    double objective = 0.0;
    LpStatus status = LpStatus::optimal;
    bool integral = false;
    std::size_t iterations = 0;
    double seconds = 0.0;
};

struct IlpSolution {
    Partition partition;
    /// Modularity of `partition`.
    double objective = 0.0;
    /// Best upper bound at termination.
    double bound = 0.0;
    bool proven_optimal = false;
    std::size_t nodes_explored = 0;
    std::size_t lp_iterations = 0;
};

/// Interface for LP backends; the built-in one is the dual simplex.
class LpBackend {
public:
    virtual ~LpBackend() = default;
    virtual std::string name() const = 0;
    virtual LpSolution solve(const LpProblem& lp, const SolverOptions& options) = 0;
};

std::unique_ptr<LpBackend> make_baseline_backend();

/// Row form used by the simplex: d_long - d_first - d_second <= 0, 0 <= d <= 1.
SparseLp to_sparse_lp(const LpProblem& lp);

LpSolution solve_lp(const LpProblem& lp, const SolverOptions& options = {}, LpBackend* backend = nullptr);

/// Branch-and-bound on the most fractional pair (closest to 1/2, smallest
/// index on ties), exploring the d = 0 child first. `incumbent` seeds the
/// lower bound.
IlpSolution solve_ilp(const LpProblem& lp, const SolverOptions& options = {},
                      const std::optional<Partition>& incumbent = std::nullopt);

bool is_integral(std::span<const double> values, double tol);

/// Connected components of the "distance <= tol" relation over all pairs.
Partition decode_partition(const PairIndex& pairs, std::span<const double> values, double tol = 1e-6);

/// d*_ij = min(shortest path under edge weights d_e, 1) for every pair.
std::vector<double> metric_completion(const Graph& g, const PairIndex& pairs, std::span<const double> values);

struct TriangleViolation {
    enum class Kind { triangle, range };
    Kind kind = Kind::triangle;
    /// Pair on the long side (or the out-of-range pair).
    NodeId i = 0;
    NodeId j = 0;
    /// Middle vertex k of d_ik + d_kj >= d_ij; unused for range entries.
    NodeId k = 0;
    double amount = 0.0;
};

/// Checks all 3 * C(n,3) orientations plus 0 <= d <= 1. Empty iff d is a
/// [0,1] pseudo-metric within tol.
std::vector<TriangleViolation> verify_triangle_inequalities(const PairIndex& pairs, std::span<const double> values,
                                                            double tol);

}  // namespace sparsemod
