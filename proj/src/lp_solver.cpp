#include "sparsemod/lp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace sparsemod {

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::iteration_limit: return "iteration_limit";
        case LpStatus::infeasible: return "infeasible";
    }
    return "unknown";
}

SparseLp to_sparse_lp(const LpProblem& lp) {
    SparseLp out;
    out.variable_count = lp.variable_count();
    out.cost = lp.objective;
    out.lower.assign(out.variable_count, 0.0);
    out.upper.assign(out.variable_count, 1.0);
    out.row_index.reserve(3 * lp.rows.size());
    out.row_value.reserve(3 * lp.rows.size());
    out.rhs.reserve(lp.rows.size());
    out.row_start.reserve(lp.rows.size() + 1);
    static constexpr double coeffs[3] = {1.0, -1.0, -1.0};
    for (const auto& row : lp.rows) {
        const std::uint32_t idx[3] = {row.long_side, row.first, row.second};
        out.add_row(idx, coeffs, 0.0);
    }
    return out;
}

bool is_integral(std::span<const double> values, double tol) {
    return std::all_of(values.begin(), values.end(), [tol](double v) { return std::abs(v - std::round(v)) <= tol; });
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SimplexOptions simplex_options(const SolverOptions& options) {
    SimplexOptions so;
    so.iteration_limit = options.iteration_limit;
    so.time_limit_sec = options.time_limit_sec;
    return so;
}

std::vector<double> clipped(std::span<const double> x) {
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v = std::clamp(v, 0.0, 1.0);
    return out;
}

class DualSimplexBackend final : public LpBackend {
public:
    std::string name() const override { return "dual-simplex"; }

    LpSolution solve(const LpProblem& lp, const SolverOptions& options) override {
        const auto start = Clock::now();
        const SparseLp sparse = to_sparse_lp(lp);
        DualSimplex simplex(sparse, simplex_options(options));
        const SimplexStatus status = simplex.solve();

        LpSolution sol;
        sol.iterations = simplex.iterations();
        sol.values = clipped(simplex.values());
        switch (status) {
            case SimplexStatus::optimal: sol.status = LpStatus::optimal; break;
            case SimplexStatus::infeasible: sol.status = LpStatus::infeasible; break;
            default: sol.status = LpStatus::iteration_limit; break;
        }
        if (sol.status == LpStatus::optimal) {
            const double viol = simplex.max_violation();
            if (viol > options.feasibility_tol) {
                throw std::logic_error("simplex reported optimal with violation " + std::to_string(viol));
            }
            sol.objective = objective_value(lp, sol.values);
        } else {
            sol.objective = simplex.objective() + lp.objective_constant;
        }
        sol.integral = sol.status == LpStatus::optimal && is_integral(sol.values, options.integrality_tol);
        sol.seconds = seconds_since(start);
        return sol;
    }
};

}  // namespace

std::unique_ptr<LpBackend> make_baseline_backend() { return std::make_unique<DualSimplexBackend>(); }

LpSolution solve_lp(const LpProblem& lp, const SolverOptions& options, LpBackend* backend) {
    if (backend != nullptr) return backend->solve(lp, options);
    DualSimplexBackend baseline;
    return baseline.solve(lp, options);
}

namespace {

class BranchAndBound {
public:
    BranchAndBound(const LpProblem& lp, const SolverOptions& options)
        : lp_(lp), options_(options), sparse_(to_sparse_lp(lp)), simplex_(sparse_, simplex_options(options)) {}

    void seed(const Partition& p) {
        auto d = encode_partition(lp_.pairs, p);
        const double value = objective_value(lp_, d);
        if (value > best_value_) {
            best_value_ = value;
            best_values_ = std::move(d);
        }
    }

    void run() {
        start_ = Clock::now();
        explore(std::numeric_limits<double>::infinity());
    }

    bool aborted() const { return aborted_; }
    double best_value() const { return best_value_; }
    const std::vector<double>& best_values() const { return best_values_; }
    double open_bound() const { return open_bound_; }
    std::size_t nodes() const { return nodes_; }
    std::size_t iterations() const { return simplex_.iterations(); }

private:
    void explore(double parent_bound) {
        if (aborted_ || nodes_ >= options_.ilp_node_limit || seconds_since(start_) > options_.time_limit_sec) {
            aborted_ = true;
            open_bound_ = std::max(open_bound_, parent_bound);
            return;
        }
        ++nodes_;
        const SimplexStatus status = simplex_.solve();
        if (status == SimplexStatus::infeasible) return;
        const double bound = simplex_.objective() + lp_.objective_constant;
        if (status != SimplexStatus::optimal) {
            aborted_ = true;
            open_bound_ = std::max(open_bound_, std::min(parent_bound, bound));
            return;
        }
        if (bound <= best_value_ + options_.optimality_tol) return;

        const auto x = simplex_.values();
        std::size_t branch_var = x.size();
        double best_gap = 0.5 - options_.integrality_tol;
        for (std::size_t v = 0; v < x.size(); ++v) {
            const double gap = std::abs(x[v] - 0.5);
            if (gap < best_gap) {
                best_gap = gap;
                branch_var = v;
            }
        }
        if (branch_var == x.size()) {
            std::vector<double> rounded(x.begin(), x.end());
            for (double& v : rounded) v = std::round(std::clamp(v, 0.0, 1.0));
            const double value = objective_value(lp_, rounded);
            if (value > best_value_) {
                best_value_ = value;
                best_values_ = std::move(rounded);
            }
            return;
        }

        const double lo = simplex_.lower(branch_var);
        const double hi = simplex_.upper(branch_var);
        simplex_.set_bounds(branch_var, lo, lo);
        explore(bound);
        simplex_.set_bounds(branch_var, hi, hi);
        explore(bound);
        simplex_.set_bounds(branch_var, lo, hi);
    }

    const LpProblem& lp_;
    SolverOptions options_;
    SparseLp sparse_;
    DualSimplex simplex_;
    Clock::time_point start_;
    double best_value_ = -std::numeric_limits<double>::infinity();
    std::vector<double> best_values_;
    double open_bound_ = -std::numeric_limits<double>::infinity();
    std::size_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace

IlpSolution solve_ilp(const LpProblem& lp, const SolverOptions& options, const std::optional<Partition>& incumbent) {
    BranchAndBound bnb(lp, options);
    bnb.seed(Partition::single(lp.node_count));
    if (incumbent) bnb.seed(*incumbent);
    bnb.run();

    IlpSolution out;
    out.partition = decode_partition(lp.pairs, bnb.best_values(), options.integrality_tol);
    out.objective = objective_value(lp, encode_partition(lp.pairs, out.partition));
    out.nodes_explored = bnb.nodes();
    out.lp_iterations = bnb.iterations();
    out.bound = std::max(bnb.best_value(), bnb.open_bound());
    // An optimal 0/1 point of either formulation is a pseudo-metric, so its
    // decoded partition reproduces the value. Anything else is not a proof.
    out.proven_optimal = !bnb.aborted() && out.objective >= bnb.best_value() - 1e-9;
    return out;
}

Partition decode_partition(const PairIndex& pairs, std::span<const double> values, double tol) {
    const std::size_t n = pairs.node_count();
    if (values.size() != pairs.size()) throw std::invalid_argument("distance vector does not match pair index");
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    const std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (values[pairs(i, j)] <= tol) {
                const auto a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<std::uint32_t> labels(n);
    for (NodeId v = 0; v < n; ++v) labels[v] = find(v);
    return Partition::from_membership(labels);
}

std::vector<double> metric_completion(const Graph& g, const PairIndex& pairs, std::span<const double> values) {
    const std::size_t n = g.node_count();
    if (pairs.node_count() != n || values.size() != pairs.size()) {
        throw std::invalid_argument("distance vector does not match graph");
    }
    std::vector<double> completed(pairs.size(), 1.0);
    std::vector<double> dist(n);
    using Item = std::pair<double, NodeId>;
    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        dist[s] = 0.0;
        queue.emplace(0.0, s);
        while (!queue.empty()) {
            const auto [du, u] = queue.top();
            queue.pop();
            if (du > dist[u]) continue;
            if (du >= 1.0) break;  // everything further is clipped to 1
            for (NodeId v : g.neighbors(u)) {
                const double w = std::max(values[pairs(u, v)], 0.0);
                if (du + w < dist[v]) {
                    dist[v] = du + w;
                    queue.emplace(dist[v], v);
                }
            }
        }
        for (NodeId t = s + 1; t < n; ++t) completed[pairs(s, t)] = std::min(dist[t], 1.0);
    }
    return completed;
}

std::vector<TriangleViolation> verify_triangle_inequalities(const PairIndex& pairs, std::span<const double> values,
                                                            double tol) {
    const std::size_t n = pairs.node_count();
    if (values.size() != pairs.size()) throw std::invalid_argument("distance vector does not match pair index");
    std::vector<TriangleViolation> out;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            const double d = values[pairs(i, j)];
            if (d < -tol || d > 1.0 + tol) {
                out.push_back({TriangleViolation::Kind::range, i, j, 0, d < 0 ? -d : d - 1.0});
            }
        }
    }
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            const double ij = values[pairs(i, j)];
            for (NodeId k = j + 1; k < n; ++k) {
                const double jk = values[pairs(j, k)];
                const double ik = values[pairs(i, k)];
                if (ik - ij - jk > tol) out.push_back({TriangleViolation::Kind::triangle, i, k, j, ik - ij - jk});
                if (jk - ij - ik > tol) out.push_back({TriangleViolation::Kind::triangle, j, k, i, jk - ij - ik});
                if (ij - jk - ik > tol) out.push_back({TriangleViolation::Kind::triangle, i, j, k, ij - jk - ik});
            }
        }
    }
    return out;
}

}  // namespace sparsemod
