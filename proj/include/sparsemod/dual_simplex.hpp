#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sparsemod {

/// maximize c^T x  s.t.  row_r . x <= rhs_r,  lo <= x <= hi.
/// Rows are stored in compressed sparse row form; every bound must be finite.
struct SparseLp {
    std::size_t variable_count = 0;
    std::vector<double> cost;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::size_t> row_start{0};
    std::vector<std::uint32_t> row_index;
    std::vector<double> row_value;
    std::vector<double> rhs;

    std::size_t row_count() const noexcept { return rhs.size(); }
    void add_row(std::span<const std::uint32_t> index, std::span<const double> value, double bound);
};

enum class SimplexStatus { optimal, iteration_limit, time_limit, infeasible };

struct SimplexOptions {
    /// A constraint counts as violated (and may enter) above this slack.
    double feasibility_tol = 1e-9;
    double pivot_tol = 1e-9;
    std::size_t refactor_interval = 100;
    /// Non-improving iterations before switching to Bland's rule.
    std::size_t stall_limit = 200;
    std::size_t iteration_limit = 10'000'000;
    double time_limit_sec = 3600.0;
};

/**
 * Dual simplex on the active-set (row) form of a bounded LP.
 *
 * The basis is a set of n linearly independent active constraints, drawn
 * from the rows and the variable bounds; its explicit dense inverse is
 * updated by product-form pivots and refactored periodically. Starting
 * from every variable at its preferred bound is dual feasible, so only
 * violated rows ever enter. Pricing is most-violated-first, with a switch
 * to Bland's smallest-index rule while the objective stalls.
 *
 * Bounds can be changed between solves; the basis stays dual feasible, so
 * re-solving after a bound change warm-starts. Branch-and-bound relies on
 * this.
 */
class DualSimplex {
public:
    DualSimplex(const SparseLp& lp, SimplexOptions options = {});

    SimplexStatus solve();

    void set_bounds(std::size_t var, double lo, double hi);
    double lower(std::size_t var) const { return lower_[var]; }
    double upper(std::size_t var) const { return upper_[var]; }

    std::span<const double> values() const noexcept { return x_; }
    double objective() const;
    std::size_t iterations() const noexcept { return iterations_; }
    std::size_t refactorizations() const noexcept { return refactorizations_; }
    /// Largest row or bound violation of the current iterate.
    double max_violation() const;
    /// Most negative dual multiplier (0 when dual feasible).
    double min_multiplier() const;

private:
    using ConstraintId = std::uint32_t;
    static constexpr std::int64_t kNotBasic = -1;

    bool is_row(ConstraintId id) const { return id < row_count_; }
    double activity(ConstraintId id) const;
    double rhs(ConstraintId id) const;
    double violation(ConstraintId id) const { return activity(id) - rhs(id); }
    ConstraintId upper_id(std::size_t v) const { return static_cast<ConstraintId>(row_count_ + 2 * v); }
    ConstraintId lower_id(std::size_t v) const { return static_cast<ConstraintId>(row_count_ + 2 * v + 1); }

    std::int64_t choose_entering(bool bland) const;
    void compute_pivot_row(ConstraintId entering);
    std::int64_t choose_leaving(bool bland) const;
    void pivot(ConstraintId entering, std::size_t leaving_pos);
    void refactor();
    void recompute_primal();

    const SparseLp& lp_;
    SimplexOptions options_;
    std::size_t n_;
    std::size_t row_count_;
    std::vector<double> lower_;
    std::vector<double> upper_;

    std::vector<ConstraintId> basis_;        // position -> constraint
    std::vector<std::int64_t> position_;     // constraint -> position or kNotBasic
    std::vector<double> inverse_;            // n x n, row-major, maps rhs -> x
    std::vector<double> x_;
    std::vector<double> multipliers_;        // per basis position
    std::vector<double> pivot_row_;          // u = a_entering^T * inverse
    std::vector<std::uint32_t> pivot_support_;
    std::vector<std::uint32_t> column_support_;
    std::size_t iterations_ = 0;
    std::size_t refactorizations_ = 0;
    std::size_t since_refactor_ = 0;
};

}  // namespace sparsemod
