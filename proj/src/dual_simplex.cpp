#include "sparsemod/dual_simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sparsemod {

void SparseLp::add_row(std::span<const std::uint32_t> index, std::span<const double> value, double bound) {
    if (index.size() != value.size()) throw std::invalid_argument("row index/value length mismatch");
    row_index.insert(row_index.end(), index.begin(), index.end());
    row_value.insert(row_value.end(), value.begin(), value.end());
    row_start.push_back(row_index.size());
    rhs.push_back(bound);
}

DualSimplex::DualSimplex(const SparseLp& lp, SimplexOptions options)
    : lp_(lp),
      options_(options),
      n_(lp.variable_count),
      row_count_(lp.row_count()),
      lower_(lp.lower),
      upper_(lp.upper),
      basis_(n_),
      position_(row_count_ + 2 * n_, kNotBasic),
      inverse_(n_ * n_, 0.0),
      x_(n_, 0.0),
      multipliers_(n_, 0.0),
      pivot_row_(n_, 0.0) {
    if (lp.cost.size() != n_ || lower_.size() != n_ || upper_.size() != n_) {
        throw std::invalid_argument("cost/bound vectors must match the variable count");
    }
    if (lp.row_start.size() != row_count_ + 1) throw std::invalid_argument("malformed row storage");
    for (std::size_t v = 0; v < n_; ++v) {
        if (!std::isfinite(lower_[v]) || !std::isfinite(upper_[v]) || lower_[v] > upper_[v]) {
            throw std::invalid_argument("variable " + std::to_string(v) + " needs finite bounds lo <= hi");
        }
        // Each variable starts at the bound its cost prefers: dual feasible.
        const ConstraintId id = lp.cost[v] > 0.0 ? upper_id(v) : lower_id(v);
        basis_[v] = id;
        position_[id] = static_cast<std::int64_t>(v);
    }
    refactor();
}

double DualSimplex::activity(ConstraintId id) const {
    if (is_row(id)) {
        double s = 0.0;
        for (std::size_t k = lp_.row_start[id]; k < lp_.row_start[id + 1]; ++k) {
            s += lp_.row_value[k] * x_[lp_.row_index[k]];
        }
        return s;
    }
    const std::size_t v = (id - row_count_) / 2;
    return (id - row_count_) % 2 == 0 ? x_[v] : -x_[v];
}

double DualSimplex::rhs(ConstraintId id) const {
    if (is_row(id)) return lp_.rhs[id];
    const std::size_t v = (id - row_count_) / 2;
    return (id - row_count_) % 2 == 0 ? upper_[v] : -lower_[v];
}

double DualSimplex::objective() const {
    double s = 0.0;
    for (std::size_t v = 0; v < n_; ++v) s += lp_.cost[v] * x_[v];
    return s;
}

double DualSimplex::max_violation() const {
    double worst = 0.0;
    const auto total = static_cast<ConstraintId>(row_count_ + 2 * n_);
    for (ConstraintId id = 0; id < total; ++id) worst = std::max(worst, violation(id));
    return worst;
}

double DualSimplex::min_multiplier() const {
    double lo = 0.0;
    for (double l : multipliers_) lo = std::min(lo, l);
    return lo;
}

void DualSimplex::set_bounds(std::size_t var, double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("lower bound exceeds upper bound");
    const auto shift_along = [&](std::int64_t pos, double delta) {
        if (pos == kNotBasic || delta == 0.0) return;
        for (std::size_t k = 0; k < n_; ++k) x_[k] += delta * inverse_[k * n_ + static_cast<std::size_t>(pos)];
    };
    shift_along(position_[upper_id(var)], hi - upper_[var]);
    shift_along(position_[lower_id(var)], -(lo - lower_[var]));
    lower_[var] = lo;
    upper_[var] = hi;
}

std::int64_t DualSimplex::choose_entering(bool bland) const {
    const auto total = static_cast<ConstraintId>(row_count_ + 2 * n_);
    std::int64_t best = -1;
    double best_violation = options_.feasibility_tol;
    for (ConstraintId id = 0; id < total; ++id) {
        if (position_[id] != kNotBasic) continue;
        const double viol = violation(id);
        if (viol > best_violation) {
            if (bland) return id;
            best = id;
            best_violation = viol;
        }
    }
    return best;
}

void DualSimplex::compute_pivot_row(ConstraintId entering) {
    std::fill(pivot_row_.begin(), pivot_row_.end(), 0.0);
    const auto accumulate = [&](std::size_t k, double coeff) {
        const double* row = &inverse_[k * n_];
        for (std::size_t p = 0; p < n_; ++p) pivot_row_[p] += coeff * row[p];
    };
    if (is_row(entering)) {
        for (std::size_t k = lp_.row_start[entering]; k < lp_.row_start[entering + 1]; ++k) {
            accumulate(lp_.row_index[k], lp_.row_value[k]);
        }
    } else {
        const std::size_t v = (entering - row_count_) / 2;
        accumulate(v, (entering - row_count_) % 2 == 0 ? 1.0 : -1.0);
    }
    pivot_support_.clear();
    for (std::size_t p = 0; p < n_; ++p) {
        if (std::abs(pivot_row_[p]) > 1e-13) {
            pivot_support_.push_back(static_cast<std::uint32_t>(p));
        } else {
            pivot_row_[p] = 0.0;
        }
    }
}

std::int64_t DualSimplex::choose_leaving(bool bland) const {
    std::int64_t best = -1;
    double best_ratio = 0.0;
    for (std::uint32_t p : pivot_support_) {
        const double u = pivot_row_[p];
        if (u <= options_.pivot_tol) continue;
        const double ratio = std::max(multipliers_[p], 0.0) / u;
        if (best < 0) {
            best = p;
            best_ratio = ratio;
            continue;
        }
        const double slack = 1e-12 * (1.0 + std::abs(best_ratio));
        if (ratio < best_ratio - slack) {
            best = p;
            best_ratio = ratio;
        } else if (ratio <= best_ratio + slack) {
            const bool better = bland ? basis_[p] < basis_[static_cast<std::size_t>(best)]
                                      : u > pivot_row_[static_cast<std::size_t>(best)];
            if (better) {
                best = p;
                best_ratio = std::min(best_ratio, ratio);
            }
        }
    }
    return best;
}

void DualSimplex::pivot(ConstraintId entering, std::size_t leaving_pos) {
    const double u_r = pivot_row_[leaving_pos];

    column_support_.clear();
    for (std::size_t k = 0; k < n_; ++k) {
        if (inverse_[k * n_ + leaving_pos] != 0.0) column_support_.push_back(static_cast<std::uint32_t>(k));
    }

    // Primal step along the leaving column until the entering row is tight.
    const double theta = -violation(entering) / u_r;
    for (std::uint32_t k : column_support_) x_[k] += theta * inverse_[k * n_ + leaving_pos];

    // Dual step: the entering row takes weight t, the others give way.
    const double t = std::max(multipliers_[leaving_pos], 0.0) / u_r;
    for (std::uint32_t p : pivot_support_) {
        multipliers_[p] -= t * pivot_row_[p];
        if (multipliers_[p] < 0.0 && multipliers_[p] > -1e-11) multipliers_[p] = 0.0;
    }
    multipliers_[leaving_pos] = t;

    for (std::uint32_t k : column_support_) {
        double* row = &inverse_[k * n_];
        const double f = row[leaving_pos];
        for (std::uint32_t p : pivot_support_) {
            if (p != leaving_pos) row[p] -= f * pivot_row_[p] / u_r;
        }
        row[leaving_pos] = f / u_r;
    }

    position_[basis_[leaving_pos]] = kNotBasic;
    basis_[leaving_pos] = entering;
    position_[entering] = static_cast<std::int64_t>(leaving_pos);
}

void DualSimplex::refactor() {
    // Bound rows pin their variable directly; only the block of general
    // rows against the remaining free variables needs a real inverse.
    std::vector<std::int64_t> bound_pos(n_, kNotBasic);
    std::vector<double> bound_sign(n_, 0.0);
    std::vector<std::size_t> row_positions;
    for (std::size_t p = 0; p < n_; ++p) {
        const ConstraintId id = basis_[p];
        if (is_row(id)) {
            row_positions.push_back(p);
        } else {
            const std::size_t v = (id - row_count_) / 2;
            bound_pos[v] = static_cast<std::int64_t>(p);
            bound_sign[v] = (id - row_count_) % 2 == 0 ? 1.0 : -1.0;
        }
    }
    std::vector<std::int64_t> free_slot(n_, -1);
    std::vector<std::size_t> free_vars;
    for (std::size_t v = 0; v < n_; ++v) {
        if (bound_pos[v] == kNotBasic) {
            free_slot[v] = static_cast<std::int64_t>(free_vars.size());
            free_vars.push_back(v);
        }
    }
    if (free_vars.size() != row_positions.size()) {
        throw std::logic_error("simplex basis is singular (bound/row count mismatch)");
    }

    std::fill(inverse_.begin(), inverse_.end(), 0.0);
    for (std::size_t v = 0; v < n_; ++v) {
        if (bound_pos[v] != kNotBasic) inverse_[v * n_ + static_cast<std::size_t>(bound_pos[v])] = bound_sign[v];
    }

    const std::size_t k = row_positions.size();
    if (k > 0) {
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        for (std::size_t q = 0; q < k; ++q) {
            const ConstraintId id = basis_[row_positions[q]];
            for (std::size_t e = lp_.row_start[id]; e < lp_.row_start[id + 1]; ++e) {
                const std::int64_t slot = free_slot[lp_.row_index[e]];
                if (slot >= 0) block(static_cast<Eigen::Index>(q), slot) += lp_.row_value[e];
            }
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(block);
        if (std::abs(lu.determinant()) < 1e-300) throw std::logic_error("simplex basis is singular");
        const Eigen::MatrixXd inv = lu.inverse();  // free vars x row positions

        for (std::size_t a = 0; a < k; ++a) {
            double* row = &inverse_[free_vars[a] * n_];
            for (std::size_t q = 0; q < k; ++q) row[row_positions[q]] = inv(static_cast<Eigen::Index>(a), q);
        }
        // Columns of bound positions: y_free = -sign * K * (block column of the fixed var).
        for (std::size_t q = 0; q < k; ++q) {
            const ConstraintId id = basis_[row_positions[q]];
            for (std::size_t e = lp_.row_start[id]; e < lp_.row_start[id + 1]; ++e) {
                const std::size_t v = lp_.row_index[e];
                if (bound_pos[v] == kNotBasic) continue;
                const double scale = -bound_sign[v] * lp_.row_value[e];
                const auto col = static_cast<std::size_t>(bound_pos[v]);
                for (std::size_t a = 0; a < k; ++a) {
                    inverse_[free_vars[a] * n_ + col] += scale * inv(static_cast<Eigen::Index>(a), q);
                }
            }
        }
    }
    recompute_primal();
    ++refactorizations_;
    since_refactor_ = 0;
}

void DualSimplex::recompute_primal() {
    std::vector<double> b(n_);
    for (std::size_t p = 0; p < n_; ++p) b[p] = rhs(basis_[p]);
    std::fill(multipliers_.begin(), multipliers_.end(), 0.0);
    for (std::size_t k = 0; k < n_; ++k) {
        const double* row = &inverse_[k * n_];
        double s = 0.0;
        const double c = lp_.cost[k];
        for (std::size_t p = 0; p < n_; ++p) {
            if (row[p] == 0.0) continue;
            s += row[p] * b[p];
            multipliers_[p] += row[p] * c;
        }
        x_[k] = s;
    }
}

SimplexStatus DualSimplex::solve() {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    double best_objective = objective();
    std::size_t stalled = 0;
    bool bland = false;

    for (;;) {
        if (iterations_ >= options_.iteration_limit) return SimplexStatus::iteration_limit;
        if (iterations_ % 64 == 0) {
            const std::chrono::duration<double> elapsed = clock::now() - start;
            if (elapsed.count() > options_.time_limit_sec) return SimplexStatus::time_limit;
        }

        std::int64_t entering = choose_entering(bland);
        if (entering < 0) {
            if (since_refactor_ == 0) return SimplexStatus::optimal;
            refactor();
            continue;
        }
        compute_pivot_row(static_cast<ConstraintId>(entering));
        const std::int64_t leaving = choose_leaving(bland);
        if (leaving < 0) {
            if (since_refactor_ == 0) return SimplexStatus::infeasible;
            refactor();
            continue;
        }
        pivot(static_cast<ConstraintId>(entering), static_cast<std::size_t>(leaving));
        ++iterations_;
        if (++since_refactor_ >= options_.refactor_interval) refactor();

        const double obj = objective();
        if (obj < best_objective - 1e-12 * (1.0 + std::abs(best_objective))) {
            best_objective = obj;
            stalled = 0;
            bland = false;
        } else if (++stalled >= options_.stall_limit) {
            bland = true;
        }
    }
}

}  // namespace sparsemod
