#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "sparsemod/graph.hpp"
#include "sparsemod/modularity.hpp"

namespace sparsemod {

using VarIndex = std::uint32_t;

/// Bijection between unordered pairs {i, j}, i != j, and 0..C(n,2)-1.
/// Pairs are laid out row by row: (0,1), (0,2), ..., (0,n-1), (1,2), ...
class PairIndex {
public:
    PairIndex() = default;
    explicit PairIndex(std::size_t n);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ * (n_ - 1) / 2; }
    VarIndex operator()(NodeId i, NodeId j) const;
    Edge pair(VarIndex idx) const;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_start_;  // index of (i, i+1)
};

/// Triangle row d_first + d_second - d_long >= 0, i.e. the distance across
/// the long side never exceeds the path through the middle vertex.
struct TriangleRow {
    VarIndex long_side;
    VarIndex first;
    VarIndex second;

    friend bool operator==(const TriangleRow&, const TriangleRow&) = default;
};

enum class FormulationKind { complete, sparse };

const char* to_string(FormulationKind kind);

struct LpProblem {
    FormulationKind kind = FormulationKind::sparse;
    double lambda = 1.0;
    bool integral = false;
    std::size_t node_count = 0;
    PairIndex pairs;
    /// Maximized coefficient per pair variable: -B^lambda_ij / m.
    std::vector<double> objective;
    /// sum over all ordered pairs (diagonal included) of B^lambda_ij / 2m.
    double objective_constant = 0.0;
    std::vector<TriangleRow> rows;

    std::size_t variable_count() const noexcept { return objective.size(); }
    std::size_t constraint_count() const noexcept { return rows.size(); }
};

class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultCompleteRowCap = 100'000'000;

std::size_t complete_row_count(std::size_t n);

/// All 3 * C(n,3) triangle inequalities.
LpProblem build_complete(const Graph& g, double lambda = 1.0, bool integral = false,
                         std::size_t row_cap = kDefaultCompleteRowCap);

/// Triangle rows d_ik + d_kj >= d_ij for every pair i<j and every
/// k in N(i) u N(j) - {i, j}, one row per (pair, middle vertex).
LpProblem build_sparse(const Graph& g, double lambda = 1.0, bool integral = false);

/// Modularity-scale objective (constant included) of a distance vector.
double objective_value(const LpProblem& lp, std::span<const double> d);

/// 0/1 distance vector of a partition.
std::vector<double> encode_partition(const PairIndex& pairs, const Partition& p);

/// Writes CPLEX LP text: variables d_i_j, rows t<index>, bounds 0 <= d <= 1,
/// and a "General"/"Binary" section when the problem is integral.
void write_lp_format(std::ostream& out, const LpProblem& lp);

struct LpFileSummary {
    std::size_t variables = 0;
    std::size_t constraints = 0;
    bool binary = false;
};

/// Counts rows and variables of a file produced by write_lp_format.
LpFileSummary summarize_lp_format(std::istream& in);

}  // namespace sparsemod
