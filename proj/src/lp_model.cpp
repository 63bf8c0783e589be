#include "sparsemod/lp_model.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>

namespace sparsemod {

PairIndex::PairIndex(std::size_t n) : n_(n), row_start_(n, 0) {
    std::size_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        row_start_[i] = acc;
        acc += n - i - 1;
    }
}

VarIndex PairIndex::operator()(NodeId i, NodeId j) const {
    if (i > j) std::swap(i, j);
    return static_cast<VarIndex>(row_start_[i] + (j - i - 1));
}

Edge PairIndex::pair(VarIndex idx) const {
    auto it = std::upper_bound(row_start_.begin(), row_start_.end(), static_cast<std::size_t>(idx));
    const auto i = static_cast<NodeId>((it - row_start_.begin()) - 1);
    const auto j = static_cast<NodeId>(i + 1 + (idx - row_start_[i]));
    return {i, j};
}

const char* to_string(FormulationKind kind) {
    return kind == FormulationKind::complete ? "complete" : "sparse";
}

std::size_t complete_row_count(std::size_t n) {
    if (n < 3) return 0;
    return n * (n - 1) * (n - 2) / 2;  // 3 * C(n,3)
}

namespace {

LpProblem base_problem(const Graph& g, double lambda, bool integral, FormulationKind kind) {
    const std::size_t n = g.node_count();
    if (n < 2) throw GraphError("formulation needs at least two nodes");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");

    LpProblem lp;
    lp.kind = kind;
    lp.lambda = lambda;
    lp.integral = integral;
    lp.node_count = n;
    lp.pairs = PairIndex(n);
    lp.objective.resize(lp.pairs.size());
    const double m = static_cast<double>(g.edge_count());
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            lp.objective[lp.pairs(i, j)] = -g.modularity_entry(i, j, lambda) / m;
        }
    }
    // sum_{i,j} B^lambda_ij = 2m - lambda * (2m)^2 / 2m
    lp.objective_constant = 1.0 - lambda;
    return lp;
}

}  // namespace

LpProblem build_complete(const Graph& g, double lambda, bool integral, std::size_t row_cap) {
    const std::size_t n = g.node_count();
    const std::size_t rows = complete_row_count(n);
    if (rows > row_cap) {
        throw CapacityError("complete formulation needs " + std::to_string(rows) + " rows, cap is " +
                            std::to_string(row_cap));
    }
    LpProblem lp = base_problem(g, lambda, integral, FormulationKind::complete);
    lp.rows.reserve(rows);
    const PairIndex& idx = lp.pairs;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            for (NodeId k = j + 1; k < n; ++k) {
                const VarIndex ij = idx(i, j), jk = idx(j, k), ik = idx(i, k);
                lp.rows.push_back({ik, ij, jk});
                lp.rows.push_back({jk, ij, ik});
                lp.rows.push_back({ij, jk, ik});
            }
        }
    }
    return lp;
}

LpProblem build_sparse(const Graph& g, double lambda, bool integral) {
    LpProblem lp = base_problem(g, lambda, integral, FormulationKind::sparse);
    const std::size_t n = g.node_count();
    const PairIndex& idx = lp.pairs;
    std::vector<NodeId> middles;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            const auto ni = g.neighbors(i);
            const auto nj = g.neighbors(j);
            middles.clear();
            std::set_union(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(middles));
            const VarIndex long_side = idx(i, j);
            for (NodeId k : middles) {
                if (k == i || k == j) continue;
                lp.rows.push_back({long_side, idx(i, k), idx(k, j)});
            }
        }
    }
    return lp;
}

double objective_value(const LpProblem& lp, std::span<const double> d) {
    if (d.size() != lp.variable_count()) {
        throw std::invalid_argument("distance vector has " + std::to_string(d.size()) + " entries, expected " +
                                    std::to_string(lp.variable_count()));
    }
    double value = lp.objective_constant;
    for (std::size_t v = 0; v < d.size(); ++v) value += lp.objective[v] * d[v];
    return value;
}

std::vector<double> encode_partition(const PairIndex& pairs, const Partition& p) {
    if (p.size() != pairs.node_count()) throw PartitionMismatch("partition does not match pair index");
    std::vector<double> d(pairs.size());
    for (NodeId i = 0; i < p.size(); ++i) {
        for (NodeId j = i + 1; j < p.size(); ++j) {
            d[pairs(i, j)] = p.same_community(i, j) ? 0.0 : 1.0;
        }
    }
    return d;
}

namespace {

std::string var_name(const PairIndex& pairs, VarIndex v) {
    const auto [i, j] = pairs.pair(v);
    return "d_" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

void write_lp_format(std::ostream& out, const LpProblem& lp) {
    const auto prec = out.precision(17);
    out << "\\ " << to_string(lp.kind) << " metric formulation, n=" << lp.node_count << ", lambda=" << lp.lambda
        << "\n\\ objective constant " << lp.objective_constant << "\n";
    out << "Maximize\n obj:";
    std::size_t on_line = 0;
    for (VarIndex v = 0; v < lp.variable_count(); ++v) {
        const double c = lp.objective[v];
        if (c == 0.0) continue;
        out << (c < 0 ? " - " : " + ") << (c < 0 ? -c : c) << ' ' << var_name(lp.pairs, v);
        if (++on_line % 4 == 0) out << "\n ";
    }
    out << "\nSubject To\n";
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        const auto& row = lp.rows[r];
        out << " t" << r << ": " << var_name(lp.pairs, row.first) << " + " << var_name(lp.pairs, row.second)
            << " - " << var_name(lp.pairs, row.long_side) << " >= 0\n";
    }
    out << "Bounds\n";
    for (VarIndex v = 0; v < lp.variable_count(); ++v) {
        out << " 0 <= " << var_name(lp.pairs, v) << " <= 1\n";
    }
    if (lp.integral) {
        out << "Binary\n";
        for (VarIndex v = 0; v < lp.variable_count(); ++v) out << ' ' << var_name(lp.pairs, v) << '\n';
    }
    out << "End\n";
    out.precision(prec);
}

LpFileSummary summarize_lp_format(std::istream& in) {
    LpFileSummary s;
    std::string line;
    enum class Section { none, objective, constraints, bounds, binary } section = Section::none;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '\\') continue;
        if (line == "Maximize" || line == "Minimize") {
            section = Section::objective;
        } else if (line == "Subject To") {
            section = Section::constraints;
        } else if (line == "Bounds") {
            section = Section::bounds;
        } else if (line == "Binary" || line == "General") {
            section = Section::binary;
            s.binary = true;
        } else if (line == "End") {
            break;
        } else if (section == Section::constraints) {
            if (line.find(':') != std::string::npos) ++s.constraints;
        } else if (section == Section::bounds) {
            if (line.find("<=") != std::string::npos) ++s.variables;
        }
    }
    return s;
}

}  // namespace sparsemod
