#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsemod/graph.hpp"

namespace sparsemod {

enum class Realization { havel_hakimi_shuffled, configuration_erased };

const char* to_string(Realization r);

/// P(alpha, beta): floor(e^alpha / x^beta) nodes of degree x for
/// x = 1 .. floor(e^(alpha / beta)).
struct PowerLawSpec {
    double alpha = 0.0;
    double beta = 2.5;
    std::uint64_t seed = 0;
    Realization realization = Realization::havel_hakimi_shuffled;
    std::size_t swap_rounds = 10;

    /// Builds a spec from e^alpha directly.
    static PowerLawSpec from_scale(double e_alpha, double beta, std::uint64_t seed = 0);
    double scale() const;
};

struct DegreeSequence {
    /// Non-decreasing by construction.
    std::vector<std::uint32_t> degrees;
    /// True when one minimum-degree node was bumped by one to make the sum even.
    bool parity_fixed = false;
    std::size_t max_degree = 0;

    std::size_t count_of(std::uint32_t degree) const;
};

DegreeSequence degree_sequence(const PowerLawSpec& spec);

class NotGraphical : public std::invalid_argument {
public:
    NotGraphical(std::size_t index, const std::string& what);
    /// 1-based k of the first violated Erdos-Gallai inequality (0 for odd sum).
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Index k of the first violated Erdos-Gallai inequality, 0 for an odd
/// degree sum, nothing if the sequence is graphical.
std::optional<std::size_t> erdos_gallai_violation(std::span<const std::uint32_t> degrees);

struct RealizedGraph {
    Graph graph;
    std::size_t swaps_attempted = 0;
    std::size_t swaps_accepted = 0;
    /// Target degree sum minus realized degree sum (configuration mode).
    std::size_t degree_deficit = 0;
    std::size_t dropped_isolated = 0;
};

RealizedGraph realize_graph(const DegreeSequence& seq, const PowerLawSpec& spec);

struct ModelStats {
    double n_theory = 0.0;
    double m_theory = 0.0;
    double max_degree_theory = 0.0;
};

/// Closed-form n and m for the three beta regimes of each.
ModelStats theoretical_counts(double alpha, double beta);

}  // namespace sparsemod
