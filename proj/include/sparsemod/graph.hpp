#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsemod {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the edge-list reader; carries the 1-based line number.
class ParseError : public GraphError {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/**
 * Simple undirected graph in adjacency-list form.
 *
 * Immutable after construction. Every node has at least one neighbor,
 * adjacency lists are sorted and symmetric, and there are no self-loops
 * or parallel edges.
 */
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list over nodes 0..n-1. Duplicate edges are
    /// collapsed; self-loops and isolated nodes are rejected.
    Graph(std::size_t node_count, std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    double two_m() const noexcept { return 2.0 * static_cast<double>(edge_count_); }

    std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
    std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
    bool has_edge(NodeId u, NodeId v) const;

    /// Edges with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    /// Original token per node when the graph came from a labeled source.
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels);

    /// Number of duplicate edges collapsed during construction.
    std::size_t collapsed_duplicates() const noexcept { return collapsed_duplicates_; }

    /// B^lambda_ij = A_ij - lambda * d_i * d_j / 2m, computed on demand.
    double modularity_entry(NodeId i, NodeId j, double lambda = 1.0) const;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::string> labels_;
    std::size_t edge_count_ = 0;
    std::size_t collapsed_duplicates_ = 0;
};

struct GraphStats {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t degree_sum = 0;
    std::size_t degree_square_sum = 0;
    std::size_t max_degree = 0;
    /// sum_i d_i^2 / (8 m^2)
    double D = 0.0;
};

GraphStats graph_stats(const Graph& g);

struct ParseOptions {
    /// Treat tokens as 1-based integer ids instead of free-form labels.
    bool one_indexed = false;
    char comment_prefix = '#';
};

struct ParseResult {
    Graph graph;
    std::size_t duplicate_edges = 0;
    std::size_t dropped_isolated = 0;
};

ParseResult parse_edge_list(std::istream& in, const ParseOptions& options = {});
ParseResult parse_edge_list(const std::string& text, const ParseOptions& options = {});
ParseResult read_edge_list_file(const std::string& path, const ParseOptions& options = {});

/// Writes "u v" lines with dense 0-based ids.
void write_edge_list(std::ostream& out, const Graph& g);

/// Keeps only nodes with at least one incident edge and renumbers them
/// densely in increasing order. Returns the graph and the number dropped.
std::pair<Graph, std::size_t> compact_graph(std::size_t node_count, std::span<const Edge> edges);

}  // namespace sparsemod
