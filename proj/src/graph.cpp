#include "sparsemod/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace sparsemod {

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph::Graph(std::size_t node_count, std::span<const Edge> edges) : adjacency_(node_count) {
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count) {
            throw GraphError("edge endpoint out of range");
        }
        if (u == v) {
            throw GraphError("self-loop on node " + std::to_string(u));
        }
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    std::size_t half_edges = 0;
    std::size_t removed = 0;
    for (NodeId v = 0; v < node_count; ++v) {
        auto& adj = adjacency_[v];
        std::sort(adj.begin(), adj.end());
        auto last = std::unique(adj.begin(), adj.end());
        removed += static_cast<std::size_t>(adj.end() - last);
        adj.erase(last, adj.end());
        if (adj.empty()) {
            throw GraphError("isolated node " + std::to_string(v));
        }
        half_edges += adj.size();
    }
    edge_count_ = half_edges / 2;
    collapsed_duplicates_ = removed / 2;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

void Graph::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != node_count()) {
        throw GraphError("label count does not match node count");
    }
    labels_ = std::move(labels);
}

double Graph::modularity_entry(NodeId i, NodeId j, double lambda) const {
    const double a = (i != j && has_edge(i, j)) ? 1.0 : 0.0;
    return a - lambda * static_cast<double>(degree(i)) * static_cast<double>(degree(j)) / two_m();
}

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.n = g.node_count();
    s.m = g.edge_count();
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const std::size_t d = g.degree(v);
        s.degree_sum += d;
        s.degree_square_sum += d * d;
        s.max_degree = std::max(s.max_degree, d);
    }
    const double m = static_cast<double>(s.m);
    s.D = s.m == 0 ? 0.0 : static_cast<double>(s.degree_square_sum) / (8.0 * m * m);
    return s;
}

std::pair<Graph, std::size_t> compact_graph(std::size_t node_count, std::span<const Edge> edges) {
    std::vector<char> touched(node_count, 0);
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count) throw GraphError("edge endpoint out of range");
        touched[u] = touched[v] = 1;
    }
    std::vector<NodeId> remap(node_count, 0);
    NodeId next = 0;
    for (std::size_t v = 0; v < node_count; ++v) {
        if (touched[v]) remap[v] = next++;
    }
    std::vector<Edge> renumbered;
    renumbered.reserve(edges.size());
    for (const auto& [u, v] : edges) renumbered.emplace_back(remap[u], remap[v]);
    return {Graph(next, renumbered), node_count - next};
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

}  // namespace

ParseResult parse_edge_list(std::istream& in, const ParseOptions& options) {
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::size_t max_numeric = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == options.comment_prefix) continue;

        const auto tokens = split_tokens(line);
        if (tokens.size() != 2) {
            throw ParseError(line_no, "expected two node tokens, got " + std::to_string(tokens.size()));
        }
        NodeId ends[2];
        for (int t = 0; t < 2; ++t) {
            const std::string& tok = tokens[t];
            if (options.one_indexed) {
                std::size_t value = 0;
                const auto* end = tok.data() + tok.size();
                auto [ptr, ec] = std::from_chars(tok.data(), end, value);
                if (ec != std::errc{} || ptr != end || value == 0) {
                    throw ParseError(line_no, "expected a positive integer id, got '" + tok + "'");
                }
                ends[t] = static_cast<NodeId>(value - 1);
                max_numeric = std::max(max_numeric, value);
            } else {
                auto [it, inserted] = ids.try_emplace(tok, static_cast<NodeId>(labels.size()));
                if (inserted) labels.push_back(tok);
                ends[t] = it->second;
            }
        }
        if (ends[0] == ends[1]) {
            throw ParseError(line_no, "self-loop on '" + tokens[0] + "'");
        }
        edges.emplace_back(ends[0], ends[1]);
    }
    if (edges.empty()) {
        throw GraphError("edge list contains no edges");
    }

    ParseResult result;
    if (options.one_indexed) {
        auto [graph, dropped] = compact_graph(max_numeric, edges);
        std::vector<char> touched(max_numeric, 0);
        for (const auto& [u, v] : edges) touched[u] = touched[v] = 1;
        std::vector<std::string> numeric_labels;
        for (std::size_t v = 0; v < max_numeric; ++v) {
            if (touched[v]) numeric_labels.push_back(std::to_string(v + 1));
        }
        result.graph = std::move(graph);
        result.graph.set_labels(std::move(numeric_labels));
        result.dropped_isolated = dropped;
    } else {
        result.graph = Graph(labels.size(), edges);
        result.graph.set_labels(std::move(labels));
    }
    result.duplicate_edges = result.graph.collapsed_duplicates();
    return result;
}

ParseResult parse_edge_list(const std::string& text, const ParseOptions& options) {
    std::istringstream in(text);
    return parse_edge_list(in, options);
}

ParseResult read_edge_list_file(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open edge list '" + path + "'");
    return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace sparsemod
