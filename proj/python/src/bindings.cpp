#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sparsemod/heuristics.hpp"
#include "sparsemod/lp_model.hpp"
#include "sparsemod/lp_solver.hpp"
#include "sparsemod/powerlaw.hpp"
#include "sparsemod/report_json.hpp"
#include "sparsemod/rounding.hpp"

namespace py = pybind11;
using namespace sparsemod;

namespace {

Partition to_partition(const Graph& g, const std::vector<std::uint32_t>& membership) {
    if (membership.size() != g.node_count()) throw std::invalid_argument("membership length does not match node count");
    return Partition::from_membership(membership);
}

// Structured results cross the boundary as JSON text; the Python side parses it.
std::string detect_json(const Graph& g, double lambda, bool refine, const std::string& pivot_order,
                        std::uint64_t seed, double time_limit_sec) {
    RoundingConfig cfg;
    cfg.refine = refine;
    cfg.pivot_order = pivot_order_from_string(pivot_order);
    cfg.seed = seed;
    SolverOptions opts;
    opts.time_limit_sec = time_limit_sec;
    return to_json(detect(g, lambda, cfg, opts)).dump();
}

std::string lp_json(const Graph& g, double lambda, const std::string& formulation) {
    LpProblem lp;
    if (formulation == "sparse") {
        lp = build_sparse(g, lambda);
    } else if (formulation == "complete") {
        lp = build_complete(g, lambda);
    } else {
        throw std::invalid_argument("formulation must be 'sparse' or 'complete'");
    }
    return lp_solution_to_json(lp, solve_lp(lp)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Modularity maximization by sparse LP relaxation";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<Edge>& edges) { return Graph(n, edges); }),
             py::arg("node_count"), py::arg("edges"))
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("labels", &Graph::labels)
        .def("degree", &Graph::degree)
        .def("edges", &Graph::edges)
        .def("has_edge", &Graph::has_edge)
        .def("__repr__", [](const Graph& g) {
            std::ostringstream s;
            s << "Graph(n=" << g.node_count() << ", m=" << g.edge_count() << ")";
            return s.str();
        });

    m.def("parse_edge_list", [](const std::string& text, bool one_indexed) {
        return parse_edge_list(text, ParseOptions{one_indexed, '#'}).graph;
    }, py::arg("text"), py::arg("one_indexed") = false);
    m.def("read_edge_list", [](const std::string& path, bool one_indexed) {
        return read_edge_list_file(path, ParseOptions{one_indexed, '#'}).graph;
    }, py::arg("path"), py::arg("one_indexed") = false);

    m.def("modularity", [](const Graph& g, const std::vector<std::uint32_t>& membership, double lambda) {
        return modularity(g, to_partition(g, membership), lambda).q;
    }, py::arg("graph"), py::arg("membership"), py::arg("lam") = 1.0);

    m.def("detect_json", &detect_json, py::arg("graph"), py::arg("lam") = 1.0, py::arg("refine") = true,
          py::arg("pivot_order") = "by_node_id", py::arg("seed") = 0, py::arg("time_limit_sec") = 3600.0);
    m.def("solve_lp_json", &lp_json, py::arg("graph"), py::arg("lam") = 1.0, py::arg("formulation") = "sparse");

    m.def("constraint_counts", [](const Graph& g) {
        return std::make_pair(complete_row_count(g.node_count()), build_sparse(g).constraint_count());
    });

    m.def("following", [](const Graph& g, std::size_t d0) {
        const auto r = following(g, d0);
        return std::make_pair(r.partition.membership(), r.followee_of);
    }, py::arg("graph"), py::arg("d0") = 1);
    m.def("following_lower_bound", &following_lower_bound, py::arg("beta"));

    m.def("generate_power_law", [](double scale, double beta, std::uint64_t seed) {
        const auto spec = PowerLawSpec::from_scale(scale, beta, seed);
        return realize_graph(degree_sequence(spec), spec).graph;
    }, py::arg("scale"), py::arg("beta") = 2.5, py::arg("seed") = 0);
}
