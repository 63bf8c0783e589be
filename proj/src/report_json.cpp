#include "sparsemod/report_json.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace sparsemod {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const RoundingConfig& config) {
    return Json{{"thresholds", config.thresholds},
                {"pivot_order", to_string(config.pivot_order)},
                {"seed", config.seed},
                {"refine", config.refine}};
}

Json to_json(const SolverOptions& options) {
    return Json{{"feasibility_tol", options.feasibility_tol},
                {"optimality_tol", options.optimality_tol},
                {"integrality_tol", options.integrality_tol},
                {"iteration_limit", options.iteration_limit},
                {"time_limit_sec", options.time_limit_sec},
                {"ilp_node_limit", options.ilp_node_limit}};
}

Json to_json(const DetectionReport& report) {
    Json scores = Json::array();
    for (const auto& s : report.threshold_scores) {
        scores.push_back({{"threshold", s.threshold}, {"modularity", s.modularity}, {"communities", s.communities}});
    }
    Json config = to_json(report.config);
    config["lambda"] = report.lambda;
    config["solver"] = to_json(report.solver);
    return Json{{"n", report.n},
                {"m", report.m},
                {"lambda", report.lambda},
                {"lp_bound", optional_number(report.lp_bound)},
                {"lp_integral", report.lp_integral},
                {"lp_status", to_string(report.lp_status)},
                {"lp_rows", report.lp_rows},
                {"lp_iterations", report.lp_iterations},
                {"modularity", report.modularity},
                {"gap", optional_number(report.gap)},
                {"method", report.method},
                {"communities", report.partition.community_count()},
                {"membership", report.partition.membership()},
                {"rounding_threshold", optional_number(report.rounding_threshold)},
                {"threshold_scores", scores},
                {"refine", {{"passes", report.refine.passes}, {"moves", report.refine.moves}}},
                {"timings_ms", report.timings_ms},
                {"config", config}};
}

Json to_json(const GraphStats& stats) {
    return Json{{"n", stats.n},
                {"m", stats.m},
                {"degree_sum", stats.degree_sum},
                {"degree_square_sum", stats.degree_square_sum},
                {"max_degree", stats.max_degree},
                {"D", stats.D}};
}

Json to_json(const ModelStats& stats) {
    return Json{{"n_theory", stats.n_theory},
                {"m_theory", stats.m_theory},
                {"max_degree_theory", stats.max_degree_theory}};
}

Json partition_to_json(const Partition& p) { return Json{{"membership", p.membership()}}; }

Partition partition_from_json(const Json& j) {
    const Json& arr = j.is_object() ? j.at("membership") : j;
    if (!arr.is_array()) throw std::invalid_argument("membership must be a JSON array");
    std::vector<std::uint32_t> labels;
    labels.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw std::invalid_argument("membership entries must be non-negative integers");
        }
        labels.push_back(v.get<std::uint32_t>());
    }
    return Partition::from_membership(labels);
}

Partition read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open partition file: " + path);
    try {
        return partition_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

Json lp_solution_to_json(const LpProblem& lp, const LpSolution& solution) {
    Json values = Json::object();
    for (VarIndex v = 0; v < solution.values.size(); ++v) {
        const auto [i, j] = lp.pairs.pair(v);
        values[std::to_string(i) + "," + std::to_string(j)] = solution.values[v];
    }
    return Json{{"formulation", to_string(lp.kind)},
                {"lambda", lp.lambda},
                {"objective", solution.objective},
                {"status", to_string(solution.status)},
                {"integral", solution.integral},
                {"iterations", solution.iterations},
                {"constraints", lp.constraint_count()},
                {"values", values}};
}

}  // namespace sparsemod
