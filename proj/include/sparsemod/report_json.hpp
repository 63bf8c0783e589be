#pragma once

#include <json.hpp>

#include "sparsemod/graph.hpp"
#include "sparsemod/lp_model.hpp"
#include "sparsemod/lp_solver.hpp"
#include "sparsemod/modularity.hpp"
#include "sparsemod/powerlaw.hpp"
#include "sparsemod/rounding.hpp"

namespace sparsemod {

using Json = nlohmann::json;

Json to_json(const RoundingConfig& config);
Json to_json(const SolverOptions& options);
Json to_json(const DetectionReport& report);
Json to_json(const GraphStats& stats);
Json to_json(const ModelStats& stats);

/// {"membership": [...]}
Json partition_to_json(const Partition& p);
/// Accepts {"membership": [...]} or a bare array. Throws std::invalid_argument.
Partition partition_from_json(const Json& j);
Partition read_partition_file(const std::string& path);

/// {"objective", "status", "integral", "iterations", "values": {"i,j": d}}
Json lp_solution_to_json(const LpProblem& lp, const LpSolution& solution);

}  // namespace sparsemod
