#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sparsemod/lp_solver.hpp"

namespace sparsemod::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kLimitFallback = 2, kCheckFailed = 3 };

struct ManifestEntry {
    std::string name;
    std::string path;  // resolved against the manifest directory
    bool one_indexed = true;
    double expected_modularity = 0.0;
    double tolerance = 0.0;
    std::optional<std::size_t> expected_complete_constraints;
    std::string source;
    bool gating = true;
};

/// Throws std::invalid_argument for malformed manifests or tolerances <= 0.
std::vector<ManifestEntry> load_manifest(const std::string& path);

struct BenchRow {
    ManifestEntry entry;
    std::string status;  // pass, fail, error, info
    std::string error;
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<double> lp_bound;
    double modularity = 0.0;
    std::optional<double> gap;
    std::size_t complete_constraints = 0;
    std::size_t sparse_constraints = 0;
    double wall_ms = 0.0;
};

/// Runs every entry (up to `threads` at once); rows keep manifest order.
std::vector<BenchRow> run_bench(const std::vector<ManifestEntry>& entries, double lambda,
                                const SolverOptions& solver, std::uint64_t seed, std::size_t threads);

/// Full command line entry point. Writes results to `out` (or --output)
/// and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sparsemod::cli
