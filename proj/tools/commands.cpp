#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "sparsemod/graph.hpp"
#include "sparsemod/heuristics.hpp"
#include "sparsemod/lp_model.hpp"
#include "sparsemod/modularity.hpp"
#include "sparsemod/powerlaw.hpp"
#include "sparsemod/report_json.hpp"
#include "sparsemod/rounding.hpp"

namespace sparsemod::cli {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Globals {
    std::uint64_t seed = 0;
    double lambda = 1.0;
    std::string output;
    std::string format = "json";
    double time_limit_sec = 3600.0;
    double lp_tol = 1e-7;
    std::size_t ilp_node_limit = 200'000;
    bool one_indexed = false;

    SolverOptions solver() const {
        SolverOptions s;
        s.feasibility_tol = lp_tol;
        s.time_limit_sec = time_limit_sec;
        s.ilp_node_limit = ilp_node_limit;
        return s;
    }

    Json json() const {
        return Json{{"seed", seed},
                    {"lambda", lambda},
                    {"format", format},
                    {"time_limit_sec", time_limit_sec},
                    {"lp_tol", lp_tol},
                    {"ilp_node_limit", ilp_node_limit},
                    {"one_indexed", one_indexed}};
    }
};

ParseResult load_graph(const std::string& path, bool one_indexed) {
    ParseOptions opts;
    opts.one_indexed = one_indexed;
    return read_edge_list_file(path, opts);
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
    if (g.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(g.output);
    if (!file) throw std::runtime_error("cannot write " + g.output);
    file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string membership_tsv(const Graph& g, const Partition& p) {
    std::ostringstream os;
    os << "node\tcommunity\n";
    const auto& labels = g.labels();
    for (NodeId v = 0; v < p.size(); ++v) {
        os << (v < labels.size() ? labels[v] : std::to_string(v)) << '\t' << p[v] << '\n';
    }
    return os.str();
}

void attach_labels(Json& j, const Graph& g) {
    if (!g.labels().empty()) j["labels"] = g.labels();
}

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

}  // namespace

std::vector<ManifestEntry> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open manifest " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    const Json& list = j.is_object() ? j.value("datasets", Json::array()) : j;
    if (!list.is_array()) throw std::invalid_argument("manifest needs a \"datasets\" array");
    const fs::path base = fs::path(path).parent_path();
    std::vector<ManifestEntry> entries;
    for (const auto& item : list) {
        ManifestEntry e;
        try {
            e.name = item.at("name").get<std::string>();
            e.path = (base / item.at("file").get<std::string>()).string();
            e.one_indexed = item.value("one_indexed", true);
            e.expected_modularity = item.at("expected_modularity").get<double>();
            e.tolerance = item.at("tolerance").get<double>();
            if (item.contains("expected_complete_constraints")) {
                e.expected_complete_constraints = item["expected_complete_constraints"].get<std::size_t>();
            }
            e.source = item.value("source", "");
            e.gating = item.value("gating", true);
        } catch (const Json::exception& ex) {
            throw std::invalid_argument("bad manifest entry: " + std::string(ex.what()));
        }
        if (!(e.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive for " + e.name);
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<BenchRow> run_bench(const std::vector<ManifestEntry>& entries, double lambda,
                                const SolverOptions& solver, std::uint64_t seed, std::size_t threads) {
    std::vector<BenchRow> rows(entries.size());
    auto run_one = [&](std::size_t idx) {
        BenchRow& row = rows[idx];
        row.entry = entries[idx];
        const auto start = Clock::now();
        try {
            if (!fs::exists(row.entry.path)) throw std::runtime_error("missing dataset file " + row.entry.path);
            const Graph g = load_graph(row.entry.path, row.entry.one_indexed).graph;
            row.n = g.node_count();
            row.m = g.edge_count();
            row.complete_constraints = complete_row_count(row.n);
            RoundingConfig cfg;
            cfg.seed = seed;
            const DetectionReport report = detect(g, lambda, cfg, solver);
            row.sparse_constraints = report.lp_rows;
            row.lp_bound = report.lp_bound;
            row.modularity = report.modularity;
            row.gap = report.gap;
            bool ok = std::abs(report.modularity - row.entry.expected_modularity) <= row.entry.tolerance;
            if (row.entry.expected_complete_constraints) {
                ok = ok && *row.entry.expected_complete_constraints == row.complete_constraints;
            }
            ok = ok && report.lp_bound.has_value();
            row.status = ok ? "pass" : "fail";
        } catch (const std::exception& e) {
            row.status = "error";
            row.error = e.what();
        }
        if (!row.entry.gating && row.status != "pass") row.status = "info";
        row.wall_ms = ms_since(start);
    };

    threads = std::max<std::size_t>(1, std::min(threads, entries.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < entries.size(); i = next++) run_one(i);
        });
    }
    for (auto& th : pool) th.join();
    return rows;
}

namespace {

int cmd_detect(const Globals& gl, const std::string& input, const std::string& pivot, bool no_refine,
               const std::string& export_lp, const std::string& dump_solution, std::ostream& out) {
    const ParseResult parsed = load_graph(input, gl.one_indexed);
    const Graph& g = parsed.graph;
    RoundingConfig cfg;
    cfg.seed = gl.seed;
    cfg.pivot_order = pivot_order_from_string(pivot);
    cfg.refine = !no_refine;

    if (!export_lp.empty()) {
        std::ofstream f(export_lp);
        if (!f) throw std::runtime_error("cannot write " + export_lp);
        write_lp_format(f, build_sparse(g, gl.lambda, false));
    }

    LpSolution raw;
    const DetectionReport report = detect(g, gl.lambda, cfg, gl.solver(), nullptr, &raw);
    if (!dump_solution.empty()) {
        std::ofstream f(dump_solution);
        if (!f) throw std::runtime_error("cannot write " + dump_solution);
        f << dump(lp_solution_to_json(build_sparse(g, gl.lambda, false), raw));
    }

    if (gl.format == "tsv") {
        emit(gl, out, membership_tsv(g, report.partition));
    } else {
        Json j = to_json(report);
        j["config"]["cli"] = gl.json();
        j["config"]["input"] = input;
        attach_labels(j, g);
        emit(gl, out, dump(j));
    }
    return report.fallback() ? kLimitFallback : kOk;
}

int cmd_exact(const Globals& gl, const std::string& input, const std::string& formulation, std::ostream& out) {
    const Graph g = load_graph(input, gl.one_indexed).graph;
    const auto start = Clock::now();
    const LpProblem lp = formulation == "complete" ? build_complete(g, gl.lambda, true) : build_sparse(g, gl.lambda, true);
    const double build_ms = ms_since(start);
    const auto solve_start = Clock::now();
    const Partition seed = kl_refine(g, Partition::singletons(g.node_count()), gl.lambda);
    const IlpSolution ilp = solve_ilp(lp, gl.solver(), seed);
    const double solve_ms = ms_since(solve_start);

    if (gl.format == "tsv") {
        emit(gl, out, membership_tsv(g, ilp.partition));
    } else {
        Json j{{"n", g.node_count()},
               {"m", g.edge_count()},
               {"lambda", gl.lambda},
               {"formulation", to_string(lp.kind)},
               {"constraints", lp.constraint_count()},
               {"modularity", ilp.objective},
               {"bound", ilp.bound},
               {"gap", ilp.bound - ilp.objective},
               {"proven_optimal", ilp.proven_optimal},
               {"nodes_explored", ilp.nodes_explored},
               {"lp_iterations", ilp.lp_iterations},
               {"communities", ilp.partition.community_count()},
               {"membership", ilp.partition.membership()},
               {"timings_ms", {{"build", build_ms}, {"solve", solve_ms}}},
               {"config", {{"cli", gl.json()}, {"input", input}, {"solver", to_json(gl.solver())}}}};
        attach_labels(j, g);
        emit(gl, out, dump(j));
    }
    return ilp.proven_optimal ? kOk : kLimitFallback;
}

int cmd_follow(const Globals& gl, const std::string& input, std::size_t d0, std::ostream& out) {
    const Graph g = load_graph(input, gl.one_indexed).graph;
    const auto start = Clock::now();
    const FollowingResult fr = following(g, d0);
    const double run_ms = ms_since(start);
    const double q = modularity(g, fr.partition, gl.lambda).q;
    if (gl.format == "tsv") {
        emit(gl, out, membership_tsv(g, fr.partition));
        return kOk;
    }
    Json j{{"n", g.node_count()},
           {"m", g.edge_count()},
           {"lambda", gl.lambda},
           {"modularity", q},
           {"method", "following"},
           {"d0", d0},
           {"communities", fr.partition.community_count()},
           {"membership", fr.partition.membership()},
           {"followee_of", fr.followee_of},
           {"leaf_bound_estimate", leaf_bound_estimate(g)},
           {"timings_ms", {{"following", run_ms}}},
           {"config", {{"cli", gl.json()}, {"input", input}, {"d0", d0}}}};
    attach_labels(j, g);
    emit(gl, out, dump(j));
    return kOk;
}

int cmd_stats(const Globals& gl, const std::string& input, std::ostream& out) {
    const ParseResult parsed = load_graph(input, gl.one_indexed);
    const Graph& g = parsed.graph;
    const GraphStats st = graph_stats(g);
    const std::size_t n = g.node_count();
    Json j = to_json(st);
    j["duplicate_edges"] = parsed.duplicate_edges;
    j["dropped_isolated"] = parsed.dropped_isolated;
    j["q_single_community"] = modularity(g, Partition::single(n), gl.lambda).q;
    j["q_singletons"] = modularity(g, Partition::singletons(n), gl.lambda).q;
    j["complete_constraints"] = complete_row_count(n);
    j["sparse_constraints"] = build_sparse(g, gl.lambda).constraint_count();
    j["sparse_constraint_bound"] = (n - 1) * 2 * g.edge_count();
    j["config"] = {{"cli", gl.json()}, {"input", input}};
    if (gl.format == "tsv") {
        std::ostringstream os;
        for (const auto& [k, v] : j.items()) {
            if (!v.is_object()) os << k << '\t' << v.dump() << '\n';
        }
        emit(gl, out, os.str());
    } else {
        emit(gl, out, dump(j));
    }
    return kOk;
}

int cmd_lp_compare(const Globals& gl, const std::string& input, std::size_t capacity, double tol,
                   const std::string& export_lp, std::ostream& out) {
    const Graph g = load_graph(input, gl.one_indexed).graph;
    const std::size_t n = g.node_count();
    const SolverOptions opts = gl.solver();

    auto phase = Clock::now();
    const LpProblem sparse = build_sparse(g, gl.lambda);
    const LpSolution ss = solve_lp(sparse, opts);
    const double sparse_ms = ms_since(phase);
    if (!export_lp.empty()) {
        std::ofstream f(export_lp);
        if (!f) throw std::runtime_error("cannot write " + export_lp);
        write_lp_format(f, sparse);
    }

    Json j{{"n", n},
           {"m", g.edge_count()},
           {"lambda", gl.lambda},
           {"complete_constraints", complete_row_count(n)},
           {"sparse_constraints", sparse.constraint_count()},
           {"sparse_constraint_bound", (n - 1) * 2 * g.edge_count()},
           {"sparse_obj", ss.objective},
           {"sparse_status", to_string(ss.status)},
           {"tolerance", tol}};
    Json timings{{"sparse", sparse_ms}};
    bool limited = ss.status != LpStatus::optimal;
    if (complete_row_count(n) > capacity) {
        j["complete_obj"] = nullptr;
        j["complete_skipped"] = true;
        j["equal_within_tol"] = nullptr;
    } else {
        phase = Clock::now();
        const LpProblem complete = build_complete(g, gl.lambda, false, capacity);
        const LpSolution cs = solve_lp(complete, opts);
        timings["complete"] = ms_since(phase);
        limited = limited || cs.status != LpStatus::optimal;
        j["complete_obj"] = cs.objective;
        j["complete_status"] = to_string(cs.status);
        j["complete_skipped"] = false;
        j["difference"] = std::abs(cs.objective - ss.objective);
        j["equal_within_tol"] = std::abs(cs.objective - ss.objective) <= tol;
    }
    j["timings_ms"] = timings;
    j["config"] = {{"cli", gl.json()}, {"input", input}, {"capacity", capacity}};
    if (gl.format == "tsv") {
        std::ostringstream os;
        os << "complete_constraints\tsparse_constraints\tcomplete_obj\tsparse_obj\tequal_within_tol\n"
           << j["complete_constraints"] << '\t' << j["sparse_constraints"] << '\t' << j["complete_obj"] << '\t'
           << j["sparse_obj"] << '\t' << j["equal_within_tol"] << '\n';
        emit(gl, out, os.str());
    } else {
        emit(gl, out, dump(j));
    }
    return limited ? kLimitFallback : kOk;
}

int cmd_generate(const Globals& gl, double e_alpha, double beta, const std::string& mode, std::size_t swap_rounds,
                 const std::string& out_path, std::ostream& out) {
    PowerLawSpec spec = PowerLawSpec::from_scale(e_alpha, beta, gl.seed);
    spec.swap_rounds = swap_rounds;
    if (mode == "hh") {
        spec.realization = Realization::havel_hakimi_shuffled;
    } else if (mode == "config") {
        spec.realization = Realization::configuration_erased;
    } else {
        throw CLI::ValidationError("--mode", "expected hh or config");
    }
    const DegreeSequence seq = degree_sequence(spec);
    const RealizedGraph realized = realize_graph(seq, spec);
    {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << "# power-law graph, e^alpha=" << e_alpha << " beta=" << beta << " seed=" << gl.seed << " mode=" << mode
          << " (0-based ids)\n";
        write_edge_list(f, realized.graph);
    }
    std::size_t target_sum = 0;
    for (auto d : seq.degrees) target_sum += d;
    Json side{{"spec",
               {{"alpha", spec.alpha},
                {"e_alpha", e_alpha},
                {"beta", beta},
                {"seed", gl.seed},
                {"mode", mode},
                {"swap_rounds", swap_rounds}}},
              {"theory", to_json(theoretical_counts(spec.alpha, beta))},
              {"sequence",
               {{"n", seq.degrees.size()},
                {"m", target_sum / 2},
                {"max_degree", seq.max_degree},
                {"parity_fixed", seq.parity_fixed}}},
              {"realized", to_json(graph_stats(realized.graph))},
              {"swaps_attempted", realized.swaps_attempted},
              {"swaps_accepted", realized.swaps_accepted},
              {"degree_deficit", realized.degree_deficit},
              {"dropped_isolated", realized.dropped_isolated},
              {"edges_file", out_path}};
    std::ofstream(out_path + ".json") << dump(side);
    emit(gl, out, dump(side));
    return kOk;
}

int cmd_bench(const Globals& gl, const std::string& manifest, std::size_t threads, const std::string& json_out,
              std::ostream& out, std::ostream& err) {
    const auto entries = load_manifest(manifest);
    if (entries.empty()) {
        err << "bench: manifest has no datasets\n";
        return kUsage;
    }
    const auto rows = run_bench(entries, gl.lambda, gl.solver(), gl.seed, threads);

    Json jrows = Json::array();
    std::ostringstream tsv;
    tsv << "name\tn\tm\tlp_bound\tmodularity\tgap\texpected\tstatus\twall_ms\n";
    bool all_pass = true;
    for (const auto& r : rows) {
        if (r.status == "fail" || r.status == "error") all_pass = false;
        tsv << r.entry.name << '\t' << r.n << '\t' << r.m << '\t' << fmt(r.lp_bound) << '\t' << fmt(r.modularity)
            << '\t' << fmt(r.gap) << '\t' << fmt(r.entry.expected_modularity, 3) << '\t' << r.status << '\t'
            << fmt(r.wall_ms, 1) << '\n';
        Json jr{{"name", r.entry.name},
                {"n", r.n},
                {"m", r.m},
                {"lp_bound", r.lp_bound ? Json(*r.lp_bound) : Json(nullptr)},
                {"modularity", r.modularity},
                {"gap", r.gap ? Json(*r.gap) : Json(nullptr)},
                {"expected", r.entry.expected_modularity},
                {"tolerance", r.entry.tolerance},
                {"status", r.status},
                {"wall_ms", r.wall_ms},
                {"complete_constraints", r.complete_constraints},
                {"sparse_constraints", r.sparse_constraints},
                {"source", r.entry.source},
                {"gating", r.entry.gating}};
        if (!r.error.empty()) jr["error"] = r.error;
        jrows.push_back(std::move(jr));
    }
    Json summary{{"rows", jrows}, {"all_pass", all_pass}, {"config", {{"cli", gl.json()}, {"manifest", manifest}}}};
    if (!json_out.empty()) std::ofstream(json_out) << dump(summary);
    emit(gl, out, gl.format == "json" ? dump(summary) : tsv.str());
    return all_pass ? kOk : kCheckFailed;
}

int cmd_lemma_check(const Globals& gl, const std::string& input, const std::string& partition_file, std::size_t k,
                    std::size_t trials, const std::string& mode, std::size_t threads, std::ostream& out) {
    const Graph g = load_graph(input, gl.one_indexed).graph;
    Partition p;
    std::string partition_source = partition_file;
    if (partition_file.empty()) {
        RoundingConfig cfg;
        cfg.seed = gl.seed;
        p = detect(g, gl.lambda, cfg, gl.solver()).partition;
        partition_source = "detect";
    } else {
        p = read_partition_file(partition_file);
    }
    if (p.size() != g.node_count()) throw std::invalid_argument("partition size does not match the graph");

    const double q = modularity(g, p, gl.lambda).q;
    const double target = (1.0 - 1.0 / static_cast<double>(k)) * q;
    GroupingEstimate est;
    std::string used = mode == "monte-carlo" ? "monte-carlo" : "exhaustive";
    if (used == "exhaustive") {
        try {
            est = expected_grouping_exhaustive(g, p, k, gl.lambda);
        } catch (const GroupingBlowup&) {
            if (mode == "exhaustive") throw;
            used = "monte-carlo";
        }
    }
    if (used == "monte-carlo") est = expected_grouping_monte_carlo(g, p, k, trials, gl.seed, gl.lambda, threads);

    const double tolerance = used == "exhaustive" ? 1e-9 : std::max(3.0 * est.std_error, 1e-12);
    const bool pass = std::abs(est.mean - target) <= tolerance;
    Json j{{"n", g.node_count()},
           {"m", g.edge_count()},
           {"lambda", gl.lambda},
           {"k", k},
           {"q_partition", q},
           {"target", target},
           {"mean", est.mean},
           {"std_error", est.std_error},
           {"samples", est.samples},
           {"mode", used},
           {"tolerance", tolerance},
           {"pass", pass},
           {"config", {{"cli", gl.json()}, {"input", input}, {"partition", partition_source}, {"trials", trials}}}};
    emit(gl, out, dump(j));
    return pass ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Modularity maximization by sparse LP relaxation"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_option("--seed", gl.seed, "Random seed");
    app.add_option("--lambda", gl.lambda, "Resolution parameter")->check(CLI::PositiveNumber);
    app.add_option("--output", gl.output, "Write the result here instead of stdout");
    app.add_option("--format", gl.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--time-limit-sec", gl.time_limit_sec, "LP/ILP time limit")->check(CLI::PositiveNumber);
    app.add_option("--lp-tol", gl.lp_tol, "LP feasibility tolerance")->check(CLI::PositiveNumber);
    app.add_option("--ilp-node-limit", gl.ilp_node_limit, "Branch-and-bound node limit");
    app.add_flag("--one-indexed", gl.one_indexed, "Read node tokens as 1-based integer ids");

    std::string input;
    auto* detect_cmd = app.add_subcommand("detect", "LP relaxation, rounding and refinement");
    std::string pivot = "by_node_id", export_lp, dump_solution;
    bool no_refine = false;
    detect_cmd->add_option("--input", input, "Edge list")->required()->check(CLI::ExistingFile);
    detect_cmd->add_option("--pivot-order", pivot, "by_node_id | by_degree_desc | random")
        ->check(CLI::IsMember({"by_node_id", "by_degree_desc", "random"}));
    detect_cmd->add_flag("--no-refine", no_refine, "Skip local refinement");
    detect_cmd->add_option("--export-lp", export_lp, "Write the sparse LP in CPLEX LP format");
    detect_cmd->add_option("--dump-lp-solution", dump_solution, "Write the LP solution as JSON");

    auto* exact_cmd = app.add_subcommand("exact", "Exact ILP by branch and bound");
    std::string formulation = "sparse";
    exact_cmd->add_option("--input", input, "Edge list")->required()->check(CLI::ExistingFile);
    exact_cmd->add_option("--formulation", formulation)->check(CLI::IsMember({"sparse", "complete"}));

    auto* follow_cmd = app.add_subcommand("follow", "Following heuristic");
    std::size_t d0 = 1;
    follow_cmd->add_option("--input", input, "Edge list")->required()->check(CLI::ExistingFile);
    follow_cmd->add_option("--d0", d0, "Degree threshold")->check(CLI::PositiveNumber);

    auto* stats_cmd = app.add_subcommand("stats", "Graph statistics");
    stats_cmd->add_option("--input", input, "Edge list")->required()->check(CLI::ExistingFile);

    auto* compare_cmd = app.add_subcommand("lp-compare", "Sparse vs complete formulation");
    std::size_t capacity = 5'000'000;
    double compare_tol = 1e-6;
    compare_cmd->add_option("--input", input, "Edge list")->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--capacity", capacity, "Skip the complete LP above this many rows");
    compare_cmd->add_option("--tol", compare_tol, "Equality tolerance")->check(CLI::PositiveNumber);
    compare_cmd->add_option("--export-lp", export_lp, "Write the sparse LP in CPLEX LP format");

    auto* gen_cmd = app.add_subcommand("generate", "Power-law random graph");
    double e_alpha = 0.0, beta = 0.0;
    std::string mode = "hh", gen_out;
    std::size_t swap_rounds = 10;
    gen_cmd->add_option("--alpha-exp", e_alpha, "e^alpha")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--beta", beta, "Exponent")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--mode", mode)->check(CLI::IsMember({"hh", "config"}));
    gen_cmd->add_option("--swap-rounds", swap_rounds, "Edge swaps per edge (hh mode)");
    gen_cmd->add_option("--out", gen_out, "Edge list path; sidecar JSON goes to <out>.json")->required();

    auto* bench_cmd = app.add_subcommand("bench", "Run a dataset manifest");
    std::string manifest, bench_json;
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    bench_cmd->add_option("--manifest", manifest, "Manifest JSON")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--threads", threads, "Rows run concurrently")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--json", bench_json, "Also write the JSON table here");

    auto* lemma_cmd = app.add_subcommand("lemma-check", "Expected modularity of random k-groupings");
    std::string partition_file, lemma_mode = "auto";
    std::size_t k = 2, trials = 100'000;
    lemma_cmd->add_option("--input", input, "Edge list")->required()->check(CLI::ExistingFile);
    lemma_cmd->add_option("--partition", partition_file, "Partition JSON (default: detect)");
    lemma_cmd->add_option("--k", k, "Number of groups")->check(CLI::PositiveNumber);
    lemma_cmd->add_option("--trials", trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    lemma_cmd->add_option("--mode", lemma_mode)->check(CLI::IsMember({"auto", "exhaustive", "monte-carlo"}));
    lemma_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (detect_cmd->parsed()) return cmd_detect(gl, input, pivot, no_refine, export_lp, dump_solution, out);
        if (exact_cmd->parsed()) return cmd_exact(gl, input, formulation, out);
        if (follow_cmd->parsed()) return cmd_follow(gl, input, d0, out);
        if (stats_cmd->parsed()) return cmd_stats(gl, input, out);
        if (compare_cmd->parsed()) return cmd_lp_compare(gl, input, capacity, compare_tol, export_lp, out);
        if (gen_cmd->parsed()) return cmd_generate(gl, e_alpha, beta, mode, swap_rounds, gen_out, out);
        if (bench_cmd->parsed()) return cmd_bench(gl, manifest, threads, bench_json, out, err);
        if (lemma_cmd->parsed()) {
            return cmd_lemma_check(gl, input, partition_file, k, trials, lemma_mode, threads, out);
        }
    } catch (const CLI::ValidationError& e) {
        err << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace sparsemod::cli
