#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sparsemod/rounding.hpp"

using namespace sparsemod;

namespace {

Graph from_text(const std::string& text) { return parse_edge_list(text).graph; }

const char* kTwoTriangles = "0 1\n1 2\n0 2\n3 4\n4 5\n3 5";

Graph karate() { return read_edge_list_file(SPARSEMOD_DATA_DIR "/karate.txt", ParseOptions{true, '#'}).graph; }

}  // namespace

TEST_CASE("rounding config validation") {
    RoundingConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.thresholds = {};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.thresholds = {0.5, 0.4};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.thresholds = {0.0, 0.5};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK(pivot_order_from_string("by_degree_desc") == PivotOrder::by_degree_desc);
    CHECK_THROWS_AS(pivot_order_from_string("sideways"), std::invalid_argument);
}

TEST_CASE("rounding an integral vector recovers its partition") {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        const Graph g = oracle::random_connected(12, 0.25, rng);
        std::vector<std::uint32_t> lab(12);
        for (auto& l : lab) l = static_cast<std::uint32_t>(rng() % 4);
        const Partition p = Partition::from_membership(lab);
        const PairIndex idx(12);
        const auto d = encode_partition(idx, p);
        for (auto order : {PivotOrder::by_node_id, PivotOrder::by_degree_desc, PivotOrder::random}) {
            RoundingConfig cfg;
            cfg.pivot_order = order;
            cfg.seed = static_cast<std::uint64_t>(rep);
            CHECK(round_distances(g, idx, d, cfg) == p);
        }
    }
}

TEST_CASE("all-ones distances give singletons") {
    const Graph tt = from_text(kTwoTriangles);
    const PairIndex idx(6);
    const std::vector<double> d(idx.size(), 1.0);
    const auto r = round_distances_detailed(tt, idx, d, RoundingConfig{});
    CHECK(r.partition == Partition::singletons(6));
    CHECK(r.per_threshold.size() == 9);
    for (const auto& s : r.per_threshold) CHECK(s.communities == 6);
    CHECK(r.threshold == doctest::Approx(0.1));  // ties keep the smallest threshold
}

TEST_CASE("ball growth on fractional two triangles") {
    const Graph tt = from_text(kTwoTriangles);
    const PairIndex idx(6);
    std::vector<double> d(idx.size(), 0.9);
    for (NodeId i = 0; i < 6; ++i) {
        for (NodeId j = i + 1; j < 6; ++j) {
            if ((i < 3) == (j < 3)) d[idx(i, j)] = 0.2;
        }
    }
    RoundingConfig cfg;
    cfg.thresholds = {0.5};
    const auto r = round_distances_detailed(tt, idx, d, cfg);
    const std::vector<std::uint32_t> tri{0, 0, 0, 1, 1, 1};
    CHECK(r.partition == Partition::from_membership(tri));
    CHECK(r.modularity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("local refinement") {
    const Graph tt = from_text(kTwoTriangles);
    RefineStats stats;
    const Partition p = kl_refine(tt, Partition::singletons(6), 1.0, &stats);
    CHECK(modularity(tt, p).q == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(stats.passes >= 1);

    const Graph edge = from_text("0 1");
    CHECK(kl_refine(edge, Partition::singletons(2)) == Partition::single(2));
    CHECK(kl_refine(edge, Partition::single(2)) == Partition::single(2));
}

TEST_CASE("refinement never lowers Q and stays within the pass limit") {
    std::mt19937_64 rng(67);
    for (int rep = 0; rep < 40; ++rep) {
        const Graph g = oracle::random_sparse(25, 0.12, rng);
        std::vector<std::uint32_t> lab(g.node_count());
        for (auto& l : lab) l = static_cast<std::uint32_t>(rng() % 5);
        const Partition start = Partition::from_membership(lab);
        const double lambda = rep % 2 ? 1.0 : 0.7;
        RefineStats stats;
        const Partition out = kl_refine(g, start, lambda, &stats);
        CHECK(modularity(g, out, lambda).q >= modularity(g, start, lambda).q - 1e-12);
        CHECK(stats.passes < kRefinePassLimit);
        // A second run from the output finds nothing better.
        CHECK(modularity(g, kl_refine(g, out, lambda), lambda).q <= modularity(g, out, lambda).q + 1e-9);
    }
}

TEST_CASE("detect on small graphs") {
    const Graph k3 = from_text("0 1\n1 2\n0 2");
    const auto r = detect(k3, 1.0, RoundingConfig{}, SolverOptions{});
    CHECK(r.partition == Partition::single(3));
    CHECK(std::abs(r.modularity) < 1e-12);
    REQUIRE(r.gap);
    CHECK(std::abs(*r.gap) < 1e-9);
    CHECK(r.method == "lp-integral");
}

TEST_CASE("detect on karate") {
    const Graph g = karate();
    const auto r = detect(g, 1.0, RoundingConfig{}, SolverOptions{});
    REQUIRE(r.lp_bound);
    CHECK(std::abs(r.modularity - 0.420) <= 0.001);
    CHECK(*r.gap <= 0.001);
    CHECK(*r.gap >= -1e-6);
    CHECK(r.lp_integral);
    CHECK(*r.gap <= 1e-6);

    // Fixed point of refinement.
    CHECK(modularity(g, kl_refine(g, r.partition)).q == doctest::Approx(r.modularity).epsilon(1e-12));

    // Deterministic.
    const auto again = detect(g, 1.0, RoundingConfig{}, SolverOptions{});
    CHECK(again.partition == r.partition);
    CHECK(again.lp_bound == r.lp_bound);
}

TEST_CASE("larger lambda gives at least as many communities on karate") {
    const Graph g = karate();
    const auto base = detect(g, 1.0, RoundingConfig{}, SolverOptions{});
    const auto fine = detect(g, 2.0, RoundingConfig{}, SolverOptions{});
    CHECK(fine.partition.community_count() >= base.partition.community_count());
    REQUIRE(fine.lp_bound);
    CHECK(fine.modularity <= *fine.lp_bound + 1e-6);
}

TEST_CASE("rounded partitions stay under the LP bound") {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 12; ++rep) {
        const Graph g = oracle::random_connected(16, 0.18, rng);
        RoundingConfig cfg;
        cfg.refine = rep % 2 == 0;
        const auto r = detect(g, 1.0, cfg, SolverOptions{});
        REQUIRE(r.lp_bound);
        CHECK(r.modularity <= *r.lp_bound + 1e-6);
        CHECK(*r.gap >= -1e-6);
        if (r.lp_integral) CHECK(*r.gap <= 1e-6);
    }
}

TEST_CASE("fallback without an LP bound") {
    const Graph g = karate();
    SolverOptions opts;
    opts.iteration_limit = 10;
    const auto r = detect(g, 1.0, RoundingConfig{}, opts);
    CHECK(r.fallback());
    CHECK_FALSE(r.gap.has_value());
    CHECK(r.method == "heuristic-fallback");
    CHECK(r.modularity > 0.3);
}
