#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sparsemod/modularity.hpp"

using namespace sparsemod;

namespace {

Graph from_text(const std::string& text) { return parse_edge_list(text).graph; }

const char* kTwoTriangles = "0 1\n1 2\n0 2\n3 4\n4 5\n3 5";

Partition of(std::vector<std::uint32_t> labels) { return Partition::from_membership(labels); }

}  // namespace

TEST_CASE("partition canonical form") {
    const Partition p = of({7, 7, 3, 9, 3});
    CHECK(p.membership() == std::vector<CommunityId>{0, 0, 1, 2, 1});
    CHECK(p.community_count() == 3);
    CHECK(p == of({1, 1, 0, 5, 0}));
    CHECK(Partition::single(4).community_count() == 1);
    CHECK(Partition::singletons(4).community_count() == 4);
    const auto comms = p.communities();
    REQUIRE(comms.size() == 3);
    CHECK(comms[1] == std::vector<NodeId>{2, 4});
}

TEST_CASE("modularity examples") {
    const Graph tt = from_text(kTwoTriangles);
    CHECK(modularity(tt, of({0, 0, 0, 1, 1, 1})).q == doctest::Approx(0.5).epsilon(1e-12));

    const Graph k3 = from_text("0 1\n1 2\n0 2");
    CHECK(modularity(k3, Partition::single(3)).q == doctest::Approx(0.0));
    CHECK(modularity(k3, Partition::singletons(3)).q == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(modularity(k3, Partition::single(4)), PartitionMismatch);
}

TEST_CASE("modularity matches the pairwise double sum") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        const Graph g = oracle::random_sparse(10, 0.3, rng);
        std::uniform_int_distribution<std::uint32_t> label(0, 3);
        std::vector<std::uint32_t> lab(g.node_count());
        for (auto& l : lab) l = label(rng);
        const double lambda = rep % 3 == 0 ? 1.0 : 0.5 + 0.25 * (rep % 7);
        CHECK(modularity(g, of(lab), lambda).q == doctest::Approx(oracle::modularity(g, lab, lambda)).epsilon(1e-12));
    }
}

TEST_CASE("trivial partitions") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 50; ++rep) {
        const Graph g = oracle::random_sparse(20, 0.15, rng);
        const double m = static_cast<double>(g.edge_count());
        double sq = 0.0;
        for (NodeId v = 0; v < g.node_count(); ++v) sq += static_cast<double>(g.degree(v) * g.degree(v));
        CHECK(std::abs(modularity(g, Partition::single(g.node_count())).q) <= 1e-12);
        CHECK(std::abs(modularity(g, Partition::singletons(g.node_count())).q + sq / (4 * m * m)) <= 1e-12);
    }
}

TEST_CASE("relabeling communities leaves Q unchanged") {
    std::mt19937_64 rng(13);
    const Graph g = oracle::random_connected(15, 0.2, rng);
    std::vector<std::uint32_t> lab(15);
    for (auto& l : lab) l = static_cast<std::uint32_t>(rng() % 4);
    std::vector<std::uint32_t> shuffled(lab);
    for (auto& l : shuffled) l = 100 - l;
    CHECK(modularity(g, of(lab)).q == modularity(g, of(shuffled)).q);
}

TEST_CASE("bipartition form") {
    const Graph tt = from_text(kTwoTriangles);
    const std::vector<int> split{1, 1, 1, -1, -1, -1};
    CHECK(modularity_bipartition(tt, split).q == doctest::Approx(0.5).epsilon(1e-12));
    const std::vector<int> ones(6, 1);
    CHECK(std::abs(modularity_bipartition(tt, ones).q) < 1e-12);

    const Graph edge = from_text("0 1");
    const std::vector<int> pm{1, -1};
    CHECK(modularity_bipartition(edge, pm).q == doctest::Approx(-0.5).epsilon(1e-12));

    const std::vector<int> bad{1, 0, 1, 1, 1, 1};
    CHECK_THROWS_AS(modularity_bipartition(tt, bad), std::invalid_argument);
}

TEST_CASE("bipartition form agrees with the induced partition") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 1000; ++rep) {
        const Graph g = oracle::random_sparse(12, 0.25, rng);
        std::vector<int> x(g.node_count());
        std::vector<std::uint32_t> lab(g.node_count());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng() % 2 ? 1 : -1;
            lab[i] = x[i] > 0 ? 1 : 0;
        }
        CHECK(std::abs(modularity_bipartition(g, x).q - modularity(g, of(lab)).q) <= 1e-9);
        // Away from lambda = 1 the two differ by sum_ij B_ij / 4m = (1 - lambda) / 2.
        const double lambda = 0.5 + (rep % 4) * 0.5;
        CHECK(std::abs(modularity_bipartition(g, x, lambda).q + (1.0 - lambda) / 2.0 -
                       modularity(g, of(lab), lambda).q) <= 1e-9);
    }
}

TEST_CASE("Q decreases strictly in lambda") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 30; ++rep) {
        const Graph g = oracle::random_connected(14, 0.2, rng);
        std::vector<std::uint32_t> lab(14);
        for (auto& l : lab) l = static_cast<std::uint32_t>(rng() % 3);
        const Partition p = of(lab);
        double prev = modularity(g, p, 0.25).q;
        for (double lambda = 0.5; lambda <= 3.0; lambda += 0.25) {
            const double q = modularity(g, p, lambda).q;
            CHECK(q < prev);
            prev = q;
        }
    }
}

TEST_CASE("random grouping") {
    std::mt19937_64 rng(23);
    const Partition one = Partition::single(5);
    CHECK(random_k_grouping(one, 3, rng) == one);

    const Partition tri = of({0, 0, 0, 1, 1, 1});
    int merged = 0;
    for (int t = 0; t < 4000; ++t) {
        const Partition r = random_k_grouping(tri, 2, rng);
        CHECK(r.community_count() <= 2);
        merged += r.community_count() == 1 ? 1 : 0;
    }
    CHECK(merged > 1800);
    CHECK(merged < 2200);

    const Partition many = of({0, 1, 2, 3, 4, 0, 1});
    for (int t = 0; t < 100; ++t) CHECK(random_k_grouping(many, 50, rng).community_count() <= 5);
}

TEST_CASE("expected grouping modularity, exhaustive") {
    const Graph tt = from_text(kTwoTriangles);
    const Partition tri = of({0, 0, 0, 1, 1, 1});
    const auto e = expected_grouping_exhaustive(tt, tri, 2);
    CHECK(e.mean == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(e.samples == 4);
    CHECK(std::abs(expected_grouping_exhaustive(tt, tri, 1).mean) < 1e-12);

    const Partition singles = Partition::singletons(30);
    std::mt19937_64 rng(1);
    const Graph big = oracle::random_connected(30, 0.1, rng);
    CHECK_THROWS_AS(expected_grouping_exhaustive(big, singles, 3), GroupingBlowup);
}

TEST_CASE("expected grouping equals (1 - 1/k) Q for every partition of small graphs") {
    std::mt19937_64 rng(29);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            const Graph g = oracle::random_connected(n, 0.4, rng);
            oracle::for_each_set_partition(n, [&](const std::vector<std::uint32_t>& lab) {
                const Partition p = of(lab);
                const double q = modularity(g, p).q;
                for (std::size_t k : {2, 3}) {
                    const double mean = expected_grouping_exhaustive(g, p, k).mean;
                    CHECK(std::abs(mean - (1.0 - 1.0 / k) * q) <= 1e-9);
                }
            });
        }
    }
}

TEST_CASE("Monte-Carlo grouping is deterministic across thread counts") {
    const Graph tt = from_text(kTwoTriangles);
    const Partition tri = of({0, 0, 0, 1, 1, 1});
    const auto a = expected_grouping_monte_carlo(tt, tri, 2, 20000, 42, 1.0, 1);
    const auto b = expected_grouping_monte_carlo(tt, tri, 2, 20000, 42, 1.0, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(std::abs(a.mean - 0.25) <= 3 * a.std_error);
}
