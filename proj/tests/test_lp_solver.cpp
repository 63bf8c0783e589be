#include <doctest.h>

#include <cmath>
#include <functional>
#include <queue>
#include <random>

#include "oracles.hpp"
#include "sparsemod/dual_simplex.hpp"
#include "sparsemod/heuristics.hpp"
#include "sparsemod/lp_solver.hpp"
#include "sparsemod/rounding.hpp"

using namespace sparsemod;

namespace {

Graph from_text(const std::string& text) { return parse_edge_list(text).graph; }

Graph karate() { return read_edge_list_file(SPARSEMOD_DATA_DIR "/karate.txt", ParseOptions{true, '#'}).graph; }

struct DenseLp {
    std::size_t n = 0;
    std::vector<double> c, lo, hi;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
};

// Solves a small square system by Gaussian elimination with partial pivoting.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> r, std::vector<double>& x) {
    const std::size_t n = r.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i) {
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        }
        if (std::abs(m[piv][col]) < 1e-10) return false;
        std::swap(m[piv], m[col]);
        std::swap(r[piv], r[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
            r[i] -= f * r[col];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / m[i][i];
    return true;
}

// Best vertex over every choice of n tight constraints.
double vertex_enumeration(const DenseLp& lp) {
    std::vector<std::vector<double>> rows = lp.a;
    std::vector<double> rhs = lp.b;
    for (std::size_t v = 0; v < lp.n; ++v) {
        std::vector<double> up(lp.n, 0.0), down(lp.n, 0.0);
        up[v] = 1.0;
        down[v] = -1.0;
        rows.push_back(up);
        rhs.push_back(lp.hi[v]);
        rows.push_back(down);
        rhs.push_back(-lp.lo[v]);
    }
    double best = -1e300;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == lp.n) {
            std::vector<std::vector<double>> m;
            std::vector<double> r;
            for (auto i : pick) m.push_back(rows[i]), r.push_back(rhs[i]);
            std::vector<double> x;
            if (!solve_square(m, r, x)) return;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                double act = 0.0;
                for (std::size_t j = 0; j < lp.n; ++j) act += rows[i][j] * x[j];
                if (act > rhs[i] + 1e-9) return;
            }
            double obj = 0.0;
            for (std::size_t j = 0; j < lp.n; ++j) obj += lp.c[j] * x[j];
            best = std::max(best, obj);
            return;
        }
        for (std::size_t i = start; i < rows.size(); ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return best;
}

SparseLp to_sparse(const DenseLp& d) {
    SparseLp lp;
    lp.variable_count = d.n;
    lp.cost = d.c;
    lp.lower = d.lo;
    lp.upper = d.hi;
    for (std::size_t r = 0; r < d.a.size(); ++r) {
        std::vector<std::uint32_t> idx;
        std::vector<double> val;
        for (std::uint32_t j = 0; j < d.n; ++j) {
            if (d.a[r][j] != 0.0) idx.push_back(j), val.push_back(d.a[r][j]);
        }
        lp.add_row(idx, val, d.b[r]);
    }
    return lp;
}

// Connectivity of the subgraph induced by each community.
bool communities_connected(const Graph& g, const Partition& p) {
    for (const auto& members : p.communities()) {
        std::vector<char> seen(g.node_count(), 0);
        std::queue<NodeId> q;
        q.push(members.front());
        seen[members.front()] = 1;
        std::size_t reached = 0;
        while (!q.empty()) {
            const NodeId v = q.front();
            q.pop();
            ++reached;
            for (NodeId u : g.neighbors(v)) {
                if (!seen[u] && p[u] == p[v]) {
                    seen[u] = 1;
                    q.push(u);
                }
            }
        }
        if (reached != members.size()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("dual simplex on a textbook LP") {
    DenseLp d;
    d.n = 2;
    d.c = {1, 1};
    d.lo = {0, 0};
    d.hi = {10, 10};
    d.a = {{1, 2}, {3, 1}};
    d.b = {4, 6};
    const SparseLp lp = to_sparse(d);
    DualSimplex s(lp);
    REQUIRE(s.solve() == SimplexStatus::optimal);
    CHECK(s.objective() == doctest::Approx(2.8).epsilon(1e-12));
    CHECK(s.values()[0] == doctest::Approx(1.6));
    CHECK(s.values()[1] == doctest::Approx(1.2));
    CHECK(s.max_violation() <= 1e-9);
    CHECK(s.min_multiplier() >= -1e-9);
}

TEST_CASE("dual simplex matches vertex enumeration on random small LPs") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), rhs(0.2, 2.0);
    for (int rep = 0; rep < 300; ++rep) {
        DenseLp d;
        d.n = 2 + rep % 3;
        const std::size_t rows = 1 + rep % 6;
        for (std::size_t j = 0; j < d.n; ++j) {
            d.c.push_back(coef(rng));
            d.lo.push_back(rep % 2 ? 0.0 : -1.0 * (rep % 5 == 0));
            d.hi.push_back(1.0 + std::abs(coef(rng)));
        }
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<double> row(d.n);
            for (auto& v : row) v = std::round(coef(rng) * 4) / 4;  // exact ties and zeros on purpose
            d.a.push_back(row);
            d.b.push_back(rhs(rng));
        }
        const SparseLp lp = to_sparse(d);
        DualSimplex s(lp);
        const auto status = s.solve();
        const double want = vertex_enumeration(d);
        if (want < -1e299) {
            CHECK(status == SimplexStatus::infeasible);
            continue;
        }
        REQUIRE(status == SimplexStatus::optimal);
        CHECK(s.objective() == doctest::Approx(want).epsilon(1e-9));
        CHECK(s.max_violation() <= 1e-8);
    }
}

TEST_CASE("bound changes warm-start to the same optimum as a fresh solve") {
    std::mt19937_64 rng(37);
    const Graph g = oracle::random_connected(10, 0.3, rng);
    const LpProblem problem = build_sparse(g);
    const SparseLp lp = to_sparse_lp(problem);
    DualSimplex warm(lp);
    REQUIRE(warm.solve() == SimplexStatus::optimal);
    for (std::size_t v : {0u, 5u, 17u}) {
        warm.set_bounds(v, 1.0, 1.0);
        REQUIRE(warm.solve() == SimplexStatus::optimal);
        SparseLp fixed = lp;
        fixed.lower[v] = fixed.upper[v] = 1.0;
        DualSimplex fresh(fixed);
        REQUIRE(fresh.solve() == SimplexStatus::optimal);
        CHECK(warm.objective() == doctest::Approx(fresh.objective()).epsilon(1e-9));
        warm.set_bounds(v, 0.0, 1.0);
    }
}

TEST_CASE("LP relaxation examples") {
    const Graph k3 = from_text("0 1\n1 2\n0 2");
    const auto s = solve_lp(build_sparse(k3));
    CHECK(s.status == LpStatus::optimal);
    CHECK(std::abs(s.objective) < 1e-9);

    const Graph edge = from_text("0 1");
    const auto e = solve_lp(build_sparse(edge));
    CHECK(std::abs(e.objective) < 1e-9);
    REQUIRE(e.values.size() == 1);
    CHECK(std::abs(e.values[0]) < 1e-9);

    const Graph tt = from_text("0 1\n1 2\n0 2\n3 4\n4 5\n3 5");
    CHECK(solve_lp(build_sparse(tt)).objective == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("karate relaxation is integral at the known optimum") {
    const Graph g = karate();
    const LpProblem lp = build_sparse(g);
    const LpSolution s = solve_lp(lp);
    CHECK(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(0.4197).epsilon(0.0005 / 0.4197));
    CHECK(s.integral);
    const Partition p = decode_partition(lp.pairs, s.values);
    CHECK(p.community_count() == 4);
    CHECK(std::abs(modularity(g, p).q - s.objective) <= 1e-6);
    CHECK(verify_triangle_inequalities(lp.pairs, s.values, 1e-6).empty());
}

TEST_CASE("limits report the status and a valid upper bound") {
    const Graph g = karate();
    SolverOptions opts;
    opts.iteration_limit = 20;
    const LpSolution s = solve_lp(build_sparse(g), opts);
    CHECK(s.status == LpStatus::iteration_limit);
    CHECK(s.objective >= 0.4197 - 1e-6);
}

TEST_CASE("sparse and complete relaxations reach the same optimum") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 15; ++rep) {
        const std::size_t n = 5 + rep;
        const Graph g = rep % 2 ? oracle::random_connected(n, 0.15, rng) : oracle::random_sparse(n, 0.2, rng);
        const double lambda = rep % 3 == 2 ? 1.5 : 1.0;
        const LpProblem sparse = build_sparse(g, lambda);
        const LpSolution a = solve_lp(sparse);
        const LpSolution b = solve_lp(build_complete(g, lambda));
        REQUIRE(a.status == LpStatus::optimal);
        REQUIRE(b.status == LpStatus::optimal);
        CHECK(std::abs(a.objective - b.objective) <= 1e-6);
        CHECK(verify_triangle_inequalities(sparse.pairs, a.values, 1e-6).empty());
    }
}

TEST_CASE("branch and bound matches set-partition enumeration") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 3 + rep % 6;
        const Graph g = oracle::random_sparse(n, 0.35, rng);
        const double want = oracle::exhaustive_max_modularity(g);
        const IlpSolution sparse = solve_ilp(build_sparse(g, 1.0, true));
        const IlpSolution complete = solve_ilp(build_complete(g, 1.0, true));
        CHECK(sparse.proven_optimal);
        CHECK(complete.proven_optimal);
        CHECK(std::abs(sparse.objective - want) <= 1e-9);
        CHECK(std::abs(complete.objective - want) <= 1e-9);
        CHECK(sparse.objective <= sparse.bound + 1e-6);
        CHECK(sparse.bound - sparse.objective <= 1e-6);
        CHECK(std::abs(modularity(g, sparse.partition).q - sparse.objective) <= 1e-12);
        if (g.node_count() == n) {
            // Optimal communities are connected (disconnected inputs excepted).
            CHECK(communities_connected(g, sparse.partition));
        }
    }
}

TEST_CASE("two triangles ILP") {
    const Graph tt = from_text("0 1\n1 2\n0 2\n3 4\n4 5\n3 5");
    const IlpSolution s = solve_ilp(build_sparse(tt, 1.0, true));
    CHECK(s.proven_optimal);
    CHECK(s.objective == doctest::Approx(0.5).epsilon(1e-12));
    const std::vector<std::uint32_t> tri{0, 0, 0, 1, 1, 1};
    CHECK(s.partition == Partition::from_membership(tri));
}

TEST_CASE("heuristics never beat the ILP, which never beats the LP") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 10; ++rep) {
        const Graph g = oracle::random_connected(12, 0.2, rng);
        const double lp = solve_lp(build_sparse(g)).objective;
        const IlpSolution ilp = solve_ilp(build_sparse(g, 1.0, true));
        REQUIRE(ilp.proven_optimal);
        CHECK(ilp.objective <= lp + 1e-6);
        CHECK(modularity(g, following(g, 1).partition).q <= ilp.objective + 1e-9);
        CHECK(modularity(g, kl_refine(g, Partition::singletons(12))).q <= ilp.objective + 1e-9);
        CHECK(communities_connected(g, ilp.partition));
    }
}

TEST_CASE("node limit gives an unproven incumbent") {
    std::mt19937_64 rng(53);
    const Graph g = oracle::random_connected(14, 0.3, rng);
    SolverOptions opts;
    opts.ilp_node_limit = 1;
    const IlpSolution s = solve_ilp(build_sparse(g, 1.0, true), opts);
    if (!s.proven_optimal) CHECK(s.bound >= s.objective);
    CHECK(s.partition.size() == g.node_count());
}

TEST_CASE("decode groups zero-distance classes") {
    const PairIndex idx(4);
    std::vector<double> d(idx.size(), 1.0);
    d[idx(0, 2)] = 0.0;
    d[idx(1, 3)] = 1e-8;
    const Partition p = decode_partition(idx, d);
    const std::vector<std::uint32_t> want{0, 1, 0, 1};
    CHECK(p == Partition::from_membership(want));
}

TEST_CASE("metric completion") {
    const Graph p3 = from_text("0 1\n1 2");
    const PairIndex idx(3);
    std::vector<double> d(3, 0.0);
    d[idx(0, 1)] = 0.3;
    d[idx(1, 2)] = 0.4;
    d[idx(0, 2)] = 0.0;
    auto full = metric_completion(p3, idx, d);
    CHECK(full[idx(0, 2)] == doctest::Approx(0.7));
    CHECK(full[idx(0, 1)] == doctest::Approx(0.3));

    d[idx(0, 1)] = 0.8;
    d[idx(1, 2)] = 0.9;
    full = metric_completion(p3, idx, d);
    CHECK(full[idx(0, 2)] == doctest::Approx(1.0));
}

TEST_CASE("completion of an optimal sparse solution changes nothing") {
    std::mt19937_64 rng(59);
    for (int rep = 0; rep < 10; ++rep) {
        const Graph g = oracle::random_connected(8 + rep, 0.2, rng);
        const LpProblem lp = build_sparse(g);
        const LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::optimal);
        const auto full = metric_completion(g, lp.pairs, s.values);
        for (std::size_t v = 0; v < full.size(); ++v) {
            CHECK(full[v] >= s.values[v] - 1e-6);
            CHECK(std::abs(full[v] - s.values[v]) <= 1e-6);
        }
        for (const auto& [a, b] : g.edges()) CHECK(std::abs(full[lp.pairs(a, b)] - s.values[lp.pairs(a, b)]) <= 1e-9);
        CHECK(std::abs(objective_value(lp, full) - s.objective) <= 1e-6);
    }
}

TEST_CASE("triangle audit") {
    const PairIndex idx(3);
    CHECK(verify_triangle_inequalities(idx, std::vector<double>(3, 0.0), 1e-6).empty());
    CHECK(verify_triangle_inequalities(idx, std::vector<double>(3, 1.0), 1e-6).empty());
    std::vector<double> d(3, 0.0);
    d[idx(0, 1)] = 1.0;
    const auto v = verify_triangle_inequalities(idx, d, 1e-6);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == TriangleViolation::Kind::triangle);
    CHECK(v[0].i == 0);
    CHECK(v[0].j == 1);
    CHECK(v[0].k == 2);
    CHECK(v[0].amount == doctest::Approx(1.0));

    d[idx(0, 1)] = 1.5;
    bool range = false;
    for (const auto& x : verify_triangle_inequalities(idx, d, 1e-6)) range = range || x.kind == TriangleViolation::Kind::range;
    CHECK(range);
}
