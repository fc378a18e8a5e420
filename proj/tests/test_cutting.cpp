#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "rrtcut/cutting.hpp"
#include "rrtcut/exact.hpp"
#include "rrtcut/oracle.hpp"
#include "rrtcut/simulate.hpp"
#include "rrtcut/stats.hpp"

using namespace rrtcut;

namespace {

IncreasingTree sample_tree() {
    // 1 -> {2, 3}, 2 -> {4, 5}, 3 -> {6}
    const std::vector<Vertex> p{1, 1, 2, 2, 3};
    return IncreasingTree::from_parents(p);
}

}  // namespace

TEST_CASE("degree-biased cut removes the root-side endpoint's subtree") {
    const IncreasingTree t = sample_tree();
    const CutOutcome c = degree_biased_cut_at(t, {2, 4});
    CHECK(c.removed == std::vector<Vertex>{2, 4, 5});
    CHECK(c.removed_size == 3);
    CHECK(c.remaining_vertices == std::vector<Vertex>{1, 3, 6});
    REQUIRE(c.remaining);
    CHECK(c.remaining->to_csv() == "3,1,2");
    CHECK_FALSE(c.destroyed_instantly());
}

TEST_CASE("an edge at the root destroys the tree at once") {
    const IncreasingTree t = sample_tree();
    const CutOutcome c = degree_biased_cut_at(t, {1, 3});
    CHECK(c.destroyed_instantly());
    CHECK(c.removed_size == 6);
    CHECK(c.remaining_vertices.empty());
}

TEST_CASE("uniform edge cut removes the child endpoint's subtree") {
    const IncreasingTree t = sample_tree();
    const CutOutcome c = uniform_edge_cut_at(t, {2, 4});
    CHECK(c.removed == std::vector<Vertex>{4});
    REQUIRE(c.remaining);
    CHECK(c.remaining->to_csv() == "5,1,1,2,3");
    const CutOutcome r = uniform_edge_cut_at(t, {1, 2});
    CHECK(r.removed == std::vector<Vertex>{2, 4, 5});
}

TEST_CASE("cuts on a single vertex tree are rejected") {
    Rng rng(1);
    CHECK_THROWS(degree_biased_cut(IncreasingTree(), rng));
    CHECK_THROWS(uniform_edge_cut(IncreasingTree(), rng));
}

TEST_CASE("vertex v is deleted with probability degree(v)/(n-1)") {
    const IncreasingTree t = sample_tree();
    Rng rng(8);
    std::vector<std::uint64_t> hits(7, 0);
    const int m = 100'000;
    for (int i = 0; i < m; ++i) ++hits[degree_biased_cut(t, rng).selected_edge.parent_endpoint];
    const std::vector<std::uint64_t> observed{hits[1], hits[2], hits[3]};
    const std::vector<double> expected{0.4, 0.4, 0.2};
    CHECK(stats::chi_square_gof(observed, expected).p_value > 1e-4);
    CHECK(hits[4] + hits[5] + hits[6] == 0);
}

TEST_CASE("destruction traces are consistent") {
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + rng.below(60);
        const IncreasingTree t = generate_rrt(n, rng);
        const DestructionTrace k = run_degree_biased_destruction(t, rng);
        REQUIRE(k.cuts() >= 1);
        std::size_t left = n;
        for (const CutStep& s : k.steps) {
            CHECK(s.removed_size >= 2);
            CHECK(s.remaining_size + s.removed_size == left);
            left = s.remaining_size;
        }
        CHECK(left <= 1);
        CHECK((k.terminal == Terminal::instantly_destroyed) == (left == 0));

        const DestructionTrace x = run_uniform_isolation(t, rng);
        left = n;
        for (const CutStep& s : x.steps) {
            CHECK(s.removed_size >= 1);
            CHECK(s.remaining_size + s.removed_size == left);
            left = s.remaining_size;
        }
        CHECK(left == 1);
        CHECK(x.cuts() <= n - 1);
    }
}

TEST_CASE("a path is destroyed in at most n/2 cuts and a star in one") {
    Rng rng(2);
    std::vector<Vertex> path(9), star(9, 1);
    std::iota(path.begin(), path.end(), 1);
    const IncreasingTree p = IncreasingTree::from_parents(path);
    const IncreasingTree s = IncreasingTree::from_parents(star);
    for (int i = 0; i < 100; ++i) {
        CHECK(run_degree_biased_destruction(p, rng).cuts() <= 5);
        CHECK(run_degree_biased_destruction(s, rng).cuts() == 1);
        CHECK(run_uniform_isolation(s, rng).cuts() == 9);
    }
}

TEST_CASE("simulated K_n and X_n follow the exact laws") {
    for (std::size_t n : {4, 5, 7}) {
        const auto k = sample_cut_counts(Process::degree_biased, n, 100'000, 17 + n, 2);
        CHECK(testing::law_p_value(k, k_pmf(static_cast<std::int64_t>(n))) > 1e-4);
    }
    const auto x = sample_cut_counts(Process::uniform, 6, 100'000, 5, 2);
    CHECK(testing::law_p_value(x, oracle::x_law(6)) > 1e-4);
}

TEST_CASE("simulated single cut sizes follow the cut size law") {
    Rng rng(31);
    const std::size_t n = 9;
    std::vector<std::int64_t> sizes;
    for (int i = 0; i < 100'000; ++i) {
        sizes.push_back(static_cast<std::int64_t>(degree_biased_cut(generate_rrt(n, rng), rng).removed_size));
    }
    CHECK(testing::law_p_value(sizes, cut_size_pmf(9)) > 1e-4);
}

TEST_CASE("trace csv rows") {
    DestructionTrace t;
    t.initial_n = 5;
    t.steps = {{{1, 2}, 2, 3}, {{1, 3}, 3, 0}};
    CHECK(trace_csv_rows(4, t) == "4,1,2,3\n4,2,3,0\n");
}

TEST_CASE("cuts on the smallest trees") {
    Rng rng(5);
    const std::vector<Vertex> two{1}, star{1, 1};
    const IncreasingTree t2 = IncreasingTree::from_parents(two), s3 = IncreasingTree::from_parents(star);
    for (int i = 0; i < 50; ++i) {
        const CutOutcome d = degree_biased_cut(t2, rng);
        CHECK(d.removed == std::vector<Vertex>{1, 2});
        CHECK(d.destroyed_instantly());
        const CutOutcome u = uniform_edge_cut(t2, rng);
        CHECK(u.removed == std::vector<Vertex>{2});
        CHECK(u.remaining_vertices == std::vector<Vertex>{1});
        CHECK(degree_biased_cut(s3, rng).destroyed_instantly());
        CHECK(run_degree_biased_destruction(t2, rng).cuts() == 1);
        CHECK(run_degree_biased_destruction(generate_rrt(3, rng), rng).cuts() == 1);
        CHECK(run_uniform_isolation(t2, rng).cuts() == 1);
    }
}

TEST_CASE("P(X_3 = 1) = 1/4") {
    CHECK(oracle::x_law(3).at(1) == make_rational(1, 4));
    const auto x = sample_cut_counts(Process::uniform, 3, 100'000, 3, 1);
    CHECK(testing::law_p_value(x, oracle::x_law(3)) > 1e-4);
}
