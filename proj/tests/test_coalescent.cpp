#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "rrtcut/coalescent.hpp"
#include "rrtcut/oracle.hpp"

using namespace rrtcut;

namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

Rational factorial(std::int64_t n) {
    Rational f = 1;
    for (std::int64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

TEST_CASE("merge rates") {
    CHECK(rate_lambda(6, 3) == q(1, 20));
    CHECK(rate_lambda(4, 4) == q(7, 3));
    CHECK(rate_lambda(3, 3) == 2);
    for (std::int64_t n = 4; n <= 30; ++n) {
        for (std::int64_t k = 3; k < n; ++k) {
            CHECK(rate_lambda(n, k) == factorial(n - k) * factorial(k - 2) * harmonic(static_cast<std::size_t>(k - 2)) /
                                           factorial(n - 1));
        }
        CHECK(rate_lambda(n, n) == harmonic(static_cast<std::size_t>(n - 1)) +
                                       harmonic(static_cast<std::size_t>(n - 2)) / q(n - 1));
    }
    CHECK_THROWS(rate_lambda(5, 2));
    CHECK_THROWS(rate_lambda(5, 6));
}

TEST_CASE("the first event merges everything with probability lambda'_{n,n}/(n-1)") {
    CHECK(rate_lambda(3, 3) / 2 == 1);
    CHECK(rate_lambda(4, 4) / 3 == q(7, 9));
    for (std::int64_t n = 3; n <= 50; ++n) {
        const ExactPmf cut = cut_size_pmf(n);
        CHECK(rate_lambda(n, n) / q(n - 1) == cut.at(n - 1) + cut.at(n));
    }
    Rng rng(10);
    int all = 0;
    const int m = 90'000;
    for (int i = 0; i < m; ++i) all += simulate_degree_biased_coalescent(4, rng).history.front().blocks_remaining == 1;
    CHECK(all / static_cast<double>(m) == doctest::Approx(7.0 / 9.0).epsilon(0.01));
    for (int i = 0; i < 100; ++i) CHECK(simulate_degree_biased_coalescent(3, rng).history.size() == 1);
}

TEST_CASE("consistency defect is 1/(n-2)") {
    CHECK(consistency_defect(4) == q(1, 2));
    for (std::int64_t n = 4; n <= 80; ++n) {
        CHECK(consistency_defect(n) == q(1, n - 2));
        CHECK(consistency_defect(n) == rate_lambda(n, n) + rate_lambda(n, n - 1) - rate_lambda(n - 1, n - 1));
    }
    CHECK_THROWS(consistency_defect(3));
}

TEST_CASE("Bolthausen-Sznitman rates are consistent") {
    for (std::int64_t b = 3; b <= 20; ++b) {
        for (std::int64_t k = 2; k <= b; ++k) {
            CHECK(rate_bs(b, b, k) == factorial(b - k) * factorial(k - 2) / factorial(b - 1));
            CHECK(rate_bs(b, b, k) == rate_bs(b + 1, b + 1, k) + rate_bs(b + 1, b + 1, k + 1));
        }
    }
}

TEST_CASE("first-merge rates by enumeration depend only on the set size") {
    const std::vector<std::vector<Vertex>> sets{{1, 2, 3}, {2, 3, 5}, {1, 4, 6}, {3, 5, 6}, {1, 2, 3, 4}, {2, 4, 5, 6}};
    for (const auto& s : sets) {
        CHECK(q(5) * oracle::first_merge_probability(6, s) == rate_lambda(6, static_cast<std::int64_t>(s.size())));
    }
    const std::vector<Vertex> everything{1, 2, 3, 4, 5};
    CHECK(q(4) * oracle::first_merge_probability(5, everything) == rate_lambda(5, 5));
}

TEST_CASE("Monte Carlo first-merge rates") {
    const std::vector<Vertex> l{1, 2, 3};
    const MergeRateEstimate e = estimate_first_merge_rate(6, l, 300'000, 8, 2);
    CHECK(e.feasible);
    CHECK(std::fabs(e.estimate - 0.05) < 4 * e.std_error + 1e-9);
    const std::vector<Vertex> all{1, 2, 3, 4};
    const MergeRateEstimate a = estimate_first_merge_rate(4, all, 100'000, 9, 1);
    CHECK(a.estimate == doctest::Approx(7.0 / 3.0).epsilon(0.02));
    const std::vector<Vertex> pair{1, 2};
    const MergeRateEstimate bad = estimate_first_merge_rate(6, pair, 1000, 1, 1);
    CHECK_FALSE(bad.feasible);
    CHECK(bad.estimate == 0);
    CHECK_FALSE(bad.warning.empty());
    const std::vector<Vertex> far{1, 2, 9};
    CHECK_FALSE(estimate_first_merge_rate(6, far, 1000, 1, 1).feasible);
}

TEST_CASE("rate estimates do not depend on the worker count") {
    const std::vector<Vertex> l{2, 3, 5};
    const auto a = estimate_first_merge_rate(6, l, 20'000, 77, 1);
    const auto b = estimate_first_merge_rate(6, l, 20'000, 77, 3);
    CHECK(a.hits == b.hits);
}

TEST_CASE("coalescent runs are partitions at every step") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + rng.below(40);
        const CoalescentState s = simulate_degree_biased_coalescent(n, rng);
        REQUIRE_FALSE(s.history.empty());
        double t = 0;
        std::size_t blocks = n;
        for (const auto& ev : s.history) {
            CHECK(ev.time > t);
            t = ev.time;
            CHECK(ev.merged_size() >= 2);
            CHECK(ev.blocks_remaining == blocks - ev.merged_size() + 1);
            CHECK(std::is_sorted(ev.merged_blocks.begin(), ev.merged_blocks.end()));
            blocks = ev.blocks_remaining;
        }
        CHECK(blocks == 1);
        CHECK(s.blocks.size() == 1);
        std::vector<Vertex> all;
        for (const auto& b : s.blocks) all.insert(all.end(), b.begin(), b.end());
        std::sort(all.begin(), all.end());
        std::vector<Vertex> expected(n);
        std::iota(expected.begin(), expected.end(), 1);
        CHECK(all == expected);
    }
}

TEST_CASE("cut-tree structure") {
    Rng rng(14);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng.below(50);
        const IncreasingTree t = generate_rrt(n, rng);
        const CutTree ct = build_cut_tree(t, rng);
        CHECK_NOTHROW(ct.validate());
        CHECK(ct.size() == n);
        CHECK(ct.nodes.size() == 2 * n - 1);
        CHECK(ct.nodes.front().labels.size() == n);
        for (Vertex v = 1; v <= n; ++v) CHECK(ct.nodes[static_cast<std::size_t>(ct.leaf_of[v])].labels == std::vector<Vertex>{v});
    }
}

TEST_CASE("root leaf height of the cut-tree is distributed as X_n") {
    Rng rng(15);
    std::vector<std::int64_t> heights;
    for (int i = 0; i < 60'000; ++i) {
        const CutTree ct = build_cut_tree(generate_rrt(6, rng), rng);
        heights.push_back(ct.leaf_height(1));
    }
    CHECK(testing::law_p_value(heights, oracle::x_law(6)) > 1e-4);
}

TEST_CASE("coalescent and rate small cases") {
    Rng rng(2);
    const CoalescentState s = simulate_degree_biased_coalescent(2, rng);
    REQUIRE(s.history.size() == 1);
    CHECK(s.history[0].merged_blocks == std::vector<Vertex>{1, 2});
    CHECK(s.history[0].time > 0);
    CHECK(rate_bs(3, 3, 2) == q(1, 2));
    CHECK(rate_bs(3, 3, 3) == q(1, 2));
    for (std::int64_t n = 3; n <= 20; ++n) CHECK(rate_bs(n, n, 2) == q(1, n - 1));
    CHECK(consistency_defect(5) == q(1, 3));
    CHECK(consistency_defect(50) == q(1, 48));
}

TEST_CASE("cut-trees of the smallest trees") {
    Rng rng(3);
    const CutTree one = build_cut_tree(IncreasingTree(), rng);
    CHECK(one.nodes.size() == 1);
    CHECK(one.leaf_height(1) == 0);
    const std::vector<Vertex> p{1};
    const CutTree two = build_cut_tree(IncreasingTree::from_parents(p), rng);
    REQUIRE(two.nodes.size() == 3);
    CHECK(two.nodes[0].labels == std::vector<Vertex>{1, 2});
    CHECK(two.nodes[static_cast<std::size_t>(two.nodes[0].root_side)].labels == std::vector<Vertex>{1});
    CHECK(two.nodes[static_cast<std::size_t>(two.nodes[0].cut_side)].labels == std::vector<Vertex>{2});
}
