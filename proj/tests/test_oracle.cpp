#include "doctest.h"
#include "rrtcut/exact.hpp"
#include "rrtcut/oracle.hpp"

using namespace rrtcut;

namespace {

bool same(const ExactPmf& a, const ExactPmf& b) {
    for (std::int64_t k = std::min(a.first, b.first); k <= std::max(a.last(), b.last()); ++k) {
        if (a.at(k) != b.at(k)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("single cut laws match enumeration") {
    for (std::size_t n = 2; n <= 7; ++n) {
        const auto m = static_cast<std::int64_t>(n);
        CHECK(same(oracle::cut_size_law(n), cut_size_pmf(m)));
        CHECK(same(oracle::uniform_cut_law(n), uniform_cut_size_pmf(m)));
    }
}

TEST_CASE("K_n by enumeration") {
    for (std::size_t n = 2; n <= 7; ++n) CHECK(same(oracle::k_law(n), k_pmf(static_cast<std::int64_t>(n))));
}

TEST_CASE("X_n is the xi walk with barrier n") {
    for (std::size_t n = 2; n <= 7; ++n) {
        CHECK(same(oracle::x_law(n), oracle::barrier_walk_law(static_cast<std::int64_t>(n), JumpLaw::xi())));
    }
}

TEST_CASE("J_n is the zeta walk with barrier n + 1") {
    for (std::int64_t n = 1; n <= 20; ++n) CHECK(same(oracle::barrier_walk_law(n + 1, JumpLaw::zeta()), j_pmf(n)));
}

TEST_CASE("mean root degree is H_{n-1}") {
    for (std::size_t n = 1; n <= 8; ++n) CHECK(oracle::mean_root_degree(n) == harmonic(n - 1));
}

TEST_CASE("root remainder is uniform given its size") {
    for (std::size_t n : {5, 6, 7}) {
        for (const auto& [l, law] : oracle::splitting_law(n)) {
            REQUIRE(law.size() == increasing_tree_count(l));
            for (const auto& p : law) CHECK(p == make_rational(1, static_cast<std::int64_t>(law.size())));
        }
    }
}

TEST_CASE("first merge probabilities") {
    const std::vector<Vertex> l{1, 2, 3};
    CHECK(oracle::first_merge_probability(6, l) == make_rational(1, 100));
    const std::vector<Vertex> all{1, 2, 3};
    CHECK(oracle::first_merge_probability(3, all) == 1);
    const std::vector<Vertex> pair{1, 2};
    CHECK(oracle::first_merge_probability(5, pair) == 0);
}
