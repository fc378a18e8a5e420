#include <cmath>

#include "doctest.h"
#include "rrtcut/exact.hpp"

using namespace rrtcut;

namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

}  // namespace

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0) == 0);
    CHECK(harmonic(1) == 1);
    CHECK(harmonic(4) == q(25, 12));
    CHECK(static_cast<double>(harmonic_float(100)) == doctest::Approx(harmonic(100).get_d()).epsilon(1e-15));
    const double n = 1e7;
    const double asymptotic = std::log(n) + 0.5772156649015329 + 1 / (2 * n) - 1 / (12 * n * n);
    CHECK(static_cast<double>(harmonic_float(10'000'000)) == doctest::Approx(asymptotic).epsilon(1e-15));
    CHECK(harmonic_float(0) == 0);
}

TEST_CASE("zeta law") {
    CHECK(zeta_pmf(1) == 0);
    CHECK(zeta_pmf(2) == q(1, 6));
    CHECK(zeta_pmf(3) == q(1, 8));
    CHECK(zeta_cdf(1) == 0);
    CHECK(zeta_cdf(4) == q(23, 60));
    CHECK(zeta_tail(2) == 1);
    CHECK(zeta_tail(1) == 1);
    for (std::int64_t n = 2; n <= 60; ++n) {
        CHECK(zeta_tail(n) == 1 - zeta_cdf(n - 1));
        CHECK(zeta_cdf(n) - zeta_cdf(n - 1) == zeta_pmf(n));
    }
    CHECK(zeta_cdf_by_double_sum(20) == zeta_cdf(20));
}

TEST_CASE("xi law and telescoping") {
    CHECK(xi_pmf(1) == q(1, 2));
    CHECK(xi_pmf(4) == q(1, 20));
    CHECK(xi_tail(5) == q(1, 5));
    for (std::int64_t i = 0; i < 30; ++i) {
        CHECK(telescopic_sum(i, 30) == telescopic_closed(i, 30));
        CHECK(telescopic_closed(i, 30) == q(1, i + 1) - q(1, 31));
    }
}

TEST_CASE("cut size law") {
    const ExactPmf p4 = cut_size_pmf(4);
    CHECK(p4.first == 2);
    CHECK(p4.at(2) == q(2, 9));
    CHECK(p4.at(3) == q(1, 6));
    CHECK(p4.at(4) == q(11, 18));
    CHECK(cut_size_pmf(2).at(2) == 1);
    CHECK(cut_size_pmf(3).at(2) == q(1, 4));
    CHECK(cut_size_pmf(3).at(3) == q(3, 4));
    CHECK_THROWS_AS(cut_size_pmf(1), std::invalid_argument);
    for (std::int64_t n = 2; n <= 300; n += 7) {
        CHECK(cut_size_pmf(n).total() == 1);
        CHECK(uniform_cut_size_pmf(n).total() == 1);
        CHECK(zeta_conditional_pmf(n).total() == 1);
    }
    CHECK(uniform_cut_size_pmf(4).at(1) == q(2, 3));
}

TEST_CASE("tree-cut variant equals the cut size law; walk variant dominates below n") {
    for (std::int64_t n = 2; n <= 120; ++n) {
        const ExactPmf cut = cut_size_pmf(n);
        const ExactPmf tree = zeta_conditional_pmf(n, CutLawVariant::tree_cut);
        const ExactPmf walk = zeta_conditional_pmf(n, CutLawVariant::conditioned_walk);
        for (std::int64_t k = 1; k <= n; ++k) {
            CHECK(tree.at(k) == cut.at(k));
            CHECK(f_n(n, k) * q(n, n - 1) == cut.at(k));
            if (k < n) CHECK(walk.at(k) >= cut.at(k));
        }
    }
}

TEST_CASE("K_n laws") {
    const ExactPmf k4 = k_pmf(4);
    CHECK(k4.at(1) == q(7, 9));
    CHECK(k4.at(2) == q(2, 9));
    const ExactPmf k5 = k_pmf(5);
    CHECK(k5.at(1) == q(61, 96));
    CHECK(k5.at(2) == q(35, 96));
    CHECK(k_pmf(2).at(1) == 1);
    CHECK(k_pmf(3).at(1) == 1);
    CHECK(k_pmf(1).at(0) == 1);
    for (std::int64_t n = 2; n <= 40; ++n) {
        const ExactPmf k = k_pmf(n);
        CHECK(k.total() == 1);
        CHECK(k.at(1) == k_equals_one(n));
        CHECK(k.last() <= n / 2);
    }
}

TEST_CASE("J_n laws") {
    CHECK(j_pmf(4).at(2) == q(10, 23));
    CHECK(j_pmf(4).at(1) == q(13, 23));
    CHECK(j_pmf(2).at(1) == 1);
    for (std::int64_t n = 2; n <= 40; ++n) CHECK(j_pmf(n).total() == 1);
}

TEST_CASE("truncated laws keep the remaining mass in the residual") {
    const ExactPmf full = k_pmf(30), cut = k_pmf(30, 3);
    CHECK(cut.last() <= 3);
    CHECK(cut.total() + cut.residual == 1);
    CHECK(cut.residual == full.survival(4));
    for (std::int64_t j = 1; j <= 3; ++j) CHECK(cut.at(j) == full.at(j));
}

TEST_CASE("float tables agree with the exact ones") {
    const CountTables<Rational> kr(CountKind::K, 60), jr(CountKind::J, 60);
    const CountTables<long double> kf(CountKind::K, 60), jf(CountKind::J, 60);
    for (std::int64_t n = 2; n <= 60; ++n) {
        for (std::int64_t j = 1; j <= n / 2; ++j) {
            CHECK(static_cast<double>(kf.pmf(n).at(j)) == doctest::Approx(kr.pmf(n).at(j).get_d()).epsilon(1e-12));
            CHECK(static_cast<double>(jf.pmf(n).at(j)) == doctest::Approx(jr.pmf(n).at(j).get_d()).epsilon(1e-12));
        }
    }
}

TEST_CASE("J_n dominates K_n") {
    for (std::int64_t n = 2; n <= 50; ++n) {
        const ExactPmf k = k_pmf(n), j = j_pmf(n);
        for (std::int64_t m = 0; m <= n; ++m) CHECK(j.survival(m) >= k.survival(m));
    }
    CHECK(dominance_check(50, 50).ok());
    const DominanceReport f = dominance_check(300, 1);
    CHECK(f.ok());
    CHECK(f.pairs_checked > 0);
}

TEST_CASE("no single jump law fits every n") {
    for (std::int64_t n = 3; n <= 30; ++n) {
        const JumpLawCertificate c = no_consistent_jump_law_certificate(n);
        CHECK(c.below_constant);
        CHECK(c.value_below == 1);
        CHECK(c.value_at_n == q(1, n + 1));
    }
    CHECK_THROWS(no_consistent_jump_law_certificate(2));
}

TEST_CASE("g function and the harmonic square identity") {
    CHECK(g_function(1).series == 1);
    CHECK(g_function(2).series == 2);
    for (std::int64_t n : {1, 2, 3, 5, 17, 100}) {
        const GFunction g = g_function(n);
        CHECK(g.series == g.closed_form);
        CHECK(g.sum_h_over_j == g.sum_h_over_j_closed);
        Rational direct = 0;
        for (std::int64_t j = 1; j <= n; ++j) direct += zeta_tail(j);
        CHECK(direct == g.series);
        CHECK(static_cast<double>(g_function_float(n)) == doctest::Approx(g.series.get_d()).epsilon(1e-13));
    }
    CHECK(sum_harmonic_over_index(300) == sum_harmonic_over_index_closed(300));
}

TEST_CASE("means") {
    const auto table = mean_j_table(40);
    const auto ktable = mean_k_table(40);
    for (std::int64_t n = 2; n <= 40; ++n) {
        CHECK(mean_j_exact(n) == j_pmf(n).mean());
        CHECK(mean_k_exact(n) == k_pmf(n).mean());
        CHECK(table[static_cast<std::size_t>(n)] == doctest::Approx(mean_j_exact(n).get_d()).epsilon(1e-12));
        CHECK(ktable[static_cast<std::size_t>(n)] == doctest::Approx(mean_k_exact(n).get_d()).epsilon(1e-12));
        CHECK(mean_j_exact(n) >= mean_k_exact(n));
    }
}

TEST_CASE("normalizers") {
    const double n = 1e4, l = std::log(n);
    const Normalizers z = normalizers(n);
    CHECK(z.a == doctest::Approx(4 * n / (l * l * l)));
    CHECK(z.b == doctest::Approx(2 * n / (l * l)));
    CHECK(z.c == doctest::Approx(n * l));
    CHECK(z.a_prime == doctest::Approx(n / (l * l * l)));
    CHECK(z.b_prime == doctest::Approx(n / (l * l)));
    CHECK(z.x_scale == doctest::Approx(l * l / n));
    CHECK(z.x_shift == doctest::Approx(l + std::log(l)));
    CHECK_THROWS(normalizers(2));
}

TEST_CASE("rational formatting") {
    CHECK(to_string(q(6, 8)) == "3/4");
    CHECK(to_string(q(4, 2)) == "2");
    CHECK(to_string(q(-1, 3)) == "-1/3");
    CHECK_THROWS(make_rational(1, 0));
}

TEST_CASE("small hand-computed values") {
    CHECK(harmonic(3) == q(11, 6));
    CHECK(harmonic(5) == q(137, 60));
    const ExactPmf z4 = zeta_conditional_pmf(4);
    CHECK(z4.at(2) == q(10, 23));
    CHECK(z4.at(3) == q(15, 46));
    CHECK(z4.at(4) == q(11, 46));
    CHECK(j_pmf(3).at(1) == 1);
    CHECK(no_consistent_jump_law_certificate(4).value_at_n == q(1, 5));
    CHECK(no_consistent_jump_law_certificate(10).value_at_n == q(1, 11));
    const double e3 = std::exp(3.0);
    CHECK(normalizers(e3).a_prime == doctest::Approx(e3 / 27));
    CHECK_THROWS(cut_size_pmf(0));
}

TEST_CASE("g(n) 2/(ln n)^2 drifts toward 1") {
    double previous = 10;
    for (std::int64_t n : {100, 1000, 10'000, 100'000, 1'000'000}) {
        const double l = std::log(static_cast<double>(n));
        const double r = static_cast<double>(g_function_float(n)) * 2 / (l * l);
        CHECK(r > 1);
        CHECK(r < previous);
        previous = r;
    }
}
