#include <cmath>

#include "doctest.h"
#include "rrtcut/rng.hpp"
#include "rrtcut/simulate.hpp"
#include "rrtcut/stats.hpp"

using namespace rrtcut;
using namespace rrtcut::stats;

TEST_CASE("special functions") {
    CHECK(gamma_q(1, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(gamma_q(3, 0) == doctest::Approx(1.0));
    CHECK(chi_square_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(chi_square_survival(18.307038053275146, 10) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(chi_square_survival(200, 150) == doctest::Approx(0.003973185970821635).epsilon(1e-8));
    CHECK(kolmogorov_survival(1.3580986393225505) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(kolmogorov_survival(0) == 1);
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
    CHECK(normal_cdf(3, 1, 2) == doctest::Approx(normal_cdf(1)));
    CHECK(cauchy_cdf(1) == doctest::Approx(0.75));
    CHECK(cauchy_cdf(5, 3, 2) == doctest::Approx(0.75));
}

TEST_CASE("chi-square tests") {
    const std::vector<std::uint64_t> even{100, 100, 100, 100};
    CHECK(chi_square_uniformity(even).statistic == 0);
    CHECK(chi_square_uniformity(even).p_value == doctest::Approx(1.0));
    CHECK(chi_square_uniformity(even).dof == 3);
    const std::vector<std::uint64_t> skewed{200, 100, 100, 0};
    CHECK(chi_square_uniformity(skewed).p_value < 1e-10);
    const std::vector<std::uint64_t> sparse{1, 2, 3};
    CHECK_THROWS_AS(chi_square_uniformity(sparse), SparseCategoriesError);
    const std::vector<std::uint64_t> one{10};
    CHECK_THROWS_AS(chi_square_uniformity(one), std::invalid_argument);
}

TEST_CASE("Kolmogorov-Smirnov distances") {
    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100);
    CHECK(ks_distance(grid, [](double x) { return std::clamp(x, 0.0, 1.0); }) == doctest::Approx(0.005));
    CHECK(ks_distance_two_sample(grid, grid) == 0);
    const std::vector<double> shifted{10, 11, 12};
    CHECK(ks_distance_two_sample(grid, shifted) == 1);
}

TEST_CASE("Cauchy diagnostic on exact Cauchy samples") {
    Rng rng(2024);
    std::vector<double> x(100'000);
    for (auto& v : x) v = rng.cauchy();
    const CauchyDiagnostic d = cauchy_diagnostic(x);
    CHECK(d.ks_distance < 0.01);
    CHECK(std::fabs(d.fitted_location) < 0.02);
    CHECK(d.fitted_scale == doctest::Approx(1.0).epsilon(0.03));
    CHECK(d.ks_normal > d.ks_distance);
    CHECK(d.samples == x.size());
    CHECK(cauchy_ks_distance(x, 0, 1) < 0.01);
    CHECK(cauchy_ks_distance(x, 5, 1) > 0.5);
}

TEST_CASE("Cauchy diagnostic rejects degenerate input") {
    const std::vector<double> flat(5000, 3.0);
    CHECK_THROWS_AS(cauchy_diagnostic(flat), DegenerateSampleError);
    const std::vector<double> few{1, 2, 3};
    CHECK_THROWS_AS(cauchy_diagnostic(few), DegenerateSampleError);
}

TEST_CASE("summaries") {
    const std::vector<std::int64_t> s{1, 2, 2, 3};
    const EmpiricalSummary e = summarize(s, 5, 9);
    CHECK(e.trials == 4);
    CHECK(e.mean == doctest::Approx(2.0));
    CHECK(e.variance == doctest::Approx(2.0 / 3.0));
    CHECK(e.frequency(2) == doctest::Approx(0.5));
    CHECK(e.frequency(7) == 0);
    CHECK(e.survival(2) == doctest::Approx(0.75));
    CHECK(e.survival(0) == doctest::Approx(1.0));
}

TEST_CASE("quantiles and normalizations") {
    const std::vector<double> v{1, 2, 3, 4, 5};
    CHECK(quantile_sorted(v, 0) == 1);
    CHECK(quantile_sorted(v, 0.5) == 3);
    CHECK(quantile_sorted(v, 0.125) == doctest::Approx(1.5));
    CHECK(quantile_sorted(v, 1) == 5);
    const double n = 1e5, l = std::log(n);
    CHECK(normalize_j(100, n) == doctest::Approx(100 * l * l * l / n - l));
    CHECK(normalize_x(100, n) == doctest::Approx(l * l * 100 / n - l - std::log(l)));
}

TEST_CASE("DKW bands and empirical dominance") {
    CHECK(dkw_epsilon(10'000, 0.05) == doctest::Approx(std::sqrt(std::log(40.0) / 20'000)));
    const auto j = sample_j_counts(60, 50'000, 1, 1);
    const auto k = sample_cut_counts(Process::degree_biased, 60, 50'000, 2, 1);
    const EmpiricalSummary sj = summarize(j, 60, 1), sk = summarize(k, 60, 2);
    CHECK(empirical_dominance(sj, sk).ok());
    std::vector<std::int64_t> big(50'000, 100);
    CHECK_FALSE(empirical_dominance(sj, summarize(big, 60, 3)).ok());
}

TEST_CASE("Pearson statistic by hand") {
    const std::vector<std::uint64_t> c{60, 40};
    CHECK(chi_square_uniformity(c).statistic == doctest::Approx(4.0));
}

TEST_CASE("dominance report small cases") {
    const std::vector<std::int64_t> s{1, 2, 2, 3, 1};
    const EmpiricalSummary a = summarize(s, 4, 1);
    CHECK(empirical_dominance(a, a).ok());
    CHECK(empirical_dominance(a, a).max_excess == 0);
}
