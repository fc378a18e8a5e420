#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rrtcut::stats {

using Histogram = std::map<std::int64_t, std::uint64_t>;

struct EmpiricalSummary {
    std::int64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Histogram counts;
    double mean = 0;
    double variance = 0;  // unbiased

    double frequency(std::int64_t value) const;
    /// Empirical P(X >= j).
    double survival(std::int64_t j) const;
};

EmpiricalSummary summarize(std::span<const std::int64_t> samples, std::int64_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Special functions.

/// Regularized upper incomplete gamma Q(a, x); series for x < a + 1, Lentz
/// continued fraction otherwise.
double gamma_q(double a, double x);
/// P(chi^2_dof > x)
double chi_square_survival(double x, double dof);
/// Kolmogorov limiting tail P(sqrt(m) D > lambda).
double kolmogorov_survival(double lambda);

double normal_cdf(double x, double location = 0, double scale = 1);
double cauchy_cdf(double x, double location = 0, double scale = 1);

// ---------------------------------------------------------------------------
// Goodness of fit.

struct ChiSquareResult {
    double statistic = 0;
    double p_value = 1;
    std::size_t dof = 0;
};

class SparseCategoriesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pearson test of `counts` against the uniform law on `counts.size()`
/// categories. Throws SparseCategoriesError if an expected count is below 5.
ChiSquareResult chi_square_uniformity(std::span<const std::uint64_t> counts);

/// Pearson test against explicit probabilities (which must sum to ~1).
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> counts, std::span<const double> probabilities);

/// sup_x |F_m(x) - F(x)| for the empirical cdf of `samples`.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample sup distance between empirical cdfs.
double ks_distance_two_sample(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Diagnostics.

struct DominanceBandReport {
    double band = 0;         // eps_a + eps_b
    double max_excess = 0;   // max_j (S_b(j) - S_a(j)), may be negative
    std::int64_t worst_j = 0;
    std::size_t violations = 0;  // points with S_b - S_a > band

    bool ok() const { return violations == 0; }
};

/// Checks that `a` empirically dominates `b` (S_a >= S_b) up to DKW bands at
/// level alpha for each sample.
DominanceBandReport empirical_dominance(const EmpiricalSummary& a, const EmpiricalSummary& b, double alpha = 1e-3);

/// DKW half-width sqrt(ln(2/alpha) / (2m)).
double dkw_epsilon(std::uint64_t m, double alpha);

struct CauchyDiagnostic {
    double ks_distance = 0;  // to the fitted Cauchy
    double fitted_location = 0;
    double fitted_scale = 0;
    double ks_normal = 0;  // to a normal with the same median and quartiles
    std::size_t samples = 0;
};

class DegenerateSampleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fits location = median and scale = IQR/2 and reports KS distances to the
/// fitted Cauchy and to the normal with matching median and quartiles.
/// Requires at least `min_samples` values and a positive IQR.
CauchyDiagnostic cauchy_diagnostic(std::span<const double> samples, std::size_t min_samples = 1000);

/// KS distance of `samples` to a Cauchy with the given parameters.
double cauchy_ks_distance(std::span<const double> samples, double location, double scale);

/// J_n (ln n)^3 / n - ln n.
double normalize_j(double jumps, double n);
/// (ln n)^2 X_n / n - ln n - ln ln n.
double normalize_x(double cuts, double n);

/// Quantile by linear interpolation on sorted data (type 7).
double quantile_sorted(std::span<const double> sorted, double p);

}  // namespace rrtcut::stats
