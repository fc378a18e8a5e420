#include "rrtcut/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rrtcut::stats {

double EmpiricalSummary::frequency(std::int64_t value) const {
    if (trials == 0) return 0;
    const auto it = counts.find(value);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
}

double EmpiricalSummary::survival(std::int64_t j) const {
    if (trials == 0) return 0;
    std::uint64_t s = 0;
    for (auto it = counts.lower_bound(j); it != counts.end(); ++it) s += it->second;
    return static_cast<double>(s) / static_cast<double>(trials);
}

EmpiricalSummary summarize(std::span<const std::int64_t> samples, std::int64_t n, std::uint64_t seed) {
    EmpiricalSummary s;
    s.n = n;
    s.seed = seed;
    s.trials = samples.size();
    // Welford in sample order keeps the summary a pure function of the samples.
    double mean = 0, m2 = 0;
    std::uint64_t k = 0;
    for (std::int64_t x : samples) {
        ++s.counts[x];
        ++k;
        const double d = static_cast<double>(x) - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (static_cast<double>(x) - mean);
    }
    s.mean = mean;
    s.variance = k > 1 ? m2 / static_cast<double>(k - 1) : 0.0;
    return s;
}

// ---------------------------------------------------------------------------

namespace {

double gamma_p_series(double a, double x) {
    double sum = 1.0 / a, term = sum, ap = a;
    for (int i = 0; i < 10000; ++i) {
        ap += 1;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (a <= 0) throw std::domain_error("gamma_q needs a > 0");
    if (x <= 0) return 1.0;
    if (x < a + 1) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double chi_square_survival(double x, double dof) { return gamma_q(dof / 2, x / 2); }

double kolmogorov_survival(double lambda) {
    if (lambda <= 0) return 1.0;
    if (lambda < 0.2) return 1.0;
    double sum = 0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-18) break;
    }
    return std::clamp(2 * sum, 0.0, 1.0);
}

double normal_cdf(double x, double location, double scale) {
    return 0.5 * std::erfc(-(x - location) / (scale * std::sqrt(2.0)));
}

double cauchy_cdf(double x, double location, double scale) {
    return 0.5 + std::atan((x - location) / scale) / M_PI;
}

// ---------------------------------------------------------------------------

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> counts, std::span<const double> probabilities) {
    if (counts.size() != probabilities.size() || counts.size() < 2) {
        throw std::invalid_argument("chi-square needs matching counts/probabilities with >= 2 categories");
    }
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    ChiSquareResult r;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = total * probabilities[i];
        if (expected < 5) throw SparseCategoriesError("expected count below 5 in category " + std::to_string(i));
        const double d = static_cast<double>(counts[i]) - expected;
        r.statistic += d * d / expected;
    }
    r.dof = counts.size() - 1;
    r.p_value = chi_square_survival(r.statistic, static_cast<double>(r.dof));
    return r;
}

ChiSquareResult chi_square_uniformity(std::span<const std::uint64_t> counts) {
    const std::vector<double> p(counts.size(), counts.empty() ? 0.0 : 1.0 / static_cast<double>(counts.size()));
    return chi_square_gof(counts, p);
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double m = static_cast<double>(x.size());
    double d = 0;
    for (std::size_t i = 0; i < x.size();) {
        std::size_t j = i;
        while (j < x.size() && x[j] == x[i]) ++j;  // ties form one jump of the ecdf
        const double f = cdf(x[i]);
        d = std::max({d, std::fabs(static_cast<double>(j) / m - f), std::fabs(f - static_cast<double>(i) / m)});
        i = j;
    }
    return d;
}

double ks_distance_two_sample(std::span<const double> a, std::span<const double> b) {
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / static_cast<double>(x.size()) -
                                  static_cast<double>(j) / static_cast<double>(y.size())));
    }
    return d;
}

double dkw_epsilon(std::uint64_t m, double alpha) {
    if (m == 0) return 1.0;
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(m)));
}

DominanceBandReport empirical_dominance(const EmpiricalSummary& a, const EmpiricalSummary& b, double alpha) {
    DominanceBandReport r;
    r.band = dkw_epsilon(a.trials, alpha) + dkw_epsilon(b.trials, alpha);
    r.max_excess = -std::numeric_limits<double>::infinity();
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const auto* s : {&a, &b}) {
        if (!s->counts.empty()) {
            lo = std::min(lo, s->counts.begin()->first);
            hi = std::max(hi, s->counts.rbegin()->first);
        }
    }
    if (lo > hi) {
        r.max_excess = 0;
        return r;
    }
    for (std::int64_t j = lo; j <= hi; ++j) {
        const double excess = b.survival(j) - a.survival(j);
        if (excess > r.max_excess) {
            r.max_excess = excess;
            r.worst_j = j;
        }
        if (excess > r.band) ++r.violations;
    }
    return r;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double cauchy_ks_distance(std::span<const double> samples, double location, double scale) {
    return ks_distance(samples, [=](double x) { return cauchy_cdf(x, location, scale); });
}

CauchyDiagnostic cauchy_diagnostic(std::span<const double> samples, std::size_t min_samples) {
    if (samples.size() < min_samples) {
        throw DegenerateSampleError("Cauchy diagnostic needs at least " + std::to_string(min_samples) + " samples");
    }
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double q1 = quantile_sorted(x, 0.25), med = quantile_sorted(x, 0.5), q3 = quantile_sorted(x, 0.75);
    const double iqr = q3 - q1;
    if (!(iqr > 0)) throw DegenerateSampleError("zero interquartile range");
    CauchyDiagnostic d;
    d.samples = x.size();
    d.fitted_location = med;
    d.fitted_scale = iqr / 2;
    d.ks_distance = cauchy_ks_distance(x, med, d.fitted_scale);
    // Normal quartiles sit at +-0.6744897502 sigma.
    const double sigma = iqr / (2 * 0.6744897501960817);
    d.ks_normal = ks_distance(x, [=](double v) { return normal_cdf(v, med, sigma); });
    return d;
}

double normalize_j(double jumps, double n) {
    const double l = std::log(n);
    return jumps * l * l * l / n - l;
}

double normalize_x(double cuts, double n) {
    const double l = std::log(n);
    return l * l * cuts / n - l - std::log(l);
}

}  // namespace rrtcut::stats
