#include "rrtcut/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "rrtcut/tree.hpp"

namespace rrtcut {

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpz_class n, d;
    mpz_set_si(n.get_mpz_t(), num);
    mpz_set_si(d.get_mpz_t(), den);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

template <class Num>
Num Pmf<Num>::at(std::int64_t k) const {
    if (k < first || k > last()) return Num(0);
    return mass[static_cast<std::size_t>(k - first)];
}

template <class Num>
Num Pmf<Num>::survival(std::int64_t j) const {
    Num s = residual;
    for (std::int64_t k = std::max(j, first); k <= last(); ++k) s += mass[static_cast<std::size_t>(k - first)];
    return s;
}

template <class Num>
Num Pmf<Num>::total() const {
    Num s = 0;
    for (const auto& m : mass) s += m;
    return s;
}

template <class Num>
Num Pmf<Num>::mean() const {
    Num s = 0;
    for (std::size_t i = 0; i < mass.size(); ++i) s += Num(first + static_cast<std::int64_t>(i)) * mass[i];
    return s;
}

template struct Pmf<Rational>;
template struct Pmf<long double>;

// ---------------------------------------------------------------------------

Rational harmonic(std::size_t n) {
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(0)};
    std::lock_guard lock(mu);
    while (cache.size() <= n) {
        const auto i = static_cast<std::int64_t>(cache.size());
        cache.push_back(cache.back() + make_rational(1, i));
    }
    return cache[n];
}

namespace {

constexpr std::uint64_t kHarmonicTableSize = 1u << 20;

const std::vector<long double>& harmonic_table() {
    static const std::vector<long double> table = [] {
        std::vector<long double> t(kHarmonicTableSize + 1);
        long double sum = 0, comp = 0;
        t[0] = 0;
        for (std::uint64_t i = 1; i <= kHarmonicTableSize; ++i) {
            const long double y = 1.0L / static_cast<long double>(i) - comp;
            const long double s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            t[i] = sum;
        }
        return t;
    }();
    return table;
}

}  // namespace

long double harmonic_float(std::uint64_t n) {
    if (n <= kHarmonicTableSize) return harmonic_table()[n];
    constexpr long double gamma = 0.577215664901532860606512090082402431L;
    const long double x = static_cast<long double>(n);
    const long double inv2 = 1.0L / (x * x);
    return std::log(x) + gamma + 1.0L / (2 * x) - inv2 / 12 + inv2 * inv2 / 120;
}

Rational zeta_pmf(std::int64_t k) {
    if (k < 2) return 0;
    return harmonic(static_cast<std::size_t>(k - 1)) / make_rational(k * (k + 1));
}

Rational zeta_cdf(std::int64_t n) {
    if (n < 2) return 0;
    return 1 - make_rational(1, n) - harmonic(static_cast<std::size_t>(n - 1)) / make_rational(n + 1);
}

Rational zeta_tail(std::int64_t n) {
    if (n <= 2) return 1;
    return make_rational(1, n - 1) + harmonic(static_cast<std::size_t>(n - 2)) / make_rational(n);
}

Rational zeta_cdf_by_double_sum(std::int64_t n) {
    Rational s = 0;
    for (std::int64_t k = 2; k <= n; ++k) {
        for (std::int64_t i = 1; i < k; ++i) s += make_rational(1, i * k * (k + 1));
    }
    return s;
}

Rational xi_pmf(std::int64_t k) {
    if (k < 1) return 0;
    return make_rational(1, k * (k + 1));
}

Rational xi_tail(std::int64_t n) {
    if (n <= 1) return 1;
    return make_rational(1, n);
}

Rational telescopic_sum(std::int64_t i, std::int64_t n) {
    Rational s = 0;
    for (std::int64_t k = i + 1; k <= n; ++k) s += make_rational(1, k * (k + 1));
    return s;
}

Rational telescopic_closed(std::int64_t i, std::int64_t n) { return make_rational(1, i + 1) - make_rational(1, n + 1); }

// ---------------------------------------------------------------------------

ExactPmf cut_size_pmf(std::int64_t n) {
    if (n < 2) throw SizeError("cut size law needs n >= 2");
    ExactPmf p;
    p.first = 2;
    p.mass.reserve(static_cast<std::size_t>(n - 1));
    for (std::int64_t k = 2; k < n; ++k) {
        p.mass.push_back(make_rational(n) * harmonic(static_cast<std::size_t>(k - 1)) /
                         make_rational((n - 1) * (k + 1) * k));
    }
    p.mass.push_back(harmonic(static_cast<std::size_t>(n - 1)) / make_rational(n - 1));
    return p;
}

ExactPmf uniform_cut_size_pmf(std::int64_t n) {
    if (n < 2) throw SizeError("uniform cut law needs n >= 2");
    ExactPmf p;
    p.first = 1;
    for (std::int64_t k = 1; k < n; ++k) p.mass.push_back(make_rational(n, (n - 1) * k * (k + 1)));
    return p;
}

Rational f_n(std::int64_t n, std::int64_t k) {
    if (k >= 2 && k < n) return zeta_pmf(k);
    if (k == n && n >= 2) return harmonic(static_cast<std::size_t>(n - 1)) / make_rational(n);
    return 0;
}

ExactPmf zeta_conditional_pmf(std::int64_t n, CutLawVariant variant) {
    if (n < 2) throw SizeError("conditional jump law needs n >= 2");
    ExactPmf p;
    p.first = 2;
    if (variant == CutLawVariant::conditioned_walk) {
        const Rational norm = zeta_cdf(n);
        for (std::int64_t k = 2; k <= n; ++k) p.mass.push_back(zeta_pmf(k) / norm);
    } else {
        const Rational scale = make_rational(n, n - 1);
        for (std::int64_t k = 2; k <= n; ++k) p.mass.push_back(f_n(n, k) * scale);
    }
    return p;
}

Rational k_equals_one(std::int64_t n) {
    if (n < 2) throw SizeError("P(K_n = 1) needs n >= 2");
    const auto m = make_rational(n - 1);
    return harmonic(static_cast<std::size_t>(n - 2)) / (m * m) + harmonic(static_cast<std::size_t>(n - 1)) / m;
}

// ---------------------------------------------------------------------------

namespace {

template <class Num>
struct Arith;

template <>
struct Arith<Rational> {
    static Rational h(std::int64_t n) { return harmonic(static_cast<std::size_t>(n)); }
    static Rational frac(std::int64_t a, std::int64_t b) { return make_rational(a, b); }
};

template <>
struct Arith<long double> {
    static long double h(std::int64_t n) { return harmonic_float(static_cast<std::uint64_t>(n)); }
    static long double frac(std::int64_t a, std::int64_t b) {
        return static_cast<long double>(a) / static_cast<long double>(b);
    }
};

/// Per-step law q_m(k) for 2 <= k <= m and the one-cut atom P(X_m = 1).
template <class Num>
struct StepLaw {
    std::vector<Num> q;  // q[k], k in [2, m]
    Num one;
};

template <class Num>
StepLaw<Num> step_law(CountKind kind, std::int64_t m) {
    using A = Arith<Num>;
    StepLaw<Num> s;
    s.q.assign(static_cast<std::size_t>(m + 1), Num(0));
    if (kind == CountKind::K) {
        // n H_{k-1} / (k (k+1) (n-1)) and the one-cut atom written out.
        for (std::int64_t k = 2; k <= m - 2; ++k) s.q[k] = A::frac(m, (m - 1) * k * (k + 1)) * A::h(k - 1);
        s.one = A::h(m - 2) * A::frac(1, (m - 1) * (m - 1)) + A::h(m - 1) * A::frac(1, m - 1);
    } else {
        // zeta conditioned on zeta <= m.
        const Num cdf = Num(1) - A::frac(1, m) - A::h(m - 1) * A::frac(1, m + 1);
        for (std::int64_t k = 2; k <= m; ++k) s.q[k] = A::h(k - 1) * A::frac(1, k * (k + 1)) / cdf;
        s.one = s.q[m - 1] + s.q[m];
    }
    return s;
}

}  // namespace

template <class Num>
CountTables<Num>::CountTables(CountKind kind, std::int64_t n_max, std::int64_t j_max)
    : kind_(kind), n_max_(n_max) {
    if (n_max < 0) throw SizeError("n_max must be nonnegative");
    if (j_max == 0) throw SizeError("j_max must be positive");
    laws_.resize(static_cast<std::size_t>(n_max + 1));
    for (std::int64_t m = 0; m <= std::min<std::int64_t>(n_max, 1); ++m) {
        laws_[m].first = 0;
        laws_[m].mass = {Num(1)};
    }
    for (std::int64_t m = 2; m <= n_max; ++m) {
        const std::int64_t support = std::max<std::int64_t>(1, m / 2);
        const std::int64_t top = j_max > 0 ? std::min(support, j_max) : support;
        const StepLaw<Num> s = step_law<Num>(kind, m);
        Pmf<Num>& law = laws_[m];
        law.first = 1;
        law.mass.assign(static_cast<std::size_t>(top), Num(0));
        law.mass[0] = s.one;
        law.residual = 0;
        for (std::int64_t k = 2; k <= m - 2; ++k) {
            if (s.q[k] == 0) continue;
            const Pmf<Num>& rest = laws_[m - k];
            // rest is supported on j >= 1 since m - k >= 2.
            for (std::int64_t j = 2; j <= top; ++j) {
                const Num& r = rest.at(j - 1);
                if (r != 0) law.mass[j - 1] += s.q[k] * r;
            }
            const Num beyond = rest.survival(top);
            if (beyond != 0) law.residual += s.q[k] * beyond;
        }
    }
}

template <class Num>
const Pmf<Num>& CountTables<Num>::pmf(std::int64_t n) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("count table: n outside [0, n_max]");
    return laws_[static_cast<std::size_t>(n)];
}

template class CountTables<Rational>;
template class CountTables<long double>;

ExactPmf k_pmf(std::int64_t n, std::int64_t j_max) { return CountTables<Rational>(CountKind::K, n, j_max).pmf(n); }
ExactPmf j_pmf(std::int64_t n, std::int64_t j_max) { return CountTables<Rational>(CountKind::J, n, j_max).pmf(n); }
FloatPmf k_pmf_float(std::int64_t n, std::int64_t j_max) {
    return CountTables<long double>(CountKind::K, n, j_max).pmf(n);
}
FloatPmf j_pmf_float(std::int64_t n, std::int64_t j_max) {
    return CountTables<long double>(CountKind::J, n, j_max).pmf(n);
}

// ---------------------------------------------------------------------------

DominanceReport dominance_check(std::int64_t n_max, std::int64_t rational_cap) {
    if (n_max < 2) throw SizeError("dominance check needs n_max >= 2");
    DominanceReport rep;
    rep.n_max = n_max;
    rep.rational_cap = std::min(rational_cap, n_max);
    rep.min_slack = std::numeric_limits<double>::infinity();

    auto record = [&](std::int64_t n, std::int64_t j, bool violated, double slack, bool positive_j) {
        ++rep.pairs_checked;
        if (violated) {
            if (rep.violations == 0) {
                rep.first_violation_n = n;
                rep.first_violation_j = j;
            }
            ++rep.violations;
        }
        if (j >= 2 && positive_j && slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.min_n = n;
            rep.min_j = j;
        }
    };

    if (rep.rational_cap >= 2) {
        const CountTables<Rational> kt(CountKind::K, rep.rational_cap);
        const CountTables<Rational> jt(CountKind::J, rep.rational_cap);
        for (std::int64_t n = 2; n <= rep.rational_cap; ++n) {
            const auto& k = kt.pmf(n);
            const auto& j = jt.pmf(n);
            const std::int64_t top = std::max(k.last(), j.last()) + 1;
            for (std::int64_t x = 1; x <= top; ++x) {
                const Rational sj = j.survival(x);
                const Rational sk = k.survival(x);
                const Rational slack = sj - sk;
                record(n, x, slack < 0, slack.get_d(), sj > 0);
            }
        }
    }
    if (n_max > rep.rational_cap) {
        const CountTables<long double> kt(CountKind::K, n_max);
        const CountTables<long double> jt(CountKind::J, n_max);
        for (std::int64_t n = std::max<std::int64_t>(2, rep.rational_cap + 1); n <= n_max; ++n) {
            const auto& k = kt.pmf(n);
            const auto& j = jt.pmf(n);
            const std::int64_t top = std::max(k.last(), j.last()) + 1;
            for (std::int64_t x = 1; x <= top; ++x) {
                const long double sj = j.survival(x);
                const long double sk = k.survival(x);
                // Relative rounding allowance for extended-precision sums.
                const bool violated = sj < sk * (1 - 1e-12L);
                record(n, x, violated, static_cast<double>(sj - sk), sj > 0);
            }
        }
    }
    if (!std::isfinite(rep.min_slack)) {
        rep.min_slack = 0;
        rep.min_n = n_max;
        rep.min_j = 2;
    }
    return rep;
}

JumpLawCertificate no_consistent_jump_law_certificate(std::int64_t n) {
    if (n < 3) throw SizeError("certificate needs n >= 3");
    JumpLawCertificate c;
    c.below_constant = true;
    for (std::int64_t k = 2; k < n; ++k) {
        const Rational r = zeta_pmf(k) / f_n(n, k);
        if (k == 2) {
            c.value_below = r;
        } else if (r != c.value_below) {
            c.below_constant = false;
        }
    }
    c.value_at_n = zeta_pmf(n) / f_n(n, n);
    return c;
}

Rational sum_harmonic_over_index(std::int64_t n) {
    Rational s = 0;
    for (std::int64_t j = 1; j <= n; ++j) s += harmonic(static_cast<std::size_t>(j)) / make_rational(j);
    return s;
}

Rational sum_harmonic_over_index_closed(std::int64_t n) {
    Rational squares = 0;
    for (std::int64_t j = 1; j <= n; ++j) squares += make_rational(1, j * j);
    const Rational h = harmonic(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    return (h * h + squares) / 2;
}

GFunction g_function(std::int64_t n) {
    if (n < 1) throw SizeError("g(n) needs n >= 1");
    GFunction g;
    g.series = 1;
    for (std::int64_t j = 2; j <= n; ++j) {
        g.series += make_rational(1, j - 1) + harmonic(static_cast<std::size_t>(j - 2)) / make_rational(j);
    }
    g.sum_h_over_j = sum_harmonic_over_index(n);
    g.sum_h_over_j_closed = sum_harmonic_over_index_closed(n);
    g.closed_form = 1 + harmonic(static_cast<std::size_t>(n - 1));
    if (n >= 2) {
        // sum_{j=3}^n H_j/j = S(n) - H_1 - H_2/2
        g.closed_form += g.sum_h_over_j_closed - make_rational(7, 4);
        for (std::int64_t j = 3; j <= n; ++j) g.closed_form -= make_rational(1, j * (j - 1)) + make_rational(1, j * j);
    }
    return g;
}

long double g_function_float(std::int64_t n) {
    if (n < 1) throw SizeError("g(n) needs n >= 1");
    long double s = 1;
    for (std::int64_t j = 2; j <= n; ++j) {
        s += 1.0L / static_cast<long double>(j - 1) +
             harmonic_float(static_cast<std::uint64_t>(j - 2)) / static_cast<long double>(j);
    }
    return s;
}

Normalizers normalizers(double n) {
    if (!(n >= 3)) throw SizeError("normalizers need n >= 3");
    const double l = std::log(n);
    return {4 * n / (l * l * l), 2 * n / (l * l), n * l, n / (l * l * l), n / (l * l), l * l / n, l + std::log(l)};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> mean_count_table(CountKind kind, std::int64_t n_max) {
    if (n_max < 0) throw SizeError("n_max must be nonnegative");
    const auto size = static_cast<std::size_t>(n_max + 1);
    std::vector<double> p(size, 0.0);
    for (std::int64_t k = 2; k <= n_max; ++k) {
        p[k] = static_cast<double>(harmonic_float(static_cast<std::uint64_t>(k - 1)) /
                                   (static_cast<long double>(k) * static_cast<long double>(k + 1)));
    }
    std::vector<double> e(size, 0.0);
    for (std::int64_t m = 2; m <= n_max; ++m) {
        // sum_{k=2}^{m-2} p_k E[m-k], four accumulators so the loop vectorizes.
        double acc[4] = {0, 0, 0, 0};
        const std::int64_t hi = m - 2;
        std::int64_t k = 2;
        for (; k + 3 <= hi; k += 4) {
            acc[0] += p[k] * e[m - k];
            acc[1] += p[k + 1] * e[m - k - 1];
            acc[2] += p[k + 2] * e[m - k - 2];
            acc[3] += p[k + 3] * e[m - k - 3];
        }
        for (; k <= hi; ++k) acc[0] += p[k] * e[m - k];
        const double conv = (acc[0] + acc[1]) + (acc[2] + acc[3]);
        double scale;
        if (kind == CountKind::J) {
            const long double cdf = 1.0L - 1.0L / m - harmonic_float(static_cast<std::uint64_t>(m - 1)) / (m + 1);
            scale = static_cast<double>(1.0L / cdf);
        } else {
            scale = static_cast<double>(m) / static_cast<double>(m - 1);
        }
        e[m] = 1.0 + scale * conv;
    }
    return e;
}

Rational mean_count_exact(CountKind kind, std::int64_t n) {
    if (n < 0) throw SizeError("n must be nonnegative");
    std::vector<Rational> e(static_cast<std::size_t>(std::max<std::int64_t>(n, 1) + 1), Rational(0));
    for (std::int64_t m = 2; m <= n; ++m) {
        const StepLaw<Rational> s = step_law<Rational>(kind, m);
        Rational v = 1;
        for (std::int64_t k = 2; k <= m - 2; ++k) v += s.q[k] * e[m - k];
        e[m] = v;
    }
    return e[static_cast<std::size_t>(n)];
}

}  // namespace

std::vector<double> mean_j_table(std::int64_t n_max) { return mean_count_table(CountKind::J, n_max); }
std::vector<double> mean_k_table(std::int64_t n_max) { return mean_count_table(CountKind::K, n_max); }
double mean_j(std::int64_t n) { return mean_j_table(n).back(); }
double mean_k(std::int64_t n) { return mean_k_table(n).back(); }
Rational mean_j_exact(std::int64_t n) { return mean_count_exact(CountKind::J, n); }
Rational mean_k_exact(std::int64_t n) { return mean_count_exact(CountKind::K, n); }

}  // namespace rrtcut
