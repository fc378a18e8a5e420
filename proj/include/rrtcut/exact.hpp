#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rrtcut {

/// Canonical arbitrary-precision fraction.
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
std::string to_string(const Rational& q);

/// Finitely supported law on the integers {first, first + 1, ...}.
template <class Num>
struct Pmf {
    std::int64_t first = 0;
    std::vector<Num> mass;  // mass[i] = P(X = first + i)
    Num residual = 0;       // mass beyond the stored support (truncated tables)

    std::int64_t last() const { return first + static_cast<std::int64_t>(mass.size()) - 1; }
    Num at(std::int64_t k) const;
    /// P(X >= j), including the residual.
    Num survival(std::int64_t j) const;
    Num total() const;
    Num mean() const;
};

using ExactPmf = Pmf<Rational>;
using FloatPmf = Pmf<long double>;

extern template struct Pmf<Rational>;
extern template struct Pmf<long double>;

// ---------------------------------------------------------------------------
// Harmonic numbers and the jump laws.

/// H_n, exact and memoized. H_0 = 0.
Rational harmonic(std::size_t n);
/// H_n in extended precision: tabulated summation for small n, asymptotic
/// expansion beyond.
long double harmonic_float(std::uint64_t n);

/// P(zeta = k) = H_{k-1} / (k (k + 1)) for k >= 2, 0 otherwise.
Rational zeta_pmf(std::int64_t k);
/// P(zeta <= n) = 1 - 1/n - H_{n-1}/(n + 1), n >= 1.
Rational zeta_cdf(std::int64_t n);
/// P(zeta >= n) = 1/(n - 1) + H_{n-2}/n for n >= 2; 1 for n <= 2.
Rational zeta_tail(std::int64_t n);
/// P(zeta <= n) as the literal double sum over 1 <= i < k <= n of 1/(i k (k + 1)).
Rational zeta_cdf_by_double_sum(std::int64_t n);

/// P(xi = k) = 1/(k (k + 1)), k >= 1.
Rational xi_pmf(std::int64_t k);
/// P(xi >= n) = 1/n.
Rational xi_tail(std::int64_t n);

/// Sum_{k=i+1}^n 1/(k (k + 1)) summed term by term, and its telescoped value.
Rational telescopic_sum(std::int64_t i, std::int64_t n);
Rational telescopic_closed(std::int64_t i, std::int64_t n);

// ---------------------------------------------------------------------------
// Per-cut laws.

/// Size of the deleted subtree in one degree-biased cut of a random recursive
/// tree of size n: n H_{k-1} / ((n-1)(k+1)k) for 2 <= k < n, H_{n-1}/(n-1) at k = n.
ExactPmf cut_size_pmf(std::int64_t n);

/// Size removed by one uniform edge cut: n / ((n-1) k (k+1)), k in [1, n-1].
ExactPmf uniform_cut_size_pmf(std::int64_t n);

enum class CutLawVariant {
    conditioned_walk,  // zeta conditioned on zeta <= n
    tree_cut,          // f_n(k) n / (n - 1)
};

ExactPmf zeta_conditional_pmf(std::int64_t n, CutLawVariant variant = CutLawVariant::conditioned_walk);

/// f_n(k): H_{k-1}/(k(k+1)) for 2 <= k < n, H_{n-1}/n at k = n, else 0.
Rational f_n(std::int64_t n, std::int64_t k);

// ---------------------------------------------------------------------------
// Distributions of K_n (cuts to destroy) and J_n (jumps of the barrier walk).

enum class CountKind { K, J };

/// Tables of P(X_m = j) for all m <= n_max, built bottom-up. K_0 = K_1 = 0 and
/// J_0 = J_1 = 0; for m >= 2,
///   P(X_m = 1) = q_m(m - 1) + q_m(m),
///   P(X_m = j) = sum_{k=2}^{m-2} q_m(k) P(X_{m-k} = j - 1),  j >= 2,
/// with q_m the degree-biased cut law (K) or zeta conditioned on zeta <= m (J).
template <class Num>
class CountTables {
public:
    CountTables(CountKind kind, std::int64_t n_max, std::int64_t j_max = -1);

    CountKind kind() const { return kind_; }
    std::int64_t n_max() const { return n_max_; }
    /// Law of X_n over {0, ..., j_max}; truncated mass is in `residual`.
    const Pmf<Num>& pmf(std::int64_t n) const;

private:
    CountKind kind_;
    std::int64_t n_max_;
    std::vector<Pmf<Num>> laws_;
};

extern template class CountTables<Rational>;
extern template class CountTables<long double>;

/// Law of K_n over {1, ..., j_max} (K_0 = K_1 = 0 gives a point mass at 0).
/// j_max < 0 means untruncated.
ExactPmf k_pmf(std::int64_t n, std::int64_t j_max = -1);
ExactPmf j_pmf(std::int64_t n, std::int64_t j_max = -1);
FloatPmf k_pmf_float(std::int64_t n, std::int64_t j_max = -1);
FloatPmf j_pmf_float(std::int64_t n, std::int64_t j_max = -1);

/// P(K_n = 1) = H_{n-2}/(n-1)^2 + H_{n-1}/(n-1), evaluated for n >= 2.
Rational k_equals_one(std::int64_t n);

struct DominanceReport {
    std::int64_t n_max = 0;
    std::int64_t rational_cap = 0;
    std::size_t pairs_checked = 0;
    std::size_t violations = 0;
    double min_slack = 0;  // min over j >= 2 with P(J_n >= j) > 0 of P(J_n >= j) - P(K_n >= j)
    std::int64_t min_n = 0;
    std::int64_t min_j = 0;
    std::int64_t first_violation_n = 0;
    std::int64_t first_violation_j = 0;

    bool ok() const { return violations == 0; }
};

/// Checks P(J_n >= j) >= P(K_n >= j) for all 2 <= n <= n_max and all j,
/// exactly for n <= rational_cap and in extended precision above.
DominanceReport dominance_check(std::int64_t n_max, std::int64_t rational_cap = 60);

struct JumpLawCertificate {
    Rational value_below;  // common value of p_k / f_n(k), 2 <= k < n
    Rational value_at_n;   // p_n / f_n(n)
    bool below_constant = false;
};

/// With p_k = P(zeta = k), no single law can match every f_n: the ratio is
/// 1 below n and 1/(n+1) at n.
JumpLawCertificate no_consistent_jump_law_certificate(std::int64_t n);

struct GFunction {
    Rational series;       // sum_{j=1}^n P(zeta >= j)
    Rational closed_form;  // recomposed through sum H_j / j
    Rational sum_h_over_j;
    Rational sum_h_over_j_closed;  // (H_n^2 + sum 1/j^2) / 2
};

GFunction g_function(std::int64_t n);
long double g_function_float(std::int64_t n);

/// sum_{j=1}^n H_j / j, termwise and via the square identity.
Rational sum_harmonic_over_index(std::int64_t n);
Rational sum_harmonic_over_index_closed(std::int64_t n);

struct Normalizers {
    double a, b, c;             // 4n/(ln n)^3, 2n/(ln n)^2, n ln n
    double a_prime, b_prime;    // n/(ln n)^3, n/(ln n)^2
    double x_scale, x_shift;    // (ln n)^2 / n, ln n + ln ln n
};

Normalizers normalizers(double n);

/// E[J_m] for m = 0..n_max via E[J_m] = 1 + sum_k P(zeta = k | zeta <= m) E[J_{m-k}].
std::vector<double> mean_j_table(std::int64_t n_max);
double mean_j(std::int64_t n);
Rational mean_j_exact(std::int64_t n);
/// Same recursion with the degree-biased cut law.
std::vector<double> mean_k_table(std::int64_t n_max);
double mean_k(std::int64_t n);
Rational mean_k_exact(std::int64_t n);

}  // namespace rrtcut
