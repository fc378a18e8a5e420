#include "rrtcut/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rrtcut/coalescent.hpp"
#include "rrtcut/commands.hpp"
#include "rrtcut/cutting.hpp"
#include "rrtcut/exact.hpp"
#include "rrtcut/oracle.hpp"
#include "rrtcut/parallel.hpp"
#include "rrtcut/simulate.hpp"
#include "rrtcut/stats.hpp"

namespace rrtcut {

namespace {

// Tolerances and sizes for each criterion.
constexpr double kEnumerationSeconds = 10;
constexpr double kKRecursionSeconds = 60;
constexpr double kJRecursionSeconds = 60;
constexpr double kDominanceSeconds = 120;
constexpr double kCauchySeconds = 600;
constexpr std::uint64_t kJTrials = 1'000'000;
constexpr std::int64_t kJMaxN = 12;
constexpr double kSigmas = 3.0;
constexpr std::uint64_t kSplittingTrials = 100'000;
constexpr double kMinPValue = 1e-3;
constexpr std::uint64_t kRateTrials = 1'000'000;
constexpr std::int64_t kDominanceNMax = 200;
constexpr std::int64_t kDominanceRationalCap = 60;
constexpr double kGLow = 0.7, kGHigh = 1.4;
constexpr double kMeanJLow = 0.3, kMeanJHigh = 3.0;
constexpr double kMeanXLow = 0.7, kMeanXHigh = 1.4;
constexpr std::int64_t kXN = 100'000;
constexpr std::uint64_t kXTrials = 10'000;
constexpr std::int64_t kCauchyN = 1'000'000;
constexpr std::uint64_t kCauchyTrials = 10'000;
constexpr double kCauchyScaleSpread = 0.10;     // max |scale_i / mean scale - 1|
constexpr double kCauchyLocationSpread = 0.10;  // max |loc_i - mean loc| / mean scale

struct Context {
    const AcceptanceOptions& options;
    bool mutated(const char* key) const { return options.mutate == key; }
};

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& message) {
        if (!condition && passed) {
            passed = false;
            detail.str("");
            detail << message;
        }
    }
};

std::string fmt(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

bool same_law(const ExactPmf& a, const ExactPmf& b) {
    const std::int64_t lo = std::min(a.first, b.first), hi = std::max(a.last(), b.last());
    for (std::int64_t k = lo; k <= hi; ++k) {
        if (a.at(k) != b.at(k)) return false;
    }
    return a.residual == b.residual;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. cut size law vs enumeration
void enumeration(const Context& ctx, Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t pairs = 0;
    for (std::int64_t n = 3; n <= 7; ++n) {
        ExactPmf closed = cut_size_pmf(n);
        if (ctx.mutated("cut-size") && n == 5) closed.mass[0] += make_rational(1, 1'000'000);
        const ExactPmf brute = oracle::cut_size_law(static_cast<std::size_t>(n));
        pairs += increasing_tree_count(static_cast<std::size_t>(n)) * static_cast<std::size_t>(n - 1);
        out.require(same_law(closed, brute), "closed form differs from enumeration at n=" + std::to_string(n));
    }
    const double s = elapsed_since(t0);
    out.require(s < kEnumerationSeconds, "runtime " + fmt(s) + " s exceeds limit");
    if (out.passed) out.detail << "n=3..7 match over " << pairs << " (tree, edge) pairs";
}

// 2. K recursion vs full enumeration of the process
void k_recursion(const Context&, Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::int64_t n = 4; n <= 6; ++n) {
        out.require(same_law(k_pmf(n), oracle::k_law(static_cast<std::size_t>(n))),
                    "recursion differs from enumeration at n=" + std::to_string(n));
    }
    out.require(k_pmf(4).at(1) == make_rational(7, 9), "P(K_4=1) != 7/9");
    out.require(k_pmf(5).at(2) == make_rational(35, 96), "P(K_5=2) != 35/96");
    const double s = elapsed_since(t0);
    out.require(s < kKRecursionSeconds, "runtime " + fmt(s) + " s exceeds limit");
    if (out.passed) out.detail << "n=4,5,6 exact; P(K_4=1)=7/9, P(K_5=2)=35/96";
}

// 3. J recursion vs simulation
void j_recursion(const Context& ctx, Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out.require(j_pmf(4).at(2) == make_rational(10, 23), "P(J_4=2) != 10/23");
    double worst = 0;
    std::string worst_at;
    std::size_t atoms = 0;
    for (std::int64_t n = 2; n <= kJMaxN; ++n) {
        ExactPmf law = j_pmf(n);
        out.require(same_law(law, oracle::barrier_walk_law(n + 1, JumpLaw::zeta())),
                    "recursion differs from the walk dynamic program at n=" + std::to_string(n));
        if (ctx.mutated("j-law") && n == 8) {
            law.mass[0] += make_rational(1, 100);
            law.mass[1] -= make_rational(1, 100);
        }
        const auto samples = sample_j_counts(n, kJTrials, ctx.options.seed + static_cast<std::uint64_t>(n),
                                             ctx.options.workers);
        const stats::EmpiricalSummary s = stats::summarize(samples, n, ctx.options.seed);
        std::int64_t hi = law.last();
        if (!s.counts.empty()) hi = std::max(hi, s.counts.rbegin()->first);
        for (std::int64_t j = 0; j <= hi; ++j) {
            const double p = law.at(j).get_d();
            const double phat = s.frequency(j);
            if (p == 0 || p == 1) {
                out.require(phat == p, "P(J_" + std::to_string(n) + "=" + std::to_string(j) + ") is " + fmt(p) +
                                           " but observed " + fmt(phat));
                continue;
            }
            ++atoms;
            const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(kJTrials));
            const double z = std::fabs(phat - p) / sigma;
            if (z > worst) {
                worst = z;
                worst_at = "n=" + std::to_string(n) + " j=" + std::to_string(j);
            }
            out.require(z <= kSigmas, "P(J_" + std::to_string(n) + "=" + std::to_string(j) + ") off by " + fmt(z, 3) +
                                          " sigma");
        }
    }
    const double s = elapsed_since(t0);
    out.require(s < kJRecursionSeconds, "runtime " + fmt(s) + " s exceeds limit");
    if (out.passed) out.detail << atoms << " atoms for n=2..12 within 3 sigma (max " << fmt(worst, 3) << " at " << worst_at << ")";
}

// 4. dominance of K by J
void dominance(const Context&, Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const DominanceReport r = dominance_check(kDominanceNMax, kDominanceRationalCap);
    out.require(r.ok(), std::to_string(r.violations) + " violations, first at n=" + std::to_string(r.first_violation_n) +
                            " j=" + std::to_string(r.first_violation_j));
    const double s = elapsed_since(t0);
    out.require(s < kDominanceSeconds, "runtime " + fmt(s) + " s exceeds limit");
    if (out.passed) {
        out.detail << r.pairs_checked << " (n, j) pairs, 0 violations; min slack " << fmt(r.min_slack) << " at n="
                   << r.min_n << " j=" << r.min_j;
    }
}

// 5. splitting property at n = 6
void splitting(const Context& ctx, Outcome& out) {
    constexpr std::size_t n = 6;
    const auto law = oracle::splitting_law(n);
    for (std::size_t l = 2; l <= 4; ++l) {
        const auto it = law.find(l);
        out.require(it != law.end(), "remainder size " + std::to_string(l) + " never occurs");
        if (it == law.end()) continue;
        const Rational u = make_rational(1, static_cast<std::int64_t>(increasing_tree_count(l)));
        out.require(std::all_of(it->second.begin(), it->second.end(), [&](const Rational& p) { return p == u; }),
                    "conditional law not uniform for l=" + std::to_string(l));
    }
    const auto ranks = parallel_map(kSplittingTrials, ctx.options.workers, [&](std::uint64_t i) {
        Rng rng = Rng::stream(ctx.options.seed, i);
        const CutOutcome c = degree_biased_cut(generate_rrt(n, rng), rng);
        if (!c.remaining) return std::pair<std::size_t, std::uint64_t>{0, 0};
        return std::pair<std::size_t, std::uint64_t>{c.remaining->size(), c.remaining->rank()};
    });
    std::string ps;
    for (std::size_t l = 3; l <= 4; ++l) {
        std::vector<std::uint64_t> counts(increasing_tree_count(l), 0);
        for (const auto& [size, rank] : ranks) {
            if (size == l) ++counts[rank];
        }
        const stats::ChiSquareResult r = stats::chi_square_uniformity(counts);
        ps += (ps.empty() ? "" : ", ") + std::string("l=") + std::to_string(l) + " p=" + fmt(r.p_value, 4);
        out.require(r.p_value > kMinPValue, "chi-square p=" + fmt(r.p_value, 4) + " for l=" + std::to_string(l));
    }
    if (out.passed) out.detail << "exact uniform for l=2,3,4; Monte Carlo " << ps;
}

// 6. tail identities, key inequality, certificate
void tail_identities(const Context& ctx, Outcome& out) {
    // Literal double sum over 1 <= i < k <= n of 1/(i k (k + 1)), built up in n.
    Rational direct = 0;
    for (std::int64_t n = 1; n <= 1000; ++n) {
        if (n >= 2) {
            Rational inner = 0;
            for (std::int64_t i = 1; i < n; ++i) inner += make_rational(1, i);
            direct += inner * make_rational(1, n * (n + 1));
        }
        Rational closed = zeta_cdf(n);
        if (ctx.mutated("zeta-cdf") && n == 500) closed += make_rational(1, 1'000'000'000);
        out.require(direct == closed, "closed form of P(zeta<=n) fails at n=" + std::to_string(n));
        if (!out.passed) return;
    }
    for (std::int64_t n = 1; n <= 120; ++n) {
        for (std::int64_t i = 0; i < n; ++i) {
            out.require(telescopic_sum(i, n) == telescopic_closed(i, n),
                        "telescopic identity fails at i=" + std::to_string(i) + " n=" + std::to_string(n));
        }
    }
    std::size_t key_pairs = 0;
    for (std::int64_t n = 3; n <= 500; ++n) {
        const ExactPmf walk = zeta_conditional_pmf(n, CutLawVariant::conditioned_walk);
        const ExactPmf cut = cut_size_pmf(n);
        for (std::int64_t k = 2; k < n; ++k, ++key_pairs) {
            out.require(walk.at(k) >= cut.at(k),
                        "key inequality fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    for (std::int64_t n = 3; n <= 100; ++n) {
        const JumpLawCertificate c = no_consistent_jump_law_certificate(n);
        out.require(c.below_constant && c.value_below == 1 && c.value_at_n == make_rational(1, n + 1),
                    "certificate is not (1, 1/(n+1)) at n=" + std::to_string(n));
    }
    if (out.passed) {
        out.detail << "cdf n<=1000, telescoping n<=120, key inequality on " << key_pairs
                   << " pairs n<=500, certificate n<=100";
    }
}

// 7. coalescent rates
void rates(const Context& ctx, Outcome& out) {
    for (std::int64_t n = 3; n <= 100; ++n) {
        const ExactPmf cut = cut_size_pmf(n);
        const Rational expected = make_rational(n - 1) * (cut.at(n - 1) + cut.at(n));
        out.require(rate_lambda(n, n) == expected, "lambda'_{n,n} mismatch at n=" + std::to_string(n));
    }
    for (std::int64_t n = 4; n <= 200; ++n) {
        Rational d = consistency_defect(n);
        if (ctx.mutated("consistency") && n == 50) d += make_rational(1, 1000);
        out.require(d == make_rational(1, n - 2), "consistency defect is not 1/(n-2) at n=" + std::to_string(n));
    }
    const std::vector<Vertex> labels{1, 2, 3};
    const Rational target = make_rational(1, 20);
    out.require(rate_lambda(6, 3) == target, "lambda'_{6,3} != 1/20");
    out.require(make_rational(5) * oracle::first_merge_probability(6, labels) == target,
                "enumerated first-merge rate for {1,2,3} at n=6 != 1/20");
    const MergeRateEstimate est = estimate_first_merge_rate(6, labels, kRateTrials, ctx.options.seed, ctx.options.workers);
    const double p = 1.0 / 100.0;
    const double sigma = 5.0 * std::sqrt(p * (1 - p) / static_cast<double>(kRateTrials));
    const double z = std::fabs(est.estimate - target.get_d()) / sigma;
    out.require(z <= kSigmas, "Monte Carlo rate " + fmt(est.estimate) + " is " + fmt(z, 3) + " sigma from 1/20");
    if (out.passed) {
        out.detail << "exact for n<=100 and 4<=n<=200; Monte Carlo rate " << fmt(est.estimate) << " (" << fmt(z, 3)
                   << " sigma from 1/20)";
    }
}

// 8. sum of H_j / j and the growth of g
void g_identity(const Context& ctx, Outcome& out) {
    Rational h = 0, squares = 0, termwise = 0;
    for (std::int64_t j = 1; j <= 1000; ++j) {
        const Rational inv = make_rational(1, j);
        h += inv;
        squares += inv * inv;
        termwise += h * inv;
        Rational closed = (h * h + squares) / 2;
        if (ctx.mutated("g") && j == 700) closed -= make_rational(1, 1'000'000);
        out.require(termwise == closed, "sum H_j/j identity fails at n=" + std::to_string(j));
        if (!out.passed) return;
    }
    for (std::int64_t n : {1, 2, 3, 4, 10, 50, 200}) {
        const GFunction g = g_function(n);
        out.require(g.series == g.closed_form, "g recomposition fails at n=" + std::to_string(n));
    }
    constexpr std::int64_t big = 1'000'000;
    const double l = std::log(static_cast<double>(big));
    const double ratio = static_cast<double>(g_function_float(big)) * 2.0 / (l * l);
    out.require(ratio > kGLow && ratio < kGHigh, "g(10^6) 2/(ln n)^2 = " + fmt(ratio) + " outside (0.7, 1.4)");
    if (out.passed) out.detail << "identity n<=1000; g(10^6) 2/(ln n)^2 = " << fmt(ratio);
}

// 9. first-order means
void means(const Context& ctx, Outcome& out) {
    const std::vector<double> table = mean_j_table(100'000);
    std::vector<double> ratios;
    for (std::int64_t n : {1'000, 10'000, 100'000}) {
        const double l = std::log(static_cast<double>(n));
        ratios.push_back(table[static_cast<std::size_t>(n)] * l * l / (2.0 * static_cast<double>(n)));
    }
    for (double r : ratios) out.require(r > kMeanJLow && r < kMeanJHigh, "E[J_n] ratio " + fmt(r) + " outside (0.3, 3)");
    out.require(std::fabs(ratios[1] - 1) < std::fabs(ratios[0] - 1) && std::fabs(ratios[2] - 1) < std::fabs(ratios[1] - 1),
                "E[J_n] ratios " + fmt(ratios[0]) + ", " + fmt(ratios[1]) + ", " + fmt(ratios[2]) +
                    " do not move toward 1");
    const auto xs = sample_cut_counts(Process::uniform, kXN, kXTrials, ctx.options.seed, ctx.options.workers);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double xr = mean * std::log(static_cast<double>(kXN)) / static_cast<double>(kXN);
    out.require(xr > kMeanXLow && xr < kMeanXHigh, "mean X_n ln n / n = " + fmt(xr) + " outside (0.7, 1.4)");
    if (out.passed) {
        out.detail << "E[J_n] ratios " << fmt(ratios[0], 4) << ", " << fmt(ratios[1], 4) << ", " << fmt(ratios[2], 4)
                   << "; mean X_n ln n / n = " << fmt(xr, 4);
    }
}

// 10. Cauchy shape of normalized J_n
void cauchy(const Context& ctx, Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<stats::CauchyDiagnostic> fits;
    for (std::uint64_t s = 0; s < 3; ++s) {
        const std::uint64_t seed = ctx.options.seed + 1000 * (s + 1);
        const auto js = sample_j_counts(kCauchyN, kCauchyTrials, seed, ctx.options.workers);
        std::vector<double> z(js.size());
        for (std::size_t i = 0; i < js.size(); ++i) {
            z[i] = stats::normalize_j(static_cast<double>(js[i]), static_cast<double>(kCauchyN));
        }
        fits.push_back(stats::cauchy_diagnostic(z));
    }
    std::size_t closer = 0;
    for (const auto& f : fits) closer += f.ks_distance < f.ks_normal;
    std::string ks = "KS cauchy/normal:";
    for (const auto& f : fits) ks += " " + fmt(f.ks_distance, 3) + "/" + fmt(f.ks_normal, 3);
    double mean_scale = 0, mean_loc = 0;
    for (const auto& f : fits) {
        mean_scale += f.fitted_scale / 3;
        mean_loc += f.fitted_location / 3;
    }
    bool scale_stable = true, location_stable = true;
    for (const auto& f : fits) {
        scale_stable &= std::fabs(f.fitted_scale / mean_scale - 1) < kCauchyScaleSpread;
        location_stable &= std::fabs(f.fitted_location - mean_loc) / mean_scale < kCauchyLocationSpread;
    }
    const std::string stability = std::string(scale_stable && location_stable ? "fit seed-stable" : "fit not seed-stable") +
                                  " (scale " + fmt(mean_scale, 4) + ", location " + fmt(mean_loc, 4) + ")";
    out.require(closer == fits.size(), "Cauchy fit closer than normal fit for " + std::to_string(closer) + " of " +
                                           std::to_string(fits.size()) + " seeds; " + ks + "; " + stability);
    out.require(scale_stable, "fitted scale not seed-stable; " + ks);
    out.require(location_stable, "fitted location not seed-stable; " + ks);
    const double s = elapsed_since(t0);
    out.require(s < kCauchySeconds, "runtime " + fmt(s) + " s exceeds limit");
    if (out.passed) {
        out.detail << ks << "; " << stability;
    }
}

// 11. worker-count invariance of CSV output
void reproducibility(const Context& ctx, Outcome& out) {
    std::vector<SimulateConfig> configs(4);
    configs[0].mode = SimulateConfig::Mode::degree_biased;
    configs[0].n = 200;
    configs[0].trials = 2000;
    configs[0].emit = SimulateConfig::Emit::rows;
    configs[1].mode = SimulateConfig::Mode::uniform;
    configs[1].n = 100;
    configs[1].trials = 300;
    configs[1].emit = SimulateConfig::Emit::trace;
    configs[2].mode = SimulateConfig::Mode::walk;
    configs[2].n = 10'000;
    configs[2].trials = 2000;
    configs[3].mode = SimulateConfig::Mode::coalescent;
    configs[3].n = 30;
    configs[3].trials = 300;
    configs[3].emit = SimulateConfig::Emit::rows;
    std::size_t bytes = 0;
    for (auto& c : configs) {
        c.seed = ctx.options.seed;
        std::string reference;
        for (unsigned w : {1u, 2u, 4u}) {
            c.workers = w;
            const std::string text = simulate_output(c).text;
            if (w == 1) {
                reference = text;
                bytes += text.size();
            } else {
                out.require(text == reference, "output differs between 1 and " + std::to_string(w) + " workers");
            }
        }
    }
    if (out.passed) out.detail << "4 configurations, " << bytes << " bytes each identical for 1, 2, 4 workers";
}

using CriterionFn = void (*)(const Context&, Outcome&);

const std::map<std::string, CriterionFn>& criterion_functions() {
    static const std::map<std::string, CriterionFn> fns{
        {"enumeration", enumeration}, {"k-recursion", k_recursion}, {"j-recursion", j_recursion},
        {"dominance", dominance},     {"splitting", splitting},     {"tail-identities", tail_identities},
        {"rates", rates},             {"g-identity", g_identity},   {"means", means},
        {"cauchy", cauchy},           {"reproducibility", reproducibility},
    };
    return fns;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
    static const std::vector<CriterionInfo> list{
        {1, "enumeration", "cut size law equals enumeration, n=3..7"},
        {2, "k-recursion", "K_n law equals process enumeration, n=4,5,6"},
        {3, "j-recursion", "J_n law matches simulation within 3 sigma, n<=12"},
        {4, "dominance", "J_n dominates K_n, n<=200"},
        {5, "splitting", "root remainder is uniform given its size, n=6"},
        {6, "tail-identities", "tail identities, key inequality, certificate"},
        {7, "rates", "coalescent rates and consistency defect"},
        {8, "g-identity", "sum of H_j/j identity and growth of g"},
        {9, "means", "first-order mean trends"},
        {10, "cauchy", "Cauchy shape of normalized J_n at n=10^6"},
        {11, "reproducibility", "CSV output independent of worker count"},
    };
    return list;
}

const std::vector<std::string>& mutation_keys() {
    static const std::vector<std::string> keys{"cut-size", "j-law", "zeta-cdf", "consistency", "g"};
    return keys;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    const auto& all = acceptance_criteria();
    for (const auto& o : options.only) {
        const bool known = std::any_of(all.begin(), all.end(), [&](const CriterionInfo& c) {
            return o == c.key || o == std::to_string(c.id);
        });
        if (!known) throw std::invalid_argument("unknown criterion '" + o + "'");
    }
    if (!options.mutate.empty() &&
        std::find(mutation_keys().begin(), mutation_keys().end(), options.mutate) == mutation_keys().end()) {
        throw std::invalid_argument("unknown mutation '" + options.mutate + "'");
    }
    const Context ctx{options};
    std::vector<CriterionResult> results;
    for (const auto& c : all) {
        if (!options.only.empty() && std::none_of(options.only.begin(), options.only.end(), [&](const std::string& o) {
                return o == c.key || o == std::to_string(c.id);
            })) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            criterion_functions().at(c.key)(ctx, out);
        } catch (const std::exception& e) {
            out.passed = false;
            out.detail.str("");
            out.detail << "exception: " << e.what();
        }
        CriterionResult r{c.id, c.key, c.title, out.passed, out.detail.str(), elapsed_since(t0)};
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_result(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "%s [%02d] %-16s %-52s (%.2f s)", r.passed ? "PASS" : "FAIL", r.id, r.key.c_str(),
                  r.title.c_str(), r.seconds);
    return std::string(head) + (r.detail.empty() ? "" : ": " + r.detail);
}

}  // namespace rrtcut
