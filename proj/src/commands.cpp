#include "rrtcut/commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>
#include <variant>

#include "json.hpp"

#include "rrtcut/coalescent.hpp"
#include "rrtcut/exact.hpp"
#include "rrtcut/parallel.hpp"
#include "rrtcut/simulate.hpp"
#include "rrtcut/stats.hpp"

#ifndef RRTCUT_VERSION
#define RRTCUT_VERSION "0.0.0"
#endif

namespace rrtcut {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::int64_t, double, std::string>;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_long_double(long double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.21Lg", x);
    return buf;
}

// Rows plus leading metadata; renders as CSV with `#` comment lines or as a
// JSON object with "meta", "columns" and "rows".
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> footer;

    void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }

    std::string render(OutputFormat format) const {
        if (format == OutputFormat::json) return to_json().dump(2) + "\n";
        std::string out = "# rrtcut " + version_string();
        for (const auto& [k, v] : meta) out += " " + k + "=" + v;
        out += "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
        out += "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += cell_text(row[i]);
            }
            out += "\n";
        }
        if (!footer.empty()) {
            out += "#";
            for (const auto& [k, v] : footer) out += " " + k + "=" + v;
            out += "\n";
        }
        return out;
    }

private:
    static std::string cell_text(const Cell& c) {
        if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
        if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
        return std::get<std::string>(c);
    }

    Json to_json() const {
        Json j;
        j["meta"]["version"] = version_string();
        for (const auto& [k, v] : meta) j["meta"][k] = v;
        j["columns"] = columns;
        Json rs = Json::array();
        for (const auto& row : rows) {
            Json r = Json::array();
            for (const auto& c : row) std::visit([&](const auto& x) { r.push_back(x); }, c);
            rs.push_back(std::move(r));
        }
        j["rows"] = std::move(rs);
        for (const auto& [k, v] : footer) j["summary"][k] = v;
        return j;
    }
};

const char* mode_name(SimulateConfig::Mode m) {
    switch (m) {
        case SimulateConfig::Mode::degree_biased: return "degree-biased";
        case SimulateConfig::Mode::uniform: return "uniform";
        case SimulateConfig::Mode::walk: return "walk";
        case SimulateConfig::Mode::coupled: return "coupled";
        case SimulateConfig::Mode::coalescent: return "coalescent";
    }
    return "?";
}

const char* emit_name(SimulateConfig::Emit e) {
    switch (e) {
        case SimulateConfig::Emit::summary: return "summary";
        case SimulateConfig::Emit::rows: return "rows";
        case SimulateConfig::Emit::trace: return "trace";
    }
    return "?";
}

JumpLaw jump_law_named(const std::string& name) {
    if (name == "zeta") return JumpLaw::zeta();
    if (name == "xi") return JumpLaw::xi();
    throw UsageError("unknown jump law '" + name + "' (expected zeta or xi)");
}

void add_histogram(Table& t, const std::vector<std::int64_t>& samples, std::int64_t n, std::uint64_t seed) {
    const stats::EmpiricalSummary s = stats::summarize(samples, n, seed);
    t.columns = {"value", "count", "frequency"};
    for (const auto& [v, c] : s.counts) {
        t.rows.push_back({v, static_cast<std::int64_t>(c), static_cast<double>(c) / static_cast<double>(s.trials)});
    }
    t.footer = {{"mean", format_double(s.mean)}, {"variance", format_double(s.variance)}};
}

void add_count_rows(Table& t, const std::vector<std::int64_t>& samples, std::int64_t n, const char* column) {
    t.columns = {"trial", "n", column};
    for (std::size_t i = 0; i < samples.size(); ++i) t.rows.push_back({static_cast<std::int64_t>(i), n, samples[i]});
}

std::string cell_rational(const Rational& q) { return to_string(q); }

}  // namespace

std::string version_string() { return RRTCUT_VERSION; }

CommandOutput simulate_output(const SimulateConfig& c) {
    using Mode = SimulateConfig::Mode;
    using Emit = SimulateConfig::Emit;
    if (c.n < 2) throw UsageError("--n must be at least 2");
    if (c.trials == 0) throw UsageError("--trials must be positive");
    const bool walk_like = c.mode == Mode::walk || c.mode == Mode::coupled;
    if (c.jump_law_given && !walk_like) throw UsageError("--jump applies to --walk and --coupled only");
    if (c.barrier && c.mode != Mode::walk) throw UsageError("--barrier applies to --walk only");
    if (c.emit == Emit::trace && walk_like) throw UsageError("--emit trace is not available for walks");

    Table t;
    t.add_meta("command", "simulate");
    t.add_meta("mode", mode_name(c.mode));
    t.add_meta("n", std::to_string(c.n));
    t.add_meta("trials", std::to_string(c.trials));
    t.add_meta("seed", std::to_string(c.seed));
    t.add_meta("emit", emit_name(c.emit));
    const unsigned workers = c.workers == 0 ? 1 : c.workers;
    const auto n = static_cast<std::size_t>(c.n);

    switch (c.mode) {
        case Mode::degree_biased:
        case Mode::uniform: {
            const Process p = c.mode == Mode::degree_biased ? Process::degree_biased : Process::uniform;
            if (c.emit == Emit::trace) {
                const auto traces = sample_traces(p, n, c.trials, c.seed, workers);
                t.columns = {"trial", "step", "removed_size", "remaining_size"};
                for (std::size_t i = 0; i < traces.size(); ++i) {
                    for (std::size_t s = 0; s < traces[i].steps.size(); ++s) {
                        const CutStep& st = traces[i].steps[s];
                        t.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(s + 1),
                                          static_cast<std::int64_t>(st.removed_size),
                                          static_cast<std::int64_t>(st.remaining_size)});
                    }
                }
                break;
            }
            const auto counts = sample_cut_counts(p, n, c.trials, c.seed, workers);
            if (c.emit == Emit::rows) {
                add_count_rows(t, counts, c.n, "cuts");
            } else {
                add_histogram(t, counts, c.n, c.seed);
            }
            break;
        }
        case Mode::walk: {
            const JumpLaw law = jump_law_named(c.jump_law);
            const std::int64_t barrier = c.barrier ? *c.barrier : (law.kind() == JumpKind::Zeta ? c.n + 1 : c.n);
            if (barrier < 1) throw UsageError("--barrier must be at least 1");
            t.add_meta("jump", law.name());
            t.add_meta("barrier", std::to_string(barrier));
            const auto jumps = sample_barrier_jumps(barrier, law, c.trials, c.seed, workers);
            if (c.emit == Emit::rows) {
                add_count_rows(t, jumps, c.n, "jumps");
            } else {
                add_histogram(t, jumps, c.n, c.seed);
            }
            break;
        }
        case Mode::coupled: {
            const JumpLaw law = jump_law_named(c.jump_law);
            t.add_meta("jump", law.name());
            const auto runs = sample_coupled(c.n, law, c.trials, c.seed, workers);
            if (c.emit == Emit::rows) {
                t.columns = {"trial", "n", "M", "N"};
                for (std::size_t i = 0; i < runs.size(); ++i) {
                    t.rows.push_back({static_cast<std::int64_t>(i), c.n, runs[i].walk.jumps, runs[i].first_passage});
                }
            } else {
                std::vector<std::int64_t> gap(runs.size());
                for (std::size_t i = 0; i < runs.size(); ++i) gap[i] = runs[i].walk.jumps - runs[i].first_passage;
                add_histogram(t, gap, c.n, c.seed);
                t.columns[0] = "M_minus_N";
            }
            break;
        }
        case Mode::coalescent: {
            const auto runs = parallel_map(c.trials, workers, [&](std::uint64_t i) {
                Rng rng = Rng::stream(c.seed, i);
                return simulate_degree_biased_coalescent(n, rng);
            });
            if (c.emit == Emit::summary) {
                std::vector<std::int64_t> events(runs.size());
                for (std::size_t i = 0; i < runs.size(); ++i) events[i] = static_cast<std::int64_t>(runs[i].history.size());
                add_histogram(t, events, c.n, c.seed);
            } else {
                t.columns = {"trial", "event", "time", "merged_size", "blocks_remaining"};
                for (std::size_t i = 0; i < runs.size(); ++i) {
                    for (std::size_t e = 0; e < runs[i].history.size(); ++e) {
                        const CoalescentEvent& ev = runs[i].history[e];
                        t.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(e + 1), ev.time,
                                          static_cast<std::int64_t>(ev.merged_size()),
                                          static_cast<std::int64_t>(ev.blocks_remaining)});
                    }
                }
            }
            break;
        }
    }
    return {t.render(c.format), true};
}

CommandOutput exact_output(const ExactConfig& c) {
    Table t;
    t.add_meta("command", "exact");
    const int selected = !c.dist.empty() + c.table + c.dominance + c.consistency + c.certificate + c.g + !c.mean.empty();
    if (selected != 1) {
        throw UsageError("choose exactly one of --dist, --table, --dominance, --consistency, --certificate, --g, --mean");
    }
    const auto need_n = [&](std::int64_t min) {
        if (c.n < min) throw UsageError("--n must be at least " + std::to_string(min));
    };
    const auto rational_ok = [&](std::int64_t n) {
        if (c.float_mode) return false;
        if (n > c.rational_cap) {
            throw UsageError("n = " + std::to_string(n) + " exceeds the rational cap " + std::to_string(c.rational_cap) +
                             "; use --float or raise --rational-cap");
        }
        return true;
    };

    if (!c.dist.empty()) {
        need_n(2);
        t.add_meta("dist", c.dist);
        t.add_meta("n", std::to_string(c.n));
        const bool count_law = c.dist == "K" || c.dist == "J";
        if (count_law && !rational_ok(c.n)) {
            t.add_meta("arithmetic", "float");
            const FloatPmf p = c.dist == "K" ? k_pmf_float(c.n, c.j_max) : j_pmf_float(c.n, c.j_max);
            t.columns = {"j", "prob"};
            for (std::int64_t j = p.first; j <= p.last(); ++j) t.rows.push_back({j, format_long_double(p.at(j))});
            if (p.residual != 0) t.footer = {{"residual", format_long_double(p.residual)}};
            return {t.render(c.format), true};
        }
        ExactPmf p;
        if (c.dist == "K") p = k_pmf(c.n, c.j_max);
        else if (c.dist == "J") p = j_pmf(c.n, c.j_max);
        else if (c.dist == "cut-size") p = cut_size_pmf(c.n);
        else if (c.dist == "uniform-cut") p = uniform_cut_size_pmf(c.n);
        else if (c.dist == "zeta-cond") p = zeta_conditional_pmf(c.n, CutLawVariant::conditioned_walk);
        else if (c.dist == "cut-cond") p = zeta_conditional_pmf(c.n, CutLawVariant::tree_cut);
        else throw UsageError("unknown --dist '" + c.dist + "'");
        t.add_meta("arithmetic", "rational");
        t.columns = {"j", "prob", "prob_float"};
        for (std::int64_t j = p.first; j <= p.last(); ++j) {
            t.rows.push_back({j, cell_rational(p.at(j)), p.at(j).get_d()});
        }
        if (p.residual != 0) t.footer = {{"residual", to_string(p.residual)}};
        return {t.render(c.format), true};
    }

    if (c.table) {
        need_n(2);
        t.add_meta("table", "K,J");
        t.add_meta("n", std::to_string(c.n));
        t.columns = {"n", "j", "prob_K", "prob_J", "surv_K", "surv_J"};
        const auto emit = [&](auto&& kt, auto&& jt, auto&& fmt) {
            for (std::int64_t m = 2; m <= c.n; ++m) {
                const auto& k = kt.pmf(m);
                const auto& jl = jt.pmf(m);
                const std::int64_t top = std::max(k.last(), jl.last());
                for (std::int64_t j = 1; j <= top; ++j) {
                    t.rows.push_back({m, j, fmt(k.at(j)), fmt(jl.at(j)), fmt(k.survival(j)), fmt(jl.survival(j))});
                }
            }
        };
        if (rational_ok(c.n)) {
            t.add_meta("arithmetic", "rational");
            emit(CountTables<Rational>(CountKind::K, c.n, c.j_max), CountTables<Rational>(CountKind::J, c.n, c.j_max),
                 [](const Rational& q) { return to_string(q); });
        } else {
            t.add_meta("arithmetic", "float");
            emit(CountTables<long double>(CountKind::K, c.n, c.j_max),
                 CountTables<long double>(CountKind::J, c.n, c.j_max),
                 [](long double x) { return format_long_double(x); });
        }
        return {t.render(c.format), true};
    }

    if (c.dominance) {
        if (c.n_max < 2) throw UsageError("--n-max must be at least 2");
        const std::int64_t cap = c.float_mode ? 1 : c.rational_cap;
        const DominanceReport r = dominance_check(c.n_max, cap);
        t.add_meta("check", "dominance");
        t.add_meta("n_max", std::to_string(c.n_max));
        t.add_meta("rational_cap", std::to_string(cap));
        if (c.format == OutputFormat::csv) {
            std::string text = t.render(c.format);
            text.erase(text.find('\n') + 1);  // keep the metadata line only
            if (r.ok()) {
                text += "OK, min slack at (n,j)=(" + std::to_string(r.min_n) + "," + std::to_string(r.min_j) +
                        "): " + format_double(r.min_slack) + " over " + std::to_string(r.pairs_checked) + " pairs\n";
            } else {
                text += "VIOLATION, " + std::to_string(r.violations) + " pairs fail; first at (n,j)=(" +
                        std::to_string(r.first_violation_n) + "," + std::to_string(r.first_violation_j) + ")\n";
            }
            return {text, r.ok()};
        }
        t.columns = {"status", "pairs_checked", "violations", "min_slack", "min_n", "min_j"};
        t.rows.push_back({std::string(r.ok() ? "OK" : "VIOLATION"), static_cast<std::int64_t>(r.pairs_checked),
                          static_cast<std::int64_t>(r.violations), r.min_slack, r.min_n, r.min_j});
        return {t.render(c.format), r.ok()};
    }

    if (c.consistency) {
        need_n(4);
        const Rational d = consistency_defect(c.n);
        t.add_meta("check", "consistency");
        t.columns = {"n", "defect", "defect_float"};
        t.rows.push_back({c.n, to_string(d), d.get_d()});
        return {t.render(c.format), true};
    }

    if (c.certificate) {
        need_n(3);
        const JumpLawCertificate cert = no_consistent_jump_law_certificate(c.n);
        t.add_meta("check", "jump-law-certificate");
        t.columns = {"n", "ratio_below_n", "ratio_at_n", "constant_below_n"};
        t.rows.push_back({c.n, to_string(cert.value_below), to_string(cert.value_at_n),
                          std::string(cert.below_constant ? "true" : "false")});
        return {t.render(c.format), true};
    }

    if (c.g) {
        need_n(1);
        t.add_meta("function", "g");
        if (rational_ok(c.n)) {
            const GFunction g = g_function(c.n);
            t.columns = {"n", "series", "closed_form", "equal", "g_float"};
            t.rows.push_back({c.n, to_string(g.series), to_string(g.closed_form),
                              std::string(g.series == g.closed_form ? "true" : "false"), g.series.get_d()});
            return {t.render(c.format), g.series == g.closed_form};
        }
        const long double g = g_function_float(c.n);
        const double l = std::log(static_cast<double>(c.n));
        t.columns = {"n", "g", "g_over_half_log_squared"};
        t.rows.push_back({c.n, format_long_double(g), c.n > 1 ? static_cast<double>(g) * 2.0 / (l * l) : 0.0});
        return {t.render(c.format), true};
    }

    need_n(2);
    if (c.mean != "J" && c.mean != "K") throw UsageError("--mean must be J or K");
    t.add_meta("mean", c.mean);
    const double l = std::log(static_cast<double>(c.n));
    const double scale = 2.0 * static_cast<double>(c.n) / (l * l);
    if (!c.float_mode && c.n <= c.rational_cap) {
        const Rational m = c.mean == "J" ? mean_j_exact(c.n) : mean_k_exact(c.n);
        t.columns = {"n", "mean", "mean_float", "ratio"};
        t.rows.push_back({c.n, to_string(m), m.get_d(), m.get_d() / scale});
    } else {
        const double m = c.mean == "J" ? mean_j(c.n) : mean_k(c.n);
        t.columns = {"n", "mean", "ratio"};
        t.rows.push_back({c.n, m, m / scale});
    }
    return {t.render(c.format), true};
}

CommandOutput rates_output(const RatesConfig& c) {
    if (c.n < 3) throw UsageError("--n must be at least 3");
    Table t;
    t.add_meta("command", "rates");
    t.add_meta("family", c.bs ? "bolthausen-sznitman" : "degree-biased");
    t.add_meta("n", std::to_string(c.n));
    t.columns = {"n", "k", "rate_num", "rate_den"};
    for (std::int64_t k = c.bs ? 2 : 3; k <= c.n; ++k) {
        const Rational r = c.bs ? rate_bs(c.n, c.n, k) : rate_lambda(c.n, k);
        t.rows.push_back({c.n, k, r.get_num().get_str(), r.get_den().get_str()});
    }
    return {t.render(c.format), true};
}

CommandOutput cut_tree_output(const CutTreeConfig& c) {
    Rng rng(c.seed);
    IncreasingTree tree;
    if (!c.tree_csv.empty()) {
        try {
            tree = IncreasingTree::from_csv(c.tree_csv);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("bad --tree: ") + e.what());
        }
    } else {
        if (c.n < 1) throw UsageError("--n must be at least 1");
        tree = generate_rrt(static_cast<std::size_t>(c.n), rng);
    }
    const CutTree ct = build_cut_tree(tree, rng);
    ct.validate();
    Table t;
    t.add_meta("command", "cut-tree");
    t.add_meta("seed", std::to_string(c.seed));
    t.add_meta("tree", tree.to_csv());
    t.columns = {"node", "parent", "depth", "size", "labels"};
    for (std::size_t i = 0; i < ct.nodes.size(); ++i) {
        const auto& nd = ct.nodes[i];
        std::string labels;
        for (std::size_t k = 0; k < nd.labels.size(); ++k) labels += (k ? " " : "") + std::to_string(nd.labels[k]);
        t.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(nd.parent),
                          static_cast<std::int64_t>(nd.depth), static_cast<std::int64_t>(nd.labels.size()), labels});
    }
    t.footer = {{"root_leaf_height", std::to_string(ct.leaf_height(1))}};
    return {t.render(c.format), true};
}

}  // namespace rrtcut
