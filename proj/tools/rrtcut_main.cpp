#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "rrtcut/acceptance.hpp"
#include "rrtcut/commands.hpp"
#include "rrtcut/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

const std::map<std::string, rrtcut::OutputFormat> kFormats{{"csv", rrtcut::OutputFormat::csv},
                                                           {"json", rrtcut::OutputFormat::json}};

int write_output(const rrtcut::CommandOutput& out, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << out.text;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open " << path << "\n";
            return kExitUsage;
        }
        f << out.text;
    }
    return out.ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degree-biased cutting of random recursive trees"};
    app.set_version_flag("--version", rrtcut::version_string());
    app.require_subcommand(1);

    std::string out_path;
    rrtcut::OutputFormat format = rrtcut::OutputFormat::csv;
    const unsigned default_workers = rrtcut::default_workers();

    // simulate
    rrtcut::SimulateConfig sim;
    sim.workers = default_workers;
    std::string process = "degree-biased", emit = "summary";
    bool walk = false, coupled = false, coalescent = false;
    std::int64_t barrier = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs of the cutting processes and walks");
    simulate->add_option("--n", sim.n, "Tree size, or barrier parameter for walks")->required();
    simulate->add_option("--trials", sim.trials, "Number of independent trials")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Base seed; trial i uses stream (seed, i)")->capture_default_str();
    simulate->add_option("--workers", sim.workers, "Worker threads (default: RRTCUT_WORKERS or core count)");
    simulate->add_option("--process", process, "Cutting process")
        ->check(CLI::IsMember({"degree-biased", "uniform"}))
        ->capture_default_str();
    auto* walk_flag = simulate->add_flag("--walk", walk, "Barrier walk (J_n for zeta, M_n = X_n for xi)");
    auto* coupled_flag = simulate->add_flag("--coupled", coupled, "Barrier walk coupled with first passage");
    simulate->add_flag("--coalescent", coalescent, "Degree-biased coalescent")->excludes(walk_flag, coupled_flag);
    walk_flag->excludes(coupled_flag);
    auto* jump_opt = simulate->add_option("--jump", sim.jump_law, "Jump law for walks")
                         ->check(CLI::IsMember({"zeta", "xi"}));
    auto* barrier_opt = simulate->add_option("--barrier", barrier, "Explicit barrier for --walk");
    simulate->add_option("--emit", emit, "summary (histogram), rows (one per trial) or trace (one per cut)")
        ->check(CLI::IsMember({"summary", "rows", "trace"}))
        ->capture_default_str();
    simulate->add_option("--format", format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
    simulate->add_option("--out", out_path, "Output file (default stdout)");

    // exact
    rrtcut::ExactConfig ex;
    auto* exact = app.add_subcommand("exact", "Exact distributions, identities and checks");
    exact->add_option("--dist", ex.dist, "K, J, cut-size, uniform-cut, zeta-cond or cut-cond")
        ->check(CLI::IsMember({"K", "J", "cut-size", "uniform-cut", "zeta-cond", "cut-cond"}));
    exact->add_flag("--table", ex.table, "Table n,j,prob_K,prob_J,surv_K,surv_J for 2..n");
    exact->add_flag("--dominance", ex.dominance, "Check that J_n dominates K_n for n <= n-max");
    exact->add_flag("--consistency", ex.consistency, "Consistency defect of the coalescent rates");
    exact->add_flag("--certificate", ex.certificate, "Ratios showing no single jump law fits every n");
    exact->add_flag("--g", ex.g, "The g function, exact or float");
    exact->add_option("--mean", ex.mean, "Mean of J or K")->check(CLI::IsMember({"J", "K"}));
    exact->add_option("--n", ex.n, "Size");
    exact->add_option("--n-max", ex.n_max, "Largest size for --dominance");
    exact->add_option("--j-max", ex.j_max, "Truncate laws at j-max (rest goes to the residual)");
    exact->add_flag("--float", ex.float_mode, "Extended precision instead of exact fractions");
    exact->add_option("--rational-cap", ex.rational_cap, "Largest n computed with fractions")->capture_default_str();
    exact->add_option("--format", format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
    exact->add_option("--out", out_path, "Output file (default stdout)");

    // verify
    rrtcut::AcceptanceOptions acc;
    acc.workers = default_workers;
    auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
    verify->add_option("--seed", acc.seed, "Seed for the Monte Carlo criteria")->capture_default_str();
    verify->add_option("--workers", acc.workers, "Worker threads");
    verify->add_option("--only", acc.only, "Criterion keys or ids to run")->delimiter(',');
    verify->add_option("--mutate", acc.mutate, "Corrupt one constant (negative control)");
    bool list = false;
    verify->add_flag("--list", list, "List criteria and mutations");

    // rates
    rrtcut::RatesConfig rc;
    auto* rates = app.add_subcommand("rates", "Merge rates of the degree-biased coalescent");
    rates->add_option("--n", rc.n, "Number of blocks")->required();
    rates->add_flag("--bs", rc.bs, "Bolthausen-Sznitman rates instead");
    rates->add_option("--format", format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
    rates->add_option("--out", out_path, "Output file (default stdout)");

    // cut-tree
    rrtcut::CutTreeConfig ct;
    auto* cut_tree = app.add_subcommand("cut-tree", "Cut-tree of a random recursive tree");
    cut_tree->add_option("--n", ct.n, "Tree size");
    cut_tree->add_option("--tree", ct.tree_csv, "Explicit tree as n,parent(2),...,parent(n)");
    cut_tree->add_option("--seed", ct.seed, "Seed")->capture_default_str();
    cut_tree->add_option("--format", format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
    cut_tree->add_option("--out", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            using Mode = rrtcut::SimulateConfig::Mode;
            sim.mode = walk         ? Mode::walk
                       : coupled    ? Mode::coupled
                       : coalescent ? Mode::coalescent
                       : process == "uniform" ? Mode::uniform
                                              : Mode::degree_biased;
            if ((walk || coupled || coalescent) && simulate->count("--process") > 0) {
                throw rrtcut::UsageError("--process cannot be combined with --walk, --coupled or --coalescent");
            }
            sim.jump_law_given = jump_opt->count() > 0;
            if (barrier_opt->count() > 0) sim.barrier = barrier;
            sim.emit = emit == "rows"    ? rrtcut::SimulateConfig::Emit::rows
                       : emit == "trace" ? rrtcut::SimulateConfig::Emit::trace
                                         : rrtcut::SimulateConfig::Emit::summary;
            sim.format = format;
            return write_output(rrtcut::simulate_output(sim), out_path);
        }
        if (exact->parsed()) {
            ex.format = format;
            return write_output(rrtcut::exact_output(ex), out_path);
        }
        if (rates->parsed()) {
            rc.format = format;
            return write_output(rrtcut::rates_output(rc), out_path);
        }
        if (cut_tree->parsed()) {
            ct.format = format;
            return write_output(rrtcut::cut_tree_output(ct), out_path);
        }
        if (verify->parsed()) {
            if (list) {
                for (const auto& c : rrtcut::acceptance_criteria()) std::cout << c.id << " " << c.key << ": " << c.title << "\n";
                std::cout << "mutations:";
                for (const auto& m : rrtcut::mutation_keys()) std::cout << " " << m;
                std::cout << "\n";
                return kExitOk;
            }
            std::cout << "# rrtcut " << rrtcut::version_string() << " command=verify seed=" << acc.seed
                      << (acc.mutate.empty() ? "" : " mutate=" + acc.mutate) << "\n"
                      << std::flush;
            std::size_t failed = 0, total = 0;
            rrtcut::run_acceptance(acc, [&](const rrtcut::CriterionResult& r) {
                ++total;
                if (!r.passed) ++failed;
                std::cout << rrtcut::format_result(r) << "\n" << std::flush;
            });
            std::cout << (failed == 0 ? "all " + std::to_string(total) + " criteria passed"
                                      : std::to_string(failed) + " of " + std::to_string(total) + " criteria failed")
                      << "\n";
            return failed == 0 ? kExitOk : kExitFailure;
        }
    } catch (const rrtcut::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
