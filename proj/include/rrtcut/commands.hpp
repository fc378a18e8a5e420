#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rrtcut {

/// Bad flag combinations; the CLI maps these to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { csv, json };

struct CommandOutput {
    std::string text;
    bool ok = true;  // false when a check reported a violation
};

struct SimulateConfig {
    enum class Mode { degree_biased, uniform, walk, coupled, coalescent };
    enum class Emit { summary, rows, trace };

    Mode mode = Mode::degree_biased;
    std::int64_t n = 0;
    std::optional<std::int64_t> barrier;  // walk only; default n + 1 (zeta) or n (xi)
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::string jump_law = "zeta";
    bool jump_law_given = false;
    Emit emit = Emit::summary;
    OutputFormat format = OutputFormat::csv;
    unsigned workers = 1;  // never part of the output
};

/// Runs the simulation and renders it. Output depends only on the config
/// minus `workers`. Throws UsageError on invalid combinations.
CommandOutput simulate_output(const SimulateConfig& config);

struct ExactConfig {
    std::string dist;            // K, J, cut-size, uniform-cut, zeta-cond, cut-cond
    bool table = false;          // n,j,prob_K,prob_J,surv_K,surv_J for 2..n
    bool dominance = false;
    bool consistency = false;
    bool certificate = false;
    bool g = false;
    std::string mean;            // J or K
    std::int64_t n = 0;
    std::int64_t n_max = 0;
    std::int64_t j_max = -1;
    bool float_mode = false;
    std::int64_t rational_cap = 120;
    OutputFormat format = OutputFormat::csv;
};

CommandOutput exact_output(const ExactConfig& config);

struct RatesConfig {
    std::int64_t n = 0;
    bool bs = false;             // Bolthausen-Sznitman rates with b = n instead
    OutputFormat format = OutputFormat::csv;
};

CommandOutput rates_output(const RatesConfig& config);

struct CutTreeConfig {
    std::int64_t n = 0;
    std::string tree_csv;        // explicit tree; otherwise a random recursive tree
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::csv;
};

CommandOutput cut_tree_output(const CutTreeConfig& config);

std::string version_string();

}  // namespace rrtcut
