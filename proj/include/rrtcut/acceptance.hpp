#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rrtcut {

struct AcceptanceOptions {
    std::uint64_t seed = 20240917;
    unsigned workers = 1;
    /// Criterion keys or ids to run; empty runs all of them.
    std::vector<std::string> only;
    /// Corrupts one constant so the matching criterion must fail. One of
    /// mutation_keys(); empty for none.
    std::string mutate;
};

struct CriterionResult {
    int id = 0;
    std::string key;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct CriterionInfo {
    int id;
    const char* key;
    const char* title;
};

const std::vector<CriterionInfo>& acceptance_criteria();
const std::vector<std::string>& mutation_keys();

/// Runs the selected criteria in order, calling `on_result` after each.
/// Throws std::invalid_argument for unknown criterion or mutation keys.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// `PASS [01] enumeration ... (0.42 s): detail`
std::string format_result(const CriterionResult& r);

}  // namespace rrtcut
