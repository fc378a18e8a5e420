#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>

#include "rrtcut/acceptance.hpp"
#include "rrtcut/parallel.hpp"

// Usage: rrtcut_acceptance [--seed S] [--mutate KEY] [--expect-fail] [criterion...]
int main(int argc, char** argv) {
    rrtcut::AcceptanceOptions options;
    options.workers = rrtcut::default_workers();
    bool expect_fail = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--seed" && i + 1 < argc) {
            options.seed = std::stoull(argv[++i]);
        } else if (a == "--mutate" && i + 1 < argc) {
            options.mutate = argv[++i];
        } else if (a == "--expect-fail") {
            expect_fail = true;
        } else {
            options.only.push_back(a);
        }
    }
    std::size_t failed = 0;
    try {
        rrtcut::run_acceptance(options, [&](const rrtcut::CriterionResult& r) {
            if (!r.passed) ++failed;
            std::cout << rrtcut::format_result(r) << "\n" << std::flush;
        });
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (expect_fail) {
        std::cout << (failed > 0 ? "negative control failed as expected" : "negative control unexpectedly passed")
                  << "\n";
        return failed > 0 ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
