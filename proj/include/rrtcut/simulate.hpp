#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrtcut/cutting.hpp"
#include "rrtcut/walk.hpp"

namespace rrtcut {

// Monte Carlo drivers. Trial i always draws from Rng::stream(seed, i), so the
// returned samples are identical for every worker count.

enum class Process { degree_biased, uniform };

/// K_n (degree_biased) or X_n (uniform) on fresh random recursive trees.
std::vector<std::int64_t> sample_cut_counts(Process process, std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                            unsigned workers);

/// Full destruction traces, one per trial.
std::vector<DestructionTrace> sample_traces(Process process, std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                            unsigned workers);

/// Jumps of the walk with the given barrier.
std::vector<std::int64_t> sample_barrier_jumps(std::int64_t barrier, const JumpLaw& law, std::uint64_t trials,
                                               std::uint64_t seed, unsigned workers);

/// J_n = jumps of the zeta walk with barrier n + 1.
std::vector<std::int64_t> sample_j_counts(std::int64_t n, std::uint64_t trials, std::uint64_t seed, unsigned workers);

std::vector<CoupledResult> sample_coupled(std::int64_t n, const JumpLaw& law, std::uint64_t trials, std::uint64_t seed,
                                          unsigned workers);

enum class TrendProcess { J, K, X };

struct TrendRow {
    std::int64_t n = 0;
    double mean = 0;
    double predicted = 0;      // 2n/(ln n)^2 for J and K, n/ln n for X
    double ratio = 0;          // mean / predicted
    double concentration = 0;  // fraction of samples with |sample/mean - 1| > 0.25
};

std::vector<TrendRow> mean_ratio_trend(TrendProcess process, const std::vector<std::int64_t>& n_grid,
                                       std::uint64_t trials, std::uint64_t seed, unsigned workers);

}  // namespace rrtcut
