#include "rrtcut/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "rrtcut/parallel.hpp"

namespace rrtcut {

namespace {

DestructionTrace run_process(Process process, const IncreasingTree& t, Rng& rng) {
    return process == Process::degree_biased ? run_degree_biased_destruction(t, rng) : run_uniform_isolation(t, rng);
}

}  // namespace

std::vector<std::int64_t> sample_cut_counts(Process process, std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                            unsigned workers) {
    if (n < 2) throw SizeError("cutting processes need n >= 2");
    return parallel_map(trials, workers, [&](std::uint64_t i) {
        Rng rng = Rng::stream(seed, i);
        const IncreasingTree t = generate_rrt(n, rng);
        return static_cast<std::int64_t>(run_process(process, t, rng).cuts());
    });
}

std::vector<DestructionTrace> sample_traces(Process process, std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                            unsigned workers) {
    if (n < 2) throw SizeError("cutting processes need n >= 2");
    return parallel_map(trials, workers, [&](std::uint64_t i) {
        Rng rng = Rng::stream(seed, i);
        const IncreasingTree t = generate_rrt(n, rng);
        return run_process(process, t, rng);
    });
}

std::vector<std::int64_t> sample_barrier_jumps(std::int64_t barrier, const JumpLaw& law, std::uint64_t trials,
                                               std::uint64_t seed, unsigned workers) {
    if (barrier < 1) throw SizeError("barrier must be at least 1");
    return parallel_map(trials, workers, [&](std::uint64_t i) {
        Rng rng = Rng::stream(seed, i);
        return run_barrier_walk(barrier, law, rng).jumps;
    });
}

std::vector<std::int64_t> sample_j_counts(std::int64_t n, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    return sample_barrier_jumps(n + 1, JumpLaw::zeta(), trials, seed, workers);
}

std::vector<CoupledResult> sample_coupled(std::int64_t n, const JumpLaw& law, std::uint64_t trials, std::uint64_t seed,
                                          unsigned workers) {
    return parallel_map(trials, workers, [&](std::uint64_t i) {
        Rng rng = Rng::stream(seed, i);
        return run_coupled(n, law, rng);
    });
}

std::vector<TrendRow> mean_ratio_trend(TrendProcess process, const std::vector<std::int64_t>& n_grid,
                                       std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("n grid must be increasing");
    }
    std::vector<TrendRow> rows;
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        const std::int64_t n = n_grid[g];
        if (n < 3) throw SizeError("trend grid needs n >= 3");
        const std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (g + 1);
        std::vector<std::int64_t> xs;
        switch (process) {
            case TrendProcess::J:
                xs = sample_j_counts(n, trials, s, workers);
                break;
            case TrendProcess::K:
                xs = sample_cut_counts(Process::degree_biased, static_cast<std::size_t>(n), trials, s, workers);
                break;
            case TrendProcess::X:
                xs = sample_cut_counts(Process::uniform, static_cast<std::size_t>(n), trials, s, workers);
                break;
        }
        TrendRow row;
        row.n = n;
        for (auto x : xs) row.mean += static_cast<double>(x);
        row.mean /= static_cast<double>(xs.size());
        const double l = std::log(static_cast<double>(n));
        row.predicted = process == TrendProcess::X ? static_cast<double>(n) / l : 2.0 * static_cast<double>(n) / (l * l);
        row.ratio = row.mean / row.predicted;
        std::uint64_t far = 0;
        for (auto x : xs) {
            if (std::fabs(static_cast<double>(x) / row.mean - 1.0) > 0.25) ++far;
        }
        row.concentration = static_cast<double>(far) / static_cast<double>(xs.size());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rrtcut
