#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rrtcut/exact.hpp"
#include "rrtcut/rng.hpp"

namespace rrtcut {

enum class JumpKind { Zeta, Xi, Table };

/// Jump distribution on the positive integers.
///
/// Zeta: P(k) = H_{k-1} / (k (k + 1)), k >= 2.
/// Xi:   P(k) = 1 / (k (k + 1)), k >= 1.
/// Table: an explicit finitely supported law.
class JumpLaw {
public:
    static JumpLaw zeta();
    static JumpLaw xi();
    /// Throws unless the masses are nonnegative and total exactly 1.
    static JumpLaw table(const ExactPmf& pmf);

    JumpKind kind() const { return kind_; }
    std::string name() const;
    std::int64_t min_support() const { return min_support_; }

    Rational pmf(std::int64_t k) const;
    /// P(X <= n)
    Rational cdf(std::int64_t n) const;
    /// P(X >= n)
    Rational tail(std::int64_t n) const;
    /// P(X >= n) in floating point (used by the sampler).
    double tail_float(std::uint64_t n) const;

    /// Inversion: smallest k >= min_support with P(X > k) <= V, V uniform on (0, 1].
    std::uint64_t sample(Rng& rng) const;

private:
    JumpLaw(JumpKind kind, std::int64_t min_support) : kind_(kind), min_support_(min_support) {}

    JumpKind kind_;
    std::int64_t min_support_;
    std::shared_ptr<const ExactPmf> table_;
    std::shared_ptr<const std::vector<double>> table_tail_;  // P(X >= first + i)
};

struct BarrierWalkResult {
    std::int64_t barrier = 0;
    std::int64_t jumps = 0;          // accepted proposals, M_n
    std::int64_t final_position = 0;
    std::int64_t attempted = 0;      // proposals drawn, accepted or not
    bool truncated = false;          // stopped by max_attempts before being blocked
};

struct BarrierWalkOptions {
    std::int64_t max_attempts = 1'000'000'000;
    /// Stop once barrier - position <= min_support, when no proposal can fit.
    bool stop_when_blocked = true;
};

/// Proposals are accepted iff position + jump < barrier.
BarrierWalkResult run_barrier_walk(std::int64_t barrier, const JumpLaw& law, Rng& rng,
                                   const BarrierWalkOptions& options = {});

/// J_n: jumps of the zeta walk with barrier n + 1.
std::int64_t sample_j(std::int64_t n, Rng& rng);

/// N_n: number of i.i.d. jumps until the unrestricted walk reaches n.
std::int64_t run_first_passage(std::int64_t n, const JumpLaw& law, Rng& rng);

struct CoupledResult {
    BarrierWalkResult walk;
    std::int64_t first_passage = 0;                // N_n
    std::int64_t accepted_within_first_passage = 0;  // accepted among the first N_n proposals
    std::int64_t overshoot_discrepancy = 0;         // M_n - accepted_within_first_passage
};

/// Barrier walk and unrestricted walk driven by the same proposal stream.
CoupledResult run_coupled(std::int64_t n, const JumpLaw& law, Rng& rng, const BarrierWalkOptions& options = {});

inline constexpr const char* kWalkCsvHeader = "trial,n,jumps";
inline constexpr const char* kCoupledCsvHeader = "trial,n,M,N";

}  // namespace rrtcut
