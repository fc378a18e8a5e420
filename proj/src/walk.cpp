#include "rrtcut/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrtcut/tree.hpp"

namespace rrtcut {
namespace {

constexpr std::uint64_t kZetaTableSize = (1u << 20) + 2;

long double zeta_tail_ld(std::uint64_t n) {
    if (n <= 2) return 1.0L;
    return 1.0L / static_cast<long double>(n - 1) + harmonic_float(n - 2) / static_cast<long double>(n);
}

/// zeta_tail[k] = P(zeta >= k) for k in [0, kZetaTableSize].
const std::vector<double>& zeta_tail_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kZetaTableSize + 1);
        for (std::uint64_t k = 0; k <= kZetaTableSize; ++k) t[k] = static_cast<double>(zeta_tail_ld(k));
        return t;
    }();
    return table;
}

std::uint64_t sample_zeta(double v) {
    const auto& t = zeta_tail_table();
    // Smallest x >= 3 with P(zeta >= x) <= v; the draw is x - 1.
    if (t[kZetaTableSize] <= v) {
        auto it = std::partition_point(t.begin() + 3, t.end(), [v](double tail) { return tail > v; });
        return static_cast<std::uint64_t>(it - t.begin()) - 1;
    }
    std::uint64_t lo = kZetaTableSize;  // tail(lo) > v
    std::uint64_t hi = lo;
    while (static_cast<double>(zeta_tail_ld(hi)) > v) {
        lo = hi;
        hi = hi > (std::uint64_t{1} << 61) ? (std::uint64_t{1} << 62) : hi * 2;
        if (hi == (std::uint64_t{1} << 62)) break;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (static_cast<double>(zeta_tail_ld(mid)) > v) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi - 1;
}

}  // namespace

JumpLaw JumpLaw::zeta() {
    zeta_tail_table();
    return JumpLaw(JumpKind::Zeta, 2);
}

JumpLaw JumpLaw::xi() { return JumpLaw(JumpKind::Xi, 1); }

JumpLaw JumpLaw::table(const ExactPmf& pmf) {
    if (pmf.first < 1) throw std::invalid_argument("jump table must be supported on positive integers");
    if (pmf.total() != 1) throw std::invalid_argument("jump table must total 1");
    std::int64_t first = pmf.first;
    for (const auto& m : pmf.mass) {
        if (m < 0) throw std::invalid_argument("negative jump mass");
    }
    while (first <= pmf.last() && pmf.at(first) == 0) ++first;
    JumpLaw law(JumpKind::Table, first);
    law.table_ = std::make_shared<const ExactPmf>(pmf);
    std::vector<double> tails(pmf.mass.size() + 1, 0.0);
    Rational acc = 0;
    for (std::size_t i = pmf.mass.size(); i-- > 0;) {
        acc += pmf.mass[i];
        tails[i] = acc.get_d();
    }
    law.table_tail_ = std::make_shared<const std::vector<double>>(std::move(tails));
    return law;
}

std::string JumpLaw::name() const {
    switch (kind_) {
        case JumpKind::Zeta:
            return "zeta";
        case JumpKind::Xi:
            return "xi";
        case JumpKind::Table:
            return "table";
    }
    return "unknown";
}

Rational JumpLaw::pmf(std::int64_t k) const {
    switch (kind_) {
        case JumpKind::Zeta:
            return zeta_pmf(k);
        case JumpKind::Xi:
            return xi_pmf(k);
        case JumpKind::Table:
            return table_->at(k);
    }
    return 0;
}

Rational JumpLaw::cdf(std::int64_t n) const { return 1 - tail(n + 1); }

Rational JumpLaw::tail(std::int64_t n) const {
    switch (kind_) {
        case JumpKind::Zeta:
            return zeta_tail(n);
        case JumpKind::Xi:
            return xi_tail(n);
        case JumpKind::Table:
            return table_->survival(n);
    }
    return 0;
}

double JumpLaw::tail_float(std::uint64_t n) const {
    switch (kind_) {
        case JumpKind::Zeta:
            return n <= kZetaTableSize ? zeta_tail_table()[n] : static_cast<double>(zeta_tail_ld(n));
        case JumpKind::Xi:
            return n <= 1 ? 1.0 : 1.0 / static_cast<double>(n);
        case JumpKind::Table: {
            const auto first = static_cast<std::uint64_t>(table_->first);
            if (n <= first) return 1.0;
            const std::uint64_t i = n - first;
            return i < table_tail_->size() ? (*table_tail_)[i] : 0.0;
        }
    }
    return 0;
}

std::uint64_t JumpLaw::sample(Rng& rng) const {
    const double v = rng.uniform_pos();
    switch (kind_) {
        case JumpKind::Zeta:
            return sample_zeta(v);
        case JumpKind::Xi: {
            const double x = std::ceil(1.0 / v) - 1.0;
            return x < 1.0 ? 1 : static_cast<std::uint64_t>(x);
        }
        case JumpKind::Table: {
            // tails[i] = P(X >= first + i); want smallest k with P(X >= k + 1) <= v.
            const auto& t = *table_tail_;
            auto it = std::partition_point(t.begin() + 1, t.end(), [v](double tail) { return tail > v; });
            const auto k = static_cast<std::uint64_t>(table_->first) + static_cast<std::uint64_t>(it - t.begin()) - 1;
            return std::max<std::uint64_t>(k, static_cast<std::uint64_t>(min_support_));
        }
    }
    return 0;
}

BarrierWalkResult run_barrier_walk(std::int64_t barrier, const JumpLaw& law, Rng& rng,
                                   const BarrierWalkOptions& options) {
    if (barrier < 1) throw SizeError("barrier must be at least 1");
    BarrierWalkResult r;
    r.barrier = barrier;
    while (true) {
        if (options.stop_when_blocked && barrier - r.final_position <= law.min_support()) break;
        if (r.attempted >= options.max_attempts) {
            r.truncated = true;
            break;
        }
        const std::uint64_t x = law.sample(rng);
        ++r.attempted;
        if (x < static_cast<std::uint64_t>(barrier - r.final_position)) {
            r.final_position += static_cast<std::int64_t>(x);
            ++r.jumps;
        }
    }
    return r;
}

std::int64_t sample_j(std::int64_t n, Rng& rng) {
    static const JumpLaw zeta = JumpLaw::zeta();
    return run_barrier_walk(n + 1, zeta, rng).jumps;
}

std::int64_t run_first_passage(std::int64_t n, const JumpLaw& law, Rng& rng) {
    if (n < 1) throw SizeError("first passage level must be at least 1");
    std::uint64_t s = 0;
    std::int64_t count = 0;
    while (s < static_cast<std::uint64_t>(n)) {
        s += law.sample(rng);
        ++count;
    }
    return count;
}

CoupledResult run_coupled(std::int64_t n, const JumpLaw& law, Rng& rng, const BarrierWalkOptions& options) {
    if (n < 1) throw SizeError("barrier must be at least 1");
    CoupledResult c;
    c.walk.barrier = n;
    std::uint64_t s = 0;
    const auto level = static_cast<std::uint64_t>(n);
    auto blocked = [&] { return options.stop_when_blocked && n - c.walk.final_position <= law.min_support(); };
    while (s < level || !blocked()) {
        if (c.walk.attempted >= options.max_attempts) {
            c.walk.truncated = true;
            break;
        }
        const std::uint64_t x = law.sample(rng);
        ++c.walk.attempted;
        const bool before_passage = s < level;
        if (x < static_cast<std::uint64_t>(n - c.walk.final_position)) {
            c.walk.final_position += static_cast<std::int64_t>(x);
            ++c.walk.jumps;
            if (before_passage) ++c.accepted_within_first_passage;
        }
        if (before_passage) {
            s += x;
            if (s >= level) c.first_passage = c.walk.attempted;
        }
    }
    c.overshoot_discrepancy = c.walk.jumps - c.accepted_within_first_passage;
    return c;
}

}  // namespace rrtcut
