#include "rrtcut/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "rrtcut/cutting.hpp"

namespace rrtcut::oracle {
namespace {

using Law = std::map<std::int64_t, Rational>;

ExactPmf to_pmf(const Law& law) {
    ExactPmf p;
    if (law.empty()) return p;
    p.first = law.begin()->first;
    p.mass.assign(static_cast<std::size_t>(law.rbegin()->first - p.first + 1), Rational(0));
    for (const auto& [k, m] : law) p.mass[static_cast<std::size_t>(k - p.first)] = m;
    return p;
}

Rational tree_weight(std::size_t n) { return make_rational(1, static_cast<std::int64_t>(increasing_tree_count(n))); }

template <class CutAt>
ExactPmf single_cut_law(std::size_t n, CutAt cut_at) {
    if (n < 2) throw SizeError("cut laws need n >= 2");
    Law law;
    const Rational w = tree_weight(n) / make_rational(static_cast<std::int64_t>(n - 1));
    for_each_increasing_tree(n, [&](const IncreasingTree& t) {
        for (std::size_t e = 0; e < t.edge_count(); ++e) {
            law[static_cast<std::int64_t>(cut_at(t, t.edge(e)).removed_size)] += w;
        }
    });
    return to_pmf(law);
}

/// Law of the number of cuts until the root component has size <= 1.
class ProcessEnumerator {
public:
    explicit ProcessEnumerator(bool degree_biased) : degree_biased_(degree_biased) {}

    const Law& law(const IncreasingTree& t) {
        const std::vector<Vertex> key(t.parents().begin(), t.parents().end());
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Law out;
        if (t.size() <= 1) {
            out[0] = 1;
        } else {
            const Rational w = make_rational(1, static_cast<std::int64_t>(t.edge_count()));
            for (std::size_t e = 0; e < t.edge_count(); ++e) {
                const CutOutcome c = degree_biased_ ? degree_biased_cut_at(t, t.edge(e)) : uniform_edge_cut_at(t, t.edge(e));
                if (!c.remaining || c.remaining->size() <= 1) {
                    out[1] += w;
                } else {
                    for (const auto& [j, p] : law(*c.remaining)) out[j + 1] += w * p;
                }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    bool degree_biased_;
    std::map<std::vector<Vertex>, Law> memo_;
};

ExactPmf process_law(std::size_t n, bool degree_biased) {
    if (n < 2) throw SizeError("process laws need n >= 2");
    ProcessEnumerator en(degree_biased);
    Law total;
    const Rational w = tree_weight(n);
    for_each_increasing_tree(n, [&](const IncreasingTree& t) {
        for (const auto& [j, p] : en.law(t)) total[j] += w * p;
    });
    return to_pmf(total);
}

}  // namespace

ExactPmf cut_size_law(std::size_t n) { return single_cut_law(n, degree_biased_cut_at); }
ExactPmf uniform_cut_law(std::size_t n) { return single_cut_law(n, uniform_edge_cut_at); }
ExactPmf k_law(std::size_t n) { return process_law(n, true); }
ExactPmf x_law(std::size_t n) { return process_law(n, false); }

Rational mean_root_degree(std::size_t n) {
    Rational sum = 0;
    for_each_increasing_tree(n, [&](const IncreasingTree& t) { sum += static_cast<unsigned long>(t.degree(1)); });
    return sum * tree_weight(n);
}

std::map<std::size_t, std::vector<Rational>> splitting_law(std::size_t n) {
    if (n < 2) throw SizeError("splitting law needs n >= 2");
    std::map<std::size_t, std::vector<Rational>> joint;
    const Rational w = tree_weight(n) / make_rational(static_cast<std::int64_t>(n - 1));
    for_each_increasing_tree(n, [&](const IncreasingTree& t) {
        for (std::size_t e = 0; e < t.edge_count(); ++e) {
            const CutOutcome c = degree_biased_cut_at(t, t.edge(e));
            if (!c.remaining) continue;
            const std::size_t l = c.remaining->size();
            auto& row = joint[l];
            if (row.empty()) row.assign(increasing_tree_count(l), Rational(0));
            row[c.remaining->rank()] += w;
        }
    });
    for (auto& [l, row] : joint) {
        Rational total = 0;
        for (const auto& p : row) total += p;
        for (auto& p : row) p /= total;
    }
    return joint;
}

Rational first_merge_probability(std::size_t n, const std::vector<Vertex>& labels) {
    if (n < 2) throw SizeError("merge probability needs n >= 2");
    std::vector<Vertex> target(labels);
    std::sort(target.begin(), target.end());
    Rational p = 0;
    const Rational w = tree_weight(n) / make_rational(static_cast<std::int64_t>(n - 1));
    for_each_increasing_tree(n, [&](const IncreasingTree& t) {
        for (std::size_t e = 0; e < t.edge_count(); ++e) {
            const EdgeRef edge = t.edge(e);
            const CutOutcome c = degree_biased_cut_at(t, edge);
            std::vector<Vertex> merged;
            if (c.destroyed_instantly() || c.remaining_vertices.size() == 1) {
                merged.resize(n);
                for (Vertex v = 1; v <= n; ++v) merged[v - 1] = v;
            } else {
                merged = c.removed;
                merged.push_back(t.parent(edge.parent_endpoint));
                std::sort(merged.begin(), merged.end());
            }
            if (merged == target) p += w;
        }
    });
    return p;
}

ExactPmf barrier_walk_law(std::int64_t barrier, const JumpLaw& law) {
    if (barrier < 1) throw SizeError("barrier must be at least 1");
    const auto b = static_cast<std::size_t>(barrier);
    // from[r]: law of the jumps still to come from position r.
    std::vector<Law> from(b);
    for (std::size_t r = b; r-- > 0;) {
        const auto room = static_cast<std::int64_t>(b - r);  // accepted iff jump < room
        Rational norm = 0;
        for (std::int64_t k = 1; k < room; ++k) norm += law.pmf(k);
        Law out;
        if (norm == 0) {
            out[0] = 1;
        } else {
            for (std::int64_t k = 1; k < room; ++k) {
                const Rational q = law.pmf(k) / norm;
                if (q == 0) continue;
                for (const auto& [j, p] : from[r + static_cast<std::size_t>(k)]) out[j + 1] += q * p;
            }
        }
        from[r] = std::move(out);
    }
    return to_pmf(from[0]);
}

}  // namespace rrtcut::oracle
