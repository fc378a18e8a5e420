#include "rrtcut/coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "cut_engine.hpp"
#include "rrtcut/parallel.hpp"

namespace rrtcut {

CoalescentState simulate_degree_biased_coalescent(const IncreasingTree& t, Rng& rng) {
    const std::size_t n = t.size();
    if (n < 2) throw SizeError("coalescent needs n >= 2");
    CoalescentState state;
    state.base_n = n;
    std::vector<std::vector<Vertex>> block(n + 1);
    for (Vertex v = 1; v <= n; ++v) block[v] = {v};

    detail::CutEngine engine(t);
    std::vector<Vertex> removed;
    bool root_cut = false;
    while (engine.alive_count() >= 2) {
        state.time += rng.exponential(static_cast<double>(engine.alive_count() - 1));
        const EdgeRef e = engine.pick_edge(rng);
        const Vertex u = e.parent_endpoint;
        CoalescentEvent ev;
        ev.time = state.time;
        removed.clear();
        if (u == 1) {
            engine.remove(1, &removed);
            ev.absorbing_block = 1;
            ev.merged_blocks = removed;
            ev.blocks_remaining = 1;
            ev.terminal_root_cut = true;
            root_cut = true;
        } else {
            const Vertex h = t.parent(u);
            engine.remove(u, &removed);
            ev.absorbing_block = h;
            ev.merged_blocks = removed;
            ev.merged_blocks.push_back(h);
            ev.blocks_remaining = engine.alive_count();
        }
        for (Vertex r : removed) {
            if (r == ev.absorbing_block) continue;
            auto& dst = block[ev.absorbing_block];
            dst.insert(dst.end(), block[r].begin(), block[r].end());
            block[r].clear();
        }
        std::sort(ev.merged_blocks.begin(), ev.merged_blocks.end());
        state.history.push_back(std::move(ev));
        if (root_cut) break;
    }
    for (Vertex v = 1; v <= n; ++v) {
        if (!block[v].empty() && (v == 1 || (!root_cut && engine.alive(v)))) {
            std::sort(block[v].begin(), block[v].end());
            state.blocks.push_back(std::move(block[v]));
        }
    }
    return state;
}

CoalescentState simulate_degree_biased_coalescent(std::size_t n, Rng& rng) {
    if (n < 2) throw SizeError("coalescent needs n >= 2");
    const IncreasingTree t = generate_rrt(n, rng);
    return simulate_degree_biased_coalescent(t, rng);
}

namespace {

mpz_class factorial(std::int64_t m) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return f;
}

}  // namespace

Rational rate_lambda(std::int64_t n, std::int64_t k) {
    if (k < 3 || k > n) throw std::out_of_range("rate_lambda needs 3 <= k <= n");
    if (k == n) return harmonic(static_cast<std::size_t>(n - 1)) + harmonic(static_cast<std::size_t>(n - 2)) / make_rational(n - 1);
    Rational r(mpz_class(factorial(n - k) * factorial(k - 2)), factorial(n - 1));
    r.canonicalize();
    return r * harmonic(static_cast<std::size_t>(k - 2));
}

Rational rate_bs(std::int64_t n, std::int64_t b, std::int64_t k) {
    if (k < 2 || k > b || b > n) throw std::out_of_range("rate_bs needs 2 <= k <= b <= n");
    Rational r(mpz_class(factorial(b - k) * factorial(k - 2)), factorial(n - 1));
    r.canonicalize();
    return r;
}

Rational consistency_defect(std::int64_t n) {
    if (n < 4) throw SizeError("consistency defect needs n >= 4");
    return rate_lambda(n, n) + rate_lambda(n, n - 1) - rate_lambda(n - 1, n - 1);
}

MergeRateEstimate estimate_first_merge_rate(std::size_t n, const std::vector<Vertex>& labels, std::uint64_t trials,
                                            std::uint64_t seed, unsigned workers) {
    MergeRateEstimate est;
    est.trials = trials;
    std::vector<Vertex> l(labels);
    std::sort(l.begin(), l.end());
    const bool in_range = !l.empty() && l.front() >= 1 && l.back() <= n;
    const bool distinct = std::adjacent_find(l.begin(), l.end()) == l.end();
    if (n < 3 || !in_range || !distinct || l.size() < 3 || l.size() > n) {
        est.feasible = false;
        est.warning = "label set cannot be merged by one degree-biased cut; estimate is 0";
        return est;
    }
    const bool all = l.size() == n;
    const std::vector<Vertex> rest(l.begin() + 1, l.end());

    constexpr std::uint64_t block = 4096;
    const std::uint64_t blocks = (trials + block - 1) / block;
    const auto counts = parallel_map(blocks, workers, [&](std::uint64_t b) {
        std::uint64_t hits = 0;
        const std::uint64_t end = std::min(trials, (b + 1) * block);
        for (std::uint64_t i = b * block; i < end; ++i) {
            Rng rng = Rng::stream(seed, i);
            const IncreasingTree t = generate_rrt(n, rng);
            const EdgeRef e = t.edge(rng.below(t.edge_count()));
            const Vertex u = e.parent_endpoint;
            if (all) {
                if (u == 1 || t.subtree(u).size() == n - 1) ++hits;
            } else if (u == rest.front() && t.parent(u) == l.front() && t.subtree(u) == rest) {
                ++hits;
            }
        }
        return hits;
    });
    est.hits = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    const double p = trials ? static_cast<double>(est.hits) / static_cast<double>(trials) : 0.0;
    const double scale = static_cast<double>(n - 1);
    est.estimate = scale * p;
    est.std_error = trials ? scale * std::sqrt(p * (1 - p) / static_cast<double>(trials)) : 0.0;
    return est;
}

void CutTree::validate() const {
    if (nodes.empty()) throw std::logic_error("cut-tree has no nodes");
    const auto& root = nodes.front().labels;
    for (std::size_t i = 0; i < root.size(); ++i) {
        if (root[i] != i + 1) throw std::logic_error("cut-tree root is not labelled [n]");
    }
    for (const auto& node : nodes) {
        const bool leaf = node.root_side < 0 && node.cut_side < 0;
        if (leaf) {
            if (node.labels.size() != 1) throw std::logic_error("cut-tree leaf is not a singleton");
            continue;
        }
        if (node.root_side < 0 || node.cut_side < 0) throw std::logic_error("cut-tree node with one child");
        const auto& a = nodes[static_cast<std::size_t>(node.root_side)].labels;
        const auto& b = nodes[static_cast<std::size_t>(node.cut_side)].labels;
        std::vector<Vertex> merged;
        std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
        if (merged != node.labels || a.empty() || b.empty()) {
            throw std::logic_error("cut-tree children do not partition their parent");
        }
    }
}

CutTree build_cut_tree(const IncreasingTree& t, Rng& rng) {
    const std::size_t n = t.size();
    CutTree ct;
    ct.leaf_of.assign(n + 1, -1);
    CutTree::Node root;
    root.labels.resize(n);
    std::iota(root.labels.begin(), root.labels.end(), Vertex{1});
    ct.nodes.push_back(std::move(root));

    std::vector<char> in_sub(n + 1, 0);
    std::deque<std::size_t> pending{0};
    while (!pending.empty()) {
        const std::size_t idx = pending.front();
        pending.pop_front();
        if (ct.nodes[idx].labels.size() == 1) {
            ct.leaf_of[ct.nodes[idx].labels.front()] = static_cast<std::int32_t>(idx);
            continue;
        }
        // Components are subtrees of t, so the least label is the component's root
        // and every other member's parent is inside the component.
        const std::vector<Vertex> comp = ct.nodes[idx].labels;
        const std::size_t pick = 1 + rng.below(comp.size() - 1);
        const Vertex c = comp[pick];
        CutTree::Node kept, cut;
        in_sub[c] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const Vertex w = comp[i];
            if (i > pick && in_sub[t.parent(w)]) in_sub[w] = 1;
            (in_sub[w] ? cut : kept).labels.push_back(w);
        }
        for (Vertex w : cut.labels) in_sub[w] = 0;
        kept.parent = cut.parent = static_cast<std::int32_t>(idx);
        kept.depth = cut.depth = ct.nodes[idx].depth + 1;
        const auto kept_idx = static_cast<std::int32_t>(ct.nodes.size());
        ct.nodes.push_back(std::move(kept));
        ct.nodes.push_back(std::move(cut));
        ct.nodes[idx].root_side = kept_idx;
        ct.nodes[idx].cut_side = kept_idx + 1;
        pending.push_back(static_cast<std::size_t>(kept_idx));
        pending.push_back(static_cast<std::size_t>(kept_idx + 1));
    }
    return ct;
}

}  // namespace rrtcut
