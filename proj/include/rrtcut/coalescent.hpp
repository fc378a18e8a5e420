#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rrtcut/exact.hpp"
#include "rrtcut/rng.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut {

struct CoalescentEvent {
    double time = 0;
    Vertex absorbing_block = 0;          // representative (least label) of the surviving block
    std::vector<Vertex> merged_blocks;   // representatives of every block in the merge, sorted
    std::size_t blocks_remaining = 0;
    bool terminal_root_cut = false;      // the selected edge hung from the root block

    std::size_t merged_size() const { return merged_blocks.size(); }
};

/// Partition of [n] carried on the surviving vertices of the initial tree.
/// Each surviving vertex represents one block; a block's least label is its
/// representative.
struct CoalescentState {
    std::size_t base_n = 0;
    double time = 0;
    std::vector<std::vector<Vertex>> blocks;  // sorted blocks ordered by least element
    std::vector<CoalescentEvent> history;
};

/// Degree-biased coalescent driven by the degree-biased cutting of `t`.
///
/// Each step picks a uniform skeleton edge after an Exp(edges) holding time.
/// If its root-side endpoint u is not the root block, u's subtree merges into
/// the block of u's parent. If u is the root block, every remaining block
/// merges into one and the run ends.
CoalescentState simulate_degree_biased_coalescent(const IncreasingTree& t, Rng& rng);
CoalescentState simulate_degree_biased_coalescent(std::size_t n, Rng& rng);

/// Rate of the first event merging a given set of k labels:
/// (n-k)!(k-2)! H_{k-2} / (n-1)! for 3 <= k < n, H_{n-1} + H_{n-2}/(n-1) at k = n.
Rational rate_lambda(std::int64_t n, std::int64_t k);

/// Bolthausen-Sznitman rate (b-k)!(k-2)!/(n-1)! with b blocks, 2 <= k <= b <= n.
Rational rate_bs(std::int64_t n, std::int64_t b, std::int64_t k);

/// lambda'_{n,n} + lambda'_{n,n-1} - lambda'_{n-1,n-1}; zero would be needed for consistency.
Rational consistency_defect(std::int64_t n);

struct MergeRateEstimate {
    double estimate = 0;
    double std_error = 0;
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    bool feasible = true;
    std::string warning;
};

/// Monte Carlo estimate of (n-1) P(first cut merges exactly `labels`) on fresh
/// random recursive trees. For |labels| < n the event is: the deleted vertex
/// v_1 is the second-least label, its subtree is labels \ {min}, and its parent
/// is min(labels). For |labels| = n it is the event that one cut ends the run.
/// Trial i uses Rng::stream(seed, i).
MergeRateEstimate estimate_first_merge_rate(std::size_t n, const std::vector<Vertex>& labels, std::uint64_t trials,
                                            std::uint64_t seed, unsigned workers = 1);

/// Binary genealogy of components under uniform edge removal applied to every
/// component. Node 0 is the root, labelled [n].
struct CutTree {
    struct Node {
        std::vector<Vertex> labels;  // sorted
        std::int32_t parent = -1;
        std::int32_t root_side = -1;  // child holding the old component's least label
        std::int32_t cut_side = -1;   // child holding the detached subtree
        std::uint32_t depth = 0;
    };

    std::vector<Node> nodes;
    std::vector<std::int32_t> leaf_of;  // leaf_of[v] = node index of {v}

    std::size_t size() const { return leaf_of.empty() ? 0 : leaf_of.size() - 1; }
    std::uint32_t leaf_height(Vertex v) const { return nodes.at(static_cast<std::size_t>(leaf_of.at(v))).depth; }
    /// Throws std::logic_error if a node's children do not partition its label set.
    void validate() const;
};

CutTree build_cut_tree(const IncreasingTree& t, Rng& rng);

inline constexpr const char* kHistoryCsvHeader = "event,time,merged_size,blocks_remaining";
inline constexpr const char* kRatesCsvHeader = "n,k,rate_num,rate_den";

}  // namespace rrtcut
