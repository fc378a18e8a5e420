#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "rrtcut/exact.hpp"
#include "rrtcut/tree.hpp"
#include "rrtcut/walk.hpp"

// Brute-force laws computed by enumerating trees and edge choices. They use
// only the tree and single-cut primitives and none of the closed forms, so
// they serve as independent references for the exact module.

namespace rrtcut::oracle {

/// Law of the degree-biased cut size over all (tree, edge) pairs of I_n.
ExactPmf cut_size_law(std::size_t n);

/// Law of the uniform-edge cut size over all (tree, edge) pairs of I_n.
ExactPmf uniform_cut_law(std::size_t n);

/// Law of K_n: every tree of I_n, then every edge at every stage.
ExactPmf k_law(std::size_t n);

/// Law of X_n: every tree of I_n, then every edge at every stage.
ExactPmf x_law(std::size_t n);

/// Mean of degree(T_n, 1) over I_n.
Rational mean_root_degree(std::size_t n);

/// For each remainder size l >= 1, the conditional law of the relabeled
/// root component over I_l, indexed by IncreasingTree::rank().
std::map<std::size_t, std::vector<Rational>> splitting_law(std::size_t n);

/// P(degree-biased cut merges exactly `labels` into one block) over all
/// (tree, edge) pairs, by enumeration.
Rational first_merge_probability(std::size_t n, const std::vector<Vertex>& labels);

/// Law of the number of accepted jumps of the walk with the given barrier,
/// by dynamic programming over positions. Requires law.kind() != Table or a
/// table law; exact rationals throughout.
ExactPmf barrier_walk_law(std::int64_t barrier, const JumpLaw& law);

}  // namespace rrtcut::oracle
