#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rrtcut/rng.hpp"

namespace rrtcut {

using Vertex = std::uint32_t;

class SizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Edge of an increasing tree, oriented towards the root.
struct EdgeRef {
    Vertex parent_endpoint = 0;  // smaller label, nearer the root
    Vertex child_endpoint = 0;

    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

/// Rooted tree on [n] with root 1 and parent(v) < v for every v >= 2.
///
/// Stored as a parent array indexed by label. Child lists are built once at
/// construction (CSR layout), so a tree is immutable and safe to share.
class IncreasingTree {
public:
    /// Single-vertex tree.
    IncreasingTree();

    /// `parents[i]` is the parent of vertex i + 2. Throws std::invalid_argument
    /// unless 1 <= parents[i] < i + 2.
    static IncreasingTree from_parents(std::span<const Vertex> parents);

    std::size_t size() const { return parent_.size() - 1; }
    std::size_t edge_count() const { return size() - 1; }

    /// Parent of v (v >= 2); 0 for the root.
    Vertex parent(Vertex v) const;
    std::span<const Vertex> children(Vertex v) const;
    std::size_t degree(Vertex v) const { return children(v).size(); }

    /// Edges are indexed by their child endpoint: edge i (0-based) joins
    /// vertex i + 2 to its parent.
    EdgeRef edge(std::size_t index) const;

    /// Sorted vertex set of the subtree rooted at v.
    std::vector<Vertex> subtree(Vertex v) const;

    /// Parents of vertices 2..n, the inverse of from_parents.
    std::span<const Vertex> parents() const { return {parent_.data() + 2, size() - 1}; }

    /// Position of this tree in the lexicographic enumeration order of I_n.
    std::uint64_t rank() const;

    /// `n,parent(2),...,parent(n)`
    std::string to_csv() const;
    static IncreasingTree from_csv(std::string_view line);

    friend bool operator==(const IncreasingTree& a, const IncreasingTree& b) {
        return a.parent_ == b.parent_;
    }

private:
    explicit IncreasingTree(std::vector<Vertex> parent);
    void check_vertex(Vertex v) const;

    std::vector<Vertex> parent_;       // parent_[0] unused, parent_[1] = 0
    std::vector<std::uint32_t> offset_;  // CSR offsets into child_, size n + 2
    std::vector<Vertex> child_;
};

/// Random recursive tree: vertex k attaches to a uniform vertex of [k - 1].
IncreasingTree generate_rrt(std::size_t n, Rng& rng);

inline constexpr std::size_t kDefaultEnumerationCap = 9;

/// Visits every tree of I_n in lexicographic order of (parent(2), ..., parent(n)).
void for_each_increasing_tree(std::size_t n, const std::function<void(const IncreasingTree&)>& visit,
                              std::size_t cap = kDefaultEnumerationCap);

/// All (n - 1)! increasing trees on [n], same order as for_each_increasing_tree.
std::vector<IncreasingTree> enumerate_increasing_trees(std::size_t n,
                                                       std::size_t cap = kDefaultEnumerationCap);

/// (n - 1)!
std::uint64_t increasing_tree_count(std::size_t n);

/// Relabels the subtree of `t` induced on `vertices` by rank order. The induced
/// structure must be a tree rooted at min(vertices), i.e. every other member's
/// parent is also a member.
IncreasingTree relabel_phi(const IncreasingTree& t, std::span<const Vertex> vertices);

}  // namespace rrtcut
