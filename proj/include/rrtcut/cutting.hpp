#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rrtcut/rng.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut {

/// Result of one cut on a tree. Vertex sets are in the labels of the tree
/// that was cut; `remaining` is the root component relabeled onto [m].
struct CutOutcome {
    EdgeRef selected_edge;
    std::vector<Vertex> removed;
    std::vector<Vertex> remaining_vertices;
    std::optional<IncreasingTree> remaining;  // empty when the root was deleted
    std::size_t removed_size = 0;

    bool destroyed_instantly() const { return !remaining.has_value(); }
};

/// Cut given an explicit edge: the root-side endpoint and its whole subtree go.
CutOutcome degree_biased_cut_at(const IncreasingTree& t, const EdgeRef& edge);

/// Cut given an explicit edge: the child endpoint's subtree goes.
CutOutcome uniform_edge_cut_at(const IncreasingTree& t, const EdgeRef& edge);

/// Uniform edge, then delete its parent endpoint together with that vertex's
/// subtree. Vertex v is deleted with probability degree(v) / (n - 1).
CutOutcome degree_biased_cut(const IncreasingTree& t, Rng& rng);

/// Uniform edge, then discard the component not containing the root.
CutOutcome uniform_edge_cut(const IncreasingTree& t, Rng& rng);

enum class Terminal { root_isolated, instantly_destroyed };

struct CutStep {
    EdgeRef edge;  // labels of the initial tree
    std::size_t removed_size = 0;
    std::size_t remaining_size = 0;
};

struct DestructionTrace {
    std::size_t initial_n = 0;
    std::vector<CutStep> steps;
    Terminal terminal = Terminal::root_isolated;

    std::size_t cuts() const { return steps.size(); }
};

/// Degree-biased cuts until the root component has size 0 or 1; cuts() is K_n.
DestructionTrace run_degree_biased_destruction(const IncreasingTree& t, Rng& rng);

/// Uniform edge removals until only the root remains; cuts() is X_n.
DestructionTrace run_uniform_isolation(const IncreasingTree& t, Rng& rng);

/// Rows `trial,step,removed_size,remaining_size` (no header).
std::string trace_csv_rows(std::size_t trial, const DestructionTrace& trace);

inline constexpr const char* kTraceCsvHeader = "trial,step,removed_size,remaining_size";

}  // namespace rrtcut
