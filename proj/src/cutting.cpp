#include "rrtcut/cutting.hpp"

#include "cut_engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rrtcut {
namespace {

void require_cuttable(const IncreasingTree& t) {
    if (t.size() < 2) throw SizeError("a single-vertex tree cannot be cut");
}

void check_edge(const IncreasingTree& t, const EdgeRef& e) {
    if (e.child_endpoint < 2 || e.child_endpoint > t.size() || t.parent(e.child_endpoint) != e.parent_endpoint) {
        throw std::invalid_argument("not an edge of the tree");
    }
}

CutOutcome remove_subtree(const IncreasingTree& t, const EdgeRef& edge, Vertex top) {
    CutOutcome out;
    out.selected_edge = edge;
    out.removed = t.subtree(top);
    out.removed_size = out.removed.size();
    if (top == 1) return out;
    out.remaining_vertices.reserve(t.size() - out.removed_size);
    std::size_t r = 0;
    for (Vertex v = 1; v <= t.size(); ++v) {
        if (r < out.removed.size() && out.removed[r] == v) {
            ++r;
        } else {
            out.remaining_vertices.push_back(v);
        }
    }
    out.remaining = relabel_phi(t, out.remaining_vertices);
    return out;
}

EdgeRef uniform_edge(const IncreasingTree& t, Rng& rng) { return t.edge(rng.below(t.edge_count())); }

}  // namespace

CutOutcome degree_biased_cut_at(const IncreasingTree& t, const EdgeRef& edge) {
    require_cuttable(t);
    check_edge(t, edge);
    return remove_subtree(t, edge, edge.parent_endpoint);
}

CutOutcome uniform_edge_cut_at(const IncreasingTree& t, const EdgeRef& edge) {
    require_cuttable(t);
    check_edge(t, edge);
    return remove_subtree(t, edge, edge.child_endpoint);
}

CutOutcome degree_biased_cut(const IncreasingTree& t, Rng& rng) {
    require_cuttable(t);
    return degree_biased_cut_at(t, uniform_edge(t, rng));
}

CutOutcome uniform_edge_cut(const IncreasingTree& t, Rng& rng) {
    require_cuttable(t);
    return uniform_edge_cut_at(t, uniform_edge(t, rng));
}

DestructionTrace run_degree_biased_destruction(const IncreasingTree& t, Rng& rng) {
    require_cuttable(t);
    DestructionTrace trace;
    trace.initial_n = t.size();
    detail::CutEngine engine(t);
    while (engine.alive_count() >= 2) {
        const EdgeRef e = engine.pick_edge(rng);
        const std::size_t k = engine.remove(e.parent_endpoint);
        trace.steps.push_back({e, k, engine.alive_count()});
        if (e.parent_endpoint == 1) trace.terminal = Terminal::instantly_destroyed;
    }
    return trace;
}

DestructionTrace run_uniform_isolation(const IncreasingTree& t, Rng& rng) {
    require_cuttable(t);
    DestructionTrace trace;
    trace.initial_n = t.size();
    detail::CutEngine engine(t);
    while (engine.alive_count() >= 2) {
        const EdgeRef e = engine.pick_edge(rng);
        const std::size_t k = engine.remove(e.child_endpoint);
        trace.steps.push_back({e, k, engine.alive_count()});
    }
    trace.terminal = Terminal::root_isolated;
    return trace;
}

std::string trace_csv_rows(std::size_t trial, const DestructionTrace& trace) {
    std::ostringstream os;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        os << trial << ',' << (i + 1) << ',' << trace.steps[i].removed_size << ',' << trace.steps[i].remaining_size
           << '\n';
    }
    return os.str();
}

}  // namespace rrtcut
