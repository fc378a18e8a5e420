#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "rrtcut/rng.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut::detail {

/// In-place cutting on a fixed tree. Deleted vertices are tombstoned and the
/// surviving non-root vertices are kept in a dense array for O(1) uniform
/// edge selection; every vertex is deleted at most once, so a full run costs
/// O(n) beyond the number of cuts.
class CutEngine {
public:
    explicit CutEngine(const IncreasingTree& t) : t_(t), alive_(t.size() + 1, 1), pos_(t.size() + 1, 0) {
        alive_list_.reserve(t.size() - 1);
        for (Vertex v = 2; v <= t.size(); ++v) {
            pos_[v] = static_cast<Vertex>(alive_list_.size());
            alive_list_.push_back(v);
        }
        alive_count_ = t.size();
        stack_.reserve(t.size());
    }

    std::size_t alive_count() const { return alive_count_; }

    EdgeRef pick_edge(Rng& rng) const {
        const Vertex c = alive_list_[rng.below(alive_list_.size())];
        return {t_.parent(c), c};
    }

    bool alive(Vertex v) const { return alive_[v] != 0; }

    /// Deletes `top` and its surviving descendants; returns how many went.
    /// Deleted labels are appended to `removed_out` when given.
    std::size_t remove(Vertex top, std::vector<Vertex>* removed_out = nullptr) {
        if (top == 1) {
            const std::size_t all = alive_count_;
            if (removed_out) {
                removed_out->push_back(1);
                removed_out->insert(removed_out->end(), alive_list_.begin(), alive_list_.end());
            }
            std::fill(alive_.begin(), alive_.end(), 0);
            alive_count_ = 0;
            alive_list_.clear();
            return all;
        }
        std::size_t removed = 0;
        stack_.clear();
        stack_.push_back(top);
        while (!stack_.empty()) {
            const Vertex v = stack_.back();
            stack_.pop_back();
            kill(v);
            ++removed;
            if (removed_out) removed_out->push_back(v);
            for (Vertex c : t_.children(v)) {
                if (alive_[c]) stack_.push_back(c);
            }
        }
        alive_count_ -= removed;
        return removed;
    }

private:
    void kill(Vertex v) {
        alive_[v] = 0;
        const Vertex last = alive_list_.back();
        alive_list_[pos_[v]] = last;
        pos_[last] = pos_[v];
        alive_list_.pop_back();
    }

    const IncreasingTree& t_;
    std::vector<char> alive_;
    std::vector<Vertex> pos_;
    std::vector<Vertex> alive_list_;
    std::vector<Vertex> stack_;
    std::size_t alive_count_ = 0;
};

}  // namespace rrtcut::detail
