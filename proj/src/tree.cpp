#include "rrtcut/tree.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace rrtcut {

IncreasingTree::IncreasingTree() : IncreasingTree(std::vector<Vertex>{0, 0}) {}

IncreasingTree::IncreasingTree(std::vector<Vertex> parent) : parent_(std::move(parent)) {
    const std::size_t n = size();
    offset_.assign(n + 2, 0);
    for (std::size_t v = 2; v <= n; ++v) ++offset_[parent_[v] + 1];
    for (std::size_t v = 1; v <= n + 1; ++v) offset_[v] += offset_[v - 1];
    child_.resize(n > 0 ? n - 1 : 0);
    std::vector<std::uint32_t> fill(offset_.begin(), offset_.end() - 1);
    for (std::size_t v = 2; v <= n; ++v) child_[fill[parent_[v]]++] = static_cast<Vertex>(v);
}

IncreasingTree IncreasingTree::from_parents(std::span<const Vertex> parents) {
    std::vector<Vertex> parent(parents.size() + 2, 0);
    for (std::size_t i = 0; i < parents.size(); ++i) {
        const Vertex v = static_cast<Vertex>(i + 2);
        if (parents[i] < 1 || parents[i] >= v) {
            throw std::invalid_argument("parent of vertex " + std::to_string(v) + " must lie in [1, " +
                                        std::to_string(v - 1) + "], got " + std::to_string(parents[i]));
        }
        parent[v] = parents[i];
    }
    return IncreasingTree(std::move(parent));
}

void IncreasingTree::check_vertex(Vertex v) const {
    if (v < 1 || v > size()) {
        throw std::out_of_range("vertex " + std::to_string(v) + " outside [1, " + std::to_string(size()) + "]");
    }
}

Vertex IncreasingTree::parent(Vertex v) const {
    check_vertex(v);
    return parent_[v];
}

std::span<const Vertex> IncreasingTree::children(Vertex v) const {
    check_vertex(v);
    return {child_.data() + offset_[v], offset_[v + 1] - offset_[v]};
}

EdgeRef IncreasingTree::edge(std::size_t index) const {
    if (index >= edge_count()) throw std::out_of_range("edge index " + std::to_string(index));
    const auto c = static_cast<Vertex>(index + 2);
    return {parent_[c], c};
}

std::vector<Vertex> IncreasingTree::subtree(Vertex v) const {
    check_vertex(v);
    // parent(w) < w, so one increasing sweep propagates membership.
    std::vector<char> in(size() + 1, 0);
    in[v] = 1;
    std::vector<Vertex> out{v};
    for (std::size_t w = v + 1; w <= size(); ++w) {
        if (in[parent_[w]]) {
            in[w] = 1;
            out.push_back(static_cast<Vertex>(w));
        }
    }
    return out;
}

std::uint64_t IncreasingTree::rank() const {
    std::uint64_t r = 0;
    for (std::size_t v = 2; v <= size(); ++v) r = r * (v - 1) + (parent_[v] - 1);
    return r;
}

std::string IncreasingTree::to_csv() const {
    std::ostringstream os;
    os << size();
    for (std::size_t v = 2; v <= size(); ++v) os << ',' << parent_[v];
    return os.str();
}

IncreasingTree IncreasingTree::from_csv(std::string_view line) {
    std::vector<std::uint64_t> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t comma = std::min(line.find(',', pos), line.size());
        auto token = line.substr(pos, comma - pos);
        while (!token.empty() && (token.back() == '\r' || token.back() == ' ')) token.remove_suffix(1);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
            throw std::invalid_argument("malformed tree csv field '" + std::string(token) + "'");
        }
        fields.push_back(value);
        pos = comma + 1;
    }
    if (fields.empty() || fields[0] == 0) throw SizeError("tree csv: size must be positive");
    if (fields.size() != fields[0]) {
        throw std::invalid_argument("tree csv: expected " + std::to_string(fields[0] - 1) + " parents");
    }
    std::vector<Vertex> parents(fields.begin() + 1, fields.end());
    return from_parents(parents);
}

IncreasingTree generate_rrt(std::size_t n, Rng& rng) {
    if (n == 0) throw SizeError("tree size must be at least 1");
    std::vector<Vertex> parents(n - 1);
    for (std::size_t k = 2; k <= n; ++k) parents[k - 2] = static_cast<Vertex>(1 + rng.below(k - 1));
    return IncreasingTree::from_parents(parents);
}

std::uint64_t increasing_tree_count(std::size_t n) {
    if (n == 0) throw SizeError("tree size must be at least 1");
    if (n > 21) throw SizeError("(n-1)! overflows 64 bits for n > 21");
    std::uint64_t f = 1;
    for (std::size_t i = 2; i < n; ++i) f *= i;
    return f;
}

void for_each_increasing_tree(std::size_t n, const std::function<void(const IncreasingTree&)>& visit,
                              std::size_t cap) {
    if (n == 0) throw SizeError("tree size must be at least 1");
    if (n > cap) {
        throw SizeError("enumeration of I_" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }
    std::vector<Vertex> parents(n - 1, 1);
    while (true) {
        visit(IncreasingTree::from_parents(parents));
        // Odometer over {1} x {1,2} x ... x {1..n-1}, last digit fastest.
        std::size_t i = parents.size();
        while (i > 0) {
            --i;
            if (parents[i] < i + 1) {
                ++parents[i];
                std::fill(parents.begin() + static_cast<std::ptrdiff_t>(i) + 1, parents.end(), 1);
                break;
            }
            if (i == 0) return;
        }
        if (parents.empty()) return;
    }
}

std::vector<IncreasingTree> enumerate_increasing_trees(std::size_t n, std::size_t cap) {
    std::vector<IncreasingTree> out;
    for_each_increasing_tree(n, [&](const IncreasingTree& t) { out.push_back(t); }, cap);
    return out;
}

IncreasingTree relabel_phi(const IncreasingTree& t, std::span<const Vertex> vertices) {
    if (vertices.empty()) throw std::invalid_argument("relabel: empty vertex set");
    std::vector<Vertex> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("relabel: duplicate vertex");
    }
    std::vector<Vertex> new_label(t.size() + 1, 0);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 1 || sorted[i] > t.size()) throw std::out_of_range("relabel: vertex out of range");
        new_label[sorted[i]] = static_cast<Vertex>(i + 1);
    }
    std::vector<Vertex> parents(sorted.size() - 1);
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const Vertex p = t.parent(sorted[i]);
        if (p == 0 || new_label[p] == 0) {
            throw std::invalid_argument("relabel: induced structure is not a tree rooted at the minimum");
        }
        parents[i - 1] = new_label[p];
    }
    return IncreasingTree::from_parents(parents);
}

}  // namespace rrtcut
