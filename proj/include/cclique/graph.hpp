#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cclique/errors.hpp"

namespace cclique {

using Clique = std::vector<int>;      // vertex ids, ascending
using CliqueSet = std::vector<Clique>; // canonical form: lexicographically sorted

inline void canonicalize(CliqueSet& cs) {
    for (auto& k : cs) std::sort(k.begin(), k.end());
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

enum class BitsetMirror { Auto, On, Off };

// Immutable undirected simple graph over dense ids 0..n-1.
// Adjacency is kept as sorted arrays; for small n an adjacency-bitset
// mirror is kept as well so adjacent() is O(1).
class Graph {
public:
    static constexpr int kBitsetLimit = 4096;

    Graph() = default;

    Graph(int n, std::vector<std::vector<int>> adj, BitsetMirror mirror = BitsetMirror::Auto)
        : n_(n), adj_(std::move(adj)) {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
        adj_.resize(static_cast<size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            auto& a = adj_[v];
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
            m_ += a.size();
        }
        m_ /= 2;
        bool want_bits = mirror == BitsetMirror::On ||
                         (mirror == BitsetMirror::Auto && n_ <= kBitsetLimit);
        if (want_bits && n_ > 0) {
            words_ = (static_cast<size_t>(n_) + 63) / 64;
            bits_.assign(words_ * static_cast<size_t>(n_), 0);
            for (int v = 0; v < n_; ++v)
                for (int u : adj_[v]) bits_[v * words_ + u / 64] |= 1ull << (u % 64);
        }
    }

    int order() const { return n_; }
    size_t edge_count() const { return m_; }
    int degree(int v) const { return static_cast<int>(adj_[check(v)].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[check(v)]; }

    bool adjacent(int u, int v) const {
        check(u);
        check(v);
        if (!bits_.empty()) return (bits_[u * words_ + v / 64] >> (v % 64)) & 1u;
        return adjacent_by_search(u, v);
    }

    // Binary-search path, kept callable so the two representations can be
    // cross-checked against each other in tests.
    bool adjacent_by_search(int u, int v) const {
        const auto& a = adj_[check(u)];
        return std::binary_search(a.begin(), a.end(), check(v));
    }

    bool has_bitset() const { return !bits_.empty(); }
    size_t words() const { return words_; }
    // Row of the adjacency bitset for v (empty span when no mirror).
    std::span<const uint64_t> row(int v) const {
        if (bits_.empty()) return {};
        return {bits_.data() + static_cast<size_t>(check(v)) * words_, words_};
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m_);
        for (int v = 0; v < n_; ++v)
            for (int u : adj_[v])
                if (v < u) out.emplace_back(v, u);
        return out;
    }

private:
    int check(int v) const {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range");
        return v;
    }

    int n_ = 0;
    size_t m_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<uint64_t> bits_; // n rows of `words_` words each
    size_t words_ = 0;
};

struct ParseStats {
    size_t self_loops_dropped = 0;
    size_t duplicates_dropped = 0;
    size_t pairs_read = 0;
};

// Deduplicates, symmetrizes and drops self-loops. n defaults to max id + 1.
inline Graph build_graph(std::span<const std::pair<int, int>> edge_list,
                         std::optional<int> n = std::nullopt,
                         BitsetMirror mirror = BitsetMirror::Auto,
                         ParseStats* stats = nullptr) {
    int max_id = -1;
    for (auto [u, v] : edge_list) {
        if (u < 0 || v < 0) throw std::invalid_argument("negative vertex id in edge list");
        max_id = std::max({max_id, u, v});
    }
    int nn = n.value_or(max_id + 1);
    if (max_id >= nn)
        throw std::invalid_argument("vertex id " + std::to_string(max_id) +
                                    " exceeds explicit vertex count " + std::to_string(nn));
    std::vector<std::pair<int, int>> es;
    es.reserve(edge_list.size());
    size_t loops = 0;
    for (auto [u, v] : edge_list) {
        if (u == v) {
            ++loops;
            continue;
        }
        es.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    if (stats) {
        stats->pairs_read = edge_list.size();
        stats->self_loops_dropped = loops;
        stats->duplicates_dropped = edge_list.size() - loops - es.size();
    }
    std::vector<std::vector<int>> adj(nn);
    for (auto [u, v] : es) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return Graph(nn, std::move(adj), mirror);
}

// N(u) ∩ N(v) by sorted-set intersection.
inline std::vector<int> common_neighbors(const Graph& g, int u, int v) {
    if (u == v) throw std::invalid_argument("common_neighbors requires distinct vertices");
    const auto& a = g.neighbors(u);
    const auto& b = g.neighbors(v);
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// A vertex ordering together with its inverse permutation.
struct EliminationOrder {
    std::vector<int> order; // position -> vertex
    std::vector<int> pos;   // vertex -> position

    static EliminationOrder from_order(std::vector<int> order) {
        EliminationOrder eo;
        eo.pos.assign(order.size(), -1);
        for (size_t i = 0; i < order.size(); ++i) {
            int v = order[i];
            if (v < 0 || v >= static_cast<int>(order.size()) || eo.pos[v] != -1)
                throw std::invalid_argument("order is not a permutation of the vertex set");
            eo.pos[v] = static_cast<int>(i);
        }
        eo.order = std::move(order);
        return eo;
    }

    static EliminationOrder identity(int n) {
        EliminationOrder eo;
        eo.order.resize(n);
        eo.pos.resize(n);
        for (int i = 0; i < n; ++i) eo.order[i] = eo.pos[i] = i;
        return eo;
    }
};

// View of the suffix V_i = {σ(i), ..., σ(n-1)} of an ordering.
// Holds only references; cheap to create per elimination step.
class SuffixView {
public:
    SuffixView(const Graph& g, const EliminationOrder& eo, int start)
        : g_(&g), eo_(&eo), start_(start) {
        if (start < 0 || start > g.order())
            throw std::invalid_argument("suffix start out of range");
    }

    const Graph& graph() const { return *g_; }
    int start() const { return start_; }
    size_t size() const { return g_->order() - start_; }

    bool contains(int v) const {
        return v >= 0 && v < g_->order() && eo_->pos[v] >= start_;
    }

    // N(v) ∩ V_i, ascending ids.
    std::vector<int> neighborhood(int v) const {
        require(v);
        std::vector<int> out;
        for (int u : g_->neighbors(v))
            if (eo_->pos[u] >= start_) out.push_back(u);
        return out;
    }

    // Vertices of the view, ascending ids.
    std::vector<int> vertices() const {
        std::vector<int> out;
        out.reserve(size());
        for (int i = start_; i < g_->order(); ++i) out.push_back(eo_->order[i]);
        std::sort(out.begin(), out.end());
        return out;
    }

    void require(int v) const {
        if (!contains(v))
            throw std::invalid_argument("vertex " + std::to_string(v) + " not in suffix view");
    }

private:
    const Graph* g_;
    const EliminationOrder* eo_;
    int start_;
};

inline std::vector<int> neighborhood_in_suffix(const SuffixView& view, int v) {
    return view.neighborhood(v);
}

} // namespace cclique
