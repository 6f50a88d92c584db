#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "cclique/graph.hpp"

namespace cclique {

// Induced 2-path (end_a, mid, end_b), canonical with end_a < end_b.
struct Wedge {
    int end_a = 0, mid = 0, end_b = 0;
    friend bool operator==(const Wedge&, const Wedge&) = default;
};

// Per-endpoint mapping M: for every vertex x, the wedges having x as an
// endpoint, stored CSR-style as (partner endpoint, midpoint) entries
// sorted by (partner, mid). A wedge appears in exactly two lists.
class WedgeIndex {
public:
    using Entry = std::pair<int, int>; // (other endpoint, midpoint)

    friend WedgeIndex enumerate_wedges(const Graph& g);

    size_t wedge_count() const { return count_; }
    int64_t build_time_us() const { return build_us_; }

    size_t endpoint_count(int v) const { return off_[v + 1] - off_[v]; }

    std::span<const Entry> entries(int v) const {
        return {ent_.data() + off_[v], ent_.data() + off_[v + 1]};
    }

    // Midpoints of wedges (v, m, u) for a fixed endpoint pair, ascending.
    std::span<const Entry> group(int v, int u) const {
        auto es = entries(v);
        auto lo = std::lower_bound(es.begin(), es.end(), Entry{u, -1});
        auto hi = std::lower_bound(es.begin(), es.end(), Entry{u + 1, -1});
        return {lo, hi};
    }

    // Canonical wedge triples, each exactly once, sorted by (end_a, mid, end_b).
    std::vector<Wedge> all_wedges() const {
        std::vector<Wedge> out;
        out.reserve(count_);
        for (int a = 0; a + 1 < static_cast<int>(off_.size()); ++a)
            for (auto [b, m] : entries(a))
                if (a < b) out.push_back({a, m, b});
        std::sort(out.begin(), out.end(), [](const Wedge& x, const Wedge& y) {
            return std::tie(x.end_a, x.mid, x.end_b) < std::tie(y.end_a, y.mid, y.end_b);
        });
        return out;
    }

private:
    std::vector<size_t> off_;
    std::vector<Entry> ent_;
    size_t count_ = 0;
    int64_t build_us_ = 0;
};

// Preprocess: enumerate every induced 2-path once. The measured wall time
// is the p(n,c) preprocessing cost.
inline WedgeIndex enumerate_wedges(const Graph& g) {
    auto t0 = std::chrono::steady_clock::now();
    const int n = g.order();
    WedgeIndex idx;
    idx.off_.assign(static_cast<size_t>(n) + 1, 0);
    // counting pass
    for (int m = 0; m < n; ++m) {
        const auto& nb = g.neighbors(m);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (!g.adjacent(nb[i], nb[j])) {
                    ++idx.off_[nb[i] + 1];
                    ++idx.off_[nb[j] + 1];
                    ++idx.count_;
                }
    }
    for (size_t v = 0; v + 1 < idx.off_.size(); ++v) idx.off_[v + 1] += idx.off_[v];
    idx.ent_.resize(2 * idx.count_);
    std::vector<size_t> cur(idx.off_.begin(), idx.off_.end() - 1);
    for (int m = 0; m < n; ++m) {
        const auto& nb = g.neighbors(m);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (!g.adjacent(nb[i], nb[j])) {
                    idx.ent_[cur[nb[i]]++] = {nb[j], m};
                    idx.ent_[cur[nb[j]]++] = {nb[i], m};
                }
    }
    for (int v = 0; v < n; ++v)
        std::sort(idx.ent_.begin() + idx.off_[v], idx.ent_.begin() + idx.off_[v + 1]);
    idx.build_us_ = std::chrono::duration_cast<std::chrono::microseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return idx;
}

// N_H(u) within the view for the non-adjacent pair (v, u): the midpoints of
// wedges (v, ·, u) that lie in the view, i.e. N(v) ∩ N(u) ∩ V_i.
inline std::vector<int> candidate_neighborhood(const WedgeIndex& idx, const SuffixView& view,
                                               int v, int u) {
    view.require(v);
    view.require(u);
    if (view.graph().adjacent(v, u))
        throw std::invalid_argument("candidate_neighborhood requires a non-adjacent pair");
    std::vector<int> out;
    for (auto [partner, mid] : idx.group(v, u))
        if (view.contains(mid)) out.push_back(mid);
    return out;
}

// Same set computed directly, without the wedge index.
inline std::vector<int> candidate_neighborhood_direct(const SuffixView& view, int v, int u) {
    view.require(v);
    view.require(u);
    const Graph& g = view.graph();
    if (g.adjacent(v, u))
        throw std::invalid_argument("candidate_neighborhood requires a non-adjacent pair");
    std::vector<int> out;
    for (int m : common_neighbors(g, v, u))
        if (view.contains(m)) out.push_back(m);
    return out;
}

// A_i: vertices of the view excluding v and its neighbors.
inline std::vector<int> nonneighbor_suffix_set(const SuffixView& view, int v) {
    view.require(v);
    const Graph& g = view.graph();
    std::vector<int> out;
    for (int u : view.vertices())
        if (u != v && !g.adjacent(u, v)) out.push_back(u);
    return out;
}

} // namespace cclique
