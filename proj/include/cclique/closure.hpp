#pragma once

#include <cstdint>
#include <cstring>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "cclique/graph.hpp"

namespace cclique {

struct BadPair {
    int u = 0, v = 0;
    int witnesses = 0; // common-neighbor count
};

struct ClosureReport {
    int closure_c = 1;
    int weak_c = 1;
    std::vector<int> weak_order;
    // bad_pair_count_at[i] = number of bad pairs at level c = i + 1, up to closure_c.
    std::vector<size_t> bad_pair_count_at;
    // (c, vertices extracted before the greedy got stuck) for each failed level.
    std::vector<std::pair<int, size_t>> failed_levels;
};

enum class CountingMode { Auto, Incremental, Recompute };

namespace detail {

constexpr int kMatrixLimit = 2048;

// |N(u) ∩ N(v)| restricted to `alive`; early exit at `cap`.
inline int common_count_capped(const Graph& g, int u, int v,
                               const std::vector<uint8_t>& alive, int cap) {
    const auto& a = g.neighbors(u);
    const auto& b = g.neighbors(v);
    int cnt = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else {
            if (alive.empty() || alive[a[i]]) {
                if (++cnt >= cap) return cnt;
            }
            ++i;
            ++j;
        }
    }
    return cnt;
}

// Dense symmetric common-neighbor counters, decrementable on vertex removal
// and incrementable on edge insertion (used by the planted generator).
class CommonCountMatrix {
public:
    explicit CommonCountMatrix(const Graph& g) : n_(g.order()), cnt_(size_t(n_) * n_, 0) {
        for (int m = 0; m < n_; ++m) {
            const auto& nb = g.neighbors(m);
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j) {
                    ++cnt_[size_t(nb[i]) * n_ + nb[j]];
                    ++cnt_[size_t(nb[j]) * n_ + nb[i]];
                }
        }
    }

    int n() const { return n_; }
    uint16_t at(int u, int v) const { return cnt_[size_t(u) * n_ + v]; }

    void decrement(int u, int v) {
        --cnt_[size_t(u) * n_ + v];
        --cnt_[size_t(v) * n_ + u];
    }
    void increment(int u, int v) {
        ++cnt_[size_t(u) * n_ + v];
        ++cnt_[size_t(v) * n_ + u];
    }

private:
    int n_;
    std::vector<uint16_t> cnt_;
};

} // namespace detail

// Exactly the non-adjacent pairs (u < v) with at least c common neighbors.
inline std::vector<BadPair> bad_pairs(const Graph& g, int c) {
    if (c < 1) throw std::invalid_argument("closure level must be positive");
    std::vector<BadPair> out;
    std::vector<uint8_t> none;
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v) {
            if (g.adjacent(u, v)) continue;
            int w = detail::common_count_capped(g, u, v, none, g.order() + 1);
            if (w >= c) out.push_back({u, v, w});
        }
    return out;
}

// Smallest c such that every non-adjacent pair has fewer than c common
// neighbors; 1 when there is no non-adjacent pair.
inline int closure_number(const Graph& g) {
    int worst = 0;
    std::vector<uint8_t> none;
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v) {
            if (g.adjacent(u, v)) continue;
            worst = std::max(worst,
                             detail::common_count_capped(g, u, v, none, g.order() + 1));
        }
    return worst + 1;
}

// Greedy weak-closure ordering at level c: repeatedly extract the
// smallest-id vertex that sits in no bad pair of the remaining induced
// subgraph. Returns nullopt (with the number of extracted vertices in
// *extracted if given) when the greedy gets stuck.
inline std::optional<std::vector<int>> weak_closure_order(
    const Graph& g, int c, CountingMode mode = CountingMode::Auto,
    size_t* extracted = nullptr, const detail::CommonCountMatrix* master = nullptr) {
    if (c < 1) throw std::invalid_argument("closure level must be positive");
    const int n = g.order();
    if (extracted) *extracted = 0;
    if (n == 0) return std::vector<int>{};

    bool incremental = mode == CountingMode::Incremental ||
                       (mode == CountingMode::Auto && n <= detail::kMatrixLimit);
    std::vector<int> order;
    order.reserve(n);
    std::vector<uint8_t> alive(n, 1);

    if (incremental) {
        detail::CommonCountMatrix cnt = master ? *master : detail::CommonCountMatrix(g);
        // bad_deg[v] = number of alive bad-pair partners of v
        std::vector<int> bad_deg(n, 0);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!g.adjacent(u, v) && cnt.at(u, v) >= c) {
                    ++bad_deg[u];
                    ++bad_deg[v];
                }
        std::set<int> clean;
        for (int v = 0; v < n; ++v)
            if (bad_deg[v] == 0) clean.insert(v);

        auto drop_pair = [&](int x, int y) {
            if (--bad_deg[x] == 0) clean.insert(x);
            if (--bad_deg[y] == 0) clean.insert(y);
        };

        for (int step = 0; step < n; ++step) {
            if (clean.empty()) {
                if (extracted) *extracted = order.size();
                return std::nullopt;
            }
            int w = *clean.begin();
            clean.erase(clean.begin());
            alive[w] = 0;
            order.push_back(w);
            std::vector<int> nb;
            for (int x : g.neighbors(w))
                if (alive[x]) nb.push_back(x);
            // w leaves: its own bad pairs vanish
            for (int u = 0; u < n; ++u)
                if (alive[u] && !g.adjacent(w, u) && cnt.at(w, u) >= c) {
                    if (--bad_deg[u] == 0) clean.insert(u);
                }
            // w stops being a common neighbor of pairs inside N(w)
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j) {
                    int x = nb[i], y = nb[j];
                    cnt.decrement(x, y);
                    if (cnt.at(x, y) == c - 1 && !g.adjacent(x, y)) drop_pair(x, y);
                }
        }
        return order;
    }

    // Per-level recomputation (reference path; O(n^3)-ish).
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n && pick < 0; ++v) {
            if (!alive[v]) continue;
            bool bad = false;
            for (int u = 0; u < n && !bad; ++u) {
                if (u == v || !alive[u] || g.adjacent(u, v)) continue;
                if (detail::common_count_capped(g, u, v, alive, c) >= c) bad = true;
            }
            if (!bad) pick = v;
        }
        if (pick < 0) {
            if (extracted) *extracted = order.size();
            return std::nullopt;
        }
        alive[pick] = 0;
        order.push_back(pick);
    }
    return order;
}

// True iff for every i, order[i] is in no bad pair of the graph induced by
// the suffix order[i..n-1] at level c.
inline bool is_weak_order(const Graph& g, int c, std::span<const int> order) {
    const int n = g.order();
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("order size does not match vertex count");
    std::vector<uint8_t> seen(n, 0);
    for (int v : order) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("order is not a permutation of the vertex set");
        seen[v] = 1;
    }
    std::vector<uint8_t> alive(n, 1);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        for (int u = 0; u < n; ++u) {
            if (u == v || !alive[u] || g.adjacent(u, v)) continue;
            if (detail::common_count_capped(g, u, v, alive, c) >= c) return false;
        }
        alive[v] = 0;
    }
    return true;
}

// Smallest c admitting a weak-closure ordering, with a certificate.
// Searches upward from 1; success is guaranteed at c = closure_number(g).
inline std::pair<int, std::vector<int>> weak_closure_number(
    const Graph& g, CountingMode mode = CountingMode::Auto,
    std::vector<std::pair<int, size_t>>* failed_levels = nullptr) {
    const int n = g.order();
    if (n == 0) return {1, {}};
    bool incremental = mode == CountingMode::Incremental ||
                       (mode == CountingMode::Auto && n <= detail::kMatrixLimit);
    std::optional<detail::CommonCountMatrix> master;
    if (incremental) master.emplace(g);
    for (int c = 1;; ++c) {
        size_t got = 0;
        auto ord = weak_closure_order(g, c, mode, &got, master ? &*master : nullptr);
        if (ord) return {c, std::move(*ord)};
        if (failed_levels) failed_levels->emplace_back(c, got);
    }
}

inline ClosureReport analyze_closure(const Graph& g, CountingMode mode = CountingMode::Auto) {
    ClosureReport rep;
    rep.closure_c = closure_number(g);
    auto [wc, word] = weak_closure_number(g, mode, &rep.failed_levels);
    rep.weak_c = wc;
    rep.weak_order = std::move(word);
    // histogram of bad-pair counts per level 1..closure_c
    rep.bad_pair_count_at.assign(rep.closure_c, 0);
    for (const auto& bp : bad_pairs(g, 1))
        for (int c = 1; c <= bp.witnesses && c <= rep.closure_c; ++c)
            ++rep.bad_pair_count_at[c - 1];
    return rep;
}

} // namespace cclique
