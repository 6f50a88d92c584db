#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cclique/errors.hpp"
#include "cclique/graph.hpp"

namespace cclique {

struct KernelStats {
    uint64_t recursive_calls = 0;
    uint64_t emitted = 0;
    uint64_t ops = 0;       // elementary work units (word ops / probes)
    uint64_t delay_max = 0; // max ops between consecutive emissions
};

struct CliqueList {
    CliqueSet cliques;
    std::string source_tag;
    KernelStats stats;
};

// Brute-force oracle size guard; override with CCLIQUE_ORACLE_LIMIT.
inline size_t oracle_limit() {
    if (const char* env = std::getenv("CCLIQUE_ORACLE_LIMIT")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<size_t>(v);
    }
    return 25;
}

namespace detail {

// Subset of a Graph relabeled to local ids 0..s-1 (ascending global id)
// with bitset adjacency rows.
class LocalGraph {
public:
    LocalGraph(const Graph& g, std::span<const int> subset) : verts_(subset.begin(), subset.end()) {
        std::sort(verts_.begin(), verts_.end());
        verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
        s_ = static_cast<int>(verts_.size());
        words_ = (static_cast<size_t>(s_) + 63) / 64;
        rows_.assign(words_ * s_, 0);
        for (int i = 0; i < s_; ++i)
            for (int j = i + 1; j < s_; ++j)
                if (g.adjacent(verts_[i], verts_[j])) {
                    rows_[i * words_ + j / 64] |= 1ull << (j % 64);
                    rows_[j * words_ + i / 64] |= 1ull << (i % 64);
                }
    }

    int size() const { return s_; }
    size_t words() const { return words_; }
    int global(int local) const { return verts_[local]; }
    const uint64_t* row(int local) const { return rows_.data() + local * words_; }

    Clique to_global(std::span<const int> locals) const {
        Clique out;
        out.reserve(locals.size());
        for (int l : locals) out.push_back(verts_[l]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    int s_ = 0;
    size_t words_ = 0;
    std::vector<int> verts_;
    std::vector<uint64_t> rows_;
};

inline size_t popcount_words(const uint64_t* w, size_t words) {
    size_t c = 0;
    for (size_t i = 0; i < words; ++i) c += std::popcount(w[i]);
    return c;
}

template <typename F>
inline void for_each_bit(const uint64_t* w, size_t words, F f) {
    for (size_t i = 0; i < words; ++i) {
        uint64_t x = w[i];
        while (x) {
            f(static_cast<int>(i * 64 + std::countr_zero(x)));
            x &= x - 1;
        }
    }
}

struct PivotCtx {
    const LocalGraph* lg;
    KernelStats* st;
    CliqueSet* out;
    std::vector<uint64_t> bufs; // recursion scratch, 2 sets per level
    std::vector<int> r;
    uint64_t last_emit_ops = 0;

    void note_emit() {
        st->ops += 1;
        uint64_t gap = st->ops - last_emit_ops;
        if (gap > st->delay_max) st->delay_max = gap;
        last_emit_ops = st->ops;
        ++st->emitted;
    }
};

inline void pivot_rec(PivotCtx& cx, size_t depth, uint64_t* P, uint64_t* X) {
    const auto& lg = *cx.lg;
    const size_t W = lg.words();
    ++cx.st->recursive_calls;
    bool p_empty = true, x_empty = true;
    for (size_t i = 0; i < W; ++i) {
        p_empty &= P[i] == 0;
        x_empty &= X[i] == 0;
    }
    cx.st->ops += W;
    if (p_empty && x_empty) {
        cx.out->push_back(lg.to_global(cx.r));
        cx.note_emit();
        return;
    }
    if (p_empty) return;

    // pivot from P ∪ X with the most neighbors in P, ties to smallest id
    int pivot = -1;
    size_t best = 0;
    auto consider = [&](int v) {
        size_t cnt = 0;
        const uint64_t* rv = lg.row(v);
        for (size_t i = 0; i < W; ++i) cnt += std::popcount(rv[i] & P[i]);
        cx.st->ops += W;
        if (pivot < 0 || cnt > best) {
            pivot = v;
            best = cnt;
        }
    };
    for_each_bit(P, W, consider);
    for_each_bit(X, W, consider);

    std::vector<int> ext;
    const uint64_t* rp = lg.row(pivot);
    for (size_t i = 0; i < W; ++i) {
        uint64_t x = P[i] & ~rp[i];
        while (x) {
            ext.push_back(static_cast<int>(i * 64 + std::countr_zero(x)));
            x &= x - 1;
        }
    }
    uint64_t* NP = cx.bufs.data() + depth * 2 * W; // preallocated for max depth
    uint64_t* NX = NP + W;
    for (int v : ext) {
        const uint64_t* rv = lg.row(v);
        for (size_t i = 0; i < W; ++i) {
            NP[i] = P[i] & rv[i];
            NX[i] = X[i] & rv[i];
        }
        cx.st->ops += 2 * W;
        cx.r.push_back(v);
        pivot_rec(cx, depth + 1, NP, NX);
        cx.r.pop_back();
        P[v / 64] &= ~(1ull << (v % 64));
        X[v / 64] |= 1ull << (v % 64);
    }
}

} // namespace detail

// Tomita-style branch and bound: all maximal cliques of G[subset].
inline CliqueList pivot_enumerate(const Graph& g, std::span<const int> subset) {
    CliqueList res;
    res.source_tag = "tomita";
    detail::LocalGraph lg(g, subset);
    if (lg.size() == 0) return res;
    const size_t W = lg.words();
    std::vector<uint64_t> P(W, 0), X(W, 0);
    for (int v = 0; v < lg.size(); ++v) P[v / 64] |= 1ull << (v % 64);
    detail::PivotCtx cx{&lg, &res.stats, &res.cliques, {}, {}, 0};
    cx.bufs.assign(static_cast<size_t>(lg.size() + 1) * 2 * W, 0);
    detail::pivot_rec(cx, 0, P.data(), X.data());
    canonicalize(res.cliques);
    return res;
}

// Lexicographic successor enumeration: polynomial work per emitted clique
// after polynomial preprocessing, which is the contract the output-sensitive
// complexity bound consumes. Queue-based, emits in lexicographic order.
inline CliqueList output_sensitive_enumerate(const Graph& g, std::span<const int> subset) {
    CliqueList res;
    res.source_tag = "outsens";
    detail::LocalGraph lg(g, subset);
    const int s = lg.size();
    if (s == 0) return res;
    const size_t W = lg.words();
    auto& st = res.stats;
    uint64_t last_emit_ops = 0;

    std::vector<uint64_t> full(W, 0);
    for (int v = 0; v < s; ++v) full[v / 64] |= 1ull << (v % 64);

    // greedy completion: repeatedly add the smallest vertex adjacent to all
    auto complete = [&](std::vector<uint64_t> t, std::vector<uint64_t> cand) {
        while (true) {
            int v = -1;
            for (size_t i = 0; i < W && v < 0; ++i)
                if (cand[i]) v = static_cast<int>(i * 64 + std::countr_zero(cand[i]));
            st.ops += W;
            if (v < 0) break;
            t[v / 64] |= 1ull << (v % 64);
            const uint64_t* rv = lg.row(v);
            for (size_t i = 0; i < W; ++i) cand[i] &= rv[i];
            st.ops += W;
        }
        std::vector<int> out;
        detail::for_each_bit(t.data(), W, [&](int v) { out.push_back(v); });
        return out; // ascending local ids
    };

    auto seed_to_sets = [&](std::span<const int> seed) {
        std::vector<uint64_t> t(W, 0), cand = full;
        for (int v : seed) {
            t[v / 64] |= 1ull << (v % 64);
            const uint64_t* rv = lg.row(v);
            for (size_t i = 0; i < W; ++i) cand[i] &= rv[i];
            st.ops += W;
        }
        return std::pair{t, cand};
    };

    std::set<std::vector<int>> pending, seen;
    {
        auto [t, cand] = seed_to_sets({});
        auto root = complete(std::move(t), std::move(cand));
        pending.insert(root);
        seen.insert(std::move(root));
    }
    while (!pending.empty()) {
        std::vector<int> k = *pending.begin();
        pending.erase(pending.begin());
        ++st.recursive_calls;
        res.cliques.push_back(lg.to_global(k));
        ++st.emitted;
        st.ops += 1;
        uint64_t gap = st.ops - last_emit_ops;
        if (gap > st.delay_max) st.delay_max = gap;
        last_emit_ops = st.ops;

        std::vector<uint64_t> kb(W, 0);
        for (int v : k) kb[v / 64] |= 1ull << (v % 64);
        for (int j = 0; j < s; ++j) {
            if ((kb[j / 64] >> (j % 64)) & 1u) continue;
            // seed: the part of k before j adjacent to j, plus j itself
            std::vector<int> seed;
            const uint64_t* rj = lg.row(j);
            for (int v : k) {
                if (v >= j) break;
                if ((rj[v / 64] >> (v % 64)) & 1u) seed.push_back(v);
            }
            seed.push_back(j);
            st.ops += k.size() + 1;
            auto [t, cand] = seed_to_sets(seed);
            auto kj = complete(std::move(t), std::move(cand));
            // valid successor iff the seed is exactly kj's prefix up to j
            std::vector<int> upto;
            for (int v : kj) {
                if (v > j) break;
                upto.push_back(v);
            }
            if (upto == seed && !seen.contains(kj)) {
                pending.insert(kj);
                seen.insert(std::move(kj));
            }
        }
    }
    canonicalize(res.cliques);
    return res;
}

// Ground-truth oracle: enumerate all subsets, keep cliques, filter to
// maximal. Guarded by oracle_limit().
inline CliqueList oracle_enumerate(const Graph& g, std::span<const int> subset) {
    CliqueList res;
    res.source_tag = "oracle";
    detail::LocalGraph lg(g, subset);
    const int s = lg.size();
    size_t limit = std::min<size_t>(oracle_limit(), 30); // 2^s table
    if (static_cast<size_t>(s) > limit)
        throw refusal_error("oracle_enumerate refuses subsets larger than " +
                            std::to_string(limit) + " vertices (got " + std::to_string(s) +
                            "); set CCLIQUE_ORACLE_LIMIT to override");
    if (s == 0) return res;
    const size_t W = lg.words();
    std::vector<uint64_t> rowmask(s, 0);
    for (int v = 0; v < s; ++v) {
        uint64_t m = 0;
        detail::for_each_bit(lg.row(v), W, [&](int u) { m |= 1ull << u; });
        rowmask[v] = m;
    }
    const uint64_t top = 1ull << s;
    std::vector<uint8_t> is_clique(static_cast<size_t>(top), 0);
    is_clique[0] = 1;
    std::vector<uint64_t> cliques;
    for (uint64_t mask = 1; mask < top; ++mask) {
        int v = std::countr_zero(mask);
        uint64_t rest = mask & (mask - 1);
        is_clique[mask] = is_clique[rest] && (rest & ~rowmask[v]) == 0;
        ++res.stats.ops;
        if (is_clique[mask]) cliques.push_back(mask);
    }
    uint64_t all = top - 1;
    for (uint64_t k : cliques) {
        bool maximal = true;
        uint64_t outside = all & ~k;
        while (outside && maximal) {
            int v = std::countr_zero(outside);
            outside &= outside - 1;
            ++res.stats.ops;
            if ((k & ~rowmask[v]) == 0) maximal = false;
        }
        if (maximal) {
            std::vector<int> locals;
            uint64_t m = k;
            while (m) {
                locals.push_back(std::countr_zero(m));
                m &= m - 1;
            }
            res.cliques.push_back(lg.to_global(locals));
            ++res.stats.emitted;
        }
    }
    canonicalize(res.cliques);
    return res;
}

// True iff k is a clique of G[subset] and no vertex of subset \ k is
// adjacent to all of k. The empty set is not maximal by convention.
inline bool is_maximal_in(const Graph& g, std::span<const int> subset, std::span<const int> k) {
    if (k.empty()) return false;
    std::vector<int> sub(subset.begin(), subset.end());
    std::sort(sub.begin(), sub.end());
    for (int v : k)
        if (!std::binary_search(sub.begin(), sub.end(), v))
            throw std::invalid_argument("clique is not contained in the subset");
    for (size_t i = 0; i < k.size(); ++i)
        for (size_t j = i + 1; j < k.size(); ++j)
            if (!g.adjacent(k[i], k[j])) return false;
    for (int x : sub) {
        bool in_k = std::find(k.begin(), k.end(), x) != k.end();
        if (in_k) continue;
        bool all = true;
        for (int v : k)
            if (!g.adjacent(x, v)) {
                all = false;
                break;
            }
        if (all) return false;
    }
    return true;
}

} // namespace cclique
