#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cclique/errors.hpp"
#include "cclique/graph.hpp"

namespace cclique {

// One candidate block: the pivot's non-neighbor u_j and the vertex set of
// G[N_H(u_j)].
struct Block {
    int partner = -1;
    std::vector<int> vertices; // ascending ids
};

// A block together with the maximal cliques of its subgraph.
struct BlockCliques {
    int partner = -1;
    CliqueSet cliques; // each ascending ids
};

struct FilterStats {
    uint64_t trie_ops = 0;   // trie node visits
    uint64_t probes = 0;     // membership / adjacency probes (cure, exact)
    uint64_t duplicates = 0; // candidates seen in more than one block
    uint64_t checkset_size = 0;
    uint64_t unmarked_forward = 0;
    uint64_t unmarked_check = 0;
    size_t trie_nodes = 0;
};

// σ_c: vertices ranked block by block in order of first appearance,
// ascending id within a block.
class BlockOrdering {
public:
    BlockOrdering() = default;

    int rank(int v) const {
        auto it = rank_.find(v);
        return it == rank_.end() ? -1 : it->second;
    }
    size_t ranked_count() const { return by_rank_.size(); }
    int vertex_at(int r) const { return by_rank_[r]; }
    const std::vector<std::pair<int, std::vector<int>>>& blocks() const { return blocks_; }

    // Clique reordered ascending in σ_c rank.
    std::vector<int> by_sigma(std::span<const int> k) const { return sorted(k, false); }
    // Clique reordered descending in σ_c rank (i.e. ascending in σ̄_c).
    std::vector<int> by_sigma_bar(std::span<const int> k) const { return sorted(k, true); }

    friend BlockOrdering build_sigma_c(std::span<const Block> blocks);

private:
    std::vector<int> sorted(std::span<const int> k, bool reversed) const {
        std::vector<int> out(k.begin(), k.end());
        for (int v : out)
            if (rank(v) < 0)
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            " is not ranked by this block ordering");
        std::sort(out.begin(), out.end(), [&](int a, int b) {
            return reversed ? rank(a) > rank(b) : rank(a) < rank(b);
        });
        return out;
    }

    std::unordered_map<int, int> rank_;
    std::vector<int> by_rank_;
    std::vector<std::pair<int, std::vector<int>>> blocks_; // partner, first-seen vertices
};

inline BlockOrdering build_sigma_c(std::span<const Block> blocks) {
    BlockOrdering ord;
    for (const auto& b : blocks) {
        std::vector<int> vs(b.vertices);
        std::sort(vs.begin(), vs.end());
        std::vector<int> fresh;
        for (int v : vs)
            if (!ord.rank_.contains(v)) {
                ord.rank_.emplace(v, static_cast<int>(ord.by_rank_.size()));
                ord.by_rank_.push_back(v);
                fresh.push_back(v);
            }
        ord.blocks_.emplace_back(b.partner, std::move(fresh));
    }
    return ord;
}

// Ordered prefix tree over vertex sequences with terminal marks.
// "Removing" a clique clears its mark; nodes are never deleted.
class CliqueTrie {
public:
    enum class Direction { Forward, Reverse };

    CliqueTrie(const BlockOrdering& ord, Direction dir) : ord_(&ord), dir_(dir) {
        nodes_.push_back(Node{}); // root
    }

    // Ensures the path exists and sets the terminal mark.
    // Returns false if the sequence was already marked.
    bool insert(std::span<const int> seq) {
        validate(seq);
        int cur = 0;
        for (int v : seq) {
            ++ops_;
            auto [it, fresh] = nodes_[cur].kids.try_emplace(v, 0);
            if (fresh) {
                it->second = static_cast<int>(nodes_.size());
                nodes_.push_back(Node{v, cur, false, {}});
            }
            cur = it->second;
        }
        if (nodes_[cur].marked) return false;
        nodes_[cur].marked = true;
        return true;
    }

    // Clears the mark of every marked proper prefix of seq; returns how many.
    // The path of seq must already exist.
    size_t unmark_proper_prefixes(std::span<const int> seq) {
        size_t cleared = 0;
        walk_proper_prefixes(seq, [&](int node) {
            if (nodes_[node].marked) {
                nodes_[node].marked = false;
                ++cleared;
            }
        });
        return cleared;
    }

    // Marked proper prefixes of seq, as prefixes of the given sequence.
    std::vector<std::vector<int>> marked_proper_prefixes(std::span<const int> seq) {
        std::vector<std::vector<int>> out;
        size_t depth = 0;
        std::vector<int> prefix;
        walk_proper_prefixes(seq, [&](int node) {
            prefix.push_back(seq[depth++]);
            if (nodes_[node].marked) out.push_back(prefix);
        });
        return out;
    }

    bool contains_marked(std::span<const int> seq) const {
        int node = find(seq);
        return node >= 0 && nodes_[node].marked;
    }

    // Clears seq's mark if set; false when unmarked or absent.
    bool unmark_if_marked(std::span<const int> seq) {
        int node = find(seq);
        if (node < 0 || !nodes_[node].marked) return false;
        nodes_[node].marked = false;
        return true;
    }

    // All marked childless nodes, as root-to-node sequences. Marked interior
    // nodes are proper prefixes of longer candidates and are suppressed.
    std::vector<std::vector<int>> surviving() const {
        std::vector<std::vector<int>> out;
        std::vector<int> path;
        dfs(0, path, out);
        return out;
    }

    size_t node_count() const { return nodes_.size() - 1; }
    uint64_t ops() const { return ops_; }

private:
    struct Node {
        int vertex = -1;
        int parent = -1;
        bool marked = false;
        std::map<int, int> kids; // child vertex -> node index
    };

    void validate(std::span<const int> seq) const {
        for (size_t i = 0; i < seq.size(); ++i) {
            int r = ord_->rank(seq[i]);
            if (r < 0)
                throw std::invalid_argument("sequence vertex not ranked");
            if (i > 0) {
                int prev = ord_->rank(seq[i - 1]);
                bool ok = dir_ == Direction::Forward ? prev < r : prev > r;
                if (!ok)
                    throw std::invalid_argument(
                        "sequence is not strictly monotone in the trie ordering");
            }
        }
    }

    int find(std::span<const int> seq) const {
        int cur = 0;
        for (int v : seq) {
            ++ops_;
            auto it = nodes_[cur].kids.find(v);
            if (it == nodes_[cur].kids.end()) return -1;
            cur = it->second;
        }
        return cur;
    }

    template <typename F>
    void walk_proper_prefixes(std::span<const int> seq, F visit) {
        validate(seq);
        int cur = 0;
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            ++ops_;
            auto it = nodes_[cur].kids.find(seq[i]);
            if (it == nodes_[cur].kids.end())
                throw std::invalid_argument("sequence path does not exist in trie");
            cur = it->second;
            visit(cur);
        }
    }

    void dfs(int node, std::vector<int>& path, std::vector<std::vector<int>>& out) const {
        ++ops_;
        if (node != 0 && nodes_[node].marked && nodes_[node].kids.empty()) out.push_back(path);
        for (auto [v, child] : nodes_[node].kids) {
            path.push_back(v);
            dfs(child, path, out);
            path.pop_back();
        }
    }

    std::vector<Node> nodes_;
    const BlockOrdering* ord_;
    Direction dir_;
    mutable uint64_t ops_ = 0;
};

// The two-pass prefix-tree filter. Forward pass under σ_c clears candidates
// that are proper σ_c-prefixes of later candidates; the reverse pass under
// σ̄_c records candidates detected as proper prefixes into the check set,
// which is then subtracted from T_start.
class DoubleScan {
public:
    explicit DoubleScan(const BlockOrdering& ord)
        : ord_(&ord),
          t_start_(ord, CliqueTrie::Direction::Forward),
          t_end_(ord, CliqueTrie::Direction::Reverse) {}

    void forward(std::span<const BlockCliques> blocks) {
        for (const auto& b : blocks)
            for (const auto& k : b.cliques) {
                auto seq = ord_->by_sigma(k);
                if (!t_start_.insert(seq)) ++stats_.duplicates;
                stats_.unmarked_forward += t_start_.unmark_proper_prefixes(seq);
            }
    }

    void reverse(std::span<const BlockCliques> blocks) {
        for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
            for (const auto& k : it->cliques) {
                auto seq = ord_->by_sigma_bar(k);
                t_end_.insert(seq);
                for (auto& p : t_end_.marked_proper_prefixes(seq))
                    check_set_.insert(ord_->by_sigma(p));
            }
    }

    void apply_check_set() {
        for (const auto& k : check_set_)
            if (t_start_.unmark_if_marked(k)) ++stats_.unmarked_check;
    }

    CliqueSet harvest() {
        CliqueSet out = t_start_.surviving();
        canonicalize(out);
        stats_.checkset_size = check_set_.size();
        stats_.trie_ops = t_start_.ops() + t_end_.ops();
        stats_.trie_nodes = t_start_.node_count() + t_end_.node_count();
        return out;
    }

    const CliqueTrie& t_start() const { return t_start_; }
    const CliqueTrie& t_end() const { return t_end_; }
    const std::set<std::vector<int>>& check_set() const { return check_set_; }
    const FilterStats& stats() const { return stats_; }

private:
    const BlockOrdering* ord_;
    CliqueTrie t_start_;
    CliqueTrie t_end_;
    std::set<std::vector<int>> check_set_;
    FilterStats stats_;
};

inline CliqueSet double_scan(std::span<const BlockCliques> blocks, const BlockOrdering& ord,
                             FilterStats* fs = nullptr) {
    DoubleScan ds(ord);
    ds.forward(blocks);
    ds.reverse(blocks);
    ds.apply_check_set();
    CliqueSet out = ds.harvest();
    if (fs) *fs = ds.stats();
    return out;
}

// Union graph G_v = ∪_j G[B_j]: vertex set is the union of the blocks, an
// edge is present iff its endpoints share a block and are adjacent in g.
class UnionGraph {
public:
    UnionGraph(const Graph& g, std::span<const Block> blocks) {
        for (const auto& b : blocks)
            for (int v : b.vertices) local_.try_emplace(v, 0);
        for (auto& [v, idx] : local_) vertices_.push_back(v);
        std::sort(vertices_.begin(), vertices_.end());
        for (size_t i = 0; i < vertices_.size(); ++i) local_[vertices_[i]] = static_cast<int>(i);
        std::vector<std::set<int>> adj(vertices_.size());
        for (const auto& b : blocks)
            for (size_t i = 0; i < b.vertices.size(); ++i)
                for (size_t j = i + 1; j < b.vertices.size(); ++j)
                    if (g.adjacent(b.vertices[i], b.vertices[j])) {
                        adj[local_[b.vertices[i]]].insert(local_[b.vertices[j]]);
                        adj[local_[b.vertices[j]]].insert(local_[b.vertices[i]]);
                    }
        adj_.reserve(adj.size());
        for (auto& s : adj) adj_.emplace_back(s.begin(), s.end());
    }

    const std::vector<int>& vertices() const { return vertices_; }

    bool adjacent(int gu, int gv) const {
        auto iu = local_.find(gu);
        auto iv = local_.find(gv);
        if (iu == local_.end() || iv == local_.end()) return false;
        const auto& a = adj_[iu->second];
        return std::binary_search(a.begin(), a.end(), iv->second);
    }

    // Neighbors of a global-id vertex, as global ids (ascending).
    std::vector<int> neighbors(int gv) const {
        std::vector<int> out;
        auto it = local_.find(gv);
        if (it == local_.end()) return out;
        for (int l : adj_[it->second]) out.push_back(vertices_[l]);
        std::sort(out.begin(), out.end());
        return out;
    }

    // The union graph as a standalone Graph over local ids 0..|V|-1
    // together with the local->global map (for oracle cross-checks).
    std::pair<Graph, std::vector<int>> as_graph() const {
        return {Graph(static_cast<int>(vertices_.size()), adj_), vertices_};
    }

private:
    std::unordered_map<int, int> local_;
    std::vector<int> vertices_;
    std::vector<std::vector<int>> adj_; // local ids
};

// Exact fallback: keep a candidate iff it is maximal in the union graph.
inline CliqueSet exact_filter(std::span<const BlockCliques> blocks, const UnionGraph& ug,
                              FilterStats* fs = nullptr) {
    std::set<Clique> cands;
    FilterStats st;
    for (const auto& b : blocks)
        for (const auto& k : b.cliques) {
            Clique s(k);
            std::sort(s.begin(), s.end());
            if (!cands.insert(std::move(s)).second) ++st.duplicates;
        }
    CliqueSet out;
    for (const auto& k : cands) {
        bool maximal = true;
        for (int x : ug.vertices()) {
            if (std::binary_search(k.begin(), k.end(), x)) continue;
            bool all = true;
            for (int v : k) {
                ++st.probes;
                if (!ug.adjacent(x, v)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(k);
    }
    canonicalize(out);
    if (fs) *fs = st;
    return out;
}

namespace detail {
struct CliqueHash {
    size_t operator()(const Clique& k) const {
        size_t h = 1469598103934665603ull;
        for (int v : k) {
            h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};
} // namespace detail

// Baseline cure: visit candidates from largest to smallest and delete every
// proper subset of the visited clique from the membership set, probing all
// 2^|K| subsets. Candidates larger than 30 vertices are refused.
inline CliqueSet curing_filter(const CliqueSet& candidates, FilterStats* fs = nullptr) {
    constexpr size_t kMaxCliqueSize = 30;
    FilterStats st;
    std::vector<Clique> uniq;
    {
        std::set<Clique> dedupe;
        for (const auto& k : candidates) {
            if (k.size() > kMaxCliqueSize)
                throw refusal_error("curing_filter refuses candidates larger than " +
                                    std::to_string(kMaxCliqueSize) + " vertices (got " +
                                    std::to_string(k.size()) + ")");
            Clique s(k);
            std::sort(s.begin(), s.end());
            if (!dedupe.insert(s).second) ++st.duplicates;
        }
        uniq.assign(dedupe.begin(), dedupe.end());
    }
    std::sort(uniq.begin(), uniq.end(), [](const Clique& a, const Clique& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    std::unordered_set<Clique, detail::CliqueHash> live(uniq.begin(), uniq.end());
    Clique sub;
    for (const auto& k : uniq) {
        const uint32_t full = (1u << k.size()) - 1;
        st.probes += uint64_t(1) << k.size();
        // all proper submasks, descending
        for (uint32_t mask = full - 1; mask != 0; --mask) {
            sub.clear();
            uint32_t m = mask;
            while (m) {
                int b = std::countr_zero(m);
                sub.push_back(k[b]);
                m &= m - 1;
            }
            auto it = live.find(sub);
            if (it != live.end()) live.erase(it);
        }
    }
    CliqueSet out;
    for (const auto& k : uniq)
        if (live.contains(k)) out.push_back(k);
    canonicalize(out);
    if (fs) *fs = st;
    return out;
}

} // namespace cclique
