#ifndef LEXSEARCH_LBFS_HPP
#define LEXSEARCH_LBFS_HPP

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>

#include "lexsearch/graph.hpp"

namespace lexsearch {

/// A visit order (position i holds the (i+1)-th visited vertex) plus its inverse.
struct Ordering {
    std::vector<Vertex> seq;
    std::vector<int> pos;

    static Ordering from_sequence(std::vector<Vertex> s, int vertex_count) {
        if (static_cast<int>(s.size()) != vertex_count)
            throw std::invalid_argument("sequence is not a permutation of the vertex ids");
        Ordering o;
        o.pos.assign(static_cast<std::size_t>(vertex_count), -1);
        for (int i = 0; i < vertex_count; ++i) {
            Vertex v = s[static_cast<std::size_t>(i)];
            if (v < 0 || v >= vertex_count || o.pos[static_cast<std::size_t>(v)] >= 0)
                throw std::invalid_argument("sequence is not a permutation of the vertex ids");
            o.pos[static_cast<std::size_t>(v)] = i;
        }
        o.seq = std::move(s);
        return o;
    }

    int position(Vertex v) const { return pos[static_cast<std::size_t>(v)]; }
    Vertex end_vertex() const { return seq.back(); }
};

/// Deterministic rule for choosing among the tied candidates of the front slice.
struct TiePolicy {
    enum class Kind { MinId, MaxId, SeededRandom };
    Kind kind = Kind::MinId;
    std::uint64_t seed = 0;

    static TiePolicy min_id() { return {}; }
    static TiePolicy max_id() { return {Kind::MaxId, 0}; }
    static TiePolicy seeded_random(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }

    std::string describe() const {
        switch (kind) {
            case Kind::MinId: return "min-id";
            case Kind::MaxId: return "max-id";
            default: return "seeded-random";
        }
    }
};

struct VerifyResult {
    bool ok = false;
    int first_violation = -1;  // position of the first vertex outside the front slice
};

/// Partition-refinement LBFS over a doubly linked vertex list segmented into
/// contiguous intervals (slices). Visiting a pivot splits each slice into its
/// pivot-neighbors (placed first) and the rest, so the head of the front
/// interval is always a vertex of lexicographically largest label. Reusable
/// across runs; one run costs O(n + m).
class LbfsEngine {
public:
    explicit LbfsEngine(const Graph& g) : g_(&g) {}

    Ordering run(std::optional<Vertex> start = std::nullopt, TiePolicy policy = TiePolicy::min_id()) {
        const int n = g_->vertex_count();
        if (start && (*start < 0 || *start >= n))
            throw std::invalid_argument("invalid start vertex " + std::to_string(*start));

        std::vector<Vertex> by_rank(static_cast<std::size_t>(n));
        std::iota(by_rank.begin(), by_rank.end(), 0);
        const std::vector<std::vector<Vertex>>* adj = nullptr;
        if (policy.kind == TiePolicy::Kind::MinId) {
            adj = nullptr;  // natural adjacency already sorted ascending by id
        } else {
            if (policy.kind == TiePolicy::Kind::MaxId) {
                std::reverse(by_rank.begin(), by_rank.end());
            } else {
                std::mt19937_64 rng(policy.seed);
                std::shuffle(by_rank.begin(), by_rank.end(), rng);
            }
            // Re-bucket the adjacency so each list runs in preference order.
            pref_adj_.assign(static_cast<std::size_t>(n), {});
            for (Vertex w : by_rank)
                for (Vertex u : g_->neighbors(w)) pref_adj_[static_cast<std::size_t>(u)].push_back(w);
            adj = &pref_adj_;
        }

        init_state(by_rank, start);
        Ordering out;
        out.seq.reserve(static_cast<std::size_t>(n));
        out.pos.assign(static_cast<std::size_t>(n), -1);
        for (int step = 0; step < n; ++step) {
            Vertex v = ival_head_[static_cast<std::size_t>(front_)];
            out.seq.push_back(v);
            out.pos[static_cast<std::size_t>(v)] = step;
            pop(v);
            const auto& row = adj ? (*adj)[static_cast<std::size_t>(v)] : g_->neighbors(v);
            for (Vertex u : row)
                if (!visited_[static_cast<std::size_t>(u)]) move_to_child(u, v);
        }
        return out;
    }

    /// Simulates the slice partition along sigma; fails at the first position
    /// whose vertex is not in the front slice.
    VerifyResult verify(const std::vector<Vertex>& sigma) {
        const int n = g_->vertex_count();
        Ordering::from_sequence(sigma, n);  // throws unless a permutation
        std::vector<Vertex> by_rank(static_cast<std::size_t>(n));
        std::iota(by_rank.begin(), by_rank.end(), 0);
        init_state(by_rank, std::nullopt);
        for (int step = 0; step < n; ++step) {
            Vertex v = sigma[static_cast<std::size_t>(step)];
            if (ival_of_[static_cast<std::size_t>(v)] != front_) return {false, step};
            pop(v);
            for (Vertex u : g_->neighbors(v))
                if (!visited_[static_cast<std::size_t>(u)]) move_to_child(u, v);
        }
        return {true, -1};
    }

private:
    static constexpr int kNone = -1;

    void init_state(const std::vector<Vertex>& by_rank, std::optional<Vertex> start) {
        const auto n = static_cast<std::size_t>(g_->vertex_count());
        visited_.assign(n, false);
        next_.assign(n, kNone);
        prev_.assign(n, kNone);
        ival_of_.assign(n, kNone);
        ival_head_.clear();
        ival_size_.clear();
        ival_next_.clear();
        ival_prev_.clear();
        split_stamp_.clear();
        split_child_.clear();
        front_ = kNone;
        if (n == 0) return;

        std::vector<Vertex> order;
        order.reserve(n);
        if (start) order.push_back(*start);
        for (Vertex v : by_rank)
            if (!start || v != *start) order.push_back(v);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            next_[static_cast<std::size_t>(order[i])] = order[i + 1];
            prev_[static_cast<std::size_t>(order[i + 1])] = order[i];
        }

        if (start && n > 1) {
            int first = new_interval();
            ival_head_[static_cast<std::size_t>(first)] = *start;
            ival_size_[static_cast<std::size_t>(first)] = 1;
            int rest = new_interval();
            ival_head_[static_cast<std::size_t>(rest)] = order[1];
            ival_size_[static_cast<std::size_t>(rest)] = static_cast<int>(n) - 1;
            ival_next_[static_cast<std::size_t>(first)] = rest;
            ival_prev_[static_cast<std::size_t>(rest)] = first;
            ival_of_[static_cast<std::size_t>(*start)] = first;
            for (std::size_t i = 1; i < n; ++i)
                ival_of_[static_cast<std::size_t>(order[i])] = rest;
            front_ = first;
        } else {
            int all = new_interval();
            ival_head_[static_cast<std::size_t>(all)] = order[0];
            ival_size_[static_cast<std::size_t>(all)] = static_cast<int>(n);
            for (Vertex v : order) ival_of_[static_cast<std::size_t>(v)] = all;
            front_ = all;
        }
    }

    int new_interval() {
        ival_head_.push_back(kNone);
        ival_size_.push_back(0);
        ival_next_.push_back(kNone);
        ival_prev_.push_back(kNone);
        split_stamp_.push_back(kNone);
        split_child_.push_back(kNone);
        return static_cast<int>(ival_head_.size()) - 1;
    }

    void unlink_interval(int i) {
        int p = ival_prev_[static_cast<std::size_t>(i)];
        int nx = ival_next_[static_cast<std::size_t>(i)];
        if (p != kNone) ival_next_[static_cast<std::size_t>(p)] = nx;
        else front_ = nx;
        if (nx != kNone) ival_prev_[static_cast<std::size_t>(nx)] = p;
    }

    void unlink_vertex(Vertex v) {
        Vertex p = prev_[static_cast<std::size_t>(v)];
        Vertex nx = next_[static_cast<std::size_t>(v)];
        if (p != kNone) next_[static_cast<std::size_t>(p)] = nx;
        if (nx != kNone) prev_[static_cast<std::size_t>(nx)] = p;
    }

    void pop(Vertex v) {
        int i = ival_of_[static_cast<std::size_t>(v)];
        if (ival_head_[static_cast<std::size_t>(i)] == v)
            ival_head_[static_cast<std::size_t>(i)] = next_[static_cast<std::size_t>(v)];
        unlink_vertex(v);
        if (--ival_size_[static_cast<std::size_t>(i)] == 0) unlink_interval(i);
        visited_[static_cast<std::size_t>(v)] = true;
        ival_of_[static_cast<std::size_t>(v)] = kNone;
    }

    // Moves pivot-neighbor u into the child slice that sits immediately before
    // u's slice, creating the child on first use per (pivot, slice) pair.
    void move_to_child(Vertex u, Vertex pivot) {
        int i = ival_of_[static_cast<std::size_t>(u)];
        if (split_stamp_[static_cast<std::size_t>(i)] != pivot) {
            int child = new_interval();
            int p = ival_prev_[static_cast<std::size_t>(i)];
            ival_prev_[static_cast<std::size_t>(child)] = p;
            ival_next_[static_cast<std::size_t>(child)] = i;
            if (p != kNone) ival_next_[static_cast<std::size_t>(p)] = child;
            else front_ = child;
            ival_prev_[static_cast<std::size_t>(i)] = child;
            split_stamp_[static_cast<std::size_t>(i)] = pivot;
            split_child_[static_cast<std::size_t>(i)] = child;
        }
        int child = split_child_[static_cast<std::size_t>(i)];
        if (ival_size_[static_cast<std::size_t>(i)] > 1) {
            if (ival_head_[static_cast<std::size_t>(i)] == u)
                ival_head_[static_cast<std::size_t>(i)] = next_[static_cast<std::size_t>(u)];
            unlink_vertex(u);
            Vertex anchor = ival_head_[static_cast<std::size_t>(i)];
            Vertex before = prev_[static_cast<std::size_t>(anchor)];
            prev_[static_cast<std::size_t>(u)] = before;
            next_[static_cast<std::size_t>(u)] = anchor;
            prev_[static_cast<std::size_t>(anchor)] = u;
            if (before != kNone) next_[static_cast<std::size_t>(before)] = u;
        }
        // else: u is the slice's only vertex and keeps its list position
        ival_of_[static_cast<std::size_t>(u)] = child;
        if (ival_size_[static_cast<std::size_t>(child)]++ == 0)
            ival_head_[static_cast<std::size_t>(child)] = u;
        if (--ival_size_[static_cast<std::size_t>(i)] == 0) unlink_interval(i);
    }

    const Graph* g_;
    std::vector<bool> visited_;
    std::vector<Vertex> next_, prev_;
    std::vector<int> ival_of_;
    std::vector<Vertex> ival_head_;
    std::vector<int> ival_size_, ival_next_, ival_prev_, split_stamp_, split_child_;
    int front_ = kNone;
    std::vector<std::vector<Vertex>> pref_adj_;
};

inline Ordering lbfs(const Graph& g, std::optional<Vertex> start = std::nullopt,
                     TiePolicy policy = TiePolicy::min_id()) {
    return LbfsEngine(g).run(start, policy);
}

inline VerifyResult verify_lbfs_ordering(const Graph& g, const std::vector<Vertex>& sigma) {
    return LbfsEngine(g).verify(sigma);
}

inline VerifyResult verify_lbfs_ordering(const Graph& g, const Ordering& sigma) {
    return LbfsEngine(g).verify(sigma.seq);
}

inline constexpr int kDefaultEnumerationCap = 40;

namespace detail {

/// Copyable ordered partition of the unvisited vertices, slices ascending.
/// The slice list alone determines all future LBFS behavior, so its encoding
/// doubles as the memoization key for the branching oracles.
struct SlicePartition {
    std::vector<std::vector<Vertex>> slices;
    int unvisited = 0;

    void init(int n, std::optional<Vertex> start) {
        slices.clear();
        unvisited = n;
        if (n == 0) return;
        std::vector<Vertex> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        if (start && n > 1) {
            all.erase(all.begin() + *start);
            slices.push_back({*start});
            slices.push_back(std::move(all));
        } else {
            slices.push_back(std::move(all));
        }
    }

    bool front_contains(Vertex v) const {
        return !slices.empty() &&
               std::binary_search(slices.front().begin(), slices.front().end(), v);
    }

    Vertex lone_vertex() const { return slices.front().front(); }

    /// Removes v (which must lie in the front slice) and splits every slice
    /// into (neighbors of v, rest), neighbors first.
    void visit(const Graph& g, Vertex v) {
        auto& front = slices.front();
        front.erase(std::find(front.begin(), front.end(), v));
        std::vector<std::vector<Vertex>> out;
        out.reserve(slices.size() + 4);
        const auto& nb = g.neighbors(v);
        for (auto& s : slices) {
            if (s.empty()) continue;
            std::vector<Vertex> in, rest;
            for (Vertex u : s)
                (std::binary_search(nb.begin(), nb.end(), u) ? in : rest).push_back(u);
            if (!in.empty()) out.push_back(std::move(in));
            if (!rest.empty()) out.push_back(std::move(rest));
        }
        slices = std::move(out);
        --unvisited;
    }

    std::string fingerprint() const {
        std::string key;
        key.reserve(static_cast<std::size_t>(unvisited) + slices.size());
        for (const auto& s : slices) {
            for (Vertex v : s) key.push_back(static_cast<char>(static_cast<unsigned char>(v)));
            key.push_back(static_cast<char>(0xFF));
        }
        return key;
    }
};

inline void check_enumeration_size(const Graph& g, int cap) {
    if (g.vertex_count() > cap)
        throw std::runtime_error(
            "graph has " + std::to_string(g.vertex_count()) +
            " vertices, above the enumeration cap " + std::to_string(cap) +
            "; raise it with --cap or LEXSEARCH_CAP");
    if (g.vertex_count() > 254)
        throw std::runtime_error("enumeration supports at most 254 vertices");
}

inline void enumerate_rec(const Graph& g, const SlicePartition& part, std::vector<Vertex>& prefix,
                          const std::function<void(const std::vector<Vertex>&)>& visitor) {
    if (part.unvisited == 0) {
        visitor(prefix);
        return;
    }
    const std::vector<Vertex> candidates = part.slices.front();
    for (Vertex u : candidates) {
        SlicePartition child = part;
        child.visit(g, u);
        prefix.push_back(u);
        enumerate_rec(g, child, prefix, visitor);
        prefix.pop_back();
    }
}

}  // namespace detail

/// Streams every LBFS ordering (over every start when none is given) in
/// lexicographic order of the id sequences.
inline void enumerate_lbfs_orderings(const Graph& g, std::optional<Vertex> start,
                                     const std::function<void(const std::vector<Vertex>&)>& visitor,
                                     int cap = kDefaultEnumerationCap) {
    detail::check_enumeration_size(g, cap);
    if (start) g.check_vertex(*start);
    if (g.vertex_count() == 0) return;
    detail::SlicePartition part;
    part.init(g.vertex_count(), start);
    std::vector<Vertex> prefix;
    prefix.reserve(static_cast<std::size_t>(g.vertex_count()));
    detail::enumerate_rec(g, part, prefix, visitor);
}

inline std::vector<std::vector<Vertex>> enumerate_lbfs_orderings(
    const Graph& g, std::optional<Vertex> start = std::nullopt, int cap = kDefaultEnumerationCap) {
    std::vector<std::vector<Vertex>> out;
    enumerate_lbfs_orderings(
        g, start, [&](const std::vector<Vertex>& seq) { out.push_back(seq); }, cap);
    return out;
}

namespace detail {

inline void end_vertex_rec(const Graph& g, const SlicePartition& part,
                           std::unordered_set<std::string>& seen, std::vector<char>& is_end) {
    if (part.unvisited == 1) {
        is_end[static_cast<std::size_t>(part.lone_vertex())] = 1;
        return;
    }
    if (!seen.insert(part.fingerprint()).second) return;
    const std::vector<Vertex> candidates = part.slices.front();
    for (Vertex u : candidates) {
        SlicePartition child = part;
        child.visit(g, u);
        end_vertex_rec(g, child, seen, is_end);
    }
}

inline bool bev_rec(const Graph& g, const SlicePartition& part, Vertex t,
                    std::unordered_set<std::string>& seen) {
    if (part.unvisited == 1) return part.lone_vertex() == t;
    if (!seen.insert(part.fingerprint()).second) return false;
    const std::vector<Vertex> candidates = part.slices.front();
    for (Vertex u : candidates) {
        if (u == t) continue;  // t must stay for the last position
        SlicePartition child = part;
        child.visit(g, u);
        if (bev_rec(g, child, t, seen)) return true;
    }
    return false;
}

}  // namespace detail

/// All vertices at which some LBFS ordering ends, by memoized exhaustive search.
inline std::vector<Vertex> end_vertex_set_oracle(const Graph& g, int cap = kDefaultEnumerationCap) {
    detail::check_enumeration_size(g, cap);
    if (g.vertex_count() == 0) return {};
    if (g.vertex_count() == 1) return {0};
    detail::SlicePartition part;
    part.init(g.vertex_count(), std::nullopt);
    std::unordered_set<std::string> seen;
    std::vector<char> is_end(static_cast<std::size_t>(g.vertex_count()), 0);
    detail::end_vertex_rec(g, part, seen, is_end);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (is_end[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

/// End vertices over the LBFS runs that begin at a fixed start vertex.
inline std::vector<Vertex> end_vertices_from_oracle(const Graph& g, Vertex start,
                                                    int cap = kDefaultEnumerationCap) {
    detail::check_enumeration_size(g, cap);
    g.check_vertex(start);
    if (g.vertex_count() == 1) return {start};
    detail::SlicePartition part;
    part.init(g.vertex_count(), start);
    std::unordered_set<std::string> seen;
    std::vector<char> is_end(static_cast<std::size_t>(g.vertex_count()), 0);
    detail::end_vertex_rec(g, part, seen, is_end);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (is_end[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

/// Decides whether some LBFS ordering begins at s and ends at t.
inline bool is_beginning_end_pair_oracle(const Graph& g, Vertex s, Vertex t,
                                         int cap = kDefaultEnumerationCap) {
    detail::check_enumeration_size(g, cap);
    g.check_vertex(s);
    g.check_vertex(t);
    if (s == t) {
        if (g.vertex_count() == 1) return true;
        throw std::invalid_argument("s and t must differ unless the graph has one vertex");
    }
    detail::SlicePartition part;
    part.init(g.vertex_count(), s);
    std::unordered_set<std::string> seen;
    return detail::bev_rec(g, part, t, seen);
}

}  // namespace lexsearch

#endif  // LEXSEARCH_LBFS_HPP
