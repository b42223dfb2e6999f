#ifndef LEXSEARCH_GRAPH_HPP
#define LEXSEARCH_GRAPH_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lexsearch {

using Vertex = int;

/// Immutable simple undirected graph over dense 0-based vertex ids.
/// Adjacency lists are kept sorted and deduplicated; loops are rejected.
class Graph {
public:
    Graph() = default;

    Graph(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges)
        : n_(vertex_count), adj_(static_cast<std::size_t>(std::max(vertex_count, 0))) {
        if (vertex_count < 0)
            throw std::invalid_argument("vertex_count must be nonnegative");
        for (const auto& [u, v] : edges) {
            if (u < 0 || u >= n_ || v < 0 || v >= n_)
                throw std::invalid_argument("edge (" + std::to_string(u) + "," +
                                            std::to_string(v) + ") has an endpoint outside [0," +
                                            std::to_string(n_) + ")");
            if (u == v)
                throw std::invalid_argument("loop edge (" + std::to_string(u) + "," +
                                            std::to_string(v) + ") is not allowed");
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        m_ = 0;
        for (auto& list : adj_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            m_ += list.size();
        }
        m_ /= 2;
    }

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }

    const std::vector<Vertex>& neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    bool adjacent(Vertex u, Vertex v) const {
        const auto& list = neighbors(u);
        return std::binary_search(list.begin(), list.end(), v);
    }

    /// All edges as (u,v) pairs with u < v, in ascending order.
    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(m_);
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adj_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    void set_name(Vertex v, std::string name) {
        check_vertex(v);
        names_[v] = std::move(name);
    }

    const std::map<Vertex, std::string>& names() const { return names_; }

    /// The vertex name when one is set, otherwise the decimal id.
    std::string display_name(Vertex v) const {
        auto it = names_.find(v);
        return it != names_.end() ? it->second : std::to_string(v);
    }

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("vertex id " + std::to_string(v) +
                                        " outside [0," + std::to_string(n_) + ")");
    }

private:
    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::map<Vertex, std::string> names_;
};

/// BFS levels from a source. layers[l] holds the vertices at distance l;
/// unreachable vertices appear in no layer and have depth -1.
struct LayerStructure {
    Vertex source = 0;
    std::vector<std::vector<Vertex>> layers;
    std::vector<int> depth;
    int reachable_count = 0;

    int layer_of(Vertex v) const { return depth[static_cast<std::size_t>(v)]; }
    bool reaches(Vertex v) const { return layer_of(v) >= 0; }

    /// Highest nonempty layer index (the source's eccentricity within its component).
    int last_layer() const { return static_cast<int>(layers.size()) - 1; }
};

inline LayerStructure bfs_layers(const Graph& g, Vertex w) {
    g.check_vertex(w);
    LayerStructure ls;
    ls.source = w;
    ls.depth.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    ls.depth[static_cast<std::size_t>(w)] = 0;
    std::vector<Vertex> frontier{w};
    while (!frontier.empty()) {
        ls.reachable_count += static_cast<int>(frontier.size());
        ls.layers.push_back(frontier);
        std::vector<Vertex> next;
        for (Vertex u : frontier)
            for (Vertex x : g.neighbors(u))
                if (ls.depth[static_cast<std::size_t>(x)] < 0) {
                    ls.depth[static_cast<std::size_t>(x)] =
                        ls.depth[static_cast<std::size_t>(u)] + 1;
                    next.push_back(x);
                }
        frontier = std::move(next);
    }
    for (auto& layer : ls.layers) std::sort(layer.begin(), layer.end());
    return ls;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() <= 1) return true;
    return bfs_layers(g, 0).reachable_count == g.vertex_count();
}

inline void require_connected(const Graph& g) {
    if (!is_connected(g))
        throw std::invalid_argument("metric undefined on disconnected graph");
}

inline int eccentricity(const Graph& g, Vertex w) {
    require_connected(g);
    return bfs_layers(g, w).last_layer();
}

inline std::vector<Vertex> eccentric_vertices(const Graph& g, Vertex w) {
    require_connected(g);
    return bfs_layers(g, w).layers.back();
}

inline int diameter(const Graph& g) {
    require_connected(g);
    int d = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        d = std::max(d, bfs_layers(g, v).last_layer());
    return d;
}

/// Two-coloring of a bipartite graph, one color class per field.
struct Bipartition {
    std::vector<Vertex> left, right;
};

struct BipartitionResult {
    std::optional<Bipartition> parts;
    /// Closed odd cycle (first vertex adjacent to last) when not bipartite.
    std::vector<Vertex> odd_cycle;

    bool is_bipartite() const { return parts.has_value(); }
};

/// 2-colors every connected component; on failure returns an odd-cycle witness.
inline BipartitionResult bipartition(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    for (Vertex root = 0; root < n; ++root) {
        if (color[static_cast<std::size_t>(root)] >= 0) continue;
        color[static_cast<std::size_t>(root)] = 0;
        std::queue<Vertex> q;
        q.push(root);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex v : g.neighbors(u)) {
                if (color[static_cast<std::size_t>(v)] < 0) {
                    color[static_cast<std::size_t>(v)] = 1 - color[static_cast<std::size_t>(u)];
                    parent[static_cast<std::size_t>(v)] = u;
                    depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                } else if (color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(u)]) {
                    // Same-color BFS edge closes an odd cycle through the tree paths.
                    BipartitionResult res;
                    Vertex a = u, b = v;
                    std::vector<Vertex> pa{a}, pb{b};
                    while (depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)])
                        pa.push_back(a = parent[static_cast<std::size_t>(a)]);
                    while (depth[static_cast<std::size_t>(b)] > depth[static_cast<std::size_t>(a)])
                        pb.push_back(b = parent[static_cast<std::size_t>(b)]);
                    while (a != b) {
                        pa.push_back(a = parent[static_cast<std::size_t>(a)]);
                        pb.push_back(b = parent[static_cast<std::size_t>(b)]);
                    }
                    pb.pop_back();  // shared ancestor kept once
                    res.odd_cycle = pa;
                    res.odd_cycle.insert(res.odd_cycle.end(), pb.rbegin(), pb.rend());
                    return res;
                }
            }
        }
    }
    BipartitionResult res;
    Bipartition parts;
    for (Vertex v = 0; v < n; ++v)
        (color[static_cast<std::size_t>(v)] == 0 ? parts.left : parts.right).push_back(v);
    res.parts = std::move(parts);
    return res;
}

/// Connected components of the induced subgraph on V minus N[z].
struct ComponentPartition {
    std::vector<Vertex> excluded;                   // N[z], sorted
    std::vector<std::vector<Vertex>> components;    // each sorted
    std::vector<int> component_of;                  // -1 for excluded vertices

    int count() const { return static_cast<int>(components.size()); }
    bool same_component(Vertex a, Vertex b) const {
        int ca = component_of[static_cast<std::size_t>(a)];
        return ca >= 0 && ca == component_of[static_cast<std::size_t>(b)];
    }
};

inline ComponentPartition components_minus_closed_neighborhood(const Graph& g, Vertex z) {
    g.check_vertex(z);
    const int n = g.vertex_count();
    ComponentPartition part;
    part.component_of.assign(static_cast<std::size_t>(n), -1);
    std::vector<bool> removed(static_cast<std::size_t>(n), false);
    removed[static_cast<std::size_t>(z)] = true;
    part.excluded.push_back(z);
    for (Vertex u : g.neighbors(z)) {
        removed[static_cast<std::size_t>(u)] = true;
        part.excluded.push_back(u);
    }
    std::sort(part.excluded.begin(), part.excluded.end());
    for (Vertex root = 0; root < n; ++root) {
        if (removed[static_cast<std::size_t>(root)] ||
            part.component_of[static_cast<std::size_t>(root)] >= 0)
            continue;
        int idx = part.count();
        std::vector<Vertex> comp;
        std::queue<Vertex> q;
        q.push(root);
        part.component_of[static_cast<std::size_t>(root)] = idx;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            comp.push_back(u);
            for (Vertex v : g.neighbors(u))
                if (!removed[static_cast<std::size_t>(v)] &&
                    part.component_of[static_cast<std::size_t>(v)] < 0) {
                    part.component_of[static_cast<std::size_t>(v)] = idx;
                    q.push(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        part.components.push_back(std::move(comp));
    }
    return part;
}

/// Indices of the components of G - N[z] that contain an eccentric vertex of z.
inline std::vector<int> deep_components(const Graph& g, Vertex z) {
    require_connected(g);
    auto part = components_minus_closed_neighborhood(g, z);
    auto ecc_set = eccentric_vertices(g, z);
    std::vector<int> deep;
    for (Vertex u : ecc_set) {
        int c = part.component_of[static_cast<std::size_t>(u)];
        if (c >= 0) deep.push_back(c);
    }
    std::sort(deep.begin(), deep.end());
    deep.erase(std::unique(deep.begin(), deep.end()), deep.end());
    return deep;
}

}  // namespace lexsearch

#endif  // LEXSEARCH_GRAPH_HPP
