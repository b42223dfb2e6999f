#ifndef LEXSEARCH_GRAPH_IO_HPP
#define LEXSEARCH_GRAPH_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "lexsearch/graph.hpp"

namespace lexsearch {

// Text format:
//   # comment (anywhere)
//   n m
//   u v            (m edge lines, 0-based)
//   name <id> <label>   (optional, after the edges)

inline Graph read_graph(std::istream& in) {
    std::string line;
    int n = -1;
    long m = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::pair<Vertex, std::string>> names;
    long edges_seen = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        if (n < 0) {
            std::istringstream header(line);
            if (!(header >> n >> m) || n < 0 || m < 0)
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": expected header 'n m'");
            continue;
        }
        if (first == "name") {
            Vertex id;
            if (!(ls >> id))
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": expected 'name <id> <label>'");
            std::string label;
            std::getline(ls, label);
            auto start = label.find_first_not_of(" \t");
            if (start == std::string::npos)
                throw std::runtime_error("line " + std::to_string(lineno) + ": empty name");
            names.emplace_back(id, label.substr(start));
            continue;
        }
        if (edges_seen >= m)
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": more edge lines than the header announced");
        Vertex u, v;
        std::istringstream es(line);
        if (!(es >> u >> v))
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected 'u v'");
        edges.emplace_back(u, v);
        ++edges_seen;
    }
    if (n < 0) throw std::runtime_error("missing 'n m' header line");
    if (edges_seen != m)
        throw std::runtime_error("header announced " + std::to_string(m) + " edges, found " +
                                 std::to_string(edges_seen));
    Graph g(n, edges);
    for (auto& [id, label] : names) g.set_name(id, label);
    return g;
}

inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    try {
        return read_graph(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

inline void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    for (const auto& [id, label] : g.names()) out << "name " << id << ' ' << label << '\n';
}

inline std::string to_text(const Graph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

inline std::string to_dot(const Graph& g) {
    std::ostringstream out;
    out << "graph G {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out << "  " << v;
        auto it = g.names().find(v);
        if (it != g.names().end()) out << " [label=\"" << it->second << "\"]";
        out << ";\n";
    }
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace lexsearch

#endif  // LEXSEARCH_GRAPH_IO_HPP
