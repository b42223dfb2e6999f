#ifndef LEXSEARCH_GADGETS_HPP
#define LEXSEARCH_GADGETS_HPP

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "lexsearch/graph.hpp"
#include "lexsearch/lbfs.hpp"

namespace lexsearch {

/// CNF formula; literals are signed 1-based variable indices (+i for x_i,
/// -i for the negation).
struct SatInstance {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

inline bool satisfies(const SatInstance& inst, const std::vector<bool>& assignment) {
    for (const auto& clause : inst.clauses) {
        bool ok = false;
        for (int lit : clause) {
            int var = lit > 0 ? lit : -lit;
            bool val = assignment[static_cast<std::size_t>(var - 1)];
            if ((lit > 0) == val) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

/// DIMACS CNF reader. Strict mode additionally requires the clause count to
/// match the header and every clause to be 0-terminated.
inline SatInstance parse_dimacs(const std::string& text, bool strict = false) {
    SatInstance inst;
    bool have_header = false;
    int declared_clauses = 0;
    std::vector<int> current;
    bool stopped = false;

    auto close_clause = [&]() {
        std::sort(current.begin(), current.end(),
                  [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
        current.erase(std::unique(current.begin(), current.end()), current.end());
        if (current.empty()) throw std::runtime_error("empty clause in DIMACS input");
        inst.clauses.push_back(current);
        current.clear();
    };

    std::istringstream in(text);
    std::string line;
    while (!stopped && std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string p, fmt;
            if (!(ls >> p)) continue;
            if (p != "p")
                throw std::runtime_error("literal data before DIMACS header");
            if (!(ls >> fmt >> inst.num_vars >> declared_clauses) || fmt != "cnf" ||
                inst.num_vars < 0 || declared_clauses < 0)
                throw std::runtime_error("malformed DIMACS header: '" + line + "'");
            have_header = true;
            continue;
        }
        std::string tok;
        while (ls >> tok) {
            if (tok == "%") {
                stopped = true;
                break;
            }
            int lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::runtime_error("bad DIMACS token '" + tok + "'");
            }
            if (lit == 0) {
                close_clause();
            } else {
                int var = std::abs(lit);
                if (var > inst.num_vars)
                    throw std::runtime_error("literal " + std::to_string(lit) +
                                             " out of range (num_vars = " +
                                             std::to_string(inst.num_vars) + ")");
                current.push_back(lit);
            }
        }
    }
    if (!have_header) throw std::runtime_error("missing DIMACS header");
    if (!current.empty()) {
        if (strict) throw std::runtime_error("unterminated clause in DIMACS input");
        close_clause();
    }
    if (strict && static_cast<int>(inst.clauses.size()) != declared_clauses)
        throw std::runtime_error("clause count mismatch: header says " +
                                 std::to_string(declared_clauses) + ", found " +
                                 std::to_string(inst.clauses.size()));
    return inst;
}

inline std::string to_dimacs(const SatInstance& inst) {
    std::ostringstream out;
    out << "p cnf " << inst.num_vars << ' ' << inst.clauses.size() << '\n';
    for (const auto& clause : inst.clauses) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

/// Least-lexicographic satisfying assignment (variable 1 most significant,
/// false < true), or absent when unsatisfiable. Capped at 20 variables.
inline std::optional<std::vector<bool>> brute_force_sat(const SatInstance& inst) {
    if (inst.num_vars > 20)
        throw std::runtime_error("brute-force SAT capped at 20 variables (got " +
                                 std::to_string(inst.num_vars) + ")");
    const int n = inst.num_vars;
    std::vector<bool> assignment(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        for (int i = 1; i <= n; ++i)
            assignment[static_cast<std::size_t>(i - 1)] = (mask >> (n - i)) & 1ULL;
        if (satisfies(inst, assignment)) return assignment;
    }
    return std::nullopt;
}

/// A gadget graph together with the name → id table for its landmark
/// vertices (every gadget vertex is named).
struct ReductionArtifact {
    Graph graph{0, {}};
    std::map<std::string, Vertex> landmarks;
    int levels = 0;        // the n of G_n (= number of variables when built from SAT)
    int clause_count = 0;  // 0 for a pure G_n

    Vertex landmark(const std::string& name) const {
        auto it = landmarks.find(name);
        if (it == landmarks.end())
            throw std::invalid_argument("unknown landmark '" + name + "'");
        return it->second;
    }

    Vertex root() const { return landmark("r" + std::to_string(levels)); }
    Vertex base() const { return landmark("r0"); }
    Vertex target() const { return landmark("t"); }
};

namespace detail {

struct GadgetBuilder {
    std::vector<std::string> names;
    std::vector<std::pair<Vertex, Vertex>> edges;

    Vertex add(std::string name) {
        names.push_back(std::move(name));
        return static_cast<Vertex>(names.size()) - 1;
    }
    void link(Vertex u, Vertex v) { edges.push_back({u, v}); }

    ReductionArtifact freeze(int levels, int clause_count) {
        ReductionArtifact art;
        art.graph = Graph(static_cast<int>(names.size()), edges);
        for (Vertex v = 0; v < static_cast<Vertex>(names.size()); ++v) {
            art.graph.set_name(v, names[static_cast<std::size_t>(v)]);
            art.landmarks[names[static_cast<std::size_t>(v)]] = v;
        }
        art.levels = levels;
        art.clause_count = clause_count;
        return art;
    }
};

/// Adds the 10 vertices and 12 edges of one H_k block; returns the ids of
/// the vertices later construction steps attach to.
struct HBlock {
    Vertex r, c, y, ybar;
};

inline HBlock add_H_block(GadgetBuilder& b, int k) {
    const std::string s = std::to_string(k);
    Vertex r = b.add("r" + s);
    Vertex a = b.add("a" + s);
    Vertex abar = b.add("abar" + s);
    Vertex bb = b.add("b" + s);
    Vertex bbar = b.add("bbar" + s);
    Vertex c = b.add("c" + s);
    Vertex y = b.add("y" + s);
    Vertex ybar = b.add("ybar" + s);
    Vertex bprime = b.add("bprime" + s);
    Vertex bbarprime = b.add("bbarprime" + s);
    b.link(r, a);
    b.link(r, abar);
    b.link(a, bb);
    b.link(bb, c);
    b.link(abar, bbar);
    b.link(bbar, c);
    b.link(bb, y);
    b.link(bprime, y);
    b.link(bprime, a);
    b.link(bbarprime, ybar);
    b.link(bbarprime, abar);
    b.link(ybar, bbar);
    return {r, c, y, ybar};
}

}  // namespace detail

/// The 10-vertex block of level k in isolation; k only affects vertex names.
inline Graph build_H(int k) {
    if (k < 1) throw std::invalid_argument("H_k needs k >= 1");
    detail::GadgetBuilder b;
    detail::add_H_block(b, k);
    return b.freeze(0, 0).graph;
}

/// The n-level gadget G_n: G_0 is the single vertex r0; level k adds the
/// H_k block, the edge r_{k-1}-c_k, and two pendant paths of 4k-3 edges
/// from y_k to x_k and from ybar_k to xbar_k.
inline ReductionArtifact build_G(int n) {
    if (n < 0) throw std::invalid_argument("G_n needs n >= 0");
    detail::GadgetBuilder b;
    Vertex below = b.add("r0");
    for (int k = 1; k <= n; ++k) {
        const std::string s = std::to_string(k);
        detail::HBlock h = detail::add_H_block(b, k);
        b.link(below, h.c);
        Vertex tail = h.y;
        for (int j = 1; j <= 4 * k - 4; ++j) {
            Vertex p = b.add("py" + s + "_" + std::to_string(j));
            b.link(tail, p);
            tail = p;
        }
        b.link(tail, b.add("x" + s));
        tail = h.ybar;
        for (int j = 1; j <= 4 * k - 4; ++j) {
            Vertex p = b.add("pybar" + s + "_" + std::to_string(j));
            b.link(tail, p);
            tail = p;
        }
        b.link(tail, b.add("xbar" + s));
        below = h.r;
    }
    return b.freeze(n, 0);
}

/// The reduction graph G_I: G_n plus one vertex c^j per clause (adjacent to
/// the x_i / xbar_i vertices of its literals) and t adjacent only to r0.
inline ReductionArtifact build_G_from_sat(const SatInstance& inst) {
    if (inst.num_vars < 1)
        throw std::invalid_argument("the reduction needs at least one variable");
    for (std::size_t j = 0; j < inst.clauses.size(); ++j) {
        const auto& clause = inst.clauses[j];
        if (clause.empty())
            throw std::invalid_argument("clause " + std::to_string(j + 1) + " is empty");
        std::set<int> lits(clause.begin(), clause.end());
        if (lits.size() > 3)
            throw std::invalid_argument("clause " + std::to_string(j + 1) + " has size " +
                                        std::to_string(lits.size()) +
                                        "; the reduction accepts clauses of size at most 3");
        for (int lit : lits)
            if (lit == 0 || std::abs(lit) > inst.num_vars)
                throw std::invalid_argument("literal " + std::to_string(lit) +
                                            " out of range in clause " + std::to_string(j + 1));
    }

    ReductionArtifact base = build_G(inst.num_vars);
    detail::GadgetBuilder b;
    for (Vertex v = 0; v < base.graph.vertex_count(); ++v)
        b.add(base.graph.display_name(v));
    for (auto [u, v] : base.graph.edges()) b.link(u, v);

    for (std::size_t j = 0; j < inst.clauses.size(); ++j) {
        Vertex cj = b.add("c^" + std::to_string(j + 1));
        std::set<int> lits(inst.clauses[j].begin(), inst.clauses[j].end());
        for (int lit : lits) {
            std::string name = (lit > 0 ? "x" : "xbar") + std::to_string(std::abs(lit));
            b.link(cj, base.landmark(name));
        }
    }
    Vertex t = b.add("t");
    b.link(t, base.landmark("r0"));
    return b.freeze(inst.num_vars, static_cast<int>(inst.clauses.size()));
}

/// Reads a truth assignment off an LBFS ordering of a gadget graph: variable
/// i is true exactly when x_i is visited before r0. The ordering must be a
/// valid LBFS ordering starting at the root r_n.
inline std::map<int, bool> extract_assignment(const Ordering& sigma, const ReductionArtifact& art) {
    VerifyResult vr = LbfsEngine(art.graph).verify(sigma.seq);
    if (!vr.ok)
        throw std::invalid_argument("not an LBFS ordering of the gadget graph (first violation at position " +
                                    std::to_string(vr.first_violation) + ")");
    if (sigma.seq.front() != art.root())
        throw std::invalid_argument("ordering must start at the root r" + std::to_string(art.levels));
    const int r0_pos = sigma.position(art.base());
    std::map<int, bool> assignment;
    for (int i = 1; i <= art.levels; ++i) {
        bool pos_first = sigma.position(art.landmark("x" + std::to_string(i))) < r0_pos;
        bool neg_first = sigma.position(art.landmark("xbar" + std::to_string(i))) < r0_pos;
        if (pos_first == neg_first)
            throw std::logic_error("both or neither of x" + std::to_string(i) +
                                   "/xbar" + std::to_string(i) + " precede r0");
        assignment[i] = pos_first;
    }
    return assignment;
}

/// Output of the beginning-end-vertex to end-vertex reduction: the input
/// graph with a pendant path of diam+1 new edges hanging off s.
struct BevToEvArtifact {
    Graph graph{0, {}};
    Vertex target = 0;                  // same id as the input t
    Vertex s_prime = 0;                 // far end of the new path
    std::vector<Vertex> path_vertices;  // new ids, nearest-to-s first
};

inline BevToEvArtifact reduce_bev_to_ev(const Graph& g, Vertex s, Vertex t) {
    g.check_vertex(s);
    g.check_vertex(t);
    if (s == t) throw std::invalid_argument("s and t must differ");
    int d = diameter(g);  // rejects disconnected input
    const int base = g.vertex_count();
    auto edges = g.edges();
    BevToEvArtifact out;
    Vertex tail = s;
    for (int j = 1; j <= d + 1; ++j) {
        Vertex p = base + j - 1;
        edges.push_back({tail, p});
        out.path_vertices.push_back(p);
        tail = p;
    }
    out.graph = Graph(base + d + 1, edges);
    for (const auto& [v, name] : g.names()) out.graph.set_name(v, name);
    for (int j = 1; j <= d; ++j)
        out.graph.set_name(out.path_vertices[static_cast<std::size_t>(j - 1)],
                           "p" + std::to_string(j));
    out.graph.set_name(tail, "sprime");
    out.target = t;
    out.s_prime = tail;
    return out;
}

/// How the x_i / xbar_i vertices fall around r0 across every LBFS run of a
/// gadget that starts at the root, computed over the memoized state space.
struct LiteralPrecedenceReport {
    bool exactly_one_each = true;  // every run puts exactly one of each pair before r0
    std::set<std::uint32_t> patterns;  // bit i-1 set when x_i precedes r0
    std::size_t states_explored = 0;
};

namespace detail {

struct PrecedenceScan {
    const Graph* g;
    Vertex r0;
    std::vector<Vertex> pos, neg;  // x_i / xbar_i by variable
    std::unordered_set<std::string> seen;
    LiteralPrecedenceReport report;

    void run(const SlicePartition& part) {
        if (part.unvisited == 0) return;
        if (!seen.insert(part.fingerprint()).second) return;
        ++report.states_explored;
        const std::vector<Vertex> candidates = part.slices.front();
        for (Vertex u : candidates) {
            if (u == r0) record(part);
            SlicePartition child = part;
            child.visit(*g, u);
            run(child);
        }
    }

    // The slice partition determines the visited set, so the precedence
    // pattern of a run is fixed at the moment r0 is chosen.
    void record(const SlicePartition& part) {
        std::vector<char> unvisited(static_cast<std::size_t>(g->vertex_count()), 0);
        for (const auto& s : part.slices)
            for (Vertex v : s) unvisited[static_cast<std::size_t>(v)] = 1;
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < pos.size(); ++i) {
            bool p = !unvisited[static_cast<std::size_t>(pos[i])];
            bool q = !unvisited[static_cast<std::size_t>(neg[i])];
            if (p == q) report.exactly_one_each = false;
            if (p) mask |= 1u << i;
        }
        report.patterns.insert(mask);
    }
};

}  // namespace detail

inline LiteralPrecedenceReport survey_literal_precedence(const ReductionArtifact& art,
                                                         int cap = kDefaultEnumerationCap) {
    detail::check_enumeration_size(art.graph, cap);
    detail::PrecedenceScan scan;
    scan.g = &art.graph;
    scan.r0 = art.base();
    for (int i = 1; i <= art.levels; ++i) {
        scan.pos.push_back(art.landmark("x" + std::to_string(i)));
        scan.neg.push_back(art.landmark("xbar" + std::to_string(i)));
    }
    detail::SlicePartition part;
    part.init(art.graph.vertex_count(), art.root());
    scan.run(part);
    return scan.report;
}

/// Desk-scale round-trip: the instance is satisfiable exactly when some LBFS
/// of its reduction graph begins at the root and ends at t.
struct CertificationResult {
    bool sat = false;
    bool lbfs_reaches_t = false;
    bool agree = false;
    std::optional<std::vector<bool>> assignment;
};

inline CertificationResult certify_reduction(const SatInstance& inst, const ReductionArtifact& art,
                                             int cap = kDefaultEnumerationCap) {
    CertificationResult res;
    res.assignment = brute_force_sat(inst);
    res.sat = res.assignment.has_value();
    res.lbfs_reaches_t = is_beginning_end_pair_oracle(art.graph, art.root(), art.target(), cap);
    res.agree = res.sat == res.lbfs_reaches_t;
    return res;
}

}  // namespace lexsearch

#endif  // LEXSEARCH_GADGETS_HPP
