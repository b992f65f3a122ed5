#pragma once

// Ribbon graphs as combinatorial maps: parsing, boundary walks of spanning
// subgraphs, quasi-tree enumeration, duals, and interlacement matrices.

#include "quasitor/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace quasitor {

enum class ErrorCode {
    SyntaxError,
    DuplicateDart,
    MissingDart,
    Disconnected,
    NotQuasiTree,
    NotSkewSymmetric,
    NotPU,
    NotABasis,
    NotCobasisElement,
    NotSubtransversal,
    NotHalfFourientation,
    TooLarge,
    NotGenusZero,
    NotTriangulating,
    NotBijective,
    NotSimplyTransitive,
    AxiomsFailed,
    InconsistentExtraction,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

enum class Pole : uint8_t { minus = 0, plus = 1 };

inline char pole_char(Pole p) { return p == Pole::plus ? '+' : '-'; }

// A dart is a half-edge; (e-, e+) is the reference orientation (tail, head).
struct Dart {
    int edge;  // 1-based
    Pole pole;

    bool operator==(const Dart&) const = default;
    auto operator<=>(const Dart&) const = default;
};

inline int dart_id(Dart d) { return 2 * (d.edge - 1) + (d.pole == Pole::plus ? 1 : 0); }
inline Dart dart_of_id(int id) { return Dart{id / 2 + 1, (id & 1) ? Pole::plus : Pole::minus}; }
inline int dart_alpha(int id) { return id ^ 1; }

inline std::string dart_name(Dart d) {
    return std::to_string(d.edge) + pole_char(d.pole);
}

// Ground-set element of E u E*: edge e or coedge e*.
struct Elem {
    int edge;  // 1-based
    bool starred;

    bool operator==(const Elem&) const = default;
};

// Canonical element order 1 < 1* < 2 < 2* < ...
inline int elem_rank(Elem g) { return 2 * (g.edge - 1) + (g.starred ? 1 : 0); }
inline Elem elem_of_rank(int r) { return Elem{r / 2 + 1, (r & 1) != 0}; }
// Coordinate in the (1..n | 1*..n*) block vector layout.
inline int elem_coord(Elem g, int n) { return g.starred ? n + g.edge - 1 : g.edge - 1; }
inline Elem elem_of_coord(int c, int n) { return c < n ? Elem{c + 1, false} : Elem{c - n + 1, true}; }
inline Elem elem_star(Elem g) { return Elem{g.edge, !g.starred}; }
inline int coord_star(int c, int n) { return c < n ? c + n : c - n; }

inline std::string elem_name(Elem g) {
    return std::to_string(g.edge) + (g.starred ? "*" : "");
}

struct Crossing {
    Elem g;
    Pole pole;

    bool operator==(const Crossing&) const = default;
};

inline std::string crossing_name(Crossing c) { return elem_name(c.g) + pole_char(c.pole); }

// Order used to pick canonical rotations of cyclic crossing sequences.
inline bool crossing_less(const Crossing& a, const Crossing& b) {
    int ra = elem_rank(a.g), rb = elem_rank(b.g);
    if (ra != rb) return ra < rb;
    return a.pole == Pole::plus && b.pole == Pole::minus;  // '+' before '-'
}

struct EulerData {
    int vertices;
    int edges;
    int faces;
    int genus;
};

using EdgeSet = uint32_t;  // bit e-1 set <=> edge e in the subset

inline EdgeSet full_edge_set(int n) { return n >= 32 ? ~0u : ((1u << n) - 1); }
inline bool edge_in(EdgeSet s, int edge) { return (s >> (edge - 1)) & 1u; }

inline std::string edge_set_name(EdgeSet s, int n) {
    if (s == 0) return "{}";
    std::string out = "{";
    bool first = true;
    for (int e = 1; e <= n; ++e)
        if (edge_in(s, e)) {
            if (!first) out += ",";
            out += std::to_string(e);
            first = false;
        }
    return out + "}";
}

class RibbonGraph {
public:
    // `cycles`: one counter-clockwise dart cycle per vertex.
    RibbonGraph(int n, std::vector<std::vector<Dart>> cycles) : n_(n) {
        for (auto& cyc : cycles) {
            std::vector<int> ids;
            ids.reserve(cyc.size());
            for (Dart d : cyc) ids.push_back(dart_id(d));
            cycles_.push_back(std::move(ids));
        }
        validate();
    }

    static RibbonGraph parse(std::string_view text, const std::string& name = "<input>");

    int edge_count() const { return n_; }
    int dart_count() const { return 2 * n_; }
    int vertex_count() const { return static_cast<int>(cycles_.size()); }

    const std::vector<std::vector<int>>& vertex_cycles() const { return cycles_; }

    int sigma(int dart) const { return sigma_[static_cast<size_t>(dart)]; }
    int sigma_inv(int dart) const { return sigma_inv_[static_cast<size_t>(dart)]; }
    int vertex_of(int dart) const { return vert_of_[static_cast<size_t>(dart)]; }

    // Face permutation phi = sigma . alpha; its orbits are the faces.
    std::vector<std::vector<int>> face_orbits() const {
        std::vector<char> seen(static_cast<size_t>(2 * n_), 0);
        std::vector<std::vector<int>> orbits;
        for (int start = 0; start < 2 * n_; ++start) {
            if (seen[static_cast<size_t>(start)]) continue;
            std::vector<int> orb;
            int d = start;
            do {
                seen[static_cast<size_t>(d)] = 1;
                orb.push_back(d);
                d = sigma(dart_alpha(d));
            } while (d != start);
            orbits.push_back(std::move(orb));
        }
        return orbits;
    }

    EulerData euler_data() const {
        int V = vertex_count();
        int F = n_ == 0 ? 1 : static_cast<int>(face_orbits().size());
        int chi = V - n_ + F;
        return EulerData{V, n_, F, (2 - chi) / 2};
    }

    // Mirror image: same darts, reversed rotations. Exchanges the two
    // orientation conventions.
    RibbonGraph mirrored() const {
        std::vector<std::vector<Dart>> cyc;
        for (const auto& c : cycles_) {
            std::vector<Dart> rev;
            for (auto it = c.rbegin(); it != c.rend(); ++it) rev.push_back(dart_of_id(*it));
            cyc.push_back(std::move(rev));
        }
        return RibbonGraph(n_, std::move(cyc));
    }

    std::string to_rmap_text(const std::string& comment = "") const {
        std::ostringstream os;
        if (!comment.empty()) os << "# " << comment << "\n";
        os << "rmap 1\n" << "n " << n_ << "\n";
        for (const auto& cyc : cycles_) {
            os << "v";
            for (int d : cyc) os << " " << dart_name(dart_of_id(d));
            os << "\n";
        }
        return os.str();
    }

    bool same_map(const RibbonGraph& o) const {
        return n_ == o.n_ && sigma_ == o.sigma_;
    }

private:
    void validate() {
        std::vector<int> seen(static_cast<size_t>(2 * n_), -1);
        for (size_t v = 0; v < cycles_.size(); ++v)
            for (int d : cycles_[v]) {
                if (d < 0 || d >= 2 * n_)
                    fail(ErrorCode::SyntaxError, "dart out of range: " + dart_name(dart_of_id(d)));
                if (seen[static_cast<size_t>(d)] >= 0)
                    fail(ErrorCode::DuplicateDart,
                         "dart " + dart_name(dart_of_id(d)) + " listed twice");
                seen[static_cast<size_t>(d)] = static_cast<int>(v);
            }
        for (int d = 0; d < 2 * n_; ++d)
            if (seen[static_cast<size_t>(d)] < 0)
                fail(ErrorCode::MissingDart, "dart " + dart_name(dart_of_id(d)) + " missing");
        sigma_.assign(static_cast<size_t>(2 * n_), -1);
        sigma_inv_.assign(static_cast<size_t>(2 * n_), -1);
        vert_of_.assign(static_cast<size_t>(2 * n_), -1);
        for (size_t v = 0; v < cycles_.size(); ++v) {
            const auto& cyc = cycles_[v];
            for (size_t i = 0; i < cyc.size(); ++i) {
                int d = cyc[i];
                int nd = cyc[(i + 1) % cyc.size()];
                sigma_[static_cast<size_t>(d)] = nd;
                sigma_inv_[static_cast<size_t>(nd)] = d;
                vert_of_[static_cast<size_t>(d)] = static_cast<int>(v);
            }
        }
        if (n_ > 0) {
            for (const auto& cyc : cycles_)
                if (cyc.empty())
                    fail(ErrorCode::Disconnected, "vertex with no darts in a map with edges");
            // Connectivity of the orbit of <sigma, alpha> on darts.
            std::vector<char> reach(static_cast<size_t>(2 * n_), 0);
            std::vector<int> stack{0};
            reach[0] = 1;
            while (!stack.empty()) {
                int d = stack.back();
                stack.pop_back();
                for (int nd : {sigma(d), dart_alpha(d)})
                    if (!reach[static_cast<size_t>(nd)]) {
                        reach[static_cast<size_t>(nd)] = 1;
                        stack.push_back(nd);
                    }
            }
            for (int d = 0; d < 2 * n_; ++d)
                if (!reach[static_cast<size_t>(d)])
                    fail(ErrorCode::Disconnected,
                         "map is disconnected at dart " + dart_name(dart_of_id(d)));
        } else if (cycles_.size() != 1) {
            fail(ErrorCode::Disconnected, "edgeless map must have exactly one vertex");
        }
        EulerData ed = euler_data();
        int chi = ed.vertices - ed.edges + ed.faces;
        if (chi > 2 || (chi & 1))
            fail(ErrorCode::Internal, "impossible Euler characteristic");
    }

    int n_;
    std::vector<std::vector<int>> cycles_;
    std::vector<int> sigma_, sigma_inv_, vert_of_;
};

inline RibbonGraph RibbonGraph::parse(std::string_view text, const std::string& name) {
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    int n = -1;
    bool header = false;
    std::vector<std::vector<Dart>> cycles;
    auto where = [&](const std::string& msg) { return name + ":" + std::to_string(lineno) + ": " + msg; };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (!header) {
            std::string ver;
            if (tok != "rmap" || !(ls >> ver) || ver != "1")
                fail(ErrorCode::SyntaxError, where("expected header 'rmap 1'"));
            header = true;
        } else if (tok == "n") {
            if (n >= 0) fail(ErrorCode::SyntaxError, where("duplicate 'n' line"));
            if (!(ls >> n) || n < 0 || n > 30)
                fail(ErrorCode::SyntaxError, where("bad edge count"));
        } else if (tok == "v") {
            if (n < 0) fail(ErrorCode::SyntaxError, where("'v' before 'n'"));
            std::vector<Dart> cyc;
            std::string d;
            while (ls >> d) {
                if (d.size() < 2 || (d.back() != '+' && d.back() != '-'))
                    fail(ErrorCode::SyntaxError, where("bad dart token '" + d + "'"));
                int edge = 0;
                for (size_t i = 0; i + 1 < d.size(); ++i) {
                    if (!isdigit(static_cast<unsigned char>(d[i])))
                        fail(ErrorCode::SyntaxError, where("bad dart token '" + d + "'"));
                    edge = edge * 10 + (d[i] - '0');
                }
                if (edge < 1 || edge > n)
                    fail(ErrorCode::SyntaxError, where("edge index out of range in '" + d + "'"));
                cyc.push_back(Dart{edge, d.back() == '+' ? Pole::plus : Pole::minus});
            }
            cycles.push_back(std::move(cyc));
        } else {
            fail(ErrorCode::SyntaxError, where("unknown directive '" + tok + "'"));
        }
    }
    if (!header) fail(ErrorCode::SyntaxError, name + ":0: empty input");
    if (n < 0) fail(ErrorCode::SyntaxError, name + ": missing 'n' line");
    return RibbonGraph(n, std::move(cycles));
}

// --- Boundary walk -----------------------------------------------------------
//
// The tour of the boundary of a ribbon neighborhood of the spanning subgraph
// (V, Q). State: "corner just past dart c".  The next dart d' = sigma(c) is
// either crossed (its edge is outside Q; emit the half-edge) or traversed
// along the ribbon side (edge in Q; emit the half-coedge with the pole of
// d', continue past alpha(d')).  Rotations are counter-clockwise and the
// region stays on the left, which matches the right-hand dual convention.

struct BoundaryTour {
    std::vector<std::vector<Crossing>> components;

    int component_count() const { return static_cast<int>(components.size()); }
};

namespace detail {

inline void canonical_rotate(std::vector<Crossing>& comp) {
    if (comp.empty()) return;
    size_t best = 0;
    for (size_t i = 1; i < comp.size(); ++i)
        if (crossing_less(comp[i], comp[best])) best = i;
    std::rotate(comp.begin(), comp.begin() + static_cast<long>(best), comp.end());
}

}  // namespace detail

inline BoundaryTour boundary_tour(const RibbonGraph& g, EdgeSet q) {
    const int nd = g.dart_count();
    BoundaryTour tour;
    if (nd == 0) {
        tour.components.push_back({});
        return tour;
    }
    std::vector<char> visited(static_cast<size_t>(nd), 0);
    for (int start = 0; start < nd; ++start) {
        if (visited[static_cast<size_t>(start)]) continue;
        std::vector<Crossing> comp;
        int c = start;
        do {
            visited[static_cast<size_t>(c)] = 1;
            int d = g.sigma(c);
            Dart dd = dart_of_id(d);
            if (edge_in(q, dd.edge)) {
                comp.push_back(Crossing{Elem{dd.edge, true}, dd.pole});
                c = dart_alpha(d);
            } else {
                comp.push_back(Crossing{Elem{dd.edge, false}, dd.pole});
                c = d;
            }
        } while (c != start);
        detail::canonical_rotate(comp);
        tour.components.push_back(std::move(comp));
    }
    std::sort(tour.components.begin(), tour.components.end(),
              [](const auto& a, const auto& b) { return crossing_less(a[0], b[0]); });
    return tour;
}

inline bool spanning_connected(const RibbonGraph& g, EdgeSet q) {
    int nv = g.vertex_count();
    if (nv <= 1) return true;
    std::vector<int> parent(static_cast<size_t>(nv));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (int e = 1; e <= g.edge_count(); ++e)
        if (edge_in(q, e)) {
            int a = find(g.vertex_of(dart_id(Dart{e, Pole::minus})));
            int b = find(g.vertex_of(dart_id(Dart{e, Pole::plus})));
            if (a != b) parent[static_cast<size_t>(a)] = b;
        }
    int r = find(0);
    for (int v = 1; v < nv; ++v)
        if (find(v) != r) return false;
    return true;
}

inline bool is_quasi_tree(const RibbonGraph& g, EdgeSet q) {
    return spanning_connected(g, q) && boundary_tour(g, q).component_count() == 1;
}

inline std::vector<EdgeSet> quasi_trees(const RibbonGraph& g) {
    std::vector<EdgeSet> out;
    const uint32_t lim = 1u << g.edge_count();
    for (uint32_t q = 0; q < lim; ++q)
        if (is_quasi_tree(g, q)) out.push_back(q);
    return out;
}

// Dual map under the right-hand convention. Dual vertices are the faces;
// the dart of coedge e* with pole p reuses the id of the primal dart (e, p),
// so dual(dual(G)) is G on the nose.
inline RibbonGraph dual(const RibbonGraph& g) {
    auto orbits = g.face_orbits();
    std::vector<std::vector<Dart>> cycles;
    for (auto& orb : orbits) {
        size_t best = 0;
        for (size_t i = 1; i < orb.size(); ++i)
            if (orb[i] < orb[best]) best = i;
        std::rotate(orb.begin(), orb.begin() + static_cast<long>(best), orb.end());
        std::vector<Dart> cyc;
        for (int d : orb) cyc.push_back(dart_of_id(d));
        cycles.push_back(std::move(cyc));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) { return dart_id(a[0]) < dart_id(b[0]); });
    return RibbonGraph(g.edge_count(), std::move(cycles));
}

struct InterlacementMatrix {
    std::vector<Elem> indices;  // Q* u (E \ Q) in canonical element order
    IntMat a;
};

// A(G,Q) from the single boundary curve of a quasi-tree, by the three-case
// interlacement sign rule.
inline InterlacementMatrix interlacement_matrix(const RibbonGraph& g, EdgeSet q) {
    if (!is_quasi_tree(g, q))
        fail(ErrorCode::NotQuasiTree, edge_set_name(q, g.edge_count()) + " is not a spanning quasi-tree");
    BoundaryTour tour = boundary_tour(g, q);
    const auto& word = tour.components[0];
    const int n = g.edge_count();
    InterlacementMatrix out;
    for (int e = 1; e <= n; ++e) out.indices.push_back(Elem{e, edge_in(q, e)});
    // Positions of each half in the cyclic word.
    std::vector<int> pos_plus(static_cast<size_t>(n)), pos_minus(static_cast<size_t>(n));
    for (size_t i = 0; i < word.size(); ++i) {
        if (word[i].pole == Pole::plus)
            pos_plus[static_cast<size_t>(word[i].g.edge - 1)] = static_cast<int>(i);
        else
            pos_minus[static_cast<size_t>(word[i].g.edge - 1)] = static_cast<int>(i);
    }
    const int len = static_cast<int>(word.size());
    auto cyclic4 = [len](int a, int b, int c, int d) {
        auto rel = [len, a](int x) { return (x - a + len) % len; };
        return rel(b) < rel(c) && rel(c) < rel(d);
    };
    out.a = IntMat(n, n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int ep = pos_plus[static_cast<size_t>(i)], em = pos_minus[static_cast<size_t>(i)];
            int fp = pos_plus[static_cast<size_t>(j)], fm = pos_minus[static_cast<size_t>(j)];
            if (cyclic4(fp, ep, fm, em))
                out.a(i, j) = 1;
            else if (cyclic4(ep, fp, em, fm))
                out.a(i, j) = -1;
        }
    return out;
}

// Exhaustive principal-minor check: every principal minor of a skew-symmetric
// interlacement matrix must be 0 or 1.
inline bool principally_unimodular(const IntMat& a, std::string* witness = nullptr) {
    const int n = a.rows();
    for (uint32_t s = 0; s < (1u << n); ++s) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1u) idx.push_back(i);
        BigMat sub(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c)
                sub(static_cast<int>(r), static_cast<int>(c)) = a(idx[r], idx[c]);
        BigInt d = det_bareiss(sub);
        if (d != 0 && d != 1 && d != -1) {
            if (witness) {
                *witness = "principal submatrix on rows {";
                for (size_t k = 0; k < idx.size(); ++k)
                    *witness += (k ? "," : "") + std::to_string(idx[k]);
                *witness += "} has determinant " + d.str();
            }
            return false;
        }
    }
    return true;
}

}  // namespace quasitor
