#pragma once

// Cross-validation bridges: the lift of a graphic regular matroid into the
// orthogonal world, the genus-zero consistency report, and torsors as
// proportion spaces.

#include "quasitor/bernardi.hpp"

#include <queue>

namespace quasitor {

struct SimpleGraph {
    int nv = 0;
    std::vector<std::pair<int, int>> edges;  // (tail, head), vertices 1-based

    int edge_count() const { return static_cast<int>(edges.size()); }

    static SimpleGraph parse(std::string_view text, const std::string& name = "<input>") {
        std::istringstream is{std::string(text)};
        std::string line;
        int lineno = 0;
        bool header = false;
        SimpleGraph g;
        auto where = [&](const std::string& m) { return name + ":" + std::to_string(lineno) + ": " + m; };
        while (std::getline(is, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string tok;
            if (!(ls >> tok)) continue;
            if (!header) {
                if (tok != "graph") fail(ErrorCode::SyntaxError, where("expected header 'graph'"));
                header = true;
            } else if (tok == "nv") {
                if (!(ls >> g.nv) || g.nv < 1) fail(ErrorCode::SyntaxError, where("bad vertex count"));
            } else if (tok == "e") {
                int u, v;
                if (!(ls >> u >> v) || u < 1 || v < 1 || u > g.nv || v > g.nv)
                    fail(ErrorCode::SyntaxError, where("bad edge endpoints"));
                g.edges.emplace_back(u, v);
            } else {
                fail(ErrorCode::SyntaxError, where("unknown directive '" + tok + "'"));
            }
        }
        if (!header) fail(ErrorCode::SyntaxError, name + ":0: empty input");
        return g;
    }

    bool connected() const {
        if (nv <= 1) return true;
        std::vector<std::vector<int>> adj(static_cast<size_t>(nv + 1));
        for (const auto& [u, v] : edges) {
            adj[static_cast<size_t>(u)].push_back(v);
            adj[static_cast<size_t>(v)].push_back(u);
        }
        std::vector<char> seen(static_cast<size_t>(nv + 1), 0);
        std::queue<int> bfs;
        bfs.push(1);
        seen[1] = 1;
        int reached = 1;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int v : adj[static_cast<size_t>(u)])
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    ++reached;
                    bfs.push(v);
                }
        }
        return reached == nv;
    }
};

// Signed fundamental cycle of a non-tree edge and signed fundamental bond of
// a tree edge, embedded into Z^{E u E*} (cycles on the plain side, bonds on
// the starred side).
namespace detail {

struct TreeData {
    EdgeSet tree = 0;
    std::vector<int> parent_vertex;  // per vertex, 0 at the root
    std::vector<int> parent_edge;    // edge index to the parent, 0 at the root
};

inline TreeData bfs_tree(const SimpleGraph& g) {
    TreeData td;
    td.parent_vertex.assign(static_cast<size_t>(g.nv + 1), 0);
    td.parent_edge.assign(static_cast<size_t>(g.nv + 1), 0);
    std::vector<char> seen(static_cast<size_t>(g.nv + 1), 0);
    std::queue<int> bfs;
    bfs.push(1);
    seen[1] = 1;
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            auto [a, b] = g.edges[static_cast<size_t>(ei)];
            int other = a == u ? b : (b == u ? a : 0);
            if (!other || seen[static_cast<size_t>(other)]) continue;
            seen[static_cast<size_t>(other)] = 1;
            td.tree |= 1u << ei;
            td.parent_vertex[static_cast<size_t>(other)] = u;
            td.parent_edge[static_cast<size_t>(other)] = ei + 1;
            bfs.push(other);
        }
    }
    return td;
}

// Path coefficients from u to v in the tree: +1 when a tree edge is used along
// its reference direction.
inline std::vector<int> tree_path(const SimpleGraph& g, const TreeData& td, int u, int v) {
    std::vector<int> coeff(static_cast<size_t>(g.edge_count()), 0);
    auto depth = [&](int x) {
        int d = 0;
        while (td.parent_edge[static_cast<size_t>(x)]) { x = td.parent_vertex[static_cast<size_t>(x)]; ++d; }
        return d;
    };
    int du = depth(u), dv = depth(v);
    int x = u, y = v;
    while (du > dv) {
        int e = td.parent_edge[static_cast<size_t>(x)];
        int p = td.parent_vertex[static_cast<size_t>(x)];
        coeff[static_cast<size_t>(e - 1)] += g.edges[static_cast<size_t>(e - 1)].first == x ? 1 : -1;
        x = p;
        --du;
    }
    while (dv > du) {
        int e = td.parent_edge[static_cast<size_t>(y)];
        int p = td.parent_vertex[static_cast<size_t>(y)];
        coeff[static_cast<size_t>(e - 1)] += g.edges[static_cast<size_t>(e - 1)].second == y ? 1 : -1;
        y = p;
        --dv;
    }
    while (x != y) {
        int e = td.parent_edge[static_cast<size_t>(x)];
        coeff[static_cast<size_t>(e - 1)] += g.edges[static_cast<size_t>(e - 1)].first == x ? 1 : -1;
        x = td.parent_vertex[static_cast<size_t>(x)];
        int f = td.parent_edge[static_cast<size_t>(y)];
        coeff[static_cast<size_t>(f - 1)] += g.edges[static_cast<size_t>(f - 1)].second == y ? 1 : -1;
        y = td.parent_vertex[static_cast<size_t>(y)];
    }
    return coeff;
}

}  // namespace detail

// The regular orthogonal representation CD of lift(M(g)): signed cycles on E,
// signed bonds on E*. Bases are T u (E \ T)* for spanning trees T.
inline OrthoRep graphic_cd_rep(const SimpleGraph& g) {
    if (!g.connected()) fail(ErrorCode::Disconnected, "input graph is disconnected");
    const int n = g.edge_count();
    auto td = detail::bfs_tree(g);
    std::vector<SignedVec> rows(static_cast<size_t>(n));
    for (int ei = 1; ei <= n; ++ei) {
        SignedVec c(static_cast<size_t>(2 * n), 0);
        if (!edge_in(td.tree, ei)) {
            // Fundamental cycle of the non-tree edge: edge then tree path back.
            auto [u, v] = g.edges[static_cast<size_t>(ei - 1)];
            c[static_cast<size_t>(ei - 1)] = 1;
            auto path = detail::tree_path(g, td, v, u);
            for (int f = 1; f <= n; ++f) c[static_cast<size_t>(f - 1)] += path[static_cast<size_t>(f - 1)];
        } else {
            // Fundamental bond of the tree edge, oriented out of the tail side.
            auto [u, v] = g.edges[static_cast<size_t>(ei - 1)];
            std::vector<char> side(static_cast<size_t>(g.nv + 1), 0);
            std::queue<int> bfs;
            bfs.push(u);
            side[static_cast<size_t>(u)] = 1;
            while (!bfs.empty()) {
                int x = bfs.front();
                bfs.pop();
                for (int f = 1; f <= g.edge_count(); ++f) {
                    if (f == ei || !edge_in(td.tree, f)) continue;
                    auto [a, b] = g.edges[static_cast<size_t>(f - 1)];
                    int other = a == x ? b : (b == x ? a : 0);
                    if (other && !side[static_cast<size_t>(other)]) {
                        side[static_cast<size_t>(other)] = 1;
                        bfs.push(other);
                    }
                }
            }
            for (int f = 1; f <= n; ++f) {
                auto [a, b] = g.edges[static_cast<size_t>(f - 1)];
                bool sa = side[static_cast<size_t>(a)], sb = side[static_cast<size_t>(b)];
                if (sa && !sb) c[static_cast<size_t>(n + f - 1)] = 1;
                if (!sa && sb) c[static_cast<size_t>(n + f - 1)] = -1;
            }
        }
        rows[static_cast<size_t>(ei - 1)] = std::move(c);
    }
    // Base transversal: T u (E \ T)*; the A-matrix entries come from the rows.
    Transversal base = static_cast<Transversal>(~td.tree) & full_edge_set(n);
    IntMat a(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            // Cobasis element of edge j is j* for tree edges and j otherwise;
            // the A column for edge j reads the coordinate of its star.
            Elem col = edge_in(td.tree, j) ? Elem{j, false} : Elem{j, true};
            a(i - 1, j - 1) = rows[static_cast<size_t>(i - 1)][static_cast<size_t>(elem_coord(col, n))];
        }
    OrthoRep rep(n, base, a);
    if (rep.lambda_rows() != rows) fail(ErrorCode::Internal, "graphic lift rows mismatch");
    return rep;
}

inline SimpleGraph underlying_graph(const RibbonGraph& g) {
    SimpleGraph sg;
    sg.nv = g.vertex_count();
    for (int e = 1; e <= g.edge_count(); ++e)
        sg.edges.emplace_back(g.vertex_of(dart_id(Dart{e, Pole::minus})) + 1,
                              g.vertex_of(dart_id(Dart{e, Pole::plus})) + 1);
    return sg;
}

struct SphereReport {
    bool quasi_trees_are_spanning_trees = false;
    bool jacobians_isomorphic = false;
    bool reversal_systems_match = false;
    std::string detail;

    bool pass() const {
        return quasi_trees_are_spanning_trees && jacobians_isomorphic && reversal_systems_match;
    }
};

// On the sphere, quasi-trees are spanning trees and the ribbon apparatus
// reduces to the graphic one.
inline SphereReport compare_sphere(const RibbonGraph& g) {
    if (g.euler_data().genus != 0)
        fail(ErrorCode::NotGenusZero, "map has genus " + std::to_string(g.euler_data().genus));
    SphereReport rpt;
    SimpleGraph sg = underlying_graph(g);
    OrthoRep ribbon = rep_from_quasi_tree(g, quasi_trees(g).front());
    OrthoRep graphic = graphic_cd_rep(sg);
    {
        auto qt_list = quasi_trees(g);
        std::set<EdgeSet> qts(qt_list.begin(), qt_list.end());
        std::set<EdgeSet> trees;
        for (Transversal t : graphic.bases())
            trees.insert(static_cast<EdgeSet>(~t) & full_edge_set(sg.edge_count()));
        rpt.quasi_trees_are_spanning_trees = qts == trees;
        if (!rpt.quasi_trees_are_spanning_trees) rpt.detail = "quasi-trees differ from spanning trees";
    }
    JacGroup jr(ribbon), jg(graphic);
    rpt.jacobians_isomorphic = jr.nontrivial_invariants() == jg.nontrivial_invariants();
    if (!rpt.jacobians_isomorphic && rpt.detail.empty()) rpt.detail = "invariant factors differ";
    ReversalSystem sr(ribbon), sgr(graphic);
    rpt.reversal_systems_match = sr.classes() == sgr.classes();
    if (!rpt.reversal_systems_match && rpt.detail.empty()) rpt.detail = "reversal partitions differ";
    return rpt;
}

// --- Proportion spaces -------------------------------------------------------

struct ProportionRelation {
    int size = 0;
    std::vector<char> rel;  // size^4 indicator

    bool related(int a, int b, int c, int d) const {
        return rel[static_cast<size_t>(((a * size + b) * size + c) * size + d)] != 0;
    }
    void set(int a, int b, int c, int d, bool v) {
        rel[static_cast<size_t>(((a * size + b) * size + c) * size + d)] = v ? 1 : 0;
    }
};

// (a,b) ~ (c,d) iff the unique group element moving b to a also moves d to c.
inline ProportionRelation proportion_from_torsor(const TorsorTable& t) {
    const int x = static_cast<int>(t.bases.size());
    const int ng = static_cast<int>(t.elements.size());
    // mover[a][b] = the unique g with g . b = a
    std::vector<std::vector<int>> mover(static_cast<size_t>(x), std::vector<int>(static_cast<size_t>(x), -1));
    for (int g = 0; g < ng; ++g)
        for (int b = 0; b < x; ++b) {
            int a = t.action[static_cast<size_t>(g)][static_cast<size_t>(b)];
            if (mover[static_cast<size_t>(a)][static_cast<size_t>(b)] != -1)
                fail(ErrorCode::NotSimplyTransitive, "two group elements share a move");
            mover[static_cast<size_t>(a)][static_cast<size_t>(b)] = g;
        }
    for (int a = 0; a < x; ++a)
        for (int b = 0; b < x; ++b)
            if (mover[static_cast<size_t>(a)][static_cast<size_t>(b)] < 0)
                fail(ErrorCode::NotSimplyTransitive, "no group element realizes a move");
    ProportionRelation r;
    r.size = x;
    r.rel.assign(static_cast<size_t>(x) * x * x * x, 0);
    for (int a = 0; a < x; ++a)
        for (int b = 0; b < x; ++b)
            for (int c = 0; c < x; ++c)
                for (int d = 0; d < x; ++d)
                    r.set(a, b, c, d,
                          mover[static_cast<size_t>(a)][static_cast<size_t>(b)] ==
                              mover[static_cast<size_t>(c)][static_cast<size_t>(d)]);
    return r;
}

struct PsAxiomReport {
    std::vector<AxiomCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline PsAxiomReport check_ps_axioms(const ProportionRelation& r) {
    PsAxiomReport out;
    const int x = r.size;
    auto add = [&](const std::string& id, bool pass, const std::string& w) {
        out.checks.push_back(AxiomCheck{id, pass, pass ? "" : w});
    };
    {  // PS1a: equivalence relation on pairs
        bool ok = true;
        std::string w;
        for (int a = 0; a < x && ok; ++a)
            for (int b = 0; b < x && ok; ++b)
                if (!r.related(a, b, a, b)) { ok = false; w = "not reflexive"; }
        for (int a = 0; a < x && ok; ++a)
            for (int b = 0; b < x && ok; ++b)
                for (int c = 0; c < x && ok; ++c)
                    for (int d = 0; d < x && ok; ++d)
                        if (r.related(a, b, c, d) != r.related(c, d, a, b)) { ok = false; w = "not symmetric"; }
        for (int a = 0; a < x && ok; ++a)
            for (int b = 0; b < x && ok; ++b)
                for (int c = 0; c < x && ok; ++c)
                    for (int d = 0; d < x && ok; ++d) {
                        if (!r.related(a, b, c, d)) continue;
                        for (int e = 0; e < x && ok; ++e)
                            for (int f = 0; f < x && ok; ++f)
                                if (r.related(c, d, e, f) && !r.related(a, b, e, f)) { ok = false; w = "not transitive"; }
                    }
        add("ps1a-equivalence", ok, w);
    }
    {  // PS1b
        bool ok = true;
        for (int a = 0; a < x && ok; ++a)
            for (int b = 0; b < x && ok; ++b)
                if (!r.related(a, a, b, b)) ok = false;
        add("ps1b-identity-pairs", ok, "(a,a) !~ (b,b)");
    }
    {  // PS1c
        bool ok = true;
        for (int a = 0; a < x && ok; ++a)
            for (int b = 0; b < x && ok; ++b)
                for (int c = 0; c < x && ok; ++c)
                    for (int d = 0; d < x && ok; ++d)
                        if (r.related(a, b, c, d) != r.related(b, a, d, c)) ok = false;
        add("ps1c-inverse", ok, "(a,b)~(c,d) but (b,a)!~(d,c)");
    }
    {  // PS1d
        bool ok = true;
        for (int a = 0; a < x && ok; ++a)
            for (int b = 0; b < x && ok; ++b)
                for (int c = 0; c < x && ok; ++c)
                    for (int d = 0; d < x && ok; ++d) {
                        if (!r.related(a, b, c, d)) continue;
                        for (int e = 0; e < x && ok; ++e)
                            for (int f = 0; f < x && ok; ++f)
                                if (r.related(b, e, d, f) && !r.related(a, e, c, f)) ok = false;
                    }
        add("ps1d-composition", ok, "composition fails");
    }
    {  // PS2: ternary
        bool ok = true;
        for (int a = 0; a < x && ok; ++a)
            for (int b = 0; b < x && ok; ++b)
                for (int c = 0; c < x && ok; ++c) {
                    int count = 0;
                    for (int d = 0; d < x; ++d)
                        if (r.related(a, b, c, d)) ++count;
                    if (count != 1) ok = false;
                }
        add("ps2-ternary", ok, "d is not unique");
    }
    return out;
}

struct ProportionGroup {
    int size = 0;                          // group order
    std::vector<std::pair<int, int>> reps; // class representatives (a, b)
    std::vector<std::vector<int>> mult;    // group table
    std::vector<std::vector<int>> action;  // action[g][x] in X
    int identity = 0;
};

// Reconstruct the group of a proportion space with its canonical action
// [(a,b)] . b = a.
inline ProportionGroup group_from_proportion(const ProportionRelation& r) {
    auto axioms = check_ps_axioms(r);
    if (!axioms.all_pass()) fail(ErrorCode::AxiomsFailed, "proportion axioms fail");
    const int x = r.size;
    std::vector<std::vector<int>> class_of(static_cast<size_t>(x), std::vector<int>(static_cast<size_t>(x), -1));
    ProportionGroup g;
    for (int a = 0; a < x; ++a)
        for (int b = 0; b < x; ++b) {
            if (class_of[static_cast<size_t>(a)][static_cast<size_t>(b)] >= 0) continue;
            int k = g.size++;
            g.reps.emplace_back(a, b);
            for (int c = 0; c < x; ++c)
                for (int d = 0; d < x; ++d)
                    if (r.related(a, b, c, d)) class_of[static_cast<size_t>(c)][static_cast<size_t>(d)] = k;
        }
    // Action: [(a,b)] . y = the unique z with (a,b) ~ (z,y).
    g.action.assign(static_cast<size_t>(g.size), std::vector<int>(static_cast<size_t>(x), -1));
    for (int k = 0; k < g.size; ++k) {
        auto [a, b] = g.reps[static_cast<size_t>(k)];
        for (int y = 0; y < x; ++y)
            for (int z = 0; z < x; ++z)
                if (r.related(a, b, z, y)) { g.action[static_cast<size_t>(k)][static_cast<size_t>(y)] = z; break; }
    }
    // Multiplication via [(a,b)] * [(b,c)] = [(a,c)].
    g.mult.assign(static_cast<size_t>(g.size), std::vector<int>(static_cast<size_t>(g.size), -1));
    for (int k1 = 0; k1 < g.size; ++k1)
        for (int k2 = 0; k2 < g.size; ++k2) {
            auto [a, b] = g.reps[static_cast<size_t>(k1)];
            // find the pair in class k2 whose first entry is b
            auto [c0, d0] = g.reps[static_cast<size_t>(k2)];
            int c = -1;
            for (int d = 0; d < x; ++d)
                if (r.related(c0, d0, b, d)) { c = d; break; }
            g.mult[static_cast<size_t>(k1)][static_cast<size_t>(k2)] = class_of[static_cast<size_t>(a)][static_cast<size_t>(c)];
        }
    g.identity = class_of[0][0];
    return g;
}

// The bijection g -> [(g . x0, x0)] makes the reconstructed group equivalent
// to the original torsor; returns false when any structure clashes.
inline bool proportion_round_trip_ok(const TorsorTable& t, const JacGroup& jac) {
    ProportionRelation r = proportion_from_torsor(t);
    ProportionGroup g = group_from_proportion(r);
    const int x = static_cast<int>(t.bases.size());
    if (g.size != x) return false;
    // phi: torsor group element v -> class of (v . x0, x0)
    std::vector<int> phi;
    for (const auto& v : t.elements) {
        int a = t.action[phi.size()][0];
        auto [ra, rb] = g.reps[0];
        (void)ra;
        (void)rb;
        int k = -1;
        for (int kk = 0; kk < g.size; ++kk) {
            auto [pa, pb] = g.reps[static_cast<size_t>(kk)];
            if (r.related(pa, pb, a, 0)) { k = kk; break; }
        }
        if (k < 0) return false;
        phi.push_back(k);
        (void)v;
    }
    // bijective?
    std::set<int> img(phi.begin(), phi.end());
    if (static_cast<int>(img.size()) != g.size) return false;
    // action-compatible: phi(v) . y == v . y for all y
    for (size_t vi = 0; vi < t.elements.size(); ++vi)
        for (int y = 0; y < x; ++y)
            if (g.action[static_cast<size_t>(phi[vi])][static_cast<size_t>(y)] !=
                t.action[vi][static_cast<size_t>(y)])
                return false;
    // homomorphism (then an isomorphism): phi(v+w) = phi(v)*phi(w)
    for (size_t vi = 0; vi < t.elements.size(); ++vi)
        for (size_t wi = 0; wi < t.elements.size(); ++wi) {
            JacElem sum(t.elements[vi].size());
            for (size_t i = 0; i < sum.size(); ++i) sum[i] = t.elements[vi][i] + t.elements[wi][i];
            JacElem red = jac.reduce(sum);
            int si = -1;
            for (size_t k = 0; k < t.elements.size(); ++k)
                if (t.elements[k] == red) { si = static_cast<int>(k); break; }
            if (si < 0) return false;
            if (g.mult[static_cast<size_t>(phi[vi])][static_cast<size_t>(phi[wi])] != phi[static_cast<size_t>(si)])
                return false;
        }
    return true;
}

}  // namespace quasitor
