#pragma once

// Circuit signatures, acyclicity certificates, the basis-to-orientation maps
// beta_sigma, triangulation tests, BBY bijections and torsors.

#include "quasitor/jacobian.hpp"
#include "quasitor/lp.hpp"

namespace quasitor {

// One representative per +-pair of signed circuits, canonically sorted.
struct CircuitSignature {
    std::vector<SignedVec> chosen;

    const SignedVec& for_support(uint64_t supp) const {
        for (const auto& c : chosen)
            if (support_mask(c) == supp) return c;
        fail(ErrorCode::Internal, "signature has no circuit with the requested support");
    }

    CircuitSignature reorient(EdgeSet x) const {
        CircuitSignature out;
        for (const auto& c : chosen) out.chosen.push_back(reorient_vec(c, x));
        std::sort(out.chosen.begin(), out.chosen.end(), circuit_less);
        return out;
    }
};

inline CircuitSignature make_signature(const OrthoRep& rep, std::vector<SignedVec> chosen) {
    const auto& all = rep.circuits();
    if (chosen.size() * 2 != all.size())
        fail(ErrorCode::Internal, "signature must pick one of each +-pair");
    std::set<uint64_t> seen;
    for (const auto& c : chosen) {
        if (!std::binary_search(all.begin(), all.end(), c,
                                [](const SignedVec& a, const SignedVec& b) { return circuit_less(a, b); }))
            fail(ErrorCode::Internal, "signature vector is not a circuit of the representation");
        if (!seen.insert(support_mask(c)).second)
            fail(ErrorCode::Internal, "signature picks two circuits with one support");
    }
    CircuitSignature sig{std::move(chosen)};
    std::sort(sig.chosen.begin(), sig.chosen.end(), circuit_less);
    return sig;
}

// Orient every circuit so that its minimum support element (under `order`,
// default 1 < 1* < 2 < ...) carries +1. Always acyclic.
inline CircuitSignature lex_signature(const OrthoRep& rep, const std::vector<int>* rank_order = nullptr) {
    const int n = rep.ground_size();
    std::vector<SignedVec> chosen;
    std::set<uint64_t> seen;
    for (const auto& c : rep.circuits()) {
        uint64_t supp = support_mask(c);
        if (!seen.insert(supp).second) continue;
        int best_coord = -1, best_key = 0;
        for (int r = 0; r < 2 * n; ++r) {
            int coord = elem_coord(elem_of_rank(r), n);
            if (c[static_cast<size_t>(coord)] == 0) continue;
            int key = rank_order ? (*rank_order)[static_cast<size_t>(r)] : r;
            if (best_coord < 0 || key < best_key) { best_coord = coord; best_key = key; }
        }
        chosen.push_back(c[static_cast<size_t>(best_coord)] > 0 ? c : negated(c));
    }
    return make_signature(rep, std::move(chosen));
}

struct AcyclicResult {
    bool acyclic;
    std::vector<Rat> witness;     // w with <C, w> > 0 for all chosen circuits
    std::vector<Rat> dependency;  // lambda >= 0, sum 1, sum lambda_i C_i = 0
};

// Exact certificate: either a strictly separating vector or a vanishing
// nonnegative combination (Gordan alternative), decided by two-phase simplex.
inline AcyclicResult is_acyclic(const CircuitSignature& sig) {
    const int m = static_cast<int>(sig.chosen.size());
    if (m == 0) return AcyclicResult{true, {}, {}};
    const int dim = static_cast<int>(sig.chosen[0].size());
    // Variables: w+ (dim), w- (dim), t, s_i (m), u. Rows: -C_i.(w+ - w-) + t + s_i = 0; t + u = 1.
    const int nv = 2 * dim + 1 + m + 1;
    RatMat a(m + 1, nv);
    std::vector<Rat> b(static_cast<size_t>(m + 1), Rat(0));
    for (int i = 0; i < m; ++i) {
        for (int jc = 0; jc < dim; ++jc) {
            a(i, jc) = -sig.chosen[static_cast<size_t>(i)][static_cast<size_t>(jc)];
            a(i, dim + jc) = sig.chosen[static_cast<size_t>(i)][static_cast<size_t>(jc)];
        }
        a(i, 2 * dim) = 1;
        a(i, 2 * dim + 1 + i) = 1;
    }
    a(m, 2 * dim) = 1;
    a(m, nv - 1) = 1;
    b[static_cast<size_t>(m)] = 1;
    std::vector<Rat> cost(static_cast<size_t>(nv), Rat(0));
    cost[static_cast<size_t>(2 * dim)] = -1;  // maximize t
    LpResult lr = lp_solve(a, b, cost);
    if (lr.status != LpStatus::Optimal) fail(ErrorCode::Internal, "acyclicity LP failed");
    Rat t = -lr.objective;
    if (t > 0) {
        AcyclicResult res{true, std::vector<Rat>(static_cast<size_t>(dim)), {}};
        for (int jc = 0; jc < dim; ++jc)
            res.witness[static_cast<size_t>(jc)] = lr.x[static_cast<size_t>(jc)] - lr.x[static_cast<size_t>(dim + jc)];
        return res;
    }
    // Find the dependency: lambda >= 0, sum_i lambda_i C_i = 0, sum lambda = 1.
    RatMat d(dim + 1, m);
    std::vector<Rat> db(static_cast<size_t>(dim + 1), Rat(0));
    for (int jc = 0; jc < dim; ++jc)
        for (int i = 0; i < m; ++i) d(jc, i) = sig.chosen[static_cast<size_t>(i)][static_cast<size_t>(jc)];
    for (int i = 0; i < m; ++i) d(dim, i) = 1;
    db[static_cast<size_t>(dim)] = 1;
    LpResult feas = lp_solve(d, db, std::vector<Rat>(static_cast<size_t>(m), Rat(0)));
    if (feas.status != LpStatus::Optimal)
        fail(ErrorCode::Internal, "neither separating vector nor dependency found");
    return AcyclicResult{false, {}, feas.x};
}

// --- Basis-to-orientation maps -----------------------------------------------

struct BasisOrientationMap {
    std::map<Transversal, Orientation> table;

    const Orientation& at(Transversal b) const {
        auto it = table.find(b);
        if (it == table.end()) fail(ErrorCode::NotABasis, "map has no row for the given basis");
        return it->second;
    }

    BasisOrientationMap reorient(EdgeSet x) const {
        BasisOrientationMap out;
        for (const auto& [b, o] : table) {
            Orientation oo = o;
            for (size_t e = 0; e < oo.size(); ++e)
                if (edge_in(x, static_cast<int>(e) + 1)) oo[e] = -oo[e];
            out.table[b] = oo;
        }
        return out;
    }

    bool operator==(const BasisOrientationMap&) const = default;
};

// beta_sigma(B)(e) from the sign of sigma's circuit on FC(B, e') at e', where
// e' is the element of {e, e*} outside B.
inline BasisOrientationMap beta_sigma(const OrthoRep& rep, const CircuitSignature& sig) {
    const int n = rep.ground_size();
    BasisOrientationMap out;
    for (Transversal b : rep.bases()) {
        Orientation o(static_cast<size_t>(n));
        for (int e = 1; e <= n; ++e) {
            Elem in_b{e, ((b >> (e - 1)) & 1u) != 0};
            Elem eprime = elem_star(in_b);
            SignedVec fc = rep.fundamental_circuit(b, eprime);
            const SignedVec& chosen = sig.for_support(support_mask(fc));
            o[static_cast<size_t>(e - 1)] = chosen[static_cast<size_t>(elem_coord(eprime, n))];
        }
        out.table[b] = o;
    }
    return out;
}

// F(B, O): bi-orient the basis, orient the rest by O.
inline Fourientation fourientation_of(int n, Transversal b, const Orientation& od) {
    Fourientation f = Fourientation::all(n, Fourientation::kNone);
    for (int e = 1; e <= n; ++e) {
        bool starred = ((b >> (e - 1)) & 1u) != 0;
        f.set(Elem{e, starred}, Fourientation::kBoth);
        f.set(Elem{e, !starred},
              od[static_cast<size_t>(e - 1)] > 0 ? Fourientation::kPlus : Fourientation::kMinus);
    }
    return f;
}

struct TriangulatingWitness {
    Transversal b1, b2;
    SignedVec circuit;
};

struct TriangulatingResult {
    bool triangulating;
    std::optional<TriangulatingWitness> witness;
};

inline TriangulatingResult is_triangulating(const OrthoRep& rep, const BasisOrientationMap& beta) {
    const int n = rep.ground_size();
    for (const auto& [b1, o1] : beta.table)
        for (const auto& [b2, o2] : beta.table) {
            Fourientation f = fourientation_of(n, b1, o1).intersect(-fourientation_of(n, b2, o2));
            if (auto c = contains_circuit(rep, f))
                return TriangulatingResult{false, TriangulatingWitness{b1, b2, *c}};
        }
    return TriangulatingResult{true, std::nullopt};
}

// The induced bijection bases -> reversal classes of a triangulating map.
inline std::map<Transversal, int> bby_bijection(const OrthoRep& rep, const ReversalSystem& sys,
                                                const BasisOrientationMap& beta) {
    auto tri = is_triangulating(rep, beta);
    if (!tri.triangulating)
        fail(ErrorCode::NotTriangulating,
             "map is not triangulating: bases " + transversal_name(tri.witness->b1, rep.ground_size()) +
                 ", " + transversal_name(tri.witness->b2, rep.ground_size()));
    std::map<Transversal, int> out;
    std::set<int> hit;
    for (const auto& [b, o] : beta.table) {
        int k = sys.class_of(o);
        if (!hit.insert(k).second) fail(ErrorCode::NotBijective, "two bases map to one class");
        out[b] = k;
    }
    if (static_cast<int>(out.size()) != sys.count())
        fail(ErrorCode::NotBijective, "map does not reach every class");
    return out;
}

// Full simply transitive action table of Jac on bases through a BBY bijection.
struct TorsorTable {
    std::vector<JacElem> elements;        // canonical coset representatives
    std::vector<Transversal> bases;       // ascending
    std::vector<std::vector<int>> action; // action[g][i] = index of g . bases[i]
    std::map<Transversal, int> bijection; // basis -> reversal class

    int basis_index(Transversal b) const {
        auto it = std::lower_bound(bases.begin(), bases.end(), b);
        if (it == bases.end() || *it != b) fail(ErrorCode::NotABasis, "unknown basis");
        return static_cast<int>(it - bases.begin());
    }

    Transversal apply(const JacElem& g, Transversal b, const JacGroup& jac) const {
        JacElem gg = jac.reduce(g);
        for (size_t k = 0; k < elements.size(); ++k)
            if (elements[k] == gg) return bases[static_cast<size_t>(action[k][static_cast<size_t>(basis_index(b))])];
        fail(ErrorCode::Internal, "group element not in table");
    }

    bool simply_transitive() const {
        for (size_t i = 0; i < bases.size(); ++i)
            for (size_t j = 0; j < bases.size(); ++j) {
                int count = 0;
                for (size_t g = 0; g < elements.size(); ++g)
                    if (action[g][i] == static_cast<int>(j)) ++count;
                if (count != 1) return false;
            }
        return true;
    }
};

inline TorsorTable torsor(const OrthoRep& rep, const JacGroup& jac, const ReversalSystem& sys,
                          const BasisOrientationMap& beta) {
    auto bij = bby_bijection(rep, sys, beta);
    TorsorTable t;
    t.elements = jac.elements();
    t.bases = rep.bases();
    t.bijection = bij;
    std::vector<int> class_to_basis(static_cast<size_t>(sys.count()), -1);
    for (const auto& [b, k] : bij) {
        auto it = std::lower_bound(t.bases.begin(), t.bases.end(), b);
        class_to_basis[static_cast<size_t>(k)] = static_cast<int>(it - t.bases.begin());
    }
    for (const auto& g : t.elements) {
        std::vector<int> row;
        for (Transversal b : t.bases) {
            int k = act(rep, sys, g, bij.at(b));
            row.push_back(class_to_basis[static_cast<size_t>(k)]);
        }
        t.action.push_back(std::move(row));
    }
    return t;
}

}  // namespace quasitor
