#pragma once

// Regular orthogonal matroid engine: representations Lambda = (I A) with A
// skew-symmetric principally unimodular, bases, signed circuits, fundamental
// circuits, fourientations, Farkas searches, restriction, reorientation and
// axiom validation. Exact arithmetic throughout.

#include "quasitor/ribbonmap.hpp"

#include <map>
#include <optional>
#include <set>

namespace quasitor {

using SignedVec = std::vector<int>;      // length 2n, coordinates (1..n | 1*..n*)
using Transversal = uint32_t;            // bit e-1 set <=> e* in T

inline uint64_t support_mask(const SignedVec& v) {
    uint64_t m = 0;
    for (size_t c = 0; c < v.size(); ++c)
        if (v[c] != 0) m |= uint64_t(1) << c;
    return m;
}

inline SignedVec negated(SignedVec v) {
    for (int& x : v) x = -x;
    return v;
}

inline SignedVec star_vec(const SignedVec& v) {
    const int n = static_cast<int>(v.size()) / 2;
    SignedVec out(v.size());
    for (int c = 0; c < 2 * n; ++c) out[static_cast<size_t>(coord_star(c, n))] = v[static_cast<size_t>(c)];
    return out;
}

inline int pairing(const SignedVec& c, const SignedVec& d) {
    const int n = static_cast<int>(c.size()) / 2;
    int s = 0;
    for (int i = 0; i < 2 * n; ++i) s += c[static_cast<size_t>(i)] * d[static_cast<size_t>(coord_star(i, n))];
    return s;
}

inline SignedVec reorient_vec(SignedVec v, EdgeSet x) {
    const int n = static_cast<int>(v.size()) / 2;
    for (int e = 1; e <= n; ++e)
        if (edge_in(x, e)) {
            v[static_cast<size_t>(e - 1)] = -v[static_cast<size_t>(e - 1)];
            v[static_cast<size_t>(n + e - 1)] = -v[static_cast<size_t>(n + e - 1)];
        }
    return v;
}

// Canonical order: lexicographic on sorted support ranks, then signs in rank
// order with +1 before -1. Makes every set-valued output deterministic.
inline bool circuit_less(const SignedVec& a, const SignedVec& b) {
    const int n = static_cast<int>(a.size()) / 2;
    for (int r = 0; r < 2 * n; ++r) {
        int ca = elem_coord(elem_of_rank(r), n), cb = ca;
        int va = a[static_cast<size_t>(ca)], vb = b[static_cast<size_t>(cb)];
        if ((va != 0) != (vb != 0)) return va != 0;  // shorter-rank support first
    }
    for (int r = 0; r < 2 * n; ++r) {
        int c = elem_coord(elem_of_rank(r), n);
        int va = a[static_cast<size_t>(c)], vb = b[static_cast<size_t>(c)];
        if (va != vb) return va > vb;  // +1 before -1
    }
    return false;
}

inline bool transversal_has(Transversal t, Elem g) {
    bool starred = (t >> (g.edge - 1)) & 1u;
    return starred == g.starred;
}

inline std::string transversal_name(Transversal t, int n) {
    std::string out;
    for (int e = 1; e <= n; ++e) {
        out += std::to_string(e);
        if ((t >> (e - 1)) & 1u) out += "*";
    }
    return out;
}

class OrthoRep {
public:
    // Construct from the base transversal and the A-matrix indexed by the
    // cobasis B* in edge order.
    OrthoRep(int n, Transversal base, IntMat a) : n_(n), base_(base), a_(std::move(a)) {
        rows_.reserve(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            SignedVec c(static_cast<size_t>(2 * n_), 0);
            Elem x = cobasis_elem(i + 1);
            c[static_cast<size_t>(elem_coord(x, n_))] = 1;
            for (int j = 0; j < n_; ++j) {
                Elem yb = elem_star(cobasis_elem(j + 1));  // in B
                c[static_cast<size_t>(elem_coord(yb, n_))] = static_cast<int>(a_(i, j));
            }
            rows_.push_back(std::move(c));
        }
    }

    int ground_size() const { return n_; }
    Transversal base() const { return base_; }
    const IntMat& a_matrix() const { return a_; }
    // Fundamental circuit C_x for the cobasis element x of edge e, C_x(x)=+1.
    const std::vector<SignedVec>& lambda_rows() const { return rows_; }

    Elem base_elem(int edge) const { return Elem{edge, ((base_ >> (edge - 1)) & 1u) != 0}; }
    Elem cobasis_elem(int edge) const { return elem_star(base_elem(edge)); }

    bool is_basis(Transversal t) const {
        uint32_t s = t ^ base_;
        return pivot_det(s) != 0;
    }

    const std::vector<Transversal>& bases() const {
        if (!bases_) {
            std::vector<Transversal> out;
            for (uint32_t s = 0; s < (1u << n_); ++s)
                if (pivot_det(s) != 0) out.push_back(base_ ^ s);
            std::sort(out.begin(), out.end());
            bases_ = std::move(out);
        }
        return *bases_;
    }

    BigInt basis_count_det() const {
        BigMat m(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(i, j) = a_(i, j) + (i == j ? 1 : 0);
        return det_bareiss(m);
    }

    SignedVec fundamental_circuit(Transversal t, Elem e) const {
        if (!is_basis(t))
            fail(ErrorCode::NotABasis, transversal_name(t, n_) + " is not a basis");
        if (transversal_has(t, e))
            fail(ErrorCode::NotCobasisElement, elem_name(e) + " lies in the basis");
        // Unique vector in the row space with support in T ^ {e,e*} and +1 at e.
        RatMat sys(n_ + 1, n_);
        std::vector<Rat> rhs(static_cast<size_t>(n_ + 1), Rat(0));
        int eq = 0;
        for (int edge = 1; edge <= n_; ++edge) {
            Elem allowed = edge == e.edge ? e : Elem{edge, ((t >> (edge - 1)) & 1u) != 0};
            Elem banned = elem_star(allowed);
            int c = elem_coord(banned, n_);
            for (int i = 0; i < n_; ++i) sys(eq, i) = rows_[static_cast<size_t>(i)][static_cast<size_t>(c)];
            ++eq;
        }
        int ce = elem_coord(e, n_);
        for (int i = 0; i < n_; ++i) sys(eq, i) = rows_[static_cast<size_t>(i)][static_cast<size_t>(ce)];
        rhs[static_cast<size_t>(eq)] = 1;
        auto y = solve_unique(sys, rhs);
        if (!y) fail(ErrorCode::Internal, "fundamental circuit solve failed");
        SignedVec out(static_cast<size_t>(2 * n_), 0);
        for (int c = 0; c < 2 * n_; ++c) {
            Rat acc(0);
            for (int i = 0; i < n_; ++i)
                acc += (*y)[static_cast<size_t>(i)] * rows_[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (denominator(acc) != 1 || abs(numerator(acc)) > 1)
                fail(ErrorCode::Internal, "fundamental circuit is not a signed circuit");
            out[static_cast<size_t>(c)] = static_cast<int>(numerator(acc));
        }
        return out;
    }

    // All signed circuits: fundamental circuits over all bases, deduplicated,
    // closed under negation, canonically sorted.
    const std::vector<SignedVec>& circuits() const {
        if (!circuits_) {
            std::set<SignedVec> acc;
            for (Transversal t : bases())
                for (int edge = 1; edge <= n_; ++edge) {
                    Elem x{edge, !(((t >> (edge - 1)) & 1u) != 0)};
                    SignedVec c = fundamental_circuit(t, x);
                    acc.insert(c);
                    acc.insert(negated(c));
                }
            std::vector<SignedVec> out(acc.begin(), acc.end());
            std::sort(out.begin(), out.end(), circuit_less);
            // Same support forces equality up to global sign in a regular rep.
            std::map<uint64_t, SignedVec> by_supp;
            for (const auto& c : out) {
                auto [it, fresh] = by_supp.emplace(support_mask(c), c);
                if (!fresh && it->second != c && it->second != negated(c))
                    fail(ErrorCode::Internal, "two circuits share a support without matching signs");
            }
            circuits_ = std::move(out);
        }
        return *circuits_;
    }

    OrthoRep reorient(EdgeSet x) const {
        IntMat a2(n_, n_);
        std::vector<SignedVec> rows2;
        for (int i = 0; i < n_; ++i) {
            SignedVec r = reorient_vec(rows_[static_cast<size_t>(i)], x);
            Elem xe = cobasis_elem(i + 1);
            if (r[static_cast<size_t>(elem_coord(xe, n_))] < 0) r = negated(r);
            rows2.push_back(std::move(r));
        }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                Elem yb = elem_star(cobasis_elem(j + 1));
                a2(i, j) = rows2[static_cast<size_t>(i)][static_cast<size_t>(elem_coord(yb, n_))];
            }
        return OrthoRep(n_, base_, std::move(a2));
    }

private:
    BigInt pivot_det(uint32_t s) const {
        std::vector<int> idx;
        for (int i = 0; i < n_; ++i)
            if ((s >> i) & 1u) idx.push_back(i);
        BigMat sub(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c)
                sub(static_cast<int>(r), static_cast<int>(c)) = a_(idx[r], idx[c]);
        return det_bareiss(sub);
    }

    int n_;
    Transversal base_;
    IntMat a_;
    std::vector<SignedVec> rows_;
    mutable std::optional<std::vector<Transversal>> bases_;
    mutable std::optional<std::vector<SignedVec>> circuits_;
};

inline OrthoRep rep_from_quasi_tree(const RibbonGraph& g, EdgeSet q) {
    InterlacementMatrix im = interlacement_matrix(g, q);  // raises NotQuasiTree
    Transversal base = static_cast<Transversal>(~q) & full_edge_set(g.edge_count());
    return OrthoRep(g.edge_count(), base, im.a);
}

inline OrthoRep rep_from_pu_matrix(const IntMat& a, Transversal base, bool spot_check_only = false) {
    const int n = a.rows();
    if (a.cols() != n) fail(ErrorCode::NotSkewSymmetric, "matrix is not square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != -a(j, i))
                fail(ErrorCode::NotSkewSymmetric,
                     "entry (" + std::to_string(i) + "," + std::to_string(j) + ") breaks skew-symmetry");
    if (n <= 12 && !spot_check_only) {
        std::string witness;
        if (!principally_unimodular(a, &witness)) fail(ErrorCode::NotPU, witness);
    }
    return OrthoRep(n, base, a);
}

// --- Restriction -------------------------------------------------------------

// Regular representation of the matroid of circuits inside a subtransversal.
struct RestrictedRep {
    int n;                          // ambient ground size
    uint64_t coords;                // coordinate mask of S
    std::vector<SignedVec> circuits;  // full-length vectors, supports in S
};

inline RestrictedRep restrict(const OrthoRep& rep, uint64_t s_mask) {
    const int n = rep.ground_size();
    for (int e = 0; e < n; ++e)
        if ((s_mask >> e) & (s_mask >> (n + e)) & 1u)
            fail(ErrorCode::NotSubtransversal, "skew pair " + std::to_string(e + 1) + ", " +
                                                   std::to_string(e + 1) + "* both present");
    RestrictedRep out{n, s_mask, {}};
    for (const auto& c : rep.circuits())
        if ((support_mask(c) & ~s_mask) == 0) out.circuits.push_back(c);
    return out;
}

// --- Fourientations ----------------------------------------------------------

// Per element a subset of {+1,-1}: bit0 allows +1, bit1 allows -1.
struct Fourientation {
    int n = 0;
    std::vector<uint8_t> f;  // size 2n, coordinate layout

    static constexpr uint8_t kNone = 0, kPlus = 1, kMinus = 2, kBoth = 3;

    static Fourientation all(int n, uint8_t v) {
        return Fourientation{n, std::vector<uint8_t>(static_cast<size_t>(2 * n), v)};
    }

    uint8_t at(Elem g) const { return f[static_cast<size_t>(elem_coord(g, n))]; }
    void set(Elem g, uint8_t v) { f[static_cast<size_t>(elem_coord(g, n))] = v; }

    Fourientation operator-() const {
        Fourientation out = *this;
        for (auto& v : out.f) v = static_cast<uint8_t>(((v & 1) << 1) | ((v >> 1) & 1));
        return out;
    }

    Fourientation intersect(const Fourientation& o) const {
        Fourientation out = *this;
        for (size_t i = 0; i < f.size(); ++i) out.f[i] = f[i] & o.f[i];
        return out;
    }

    bool contains(const SignedVec& c) const {
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] > 0 && !(f[i] & kPlus)) return false;
            if (c[i] < 0 && !(f[i] & kMinus)) return false;
        }
        return true;
    }

    bool is_positive() const {
        for (int e = 1; e <= n; ++e) {
            uint8_t fe = at(Elem{e, false});
            uint8_t fs = at(Elem{e, true});
            uint8_t neg_fs = static_cast<uint8_t>(((fs & 1) << 1) | ((fs >> 1) & 1));
            if (fe != (kBoth & ~neg_fs)) return false;
        }
        return true;
    }

    bool is_negative() const {
        for (int e = 1; e <= n; ++e) {
            uint8_t fe = at(Elem{e, false});
            uint8_t fs = at(Elem{e, true});
            if (fe != (kBoth & ~fs)) return false;
        }
        return true;
    }
};

inline std::optional<SignedVec> contains_circuit(const OrthoRep& rep, const Fourientation& f) {
    for (const auto& c : rep.circuits())
        if (f.contains(c)) return c;
    return std::nullopt;
}

struct FarkasResult {
    Elem side;
    SignedVec witness;
};

inline FarkasResult farkas(const OrthoRep& rep, const Fourientation& f, int edge) {
    if (!f.is_positive() && !f.is_negative())
        fail(ErrorCode::NotHalfFourientation, "fourientation is neither positive nor negative");
    uint8_t fe = f.at(Elem{edge, false});
    if (fe != Fourientation::kPlus && fe != Fourientation::kMinus)
        fail(ErrorCode::NotHalfFourientation, "edge " + std::to_string(edge) + " is not singly oriented");
    const int n = rep.ground_size();
    std::optional<SignedVec> at_e, at_star;
    for (const auto& c : rep.circuits()) {
        if (!f.contains(c)) continue;
        if (!at_e && c[static_cast<size_t>(edge - 1)] != 0) at_e = c;
        if (!at_star && c[static_cast<size_t>(n + edge - 1)] != 0) at_star = c;
    }
    if (at_e && at_star) fail(ErrorCode::Internal, "farkas exclusivity violated");
    if (at_e) return FarkasResult{Elem{edge, false}, *at_e};
    if (at_star) return FarkasResult{Elem{edge, true}, *at_star};
    fail(ErrorCode::Internal, "farkas witness not found");
}

// --- Axiom validation --------------------------------------------------------

struct AxiomCheck {
    std::string id;
    bool pass;
    std::string witness;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Exhaustive validation of (B), (C1)-(C5) and the pairing condition.
inline AxiomReport validate_axioms(const OrthoRep& rep) {
    const int n = rep.ground_size();
    if (n > 10) fail(ErrorCode::TooLarge, "axiom validation is exhaustive and gated at n <= 10");
    AxiomReport rep_out;
    auto add = [&](const std::string& id, bool pass, const std::string& w) {
        rep_out.checks.push_back(AxiomCheck{id, pass, pass ? "" : w});
    };
    const auto& circuits = rep.circuits();
    const auto& bases = rep.bases();

    {  // pairing <C,D> = 0
        bool ok = true;
        std::string w;
        for (size_t i = 0; i < circuits.size() && ok; ++i)
            for (size_t j = i; j < circuits.size() && ok; ++j)
                if (pairing(circuits[i], circuits[j]) != 0) {
                    ok = false;
                    w = "circuit pair " + std::to_string(i) + "," + std::to_string(j);
                }
        add("pairing-zero", ok, w);
    }
    std::vector<uint64_t> supps;
    for (const auto& c : circuits) supps.push_back(support_mask(c));
    {  // (C1)
        bool ok = true;
        for (const auto& c : circuits)
            if (support_mask(c) == 0) ok = false;
        add("c1-nonempty", ok, "empty circuit present");
    }
    {  // (C2)
        bool ok = true;
        std::string w;
        for (size_t i = 0; i < supps.size() && ok; ++i)
            for (size_t j = 0; j < supps.size() && ok; ++j)
                if (supps[i] != supps[j] && (supps[i] & ~supps[j]) == 0) {
                    ok = false;
                    w = "nested circuit supports";
                }
        add("c2-minimal", ok, w);
    }
    auto is_subtransversal = [n](uint64_t m) {
        for (int e = 0; e < n; ++e)
            if (((m >> e) & 1u) && ((m >> (n + e)) & 1u)) return false;
        return true;
    };
    {  // (C3) elimination
        bool ok = true;
        std::string w;
        for (size_t i = 0; i < supps.size() && ok; ++i)
            for (size_t j = 0; j < supps.size() && ok; ++j) {
                if (supps[i] == supps[j]) continue;
                uint64_t uni = supps[i] | supps[j];
                uint64_t common = supps[i] & supps[j];
                if (!common || !is_subtransversal(uni)) continue;
                for (int c = 0; c < 2 * n && ok; ++c) {
                    if (!((common >> c) & 1u)) continue;
                    bool found = false;
                    for (uint64_t s3 : supps)
                        if ((s3 & ~(uni & ~(uint64_t(1) << c))) == 0) { found = true; break; }
                    if (!found) {
                        ok = false;
                        w = "no elimination for circuits " + std::to_string(i) + "," + std::to_string(j);
                    }
                }
            }
        add("c3-elimination", ok, w);
    }
    {  // (C4) |C1 n C2*| != 1
        bool ok = true;
        std::string w;
        auto star_mask = [n](uint64_t m) {
            uint64_t lo = m & ((uint64_t(1) << n) - 1);
            return (m >> n) | (lo << n);
        };
        for (size_t i = 0; i < supps.size() && ok; ++i)
            for (size_t j = 0; j < supps.size() && ok; ++j) {
                uint64_t inter = supps[i] & star_mask(supps[j]);
                int cnt = 0;
                for (; inter; inter &= inter - 1) ++cnt;
                if (cnt == 1) {
                    ok = false;
                    w = "skew intersection of size 1 between circuits " + std::to_string(i) + "," +
                        std::to_string(j);
                }
            }
        add("c4-skew-intersection", ok, w);
    }
    {  // (C5): every transversal T and e in T* admit a circuit inside T u {e}
        bool ok = true;
        std::string w;
        for (uint32_t t = 0; t < (1u << n) && ok; ++t) {
            uint64_t tmask = 0;
            for (int e = 0; e < n; ++e)
                tmask |= uint64_t(1) << (((t >> e) & 1u) ? n + e : e);
            for (int e = 0; e < n && ok; ++e) {
                int starc = ((t >> e) & 1u) ? e : n + e;  // element of T*
                uint64_t allowed = tmask | (uint64_t(1) << starc);
                bool found = false;
                for (uint64_t s : supps)
                    if ((s & ~allowed) == 0) { found = true; break; }
                if (!found) {
                    ok = false;
                    w = "no circuit in " + transversal_name(t, n) + " + cobasis element of edge " +
                        std::to_string(e + 1);
                }
            }
        }
        add("c5-spanning", ok, w);
    }
    {  // (B) symmetric exchange
        bool ok = true;
        std::string w;
        for (Transversal b1 : bases)
            for (Transversal b2 : bases) {
                uint32_t diff = b1 ^ b2;
                for (int e = 0; e < n && ok; ++e) {
                    if (!((diff >> e) & 1u)) continue;
                    bool found = false;
                    for (int f = 0; f < n; ++f) {
                        if (f == e || !((diff >> f) & 1u)) continue;
                        Transversal b3 = b1 ^ (1u << e) ^ (1u << f);
                        if (rep.is_basis(b3)) { found = true; break; }
                    }
                    if (!found) {
                        ok = false;
                        w = "no exchange for " + transversal_name(b1, n) + " vs " +
                            transversal_name(b2, n) + " at edge " + std::to_string(e + 1);
                    }
                }
            }
        add("b-symmetric-exchange", ok, w);
    }
    return rep_out;
}

// Brute-force circuit oracle: minimal dependent subtransversals with signs
// solved from the row space. Independent of the fundamental-circuit path;
// used by tests for cross-validation (n <= 8).
inline std::vector<SignedVec> circuits_brute_force(const OrthoRep& rep) {
    const int n = rep.ground_size();
    const auto& bases = rep.bases();
    std::vector<uint64_t> basis_masks;
    for (Transversal t : bases) {
        uint64_t m = 0;
        for (int e = 0; e < n; ++e) m |= uint64_t(1) << (((t >> e) & 1u) ? n + e : e);
        basis_masks.push_back(m);
    }
    // Enumerate subtransversals: per edge choose absent / plain / starred.
    std::vector<uint64_t> dependent;
    std::vector<int> choice(static_cast<size_t>(n), 0);
    while (true) {
        uint64_t m = 0;
        for (int e = 0; e < n; ++e)
            if (choice[static_cast<size_t>(e)] == 1)
                m |= uint64_t(1) << e;
            else if (choice[static_cast<size_t>(e)] == 2)
                m |= uint64_t(1) << (n + e);
        if (m) {
            bool indep = false;
            for (uint64_t b : basis_masks)
                if ((m & ~b) == 0) { indep = true; break; }
            if (!indep) dependent.push_back(m);
        }
        int i = 0;
        for (; i < n; ++i) {
            if (++choice[static_cast<size_t>(i)] < 3) break;
            choice[static_cast<size_t>(i)] = 0;
        }
        if (i == n) break;
    }
    std::vector<uint64_t> minimal;
    for (uint64_t m : dependent) {
        bool min = true;
        for (uint64_t o : dependent)
            if (o != m && (o & ~m) == 0) { min = false; break; }
        if (min) minimal.push_back(m);
    }
    // Solve for the signed vector with each minimal support from the row space.
    std::vector<SignedVec> out;
    const auto& rows = rep.lambda_rows();
    for (uint64_t m : minimal) {
        int anchor = -1;
        for (int c = 0; c < 2 * n; ++c)
            if ((m >> c) & 1u) { anchor = c; break; }
        std::vector<int> zero_coords;
        for (int c = 0; c < 2 * n; ++c)
            if (!((m >> c) & 1u)) zero_coords.push_back(c);
        RatMat sys(static_cast<int>(zero_coords.size()) + 1, n);
        std::vector<Rat> rhs(zero_coords.size() + 1, Rat(0));
        for (size_t q = 0; q < zero_coords.size(); ++q)
            for (int i = 0; i < n; ++i)
                sys(static_cast<int>(q), i) = rows[static_cast<size_t>(i)][static_cast<size_t>(zero_coords[q])];
        for (int i = 0; i < n; ++i)
            sys(static_cast<int>(zero_coords.size()), i) = rows[static_cast<size_t>(i)][static_cast<size_t>(anchor)];
        rhs[zero_coords.size()] = 1;
        auto y = solve_unique(sys, rhs);
        if (!y) fail(ErrorCode::Internal, "brute-force circuit solve failed");
        SignedVec c(static_cast<size_t>(2 * n), 0);
        for (int cc = 0; cc < 2 * n; ++cc) {
            Rat acc(0);
            for (int i = 0; i < n; ++i) acc += (*y)[static_cast<size_t>(i)] * rows[static_cast<size_t>(i)][static_cast<size_t>(cc)];
            if (denominator(acc) != 1 || abs(numerator(acc)) > 1)
                fail(ErrorCode::Internal, "brute-force circuit is not a signed circuit");
            c[static_cast<size_t>(cc)] = static_cast<int>(numerator(acc));
        }
        if (support_mask(c) != m) fail(ErrorCode::Internal, "brute-force support mismatch");
        out.push_back(c);
        out.push_back(negated(c));
    }
    std::sort(out.begin(), out.end(), circuit_less);
    return out;
}

}  // namespace quasitor
