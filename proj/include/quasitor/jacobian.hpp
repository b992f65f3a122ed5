#pragma once

// Jacobian group Jac(C) = Z^E / <pi(C)>, circuit reversal classes, the
// simply transitive action, defect-descent reduction and the psi lift.
//
// Orientations live in {+1/2,-1/2}^E. All half-integer data is stored
// doubled: an Orientation is a vector of +-1, a defect vector has odd
// integer entries, psi values are {0,+-1}.

#include "quasitor/orthomat.hpp"

#include <string>

namespace quasitor {

using Orientation = std::vector<int>;   // doubled: entries +-1
using DefectVec = std::vector<int>;     // doubled: odd entries
using JacElem = std::vector<long long>; // canonical coset representative in Z^E

inline std::vector<int> project_pi(const SignedVec& v) {
    const int n = static_cast<int>(v.size()) / 2;
    std::vector<int> out(static_cast<size_t>(n));
    for (int e = 0; e < n; ++e) out[static_cast<size_t>(e)] = v[static_cast<size_t>(e)] + v[static_cast<size_t>(n + e)];
    return out;
}

inline std::string orientation_string(const Orientation& o) {
    std::string s;
    for (int v : o) s += v > 0 ? '+' : '-';
    return s;
}

inline Orientation orientation_from_string(const std::string& s) {
    Orientation o;
    for (char c : s) o.push_back(c == '+' ? 1 : -1);
    return o;
}

inline int defect(const DefectVec& vd) {
    int d = 0;
    for (int x : vd) d += (std::abs(x) - 1) / 2;
    return d;
}

class JacGroup {
public:
    explicit JacGroup(const OrthoRep& rep) : n_(rep.ground_size()) {
        std::vector<std::vector<BigInt>> gens;
        for (const auto& row : rep.lambda_rows()) {
            auto p = project_pi(row);
            gens.emplace_back(p.begin(), p.end());
        }
        hnf_ = hermite_row_basis(std::move(gens), n_);
        if (hnf_.rows() != n_) fail(ErrorCode::Internal, "pi-lattice is not full rank");
        order_ = 1;
        for (int i = 0; i < n_; ++i) order_ *= hnf_(i, i);
        BigMat gm(n_, n_);
        for (int i = 0; i < n_; ++i) {
            auto p = project_pi(rep.lambda_rows()[static_cast<size_t>(i)]);
            for (int j = 0; j < n_; ++j) gm(i, j) = p[static_cast<size_t>(j)];
        }
        invariants_ = smith_invariant_factors(gm);
    }

    int ground_size() const { return n_; }
    const BigInt& order() const { return order_; }
    const std::vector<BigInt>& invariants() const { return invariants_; }

    std::vector<BigInt> nontrivial_invariants() const {
        std::vector<BigInt> out;
        for (const auto& d : invariants_)
            if (d != 1) out.push_back(d);
        return out;
    }

    // Canonical coset representative via the Hermite basis.
    JacElem reduce(const std::vector<long long>& v) const {
        std::vector<BigInt> w(v.begin(), v.end());
        for (int i = 0; i < n_; ++i) {
            BigInt q = w[static_cast<size_t>(i)] / hnf_(i, i);
            if (w[static_cast<size_t>(i)] < 0 && w[static_cast<size_t>(i)] % hnf_(i, i) != 0) q -= 1;
            if (q != 0)
                for (int j = i; j < n_; ++j) w[static_cast<size_t>(j)] -= q * hnf_(i, j);
        }
        JacElem out(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) out[static_cast<size_t>(i)] = static_cast<long long>(w[static_cast<size_t>(i)]);
        return out;
    }

    bool in_lattice(const std::vector<long long>& v) const {
        for (long long x : reduce(v))
            if (x != 0) return false;
        return true;
    }

    bool equivalent(const std::vector<long long>& a, const std::vector<long long>& b) const {
        std::vector<long long> d(a.size());
        for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
        return in_lattice(d);
    }

    // All canonical representatives, deterministic order (mixed radix over the
    // Hermite pivots).
    std::vector<JacElem> elements() const {
        std::vector<JacElem> out;
        JacElem cur(static_cast<size_t>(n_), 0);
        while (true) {
            out.push_back(cur);
            int i = n_ - 1;
            for (; i >= 0; --i) {
                if (BigInt(++cur[static_cast<size_t>(i)]) < hnf_(i, i)) break;
                cur[static_cast<size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
        return out;
    }

    const BigMat& hermite_basis() const { return hnf_; }

private:
    int n_;
    BigMat hnf_;
    BigInt order_;
    std::vector<BigInt> invariants_;
};

// --- Reversal classes --------------------------------------------------------

inline uint32_t orientation_bits(const Orientation& o) {
    uint32_t b = 0;
    for (size_t e = 0; e < o.size(); ++e)
        if (o[e] > 0) b |= 1u << e;
    return b;
}

inline Orientation orientation_of_bits(uint32_t b, int n) {
    Orientation o(static_cast<size_t>(n));
    for (int e = 0; e < n; ++e) o[static_cast<size_t>(e)] = (b >> e) & 1u ? 1 : -1;
    return o;
}

class ReversalSystem {
public:
    explicit ReversalSystem(const OrthoRep& rep) : n_(rep.ground_size()) {
        if (n_ > 16) fail(ErrorCode::TooLarge, "reversal classes are materialized only for n <= 16");
        const uint32_t total = 1u << n_;
        std::vector<uint32_t> parent(total);
        for (uint32_t i = 0; i < total; ++i) parent[i] = i;
        std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& c : rep.circuits()) {
            auto p = project_pi(c);
            uint32_t pmask = 0, mmask = 0;
            for (int e = 0; e < n_; ++e) {
                if (p[static_cast<size_t>(e)] > 0) pmask |= 1u << e;
                if (p[static_cast<size_t>(e)] < 0) mmask |= 1u << e;
            }
            uint32_t supp = pmask | mmask;
            for (uint32_t o = 0; o < total; ++o)
                if ((o & supp) == mmask) {  // O + pi(C) stays an orientation
                    uint32_t a = find(o), b = find(o ^ supp);
                    if (a != b) parent[a] = b;
                }
        }
        std::map<uint32_t, std::vector<uint32_t>> groups;
        for (uint32_t o = 0; o < total; ++o) groups[find(o)].push_back(o);
        auto str_less = [this](uint32_t a, uint32_t b) {
            return orientation_string(orientation_of_bits(a, n_)) <
                   orientation_string(orientation_of_bits(b, n_));
        };
        for (auto& [root, members] : groups) {
            std::sort(members.begin(), members.end(), str_less);
            classes_.push_back(members);
        }
        std::sort(classes_.begin(), classes_.end(),
                  [&](const auto& a, const auto& b) { return str_less(a[0], b[0]); });
        class_of_.assign(total, -1);
        for (size_t k = 0; k < classes_.size(); ++k)
            for (uint32_t o : classes_[k]) class_of_[o] = static_cast<int>(k);
    }

    int ground_size() const { return n_; }
    int count() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<uint32_t>>& classes() const { return classes_; }
    int class_of(const Orientation& o) const { return class_of_[orientation_bits(o)]; }
    Orientation representative(int k) const {
        return orientation_of_bits(classes_[static_cast<size_t>(k)][0], n_);
    }
    std::vector<Orientation> members(int k) const {
        std::vector<Orientation> out;
        for (uint32_t b : classes_[static_cast<size_t>(k)]) out.push_back(orientation_of_bits(b, n_));
        return out;
    }

private:
    int n_;
    std::vector<std::vector<uint32_t>> classes_;
    std::vector<int> class_of_;
};

// --- Defect descent ----------------------------------------------------------

struct ReductionTrace {
    std::vector<int> defects;  // strictly decreasing, ends at 0
    std::vector<SignedVec> circuits_used;
};

// Reduce a half-integer vector to an equivalent orientation by strict defect
// descent. Deterministic: smallest offending index, canonically first circuit.
inline Orientation reduce_to_orientation(const OrthoRep& rep, DefectVec vd,
                                         ReductionTrace* trace = nullptr) {
    const int n = rep.ground_size();
    for (int x : vd)
        if ((x & 1) == 0) fail(ErrorCode::Internal, "defect vector must be half-integral");
    if (trace) trace->defects.push_back(defect(vd));
    while (defect(vd) > 0) {
        int i = -1;
        for (int e = 0; e < n; ++e)
            if (std::abs(vd[static_cast<size_t>(e)]) > 1) { i = e; break; }
        std::vector<int> f(static_cast<size_t>(n));
        for (int e = 0; e < n; ++e) f[static_cast<size_t>(e)] = vd[static_cast<size_t>(e)] < 0 ? 1 : -1;
        const SignedVec* chosen = nullptr;
        for (const auto& c : rep.circuits()) {
            auto p = project_pi(c);
            if (p[static_cast<size_t>(i)] != f[static_cast<size_t>(i)]) continue;
            bool ok = true;
            for (int e = 0; e < n && ok; ++e)
                if (p[static_cast<size_t>(e)] != 0 && p[static_cast<size_t>(e)] != f[static_cast<size_t>(e)]) ok = false;
            if (ok) { chosen = &c; break; }
        }
        if (!chosen) fail(ErrorCode::Internal, "no descent circuit found");
        auto p = project_pi(*chosen);
        int before = defect(vd);
        for (int e = 0; e < n; ++e) vd[static_cast<size_t>(e)] += 2 * p[static_cast<size_t>(e)];
        if (defect(vd) >= before) fail(ErrorCode::Internal, "defect did not decrease");
        if (trace) {
            trace->defects.push_back(defect(vd));
            trace->circuits_used.push_back(*chosen);
        }
    }
    return vd;
}

// The canonical action of Jac(C) on reversal classes.
inline int act(const OrthoRep& rep, const ReversalSystem& sys, const JacElem& g, int class_idx) {
    Orientation o = sys.representative(class_idx);
    DefectVec vd(o.begin(), o.end());
    for (size_t e = 0; e < vd.size(); ++e) vd[e] += 2 * static_cast<int>(g[e]);
    Orientation res = reduce_to_orientation(rep, std::move(vd));
    return sys.class_of(res);
}

// --- Compatibility, psi lift, difference decomposition -----------------------

inline bool compatible(const SignedVec& c, const Orientation& od) {
    auto p = project_pi(c);
    for (size_t e = 0; e < p.size(); ++e)
        if (p[e] != 0 && p[e] * od[e] <= 0) return false;
    return true;
}

inline std::vector<SignedVec> compatible_circuits(const OrthoRep& rep, const Orientation& od) {
    std::vector<SignedVec> out;
    for (const auto& c : rep.circuits())
        if (compatible(c, od)) out.push_back(c);
    return out;
}

// psi(O): the unique lift of O with transversal support, doubled values.
inline std::vector<int> psi_lift(const OrthoRep& rep, const Orientation& od) {
    const int n = rep.ground_size();
    std::vector<int> out(static_cast<size_t>(2 * n), 0);
    auto comp = compatible_circuits(rep, od);
    for (int e = 0; e < n; ++e) {
        bool at_e = false, at_star = false;
        for (const auto& c : comp) {
            if (c[static_cast<size_t>(e)] != 0) at_e = true;
            if (c[static_cast<size_t>(n + e)] != 0) at_star = true;
        }
        if (at_e && at_star) fail(ErrorCode::Internal, "psi case dichotomy violated");
        if (at_e)
            out[static_cast<size_t>(e)] = od[static_cast<size_t>(e)];
        else
            out[static_cast<size_t>(n + e)] = od[static_cast<size_t>(e)];
    }
    return out;
}

// If O2 - O1 lies in <pi(C)>, return signed circuits with disjoint supports,
// union a subtransversal, whose pi-images sum to O2 - O1.
inline std::optional<std::vector<SignedVec>> decompose_difference(const OrthoRep& rep,
                                                                  const Orientation& o1,
                                                                  const Orientation& o2) {
    const int n = rep.ground_size();
    std::vector<Rat> w(static_cast<size_t>(n));
    for (int e = 0; e < n; ++e) w[static_cast<size_t>(e)] = Rat((o2[static_cast<size_t>(e)] - o1[static_cast<size_t>(e)]) / 2);
    // Solve y . P = w where P rows are pi(lambda rows).
    RatMat pt(n, n);
    for (int i = 0; i < n; ++i) {
        auto p = project_pi(rep.lambda_rows()[static_cast<size_t>(i)]);
        for (int j = 0; j < n; ++j) pt(j, i) = p[static_cast<size_t>(j)];
    }
    auto y = solve_unique(pt, w);
    if (!y) return std::nullopt;
    for (const auto& yi : *y)
        if (denominator(yi) != 1) return std::nullopt;  // not in the lattice
    SignedVec v(static_cast<size_t>(2 * n), 0);
    for (int c = 0; c < 2 * n; ++c) {
        Rat acc(0);
        for (int i = 0; i < n; ++i)
            acc += (*y)[static_cast<size_t>(i)] * rep.lambda_rows()[static_cast<size_t>(i)][static_cast<size_t>(c)];
        if (denominator(acc) != 1 || abs(numerator(acc)) > 1)
            fail(ErrorCode::Internal, "difference vector is not (0,+-1)");
        v[static_cast<size_t>(c)] = static_cast<int>(numerator(acc));
    }
    uint64_t smask = support_mask(v);
    for (int e = 0; e < n; ++e)
        if (((smask >> e) & 1u) && ((smask >> (n + e)) & 1u))
            fail(ErrorCode::Internal, "difference support is not a subtransversal");
    // Peel off conformal circuits; supports stay disjoint.
    std::vector<SignedVec> parts;
    while (support_mask(v) != 0) {
        const SignedVec* found = nullptr;
        for (const auto& c : rep.circuits()) {
            uint64_t cm = support_mask(c);
            if ((cm & ~support_mask(v)) != 0) continue;
            bool conformal = true;
            for (int cc = 0; cc < 2 * n && conformal; ++cc)
                if (c[static_cast<size_t>(cc)] != 0 && c[static_cast<size_t>(cc)] != v[static_cast<size_t>(cc)]) conformal = false;
            if (conformal) { found = &c; break; }
        }
        if (!found) fail(ErrorCode::Internal, "conformal decomposition stuck");
        parts.push_back(*found);
        for (int cc = 0; cc < 2 * n; ++cc) v[static_cast<size_t>(cc)] -= (*found)[static_cast<size_t>(cc)];
    }
    return parts;
}

}  // namespace quasitor
