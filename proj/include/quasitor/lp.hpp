#pragma once

// Exact rational linear programming: a dense two-phase simplex with Bland's
// rule, plus a Fourier-Motzkin feasibility check used as an independent
// cross-check for small strict systems.

#include "quasitor/exact.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace quasitor {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status;
    Rat objective;        // value of c.x at the optimum
    std::vector<Rat> x;
};

namespace detail {

// Simplex on: minimize c.x st T x = b, x >= 0, given a starting basis whose
// tableau is already in canonical (identity-on-basis) form.
inline LpStatus simplex_iterate(RatMat& t, std::vector<Rat>& b, const std::vector<Rat>& c,
                                std::vector<int>& basis) {
    const int m = t.rows(), nv = t.cols();
    while (true) {
        // Reduced costs under Bland's rule.
        std::vector<Rat> cb(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) cb[static_cast<size_t>(i)] = c[static_cast<size_t>(basis[static_cast<size_t>(i)])];
        int enter = -1;
        for (int j = 0; j < nv && enter < 0; ++j) {
            Rat r = c[static_cast<size_t>(j)];
            for (int i = 0; i < m; ++i) r -= cb[static_cast<size_t>(i)] * t(i, j);
            if (r < 0) enter = j;
        }
        if (enter < 0) return LpStatus::Optimal;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) continue;
            Rat ratio = b[static_cast<size_t>(i)] / t(i, enter);
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)]))
                { leave = i; best = ratio; }
        }
        if (leave < 0) return LpStatus::Unbounded;
        Rat piv = t(leave, enter);
        for (int j = 0; j < nv; ++j) t(leave, j) /= piv;
        b[static_cast<size_t>(leave)] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t(i, enter) == 0) continue;
            Rat f = t(i, enter);
            for (int j = 0; j < nv; ++j) t(i, j) -= f * t(leave, j);
            b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(leave)];
        }
        basis[static_cast<size_t>(leave)] = enter;
    }
}

}  // namespace detail

// General two-phase solver for: minimize c.x st A x = b, x >= 0.
inline LpResult lp_solve(const RatMat& a, std::vector<Rat> b, std::vector<Rat> c) {
    const int m = a.rows(), n = a.cols();
    RatMat t(m, n + m);
    for (int i = 0; i < m; ++i) {
        int sign = b[static_cast<size_t>(i)] < 0 ? -1 : 1;
        for (int j = 0; j < n; ++j) t(i, j) = sign * a(i, j);
        if (sign < 0) b[static_cast<size_t>(i)] = -b[static_cast<size_t>(i)];
        t(i, n + i) = 1;  // artificial
    }
    std::vector<int> basis(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;
    std::vector<Rat> phase1(static_cast<size_t>(n + m), Rat(0));
    for (int i = 0; i < m; ++i) phase1[static_cast<size_t>(n + i)] = 1;
    detail::simplex_iterate(t, b, phase1, basis);
    Rat art_sum(0);
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<size_t>(i)] >= n) art_sum += b[static_cast<size_t>(i)];
    if (art_sum != 0) return LpResult{LpStatus::Infeasible, Rat(0), {}};
    // Pivot lingering artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (basis[static_cast<size_t>(i)] < n) continue;
        int enter = -1;
        for (int j = 0; j < n && enter < 0; ++j)
            if (t(i, j) != 0) enter = j;
        if (enter < 0) continue;  // redundant row
        Rat piv = t(i, enter);
        for (int j = 0; j < n + m; ++j) t(i, j) /= piv;
        b[static_cast<size_t>(i)] /= piv;
        for (int r = 0; r < m; ++r) {
            if (r == i || t(r, enter) == 0) continue;
            Rat f = t(r, enter);
            for (int j = 0; j < n + m; ++j) t(r, j) -= f * t(i, j);
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(i)];
        }
        basis[static_cast<size_t>(i)] = enter;
    }
    // Phase 2 with artificial columns priced out of reach.
    c.resize(static_cast<size_t>(n + m), Rat(0));
    RatMat t2(m, n);
    std::vector<Rat> c2(c.begin(), c.begin() + n);
    bool artificial_basis = false;
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<size_t>(i)] >= n) artificial_basis = true;
    if (!artificial_basis) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) t2(i, j) = t(i, j);
        detail::simplex_iterate(t2, b, c2, basis);
        LpResult res{LpStatus::Optimal, Rat(0), std::vector<Rat>(static_cast<size_t>(n), Rat(0))};
        for (int i = 0; i < m; ++i) res.x[static_cast<size_t>(basis[static_cast<size_t>(i)])] = b[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) res.objective += c2[static_cast<size_t>(j)] * res.x[static_cast<size_t>(j)];
        return res;
    }
    // Degenerate leftover artificial rows are all-zero on real columns: drop them.
    std::vector<int> keep;
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<size_t>(i)] < n) keep.push_back(i);
    RatMat t3(static_cast<int>(keep.size()), n);
    std::vector<Rat> b3;
    std::vector<int> basis3;
    for (size_t k = 0; k < keep.size(); ++k) {
        for (int j = 0; j < n; ++j) t3(static_cast<int>(k), j) = t(keep[k], j);
        b3.push_back(b[static_cast<size_t>(keep[k])]);
        basis3.push_back(basis[static_cast<size_t>(keep[k])]);
    }
    LpStatus st = detail::simplex_iterate(t3, b3, c2, basis3);
    if (st == LpStatus::Unbounded) return LpResult{LpStatus::Unbounded, Rat(0), {}};
    LpResult res{LpStatus::Optimal, Rat(0), std::vector<Rat>(static_cast<size_t>(n), Rat(0))};
    for (size_t k = 0; k < basis3.size(); ++k) res.x[static_cast<size_t>(basis3[k])] = b3[k];
    for (int j = 0; j < n; ++j) res.objective += c2[static_cast<size_t>(j)] * res.x[static_cast<size_t>(j)];
    return res;
}

// Strict homogeneous feasibility by Fourier-Motzkin elimination: does some x
// satisfy row.x > 0 for every row? Exponential; for small cross-checks only.
inline bool fourier_motzkin_strict_feasible(std::vector<std::vector<Rat>> rows) {
    if (rows.empty()) return true;
    size_t nv = rows[0].size();
    auto normalize = [](std::vector<Rat>& r) {
        Rat scale(0);
        for (const auto& x : r)
            if (x != 0) { scale = abs(x); break; }
        if (scale != 0)
            for (auto& x : r) x /= scale;
    };
    for (size_t var = 0; var < nv; ++var) {
        std::vector<std::vector<Rat>> pos, neg, zero;
        for (auto& r : rows) {
            if (r[var] > 0)
                pos.push_back(r);
            else if (r[var] < 0)
                neg.push_back(r);
            else
                zero.push_back(r);
        }
        std::set<std::vector<Rat>> next(zero.begin(), zero.end());
        for (const auto& p : pos)
            for (const auto& q : neg) {
                std::vector<Rat> comb(nv, Rat(0));
                for (size_t j = 0; j < nv; ++j) comb[j] = p[j] * (-q[var]) + q[j] * p[var];
                normalize(comb);
                next.insert(comb);
            }
        rows.assign(next.begin(), next.end());
        for (const auto& r : rows) {
            bool all_zero = true;
            for (const auto& x : r)
                if (x != 0) { all_zero = false; break; }
            if (all_zero) return false;  // derived 0 > 0
        }
    }
    return true;
}

}  // namespace quasitor
