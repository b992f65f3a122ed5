#pragma once

// Exact integer and rational linear algebra at desk scale.
// All group-theoretic quantities in this library are computed over Z or Q;
// no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace quasitor {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, T fill = T(0))
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const Matrix& o) const = default;

    std::vector<T> row(int r) const {
        std::vector<T> out(cols_);
        for (int c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
        return out;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> a_;
};

using IntMat = Matrix<long long>;
using BigMat = Matrix<BigInt>;
using RatMat = Matrix<Rat>;

inline BigMat to_big(const IntMat& m) {
    BigMat out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

// Fraction-free determinant (Bareiss).
inline BigInt det_bareiss(BigMat m) {
    const int n = m.rows();
    assert(n == m.cols());
    if (n == 0) return 1;
    BigInt prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (m(r, k) != 0) { p = r; break; }
            if (p < 0) return 0;
            for (int c = k; c < n; ++c) std::swap(m(k, c), m(p, c));
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r)
            for (int c = k + 1; c < n; ++c) {
                m(r, c) = (m(r, c) * m(k, k) - m(r, k) * m(k, c)) / prev;
            }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

inline BigInt det_bareiss(const IntMat& m) { return det_bareiss(to_big(m)); }

// Solve A x = b over the rationals. Returns nullopt when the system is
// inconsistent or the solution is not unique.
inline std::optional<std::vector<Rat>> solve_unique(RatMat a, std::vector<Rat> b) {
    const int m = a.rows(), n = a.cols();
    assert(static_cast<int>(b.size()) == m);
    int row = 0;
    std::vector<int> pivot_col_of_row;
    for (int col = 0; col < n && row < m; ++col) {
        int p = -1;
        for (int r = row; r < m; ++r)
            if (a(r, col) != 0) { p = r; break; }
        if (p < 0) continue;
        if (p != row) {
            for (int c = 0; c < n; ++c) std::swap(a(row, c), a(p, c));
            std::swap(b[row], b[p]);
        }
        Rat inv = Rat(1) / a(row, col);
        for (int c = 0; c < n; ++c) a(row, c) *= inv;
        b[row] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == row || a(r, col) == 0) continue;
            Rat f = a(r, col);
            for (int c = 0; c < n; ++c) a(r, c) -= f * a(row, c);
            b[r] -= f * b[row];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    if (row < n) return std::nullopt;  // rank-deficient: not unique
    for (int r = row; r < m; ++r)
        if (b[r] != 0) return std::nullopt;  // inconsistent
    std::vector<Rat> x(n, Rat(0));
    for (int r = 0; r < row; ++r) x[pivot_col_of_row[r]] = b[r];
    return x;
}

// Row-style Hermite normal form of the lattice spanned by `gens` in Z^n.
// Output rows are in echelon form with positive pivots and entries above
// each pivot reduced into [0, pivot).
inline BigMat hermite_row_basis(std::vector<std::vector<BigInt>> gens, int n) {
    std::vector<std::vector<BigInt>>& g = gens;
    int row = 0;
    std::vector<int> pivots;
    for (int col = 0; col < n; ++col) {
        // Euclidean elimination within column `col` on rows >= row.
        while (true) {
            int nz = -1, cnt = 0;
            BigInt best;
            for (size_t r = row; r < g.size(); ++r) {
                if (g[r][col] != 0) {
                    ++cnt;
                    BigInt a = abs(g[r][col]);
                    if (nz < 0 || a < best) { nz = static_cast<int>(r); best = a; }
                }
            }
            if (nz < 0) break;
            std::swap(g[row], g[static_cast<size_t>(nz)]);
            if (cnt == 1) break;
            for (size_t r = row + 1; r < g.size(); ++r) {
                if (g[r][col] == 0) continue;
                BigInt q = g[r][col] / g[row][col];
                for (int c = 0; c < n; ++c) g[r][c] -= q * g[row][c];
            }
        }
        if (static_cast<size_t>(row) < g.size() && g[static_cast<size_t>(row)][col] != 0) {
            if (g[static_cast<size_t>(row)][col] < 0)
                for (int c = 0; c < n; ++c) g[static_cast<size_t>(row)][c] = -g[static_cast<size_t>(row)][c];
            pivots.push_back(col);
            ++row;
        }
    }
    BigMat h(row, n);
    for (int r = 0; r < row; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = g[static_cast<size_t>(r)][c];
    // Reduce entries above each pivot, walking pivot columns left to right so
    // earlier normalizations stay intact.
    for (int up = 0; up < row; ++up)
        for (int r = up + 1; r < row; ++r) {
            int pc = pivots[static_cast<size_t>(r)];
            BigInt q = h(up, pc) / h(r, pc);
            if (h(up, pc) < 0 && h(up, pc) % h(r, pc) != 0) q -= 1;
            if (q != 0)
                for (int c = 0; c < n; ++c) h(up, c) -= q * h(r, c);
        }
    return h;
}

// Invariant factors d_1 | d_2 | ... of the integer matrix (Smith normal form
// diagonal, zero entries dropped).
inline std::vector<BigInt> smith_invariant_factors(BigMat m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<BigInt> out;
    int t = 0;
    while (t < rows && t < cols) {
        // Find a nonzero pivot in the remaining block.
        int pr = -1, pc = -1;
        BigInt best;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c)
                if (m(r, c) != 0) {
                    BigInt a = abs(m(r, c));
                    if (pr < 0 || a < best) { pr = r; pc = c; best = a; }
                }
        if (pr < 0) break;
        for (int c = 0; c < cols; ++c) std::swap(m(t, c), m(pr, c));
        for (int r = 0; r < rows; ++r) std::swap(m(r, t), m(r, pc));
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < rows; ++r) {
                if (m(r, t) == 0) continue;
                BigInt q = m(r, t) / m(t, t);
                for (int c = 0; c < cols; ++c) m(r, c) -= q * m(t, c);
                if (m(r, t) != 0) {
                    for (int c = 0; c < cols; ++c) std::swap(m(t, c), m(r, c));
                    clean = false;
                }
            }
            for (int c = t + 1; c < cols; ++c) {
                if (m(t, c) == 0) continue;
                BigInt q = m(t, c) / m(t, t);
                for (int r = 0; r < rows; ++r) m(r, c) -= q * m(r, t);
                if (m(t, c) != 0) {
                    for (int r = 0; r < rows; ++r) std::swap(m(r, t), m(r, c));
                    clean = false;
                }
            }
        }
        // Enforce divisibility of the rest of the block by the pivot.
        bool again = false;
        for (int r = t + 1; r < rows && !again; ++r)
            for (int c = t + 1; c < cols && !again; ++c)
                if (m(r, c) % m(t, t) != 0) {
                    for (int cc = 0; cc < cols; ++cc) m(t, cc) += m(r, cc);
                    again = true;
                }
        if (again) continue;
        if (m(t, t) < 0) m(t, t) = -m(t, t);
        out.push_back(m(t, t));
        ++t;
    }
    return out;
}

}  // namespace quasitor
