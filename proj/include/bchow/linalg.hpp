#ifndef BCHOW_LINALG_HPP
#define BCHOW_LINALG_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "bchow/rational.hpp"

namespace bchow {

using RatMatrix = std::vector<RatVector>;
using IntMatrix = std::vector<IntVector>;

// Bareiss fraction-free determinant. Intermediate entries stay integral.
inline Int det_int(IntMatrix m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw DimensionMismatch("det_int: not square");
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline Rational det_rat(RatMatrix m) {
    const size_t n = m.size();
    Rational det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(m[k], m[p]);
            det = -det;
        }
        det *= m[k][k];
        Rational inv = 1 / m[k][k];
        for (size_t j = k; j < n; ++j) m[k][j] *= inv;
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rational f = m[i][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

inline size_t rank_of(RatMatrix m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Result of an exact linear solve. When inconsistent, `consistent` is false
// and the rest is empty; otherwise `solution` is one solution and `kernel`
// spans the solution space of the homogeneous system.
struct LinearSolveResult {
    bool consistent = false;
    RatVector solution;
    std::vector<RatVector> kernel;
};

// Exact solve of A x = b. Forward elimination is fraction-free (Bareiss) on
// the denominator-cleared augmented matrix; back substitution is rational.
inline LinearSolveResult solve_linear(const RatMatrix& a, const RatVector& b) {
    const size_t rows = a.size();
    if (b.size() != rows) throw DimensionMismatch("solve_linear: rhs length");
    const size_t cols = rows == 0 ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != cols) throw DimensionMismatch("solve_linear: ragged matrix");

    // Clear denominators row by row.
    IntMatrix m(rows, IntVector(cols + 1));
    for (size_t i = 0; i < rows; ++i) {
        Int l = 1;
        for (size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[i][j].get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b[i].get_den_mpz_t());
        for (size_t j = 0; j < cols; ++j) {
            Rational s = a[i][j] * Rational(l);
            m[i][j] = s.get_num();
        }
        Rational s = b[i] * Rational(l);
        m[i][cols] = s.get_num();
    }

    // Fraction-free elimination, tracking pivot columns.
    std::vector<size_t> pivot_col;
    Int prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j <= cols; ++j) {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivot_col.push_back(c);
        ++r;
    }

    LinearSolveResult out;
    for (size_t i = r; i < rows; ++i) {
        if (m[i][cols] != 0) return out; // inconsistent
    }
    out.consistent = true;

    std::vector<bool> is_pivot(cols, false);
    for (size_t k = 0; k < pivot_col.size(); ++k) is_pivot[pivot_col[k]] = true;

    // Back substitution for a particular solution (free variables = 0).
    out.solution.assign(cols, Rational(0));
    for (size_t k = pivot_col.size(); k-- > 0;) {
        size_t c = pivot_col[k];
        Rational s(m[k][cols]);
        for (size_t j = c + 1; j < cols; ++j) {
            if (m[k][j] != 0) s -= Rational(m[k][j]) * out.solution[j];
        }
        out.solution[c] = s / Rational(m[k][c]);
    }

    // Kernel basis: one vector per free column.
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        RatVector v(cols, Rational(0));
        v[fc] = 1;
        for (size_t k = pivot_col.size(); k-- > 0;) {
            size_t c = pivot_col[k];
            Rational s = 0;
            for (size_t j = c + 1; j < cols; ++j) {
                if (m[k][j] != 0 && v[j] != 0) s -= Rational(m[k][j]) * v[j];
            }
            v[c] = s / Rational(m[k][c]);
        }
        out.kernel.push_back(std::move(v));
    }
    return out;
}

// Reduced row echelon basis of the span of `vectors`, with the pivot map.
// Deterministic: pivots are the leftmost nonzero coordinates in input order
// of coordinates. Used for canonical coset representatives.
class EchelonBasis {
  public:
    explicit EchelonBasis(size_t width) : width_(width) {}

    // Reduces v against the current basis in place; returns the residue.
    RatVector reduce(RatVector v) const {
        for (const auto& row : rows_) {
            size_t p = row.first;
            if (v[p] == 0) continue;
            Rational f = v[p];
            const RatVector& w = row.second;
            for (size_t j = p; j < width_; ++j)
                if (w[j] != 0) v[j] -= f * w[j];
        }
        return v;
    }

    // Inserts v into the basis if independent; returns true if inserted.
    bool insert(RatVector v) {
        v = reduce(std::move(v));
        size_t p = 0;
        while (p < width_ && v[p] == 0) ++p;
        if (p == width_) return false;
        Rational inv = 1 / v[p];
        for (size_t j = p; j < width_; ++j) v[j] *= inv;
        // Back-reduce existing rows to keep the basis fully reduced.
        for (auto& row : rows_) {
            Rational f = row.second[p];
            if (f == 0) continue;
            for (size_t j = p; j < width_; ++j)
                if (v[j] != 0) row.second[j] -= f * v[j];
        }
        rows_.emplace_back(p, std::move(v));
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return true;
    }

    bool contains(const RatVector& v) const { return bchow::is_zero(reduce(v)); }
    size_t dim() const { return rows_.size(); }
    size_t width() const { return width_; }

  private:
    size_t width_;
    std::vector<std::pair<size_t, RatVector>> rows_;
};

} // namespace bchow

#endif
