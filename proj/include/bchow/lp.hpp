#ifndef BCHOW_LP_HPP
#define BCHOW_LP_HPP

#include <optional>
#include <vector>

#include "bchow/linalg.hpp"
#include "bchow/rational.hpp"

namespace bchow {
namespace lp {

// Dense exact simplex with Bland's rule:
//   minimize c.z  subject to  A z = b, z >= 0.
// Small instances only.
struct SimplexResult {
    enum class Status { kOptimal, kInfeasible, kUnbounded } status;
    RatVector z;
    Rational objective;
};

inline SimplexResult simplex(RatMatrix a, RatVector b, RatVector c) {
    const size_t m = a.size();
    const size_t n = m == 0 ? 0 : a[0].size();
    for (size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            for (auto& x : a[i]) x = -x;
            b[i] = -b[i];
        }
    }
    // Phase 1 tableau with artificial variables.
    const size_t total = n + m;
    RatMatrix t(m + 1, RatVector(total + 1, Rational(0)));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][total] = b[i];
        basis[i] = n + i;
    }
    for (size_t j = 0; j < total; ++j) {
        Rational s = 0;
        for (size_t i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = (j >= n ? Rational(0) : -s);
    }
    // Phase-1 objective row: minimize sum of artificials; expressed reduced.
    {
        Rational s = 0;
        for (size_t i = 0; i < m; ++i) s += t[i][total];
        t[m][total] = -s;
        for (size_t j = 0; j < n; ++j) {
            Rational col = 0;
            for (size_t i = 0; i < m; ++i) col += t[i][j];
            t[m][j] = -col;
        }
        for (size_t j = n; j < total; ++j) t[m][j] = 0;
    }

    auto pivot = [&](size_t pr, size_t pc) {
        Rational inv = 1 / t[pr][pc];
        for (auto& x : t[pr]) x *= inv;
        for (size_t i = 0; i <= m; ++i) {
            if (i == pr || t[i][pc] == 0) continue;
            Rational f = t[i][pc];
            for (size_t j = 0; j <= total; ++j) t[i][j] -= f * t[pr][j];
        }
        basis[pr] = pc;
    };

    auto run = [&](size_t limit_cols) -> bool { // false = unbounded
        while (true) {
            size_t pc = limit_cols;
            for (size_t j = 0; j < limit_cols; ++j) { // Bland: first negative
                if (t[m][j] < 0) {
                    pc = j;
                    break;
                }
            }
            if (pc == limit_cols) return true;
            size_t pr = m;
            for (size_t i = 0; i < m; ++i) {
                if (t[i][pc] <= 0) continue;
                if (pr == m) {
                    pr = i;
                    continue;
                }
                Rational cand = t[i][total] / t[i][pc];
                Rational best = t[pr][total] / t[pr][pc];
                if (cand < best || (cand == best && basis[i] < basis[pr])) pr = i;
            }
            if (pr == m) return false;
            pivot(pr, pc);
        }
    };

    SimplexResult out;
    run(total);
    if (t[m][total] != 0) {
        out.status = SimplexResult::Status::kInfeasible;
        return out;
    }
    // Drive artificials out of the basis where possible.
    for (size_t i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        size_t pc = n;
        for (size_t j = 0; j < n; ++j) {
            if (t[i][j] != 0) {
                pc = j;
                break;
            }
        }
        if (pc < n) pivot(i, pc);
    }
    // Phase 2 objective.
    for (size_t j = 0; j <= total; ++j) t[m][j] = 0;
    for (size_t j = 0; j < n; ++j) t[m][j] = c[j];
    for (size_t i = 0; i < m; ++i) {
        if (basis[i] < n && t[m][basis[i]] != 0) {
            Rational f = t[m][basis[i]];
            for (size_t j = 0; j <= total; ++j) t[m][j] -= f * t[i][j];
        }
    }
    if (!run(n)) {
        out.status = SimplexResult::Status::kUnbounded;
        return out;
    }
    out.status = SimplexResult::Status::kOptimal;
    out.z.assign(n, Rational(0));
    for (size_t i = 0; i < m; ++i) {
        if (basis[i] < n) out.z[basis[i]] = t[i][total];
    }
    out.objective = -t[m][total];
    return out;
}

// Maximizes the slack s over {(x, s) : <rows_i, x> - s >= rhs_i}; returns
// (x, s) at the optimum, or nullopt when the slack is unbounded above.
inline std::optional<std::pair<RatVector, Rational>> max_slack_point(
    const std::vector<RatVector>& rows, const RatVector& rhs) {
    const size_t m = rows.size();
    const size_t n = m == 0 ? 0 : rows[0].size();
    // Variables: x+, x-, s+, s-, t (m slacks).
    const size_t nv = 2 * n + 2 + m;
    RatMatrix a(m, RatVector(nv, Rational(0)));
    RatVector b(m), c(nv, Rational(0));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) {
            a[i][j] = rows[i][j];
            a[i][n + j] = -rows[i][j];
        }
        a[i][2 * n] = -1;
        a[i][2 * n + 1] = 1;
        a[i][2 * n + 2 + i] = -1;
        b[i] = rhs[i];
    }
    c[2 * n] = -1; // minimize -s
    c[2 * n + 1] = 1;
    auto res = simplex(std::move(a), std::move(b), std::move(c));
    if (res.status == SimplexResult::Status::kUnbounded) return std::nullopt;
    if (res.status != SimplexResult::Status::kOptimal)
        throw Error("max_slack_point: infeasible slack program");
    RatVector x(n);
    for (size_t j = 0; j < n; ++j) x[j] = res.z[j] - res.z[n + j];
    Rational s = res.z[2 * n] - res.z[2 * n + 1];
    return std::make_pair(x, s);
}

} // namespace lp
} // namespace bchow

#endif
