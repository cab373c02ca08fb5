// Test-only oracles, independent of the library's computation paths.
#ifndef BCHOW_TEST_ORACLES_HPP
#define BCHOW_TEST_ORACLES_HPP

#include <random>
#include <vector>

#include "bchow/polytope.hpp"

namespace oracles {

using namespace bchow;

// Shoelace area of a polygon given by its counterclockwise-ordered vertices.
inline Rational shoelace(const std::vector<RatVector>& ring) {
    Rational s = 0;
    const size_t m = ring.size();
    for (size_t i = 0; i < m; ++i) {
        const auto& a = ring[i];
        const auto& b = ring[(i + 1) % m];
        s += a[0] * b[1] - a[1] * b[0];
    }
    return abs(s) / 2;
}

// Permanent of a small square matrix (expansion over permutations).
inline Rational permanent(const std::vector<RatVector>& m) {
    const size_t n = m.size();
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    Rational total = 0;
    do {
        Rational p = 1;
        for (size_t i = 0; i < n; ++i) p *= m[i][perm[i]];
        total += p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Axis-aligned box [0,a1] x ... x [0,an].
inline Polytope box(const std::vector<long>& sides) {
    const int n = static_cast<int>(sides.size());
    std::vector<RatVector> pts;
    for (long mask = 0; mask < (1L << n); ++mask) {
        RatVector v(n);
        for (int c = 0; c < n; ++c) v[c] = (mask >> c) & 1 ? rat(sides[c]) : rat(0);
        pts.push_back(v);
    }
    return hull(n, pts);
}

// Brute-force membership of a point in the convex hull of a point set via
// exhaustive simplex decomposition (exact, exponential; tiny inputs only).
inline bool in_hull_brute(const std::vector<RatVector>& pts, const RatVector& q) {
    const int n = static_cast<int>(q.size());
    const int m = static_cast<int>(pts.size());
    // q in conv(pts) iff q is a convex combination of some n+1 points
    // (Caratheodory).
    std::vector<int> pick(n + 1);
    std::function<bool(int, int)> rec = [&](int from, int k) -> bool {
        if (k == n + 1) {
            RatMatrix a(n + 1, RatVector(n + 1));
            RatVector b(n + 1);
            for (int j = 0; j <= n; ++j) {
                for (int i = 0; i < n; ++i) a[i][j] = pts[pick[j]][i];
                a[n][j] = 1;
            }
            for (int i = 0; i < n; ++i) b[i] = q[i];
            b[n] = 1;
            auto sol = solve_linear(a, b);
            if (!sol.consistent) return false;
            // With a kernel present the particular solution may still have
            // negative entries even when a nonnegative one exists; restrict
            // brute force to affinely independent picks (unique solution).
            if (!sol.kernel.empty()) return false;
            for (const auto& l : sol.solution)
                if (l < 0) return false;
            return true;
        }
        for (int i = from; i < m; ++i) {
            pick[k] = i;
            if (rec(i + 1, k + 1)) return true;
        }
        return false;
    };
    return rec(0, 0);
}

inline Polytope unit_square() {
    return hull(2, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(1), rat(1)}, {rat(0), rat(1)}});
}

inline Polytope std_triangle() {
    return hull(2, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}});
}

inline std::vector<RatVector> random_points(std::mt19937_64& rng, int n, int count,
                                            long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    std::vector<RatVector> pts;
    for (int i = 0; i < count; ++i) {
        RatVector v(n);
        for (int c = 0; c < n; ++c) v[c] = rat(d(rng));
        pts.push_back(v);
    }
    return pts;
}

// A random full-dimensional lattice polytope with vertices in [lo,hi]^n.
inline Polytope random_polytope(std::mt19937_64& rng, int n, int npts, long lo, long hi) {
    while (true) {
        Polytope p = hull(n, random_points(rng, n, npts, lo, hi));
        if (p.is_full_dim()) return p;
    }
}

} // namespace oracles

#endif
