#ifndef BCHOW_POLYTOPE_HPP
#define BCHOW_POLYTOPE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bchow/fan.hpp"
#include "bchow/linalg.hpp"
#include "bchow/rational.hpp"

namespace bchow {

// The halfspace {m : <m, normal> >= offset}, normal primitive.
struct Halfspace {
    IntVector normal;
    Rational offset;

    bool operator==(const Halfspace& o) const {
        return normal == o.normal && offset == o.offset;
    }
};

// A rational polytope with minimal vertex representation. Full-dimensional
// polytopes also carry their facets (ordered vertex rings + halfspaces),
// produced as a byproduct of the hull computation.
class Polytope {
  public:
    static Polytope empty(int ambient_dim) {
        Polytope p;
        p.n_ = ambient_dim;
        return p;
    }

    int ambient_dim() const { return n_; }
    int dim() const { return dim_; } // affine dimension; -1 when empty
    bool is_empty() const { return vertices_.empty(); }
    bool is_full_dim() const { return dim_ == n_; }
    const std::vector<RatVector>& vertices() const { return vertices_; }

    // Ordered vertex rings of the facets (full-dimensional polytopes only).
    const std::vector<std::vector<int>>& facet_rings() const {
        require_full();
        return facet_rings_;
    }
    const std::vector<Halfspace>& halfspaces() const {
        require_full();
        return halfspaces_;
    }

    bool operator==(const Polytope& o) const {
        return n_ == o.n_ && vertices_ == o.vertices_;
    }
    bool operator!=(const Polytope& o) const { return !(*this == o); }

    friend Polytope hull(int ambient_dim, std::vector<RatVector> pts);

  private:
    void require_full() const {
        if (!is_full_dim()) throw DegenerateFan("polytope is not full-dimensional");
    }

    int n_ = 0;
    int dim_ = -1;
    std::vector<RatVector> vertices_;          // lex-sorted
    std::vector<std::vector<int>> facet_rings_; // indices into vertices_
    std::vector<Halfspace> halfspaces_;         // parallel to facet_rings_
};

namespace detail {

inline Int orient2(const IntVector& a, const IntVector& b, const IntVector& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

// sign of det(b-a, c-a, d-a)
inline Int orient3(const IntVector& a, const IntVector& b, const IntVector& c,
                   const IntVector& d) {
    IntVector u = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    IntVector v = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    IntVector w = {d[0] - a[0], d[1] - a[1], d[2] - a[2]};
    return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
           u[2] * (v[0] * w[1] - v[1] * w[0]);
}

inline IntVector fan_cross(const IntVector& a, const IntVector& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// Monotone chain on exact integer points; returns hull vertex indices in
// counterclockwise ring order. Collinear points are dropped.
inline std::vector<int> hull2d_ring(const std::vector<IntVector>& pts) {
    std::vector<int> idx(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return lex_less(pts[a], pts[b]); });
    const int m = static_cast<int>(idx.size());
    if (m == 1) return idx;
    std::vector<int> h(2 * m);
    int k = 0;
    for (int i = 0; i < m; ++i) { // lower hull
        while (k >= 2 && orient2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0) --k;
        h[k++] = idx[i];
    }
    for (int i = m - 2, t = k + 1; i >= 0; --i) { // upper hull
        while (k >= t && orient2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1);
    return h;
}

struct Facet3 {
    std::vector<int> ring; // point indices, oriented with interior positive
    IntVector normal;      // inner normal, primitive
    Int offset;            // <normal, x> >= offset on the hull
};

// Gift wrapping in dimension 3 on exact integer points of affine rank 3.
inline std::vector<Facet3> hull3d_facets(const std::vector<IntVector>& pts) {
    const int n = static_cast<int>(pts.size());

    auto plane_support = [&](const IntVector& w) {
        // offset and argmin set of <w, .>
        Int best = dot(w, pts[0]);
        for (int i = 1; i < n; ++i) best = std::min(best, dot(w, pts[i]));
        std::vector<int> argmin;
        for (int i = 0; i < n; ++i)
            if (dot(w, pts[i]) == best) argmin.push_back(i);
        return std::make_pair(best, argmin);
    };

    // Orders the coplanar point set `ids` into the facet's hull ring,
    // oriented so that orient3(ring0, ring1, ring2, off-plane point) > 0.
    auto make_facet = [&](std::vector<int> ids, const IntVector& w_hint) -> Facet3 {
        // Drop a coordinate in which the plane normal is nonzero.
        int drop = 0;
        for (int c = 0; c < 3; ++c)
            if (w_hint[c] != 0) drop = c;
        std::vector<IntVector> proj;
        proj.reserve(ids.size());
        for (int id : ids) {
            IntVector q;
            for (int c = 0; c < 3; ++c)
                if (c != drop) q.push_back(pts[id][c]);
            proj.push_back(std::move(q));
        }
        auto ring2 = hull2d_ring(proj);
        Facet3 f;
        for (int r : ring2) f.ring.push_back(ids[r]);
        // Orient the ring so the rest of the hull is on the positive side.
        int outside = -1;
        for (int i = 0; i < n; ++i) {
            if (dot(w_hint, pts[i]) != dot(w_hint, pts[f.ring[0]])) {
                outside = i;
                break;
            }
        }
        if (outside >= 0 &&
            orient3(pts[f.ring[0]], pts[f.ring[1]], pts[f.ring[2]], pts[outside]) < 0) {
            std::reverse(f.ring.begin(), f.ring.end());
        }
        IntVector w = w_hint;
        w = primitive(w);
        Int off = dot(w, pts[f.ring[0]]);
        // Point the normal inward.
        if (outside >= 0 && dot(w, pts[outside]) < off) {
            for (auto& x : w) x = -x;
            off = -off;
        }
        f.normal = std::move(w);
        f.offset = off;
        return f;
    };

    // Finds the supporting facet through directed edge (a, b): the plane with
    // all points on the nonnegative orient3 side.
    auto wrap = [&](int a, int b) -> Facet3 {
        int best = -1;
        for (int c = 0; c < n; ++c) {
            if (c == a || c == b) continue;
            if (best < 0) {
                // skip points collinear with the edge
                IntVector u = {pts[b][0] - pts[a][0], pts[b][1] - pts[a][1],
                               pts[b][2] - pts[a][2]};
                IntVector v = {pts[c][0] - pts[a][0], pts[c][1] - pts[a][1],
                               pts[c][2] - pts[a][2]};
                if (!bchow::is_zero(fan_cross(u, v))) best = c;
                continue;
            }
            Int s = orient3(pts[a], pts[b], pts[best], pts[c]);
            if (s < 0) best = c;
        }
        if (best < 0) throw Error("hull3d: degenerate wrap");
        IntVector u = {pts[b][0] - pts[a][0], pts[b][1] - pts[a][1],
                       pts[b][2] - pts[a][2]};
        IntVector v = {pts[best][0] - pts[a][0], pts[best][1] - pts[a][1],
                       pts[best][2] - pts[a][2]};
        IntVector w = fan_cross(u, v);
        auto [off, on_plane] = plane_support(w);
        if (dot(w, pts[a]) != off) {
            for (auto& x : w) x = -x;
            std::tie(off, on_plane) = plane_support(w);
        }
        if (dot(w, pts[a]) != off) throw Error("hull3d: wrap plane not supporting");
        return make_facet(on_plane, w);
    };

    // Initial facet from an extreme plane; rotate until 2-dimensional.
    std::vector<Facet3> facets;
    std::set<std::vector<int>> seen;

    // Find a supporting plane containing a face of rank 2. Start from a
    // coordinate support plane and wrap as needed.
    Facet3 first = [&]() -> Facet3 {
        for (const IntVector& w0 : std::vector<IntVector>{
                 {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}) {
            auto [off, face] = plane_support(w0);
            if (face.size() < 2) continue;
            // rank of the face
            RatMatrix diffs;
            for (size_t i = 1; i < face.size(); ++i) {
                RatVector d(3);
                for (int c = 0; c < 3; ++c)
                    d[c] = Rational(pts[face[i]][c] - pts[face[0]][c]);
                diffs.push_back(d);
            }
            size_t rank = rank_of(diffs);
            if (rank == 2) return make_facet(face, w0);
            if (rank == 1) {
                // The face is a hull edge (possibly with interior points):
                // take its two extreme points and wrap.
                int lo = face[0], hi = face[0];
                for (int id : face) {
                    if (lex_less(pts[id], pts[lo])) lo = id;
                    if (lex_less(pts[hi], pts[id])) hi = id;
                }
                return wrap(lo, hi);
            }
        }
        // All coordinate supports are vertices: wrap from the lex-min vertex
        // using a 2D projection to find a first hull edge.
        int v0 = 0;
        for (int i = 1; i < n; ++i)
            if (lex_less(pts[i], pts[v0])) v0 = i;
        for (int du = 0; du < 3; ++du) {
            int dv = (du + 1) % 3;
            std::vector<IntVector> proj;
            proj.reserve(n);
            for (int i = 0; i < n; ++i) proj.push_back({pts[i][du], pts[i][dv]});
            RatMatrix diffs;
            for (int i = 1; i < n; ++i) {
                diffs.push_back({Rational(proj[i][0] - proj[0][0]),
                                 Rational(proj[i][1] - proj[0][1])});
            }
            if (rank_of(diffs) != 2) continue;
            auto ring = hull2d_ring(proj);
            // An edge of the projected hull lifts to a supporting vertical
            // plane; its face contains a hull edge.
            int a2 = ring[0], b2 = ring[1];
            IntVector e = {proj[b2][0] - proj[a2][0], proj[b2][1] - proj[a2][1]};
            IntVector w(3, 0);
            w[du] = e[1];
            w[dv] = -e[0];
            auto [off, face] = plane_support(w);
            if (dot(w, pts[a2]) != off) {
                for (auto& x : w) x = -x;
                std::tie(off, face) = plane_support(w);
            }
            RatMatrix fd;
            for (size_t i = 1; i < face.size(); ++i) {
                RatVector d(3);
                for (int c = 0; c < 3; ++c)
                    d[c] = Rational(pts[face[i]][c] - pts[face[0]][c]);
                fd.push_back(d);
            }
            if (face.size() >= 3 && rank_of(fd) == 2) return make_facet(face, w);
            int lo = face[0], hi = face[0];
            for (int id : face) {
                if (lex_less(pts[id], pts[lo])) lo = id;
                if (lex_less(pts[hi], pts[id])) hi = id;
            }
            if (lo == hi) continue;
            return wrap(lo, hi);
        }
        throw Error("hull3d: could not find an initial facet");
    }();

    std::vector<Facet3> queue = {first};
    {
        std::vector<int> key = first.ring;
        std::sort(key.begin(), key.end());
        seen.insert(key);
    }
    while (!queue.empty()) {
        Facet3 f = std::move(queue.back());
        queue.pop_back();
        facets.push_back(f);
        const int m = static_cast<int>(f.ring.size());
        for (int i = 0; i < m; ++i) {
            int u = f.ring[i], v = f.ring[(i + 1) % m];
            // Neighbor across (u, v) is the wrap of the reversed edge.
            Facet3 g = wrap(v, u);
            std::vector<int> key = g.ring;
            std::sort(key.begin(), key.end());
            if (seen.insert(key).second) queue.push_back(std::move(g));
        }
    }
    return facets;
}

} // namespace detail

// Convex hull with minimal vertex representation; facet structure is kept
// for full-dimensional polytopes. Supports ambient dimension 1 to 3.
inline Polytope hull(int ambient_dim, std::vector<RatVector> pts) {
    if (ambient_dim < 1 || ambient_dim > 3)
        throw DimensionMismatch("hull: ambient dimension must be 1, 2 or 3");
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != ambient_dim)
            throw DimensionMismatch("hull: point arity mismatch");
    std::sort(pts.begin(), pts.end(), [](const RatVector& a, const RatVector& b) {
        return lex_less(a, b);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Polytope out;
    out.n_ = ambient_dim;
    if (pts.empty()) return out;

    // Affine dimension.
    RatMatrix diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    int d = static_cast<int>(rank_of(diffs));
    out.dim_ = d;

    if (d == 0) {
        out.vertices_ = {pts[0]};
        return out;
    }

    // Scale to integer coordinates (hull combinatorics are invariant).
    Int lcm = 1;
    for (const auto& p : pts)
        for (const auto& x : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<IntVector> ipts;
    ipts.reserve(pts.size());
    for (const auto& p : pts) {
        IntVector q(ambient_dim);
        for (int c = 0; c < ambient_dim; ++c) {
            Rational s = p[c] * Rational(lcm);
            q[c] = s.get_num();
        }
        ipts.push_back(std::move(q));
    }

    auto keep = [&](const std::vector<int>& ids) {
        std::vector<RatVector> vs;
        for (int id : ids) vs.push_back(pts[id]);
        std::sort(vs.begin(), vs.end(),
                  [](const RatVector& a, const RatVector& b) { return lex_less(a, b); });
        out.vertices_ = std::move(vs);
    };

    if (d == 1) {
        // Extremes along the line.
        int lo = 0, hi = 0;
        for (size_t i = 1; i < ipts.size(); ++i) {
            if (lex_less(ipts[i], ipts[lo])) lo = static_cast<int>(i);
            if (lex_less(ipts[hi], ipts[i])) hi = static_cast<int>(i);
        }
        keep({lo, hi});
        if (ambient_dim == 1) {
            out.facet_rings_ = {{0}, {1}};
            Rational a = out.vertices_[0][0], b = out.vertices_[1][0];
            out.halfspaces_ = {Halfspace{{Int(1)}, a}, Halfspace{{Int(-1)}, -b}};
        }
        return out;
    }

    if (d == 2 && ambient_dim == 3) {
        // Project the plane onto a coordinate pair in which it is injective.
        IntVector w = {0, 0, 0};
        for (size_t i = 1; i < ipts.size() && bchow::is_zero(w); ++i) {
            for (size_t j = i + 1; j < ipts.size() && bchow::is_zero(w); ++j) {
                IntVector u(3), v(3);
                for (int c = 0; c < 3; ++c) {
                    u[c] = ipts[i][c] - ipts[0][c];
                    v[c] = ipts[j][c] - ipts[0][c];
                }
                w = detail::fan_cross(u, v);
            }
        }
        int drop = 0;
        for (int c = 0; c < 3; ++c)
            if (w[c] != 0) drop = c;
        std::vector<IntVector> proj;
        for (const auto& p : ipts) {
            IntVector q;
            for (int c = 0; c < 3; ++c)
                if (c != drop) q.push_back(p[c]);
            proj.push_back(std::move(q));
        }
        keep(detail::hull2d_ring(proj));
        return out;
    }

    if (d == 2) { // ambient 2, full-dimensional
        auto ring = detail::hull2d_ring(ipts);
        keep(ring);
        // Remap ring to sorted-vertex indices.
        std::map<RatVector, int, bool (*)(const RatVector&, const RatVector&)> pos(lex_less);
        for (size_t i = 0; i < out.vertices_.size(); ++i)
            pos[out.vertices_[i]] = static_cast<int>(i);
        std::vector<int> r;
        for (int id : ring) r.push_back(pos[pts[id]]);
        const int m = static_cast<int>(r.size());
        for (int i = 0; i < m; ++i) {
            int a = r[i], b = r[(i + 1) % m];
            RatVector e = sub(out.vertices_[b], out.vertices_[a]);
            IntVector nrm = primitive_direction(RatVector{-e[1], e[0]});
            out.facet_rings_.push_back({a, b});
            out.halfspaces_.push_back(Halfspace{nrm, dot(out.vertices_[a], nrm)});
        }
        return out;
    }

    // d == 3, full-dimensional.
    auto facets = detail::hull3d_facets(ipts);
    std::set<int> vset;
    for (const auto& f : facets)
        for (int id : f.ring) vset.insert(id);
    std::vector<int> vids(vset.begin(), vset.end());
    keep(vids);
    std::map<RatVector, int, bool (*)(const RatVector&, const RatVector&)> pos(lex_less);
    for (size_t i = 0; i < out.vertices_.size(); ++i)
        pos[out.vertices_[i]] = static_cast<int>(i);
    for (const auto& f : facets) {
        std::vector<int> ring;
        for (int id : f.ring) ring.push_back(pos[pts[id]]);
        out.facet_rings_.push_back(std::move(ring));
        out.halfspaces_.push_back(
            Halfspace{f.normal, Rational(f.offset) / Rational(lcm)});
    }
    return out;
}

inline Polytope hull(const std::vector<RatVector>& pts) {
    if (pts.empty()) throw EmptyInput("hull: ambient dimension unknown for empty input");
    return hull(static_cast<int>(pts[0].size()), pts);
}

inline Rational support_value(const Polytope& p, const RatVector& u) {
    if (p.is_empty()) throw EmptyInput("support_value: empty polytope");
    if (static_cast<int>(u.size()) != p.ambient_dim())
        throw DimensionMismatch("support_value: arity");
    Rational best = dot(p.vertices()[0], u);
    for (size_t i = 1; i < p.vertices().size(); ++i)
        best = std::min(best, dot(p.vertices()[i], u));
    return best;
}

inline Rational support_value(const Polytope& p, const IntVector& u) {
    return support_value(p, to_rat(u));
}

inline Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("minkowski_sum: ambient dimension");
    if (a.is_empty() || b.is_empty()) throw EmptyInput("minkowski_sum: empty input");
    std::vector<RatVector> sums;
    sums.reserve(a.vertices().size() * b.vertices().size());
    for (const auto& va : a.vertices())
        for (const auto& vb : b.vertices()) sums.push_back(add(va, vb));
    return hull(a.ambient_dim(), std::move(sums));
}

inline Polytope translate(const Polytope& p, const RatVector& t) {
    if (p.is_empty()) return p;
    std::vector<RatVector> vs;
    for (const auto& v : p.vertices()) vs.push_back(add(v, t));
    return hull(p.ambient_dim(), std::move(vs));
}

inline Polytope dilate(const Polytope& p, const Rational& lambda) {
    if (lambda < 0) throw Error("dilate: negative factor");
    if (p.is_empty()) return p;
    std::vector<RatVector> vs;
    for (const auto& v : p.vertices()) vs.push_back(scale(lambda, v));
    return hull(p.ambient_dim(), std::move(vs));
}

// Exact Euclidean volume; 0 for lower-dimensional polytopes. Triangulates by
// coning each facet over the lex-smallest vertex.
inline Rational volume(const Polytope& p) {
    if (p.is_empty()) throw EmptyInput("volume: empty polytope");
    if (!p.is_full_dim()) return 0;
    const auto& vs = p.vertices();
    const int n = p.ambient_dim();
    if (n == 1) return vs[1][0] - vs[0][0];
    const RatVector& apex = vs[0];
    Rational total = 0;
    if (n == 2) {
        for (size_t f = 0; f < p.facet_rings().size(); ++f) {
            const auto& ring = p.facet_rings()[f];
            RatVector u = sub(vs[ring[0]], apex), v = sub(vs[ring[1]], apex);
            total += u[0] * v[1] - u[1] * v[0];
        }
        total /= 2;
    } else {
        for (const auto& ring : p.facet_rings()) {
            for (size_t i = 1; i + 1 < ring.size(); ++i) {
                RatVector u = sub(vs[ring[0]], apex);
                RatVector v = sub(vs[ring[i]], apex);
                RatVector w = sub(vs[ring[i + 1]], apex);
                total += u[0] * (v[1] * w[2] - v[2] * w[1]) -
                         u[1] * (v[0] * w[2] - v[2] * w[0]) +
                         u[2] * (v[0] * w[1] - v[1] * w[0]);
            }
        }
        total /= 6;
    }
    return abs(total);
}

// Mixed volume, normalized as the inclusion-exclusion polarization of the
// volume: MV(K,...,K) = n! vol(K).
inline Rational mixed_volume(const std::vector<Polytope>& bodies) {
    if (bodies.empty()) throw ArityMismatch("mixed_volume: no bodies");
    const int n = bodies[0].ambient_dim();
    if (static_cast<int>(bodies.size()) != n)
        throw ArityMismatch("mixed_volume: expected exactly n bodies");
    for (const auto& b : bodies) {
        if (b.ambient_dim() != n) throw DimensionMismatch("mixed_volume: ambient dimension");
        if (b.is_empty()) throw EmptyInput("mixed_volume: empty body");
    }
    std::vector<Polytope> subset_sum(size_t(1) << n, Polytope::empty(n));
    Rational total = 0;
    for (size_t mask = 1; mask < subset_sum.size(); ++mask) {
        size_t low = mask & (~mask + 1);
        size_t rest = mask ^ low;
        int low_i = 0;
        while (!(low & (size_t(1) << low_i))) ++low_i;
        subset_sum[mask] = rest == 0
                               ? bodies[low_i]
                               : minkowski_sum(subset_sum[rest], bodies[low_i]);
        int j = __builtin_popcountll(mask);
        Rational v = volume(subset_sum[mask]);
        total += ((n - j) % 2 == 0 ? v : -v);
    }
    return total;
}

// The normal fan under the min convention: the maximal cone at a vertex v
// collects the directions minimized at v.
inline Fan normal_fan(const Polytope& p) {
    if (p.is_empty()) throw EmptyInput("normal_fan: empty polytope");
    if (!p.is_full_dim())
        throw DegenerateFan("normal_fan: polytope not full-dimensional");
    const auto& hs = p.halfspaces();
    std::vector<IntVector> rays;
    rays.reserve(hs.size());
    for (const auto& h : hs) rays.push_back(h.normal);
    std::vector<std::vector<int>> cones;
    for (size_t vi = 0; vi < p.vertices().size(); ++vi) {
        std::vector<int> ids;
        for (size_t f = 0; f < hs.size(); ++f) {
            if (dot(p.vertices()[vi], hs[f].normal) == hs[f].offset)
                ids.push_back(static_cast<int>(f));
        }
        cones.push_back(std::move(ids));
    }
    return Fan(p.ambient_dim(), rays, cones);
}

} // namespace bchow

#endif
