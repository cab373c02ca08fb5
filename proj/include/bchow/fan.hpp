#ifndef BCHOW_FAN_HPP
#define BCHOW_FAN_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "bchow/linalg.hpp"
#include "bchow/rational.hpp"

namespace bchow {

// A maximal cone, as sorted indices into the parent fan's ray table.
struct Cone {
    std::vector<int> ray_ids;

    bool operator==(const Cone& o) const { return ray_ids == o.ray_ids; }
    bool operator<(const Cone& o) const { return ray_ids < o.ray_ids; }
};

namespace detail {

// Exact circular order on nonzero 2D integer vectors, starting at the
// positive x-axis and running counterclockwise.
inline int upper_half(const IntVector& v) {
    if (v[1] > 0) return 0;
    if (v[1] < 0) return 1;
    return v[0] > 0 ? 0 : 1;
}

inline Int cross2(const IntVector& a, const IntVector& b) {
    return a[0] * b[1] - a[1] * b[0];
}

inline bool angular_less(const IntVector& a, const IntVector& b) {
    int ha = upper_half(a), hb = upper_half(b);
    if (ha != hb) return ha < hb;
    return cross2(a, b) > 0;
}

inline IntVector cross3(const IntVector& a, const IntVector& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

} // namespace detail

// A complete rational fan in N_R, non-degenerate (all maximal cones are
// full-dimensional and strictly convex). Rays are primitive and lex-sorted,
// cones sorted by their ray-id lists: equality of canonical forms is
// structural equality of fans.
class Fan {
  public:
    struct Facet {
        IntVector normal;        // primitive inner normal of the wall
        std::vector<int> rays;   // sorted ray ids spanning the wall
    };

    Fan(int dim, std::vector<IntVector> rays, std::vector<std::vector<int>> cones)
        : dim_(dim) {
        if (dim < 1) throw DimensionMismatch("Fan: dimension must be positive");
        for (auto& r : rays) {
            if (static_cast<int>(r.size()) != dim) throw DimensionMismatch("Fan: ray arity");
            if (bchow::is_zero(r)) throw Error("Fan: zero ray");
            if (primitive(r) != r) throw Error("Fan: ray not primitive");
        }
        // Canonical ray order, drop unused rays, remap cone ids.
        std::vector<int> order(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return lex_less(rays[a], rays[b]); });
        for (size_t i = 1; i < order.size(); ++i) {
            if (rays[order[i - 1]] == rays[order[i]]) throw Error("Fan: duplicate ray");
        }
        std::vector<bool> used(rays.size(), false);
        for (const auto& c : cones)
            for (int id : c) {
                if (id < 0 || id >= static_cast<int>(rays.size()))
                    throw Error("Fan: cone ray id out of range");
                used[id] = true;
            }
        std::vector<int> new_id(rays.size(), -1);
        for (int pos : order) {
            if (!used[pos]) continue;
            new_id[pos] = static_cast<int>(rays_.size());
            rays_.push_back(rays[pos]);
        }
        for (const auto& c : cones) {
            Cone cc;
            for (int id : c) cc.ray_ids.push_back(new_id[id]);
            std::sort(cc.ray_ids.begin(), cc.ray_ids.end());
            cc.ray_ids.erase(std::unique(cc.ray_ids.begin(), cc.ray_ids.end()),
                             cc.ray_ids.end());
            cones_.push_back(std::move(cc));
        }
        std::sort(cones_.begin(), cones_.end());
        cones_.erase(std::unique(cones_.begin(), cones_.end()), cones_.end());
        if (cones_.empty()) throw Error("Fan: no maximal cones");
        build_facets();
    }

    static Fan from_cones(int dim, const std::vector<std::vector<IntVector>>& cone_rays) {
        std::vector<IntVector> rays;
        std::vector<std::vector<int>> cones;
        for (const auto& cr : cone_rays) {
            std::vector<int> ids;
            for (const auto& r : cr) {
                auto it = std::find(rays.begin(), rays.end(), r);
                if (it == rays.end()) {
                    rays.push_back(r);
                    ids.push_back(static_cast<int>(rays.size()) - 1);
                } else {
                    ids.push_back(static_cast<int>(it - rays.begin()));
                }
            }
            cones.push_back(ids);
        }
        return Fan(dim, rays, cones);
    }

    int dim() const { return dim_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<Cone>& max_cones() const { return cones_; }
    int n_cones() const { return static_cast<int>(cones_.size()); }

    const std::vector<Facet>& facets_of(int ci) const { return facets_[ci]; }

    std::vector<IntVector> cone_rays(int ci) const {
        std::vector<IntVector> out;
        for (int id : cones_[ci].ray_ids) out.push_back(rays_[id]);
        return out;
    }

    bool cone_is_simplicial(int ci) const {
        return static_cast<int>(cones_[ci].ray_ids.size()) == dim_;
    }

    bool cone_contains(int ci, const RatVector& u) const {
        for (const auto& f : facets_[ci]) {
            if (dot(u, f.normal) < 0) return false;
        }
        return true;
    }

    bool cone_contains(int ci, const IntVector& u) const {
        for (const auto& f : facets_[ci]) {
            if (dot(u, f.normal) < 0) return false;
        }
        return true;
    }

    // A point in the relative interior of the cone.
    IntVector cone_interior_point(int ci) const {
        IntVector s(dim_, 0);
        for (int id : cones_[ci].ray_ids)
            for (int c = 0; c < dim_; ++c) s[c] += rays_[id][c];
        return s;
    }

    bool operator==(const Fan& o) const {
        return dim_ == o.dim_ && rays_ == o.rays_ && cones_ == o.cones_;
    }
    bool operator!=(const Fan& o) const { return !(*this == o); }

  private:
    // Facets of every maximal cone, with inner normals. Cones must be
    // full-dimensional and strictly convex, with every listed ray extreme.
    void build_facets() {
        facets_.resize(cones_.size());
        for (size_t ci = 0; ci < cones_.size(); ++ci) {
            const auto& ids = cones_[ci].ray_ids;
            const int k = static_cast<int>(ids.size());
            if (k < dim_) throw Error("Fan: maximal cone not full-dimensional");
            {
                RatMatrix m;
                for (int id : ids) m.push_back(to_rat(rays_[id]));
                if (rank_of(m) != static_cast<size_t>(dim_))
                    throw Error("Fan: maximal cone not full-dimensional");
            }
            auto& fl = facets_[ci];
            if (dim_ == 1) {
                fl.push_back(Facet{rays_[ids[0]], {}});
                continue;
            }
            if (k == dim_) {
                // Simplicial: drop one ray at a time, normal from the kernel.
                for (int drop = 0; drop < k; ++drop) {
                    RatMatrix m;
                    for (int j = 0; j < k; ++j)
                        if (j != drop) m.push_back(to_rat(rays_[ids[j]]));
                    auto sol = solve_linear(m, RatVector(m.size(), Rational(0)));
                    if (sol.kernel.size() != 1)
                        throw Error("Fan: degenerate simplicial cone");
                    IntVector w = primitive_direction(sol.kernel[0]);
                    Int side = dot(w, rays_[ids[drop]]);
                    if (side == 0) throw Error("Fan: degenerate simplicial cone");
                    if (side < 0)
                        for (auto& x : w) x = -x;
                    Facet f;
                    f.normal = w;
                    for (int j = 0; j < k; ++j)
                        if (j != drop) f.rays.push_back(ids[j]);
                    fl.push_back(std::move(f));
                }
            } else {
                if (dim_ != 3)
                    throw Error("Fan: non-simplicial cones supported only in dimension 3");
                std::set<IntVector> seen;
                for (int i = 0; i < k; ++i) {
                    for (int j = i + 1; j < k; ++j) {
                        IntVector w = detail::cross3(rays_[ids[i]], rays_[ids[j]]);
                        if (bchow::is_zero(w)) continue;
                        w = primitive(w);
                        int pos = 0, neg = 0;
                        for (int l = 0; l < k; ++l) {
                            Int s = dot(w, rays_[ids[l]]);
                            if (s > 0) ++pos;
                            if (s < 0) ++neg;
                        }
                        if (pos > 0 && neg > 0) continue;
                        if (neg > 0)
                            for (auto& x : w) x = -x;
                        if (!seen.insert(w).second) continue;
                        Facet f;
                        f.normal = w;
                        for (int l = 0; l < k; ++l)
                            if (dot(w, rays_[ids[l]]) == 0) f.rays.push_back(ids[l]);
                        if (f.rays.size() != 2)
                            throw Error("Fan: cone has a non-extreme ray");
                        fl.push_back(std::move(f));
                    }
                }
                if (fl.size() < 3) throw Error("Fan: cone not strictly convex");
            }
            // Strict convexity: inner normals must span, and the interior
            // point must be strictly inside every facet.
            {
                RatMatrix m;
                for (const auto& f : fl) m.push_back(to_rat(f.normal));
                if (rank_of(m) != static_cast<size_t>(dim_))
                    throw Error("Fan: cone not strictly convex");
            }
            IntVector c = cone_interior_point(static_cast<int>(ci));
            for (const auto& f : fl) {
                if (dot(f.normal, c) <= 0) throw Error("Fan: cone not strictly convex");
            }
        }
    }

    int dim_;
    std::vector<IntVector> rays_;
    std::vector<Cone> cones_;
    std::vector<std::vector<Facet>> facets_;
};

// A wall of a fan: a shared facet of two maximal cones.
struct Wall {
    std::vector<int> ray_ids; // sorted
    int cone_a = -1, cone_b = -1;
    IntVector normal_a;       // inner normal of the wall as a facet of cone_a
};

// Enumerates the walls, checking the pairing: every facet of a maximal cone
// is shared with exactly one other maximal cone, on the opposite side.
// Returns false on any violation.
inline bool enumerate_walls(const Fan& f, std::vector<Wall>* out) {
    std::map<std::vector<int>, std::vector<std::pair<int, IntVector>>> by_rays;
    for (int ci = 0; ci < f.n_cones(); ++ci) {
        for (const auto& fct : f.facets_of(ci)) {
            by_rays[fct.rays].push_back({ci, fct.normal});
        }
    }
    if (out) out->clear();
    for (const auto& [rays, incident] : by_rays) {
        if (incident.size() != 2) return false;
        IntVector neg = incident[1].second;
        for (auto& x : neg) x = -x;
        if (incident[0].second != neg) return false;
        if (out) {
            Wall w;
            w.ray_ids = rays;
            w.cone_a = incident[0].first;
            w.cone_b = incident[1].first;
            w.normal_a = incident[0].second;
            out->push_back(std::move(w));
        }
    }
    return true;
}

// Completeness: the maximal cones tile N_R. Decided exactly: wall pairing in
// every dimension, plus the full angular chain in dimension 2 and the Euler
// characteristic of the induced sphere decomposition in dimension 3. Above
// dimension 3 wall pairing alone is used (heuristic).
inline bool is_complete(const Fan& f) {
    if (f.dim() == 1) {
        return f.rays().size() == 2 && f.n_cones() == 2 &&
               f.rays()[0] == IntVector{-1} && f.rays()[1] == IntVector{1};
    }
    std::vector<Wall> walls;
    if (!enumerate_walls(f, &walls)) return false;
    if (f.dim() == 2) {
        // Rays in circular order; cones must be exactly the consecutive pairs.
        const auto& rays = f.rays();
        const size_t m = rays.size();
        if (m < 3 || f.n_cones() != static_cast<int>(m)) return false;
        std::vector<int> order(m);
        for (size_t i = 0; i < m; ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return detail::angular_less(rays[a], rays[b]);
        });
        // Complete iff the cones are exactly the consecutive angular pairs;
        // a gap of at least pi produces a pair no valid cone can match.
        std::set<Cone> expected;
        for (size_t i = 0; i < m; ++i) {
            int a = order[i], b = order[(i + 1) % m];
            Cone c;
            c.ray_ids = {std::min(a, b), std::max(a, b)};
            expected.insert(c);
        }
        std::set<Cone> actual(f.max_cones().begin(), f.max_cones().end());
        return actual == expected;
    }
    if (f.dim() == 3) {
        long v = static_cast<long>(f.rays().size());
        long e = static_cast<long>(walls.size());
        long fc = f.n_cones();
        return v - e + fc == 2;
    }
    return true;
}

inline bool is_smooth(const Fan& f) {
    for (int ci = 0; ci < f.n_cones(); ++ci) {
        if (!f.cone_is_simplicial(ci)) return false;
        IntMatrix m;
        for (const auto& r : f.cone_rays(ci)) m.push_back(r);
        Int d = det_int(m);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

// True iff every maximal cone of a is contained in some maximal cone of b.
inline bool refines(const Fan& a, const Fan& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("refines: dimension");
    for (int ci = 0; ci < a.n_cones(); ++ci) {
        auto rays = a.cone_rays(ci);
        bool found = false;
        for (int cj = 0; cj < b.n_cones() && !found; ++cj) {
            bool all = true;
            for (const auto& r : rays) {
                if (!b.cone_contains(cj, r)) {
                    all = false;
                    break;
                }
            }
            found = all;
        }
        if (!found) return false;
    }
    return true;
}

// A maximal cone of f containing u; lowest cone index on ties.
inline int locate(const Fan& f, const RatVector& u) {
    if (static_cast<int>(u.size()) != f.dim()) throw DimensionMismatch("locate: arity");
    for (int ci = 0; ci < f.n_cones(); ++ci) {
        if (f.cone_contains(ci, u)) return ci;
    }
    throw Error("locate: point in no maximal cone (fan not complete?)");
}

// The common refinement: maximal cones are the full-dimensional
// intersections of maximal cones of a and b.
inline Fan common_refinement(const Fan& a, const Fan& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("common_refinement: dimension");
    const int n = a.dim();
    if (n == 1) return a;
    if (n == 2) {
        std::vector<IntVector> rays = a.rays();
        for (const auto& r : b.rays())
            if (std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(r);
        std::sort(rays.begin(), rays.end(), detail::angular_less);
        std::vector<std::vector<IntVector>> cones;
        for (size_t i = 0; i < rays.size(); ++i) {
            cones.push_back({rays[i], rays[(i + 1) % rays.size()]});
        }
        return Fan::from_cones(2, cones);
    }
    if (n != 3)
        throw Error("common_refinement: supported in dimensions 1 to 3");

    std::vector<std::vector<IntVector>> cones;
    for (int ca = 0; ca < a.n_cones(); ++ca) {
        for (int cb = 0; cb < b.n_cones(); ++cb) {
            // Candidate extreme rays of the intersection.
            std::vector<IntVector> cand;
            auto push = [&](const IntVector& r) {
                if (std::find(cand.begin(), cand.end(), r) == cand.end())
                    cand.push_back(r);
            };
            for (const auto& r : a.cone_rays(ca))
                if (b.cone_contains(cb, r)) push(r);
            for (const auto& r : b.cone_rays(cb))
                if (a.cone_contains(ca, r)) push(r);
            for (const auto& fa : a.facets_of(ca)) {
                for (const auto& fb : b.facets_of(cb)) {
                    IntVector d = detail::cross3(fa.normal, fb.normal);
                    if (bchow::is_zero(d)) continue;
                    d = primitive(d);
                    for (int sgn = 0; sgn < 2; ++sgn) {
                        if (a.cone_contains(ca, d) && b.cone_contains(cb, d)) push(d);
                        for (auto& x : d) x = -x;
                    }
                }
            }
            if (cand.size() < 3) continue;
            {
                RatMatrix m;
                for (const auto& r : cand) m.push_back(to_rat(r));
                if (rank_of(m) != 3) continue;
            }
            // Keep extreme rays only: active constraints must have rank 2.
            std::vector<IntVector> extreme;
            for (const auto& r : cand) {
                RatMatrix act;
                for (const auto& fa : a.facets_of(ca))
                    if (dot(fa.normal, r) == 0) act.push_back(to_rat(fa.normal));
                for (const auto& fb : b.facets_of(cb))
                    if (dot(fb.normal, r) == 0) act.push_back(to_rat(fb.normal));
                if (rank_of(act) >= 2) extreme.push_back(r);
            }
            if (extreme.size() < 3) continue;
            {
                RatMatrix m;
                for (const auto& r : extreme) m.push_back(to_rat(r));
                if (rank_of(m) != 3) continue;
            }
            cones.push_back(std::move(extreme));
        }
    }
    return Fan::from_cones(3, cones);
}

// Stellar subdivision at a primitive ray: every maximal cone containing the
// ray is replaced by the joins of the new ray with the facets not containing it.
inline Fan stellar_subdivision(const Fan& f, const IntVector& v) {
    std::vector<std::vector<IntVector>> cones;
    for (int ci = 0; ci < f.n_cones(); ++ci) {
        bool inside = f.cone_contains(ci, v);
        bool is_ray = false;
        for (const auto& r : f.cone_rays(ci))
            if (r == v) is_ray = true;
        if (!inside || is_ray) {
            cones.push_back(f.cone_rays(ci));
            continue;
        }
        for (const auto& fct : f.facets_of(ci)) {
            if (dot(fct.normal, v) == 0) continue;
            std::vector<IntVector> nc;
            for (int id : fct.rays) nc.push_back(f.rays()[id]);
            nc.push_back(v);
            cones.push_back(std::move(nc));
        }
    }
    return Fan::from_cones(f.dim(), cones);
}

// Subdivides every non-simplicial maximal cone by pulling at its
// lex-smallest ray (sufficient in dimension <= 3).
inline Fan simplicialize(const Fan& f) {
    bool any = false;
    for (int ci = 0; ci < f.n_cones(); ++ci)
        if (!f.cone_is_simplicial(ci)) any = true;
    if (!any) return f;
    std::vector<std::vector<IntVector>> cones;
    for (int ci = 0; ci < f.n_cones(); ++ci) {
        if (f.cone_is_simplicial(ci)) {
            cones.push_back(f.cone_rays(ci));
            continue;
        }
        int pull = f.max_cones()[ci].ray_ids[0]; // ray table is lex-sorted
        for (const auto& fct : f.facets_of(ci)) {
            if (std::find(fct.rays.begin(), fct.rays.end(), pull) != fct.rays.end())
                continue;
            std::vector<IntVector> nc;
            for (int id : fct.rays) nc.push_back(f.rays()[id]);
            nc.push_back(f.rays()[pull]);
            cones.push_back(std::move(nc));
        }
    }
    return Fan::from_cones(f.dim(), cones);
}

namespace detail {

// The primitive lattice point of the fundamental parallelepiped with minimal
// coordinate sum in the cone's ray basis (lex-smallest lattice point on
// ties). Minimizing the barycentric sum keeps the multiplicity descent
// short; in dimension 2 it reproduces the Hirzebruch-Jung insertion.
inline IntVector parallelepiped_insertion_point(const std::vector<IntVector>& rays) {
    const int n = static_cast<int>(rays.size());
    IntVector lo(n, 0), hi(n, 0);
    for (int c = 0; c < n; ++c) {
        for (const auto& r : rays) {
            if (r[c] < 0) lo[c] += r[c];
            if (r[c] > 0) hi[c] += r[c];
        }
    }
    Int box = 1;
    for (int c = 0; c < n; ++c) box *= hi[c] - lo[c] + 1;
    if (box > 2'000'000) throw Error("resolve: cone multiplicity too large");

    // Rows of the inverse ray matrix: lambda_i = <inv[i], p>.
    RatMatrix mt(n, RatVector(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mt[i][j] = Rational(rays[j][i]);
    RatMatrix inv(n, RatVector(n));
    for (int k = 0; k < n; ++k) {
        RatVector e(n, Rational(0));
        e[k] = 1;
        auto sol = solve_linear(mt, e);
        if (!sol.consistent) throw Error("resolve: singular cone matrix");
        for (int i = 0; i < n; ++i) inv[i][k] = sol.solution[i];
    }

    bool found = false;
    IntVector best;
    Rational best_sum = 0;
    IntVector p(n);
    for (int c = 0; c < n; ++c) p[c] = lo[c];
    while (true) {
        if (!bchow::is_zero(p) && content(p) == 1) {
            bool in_box = true;
            Rational s = 0;
            for (int i = 0; i < n && in_box; ++i) {
                Rational l = dot(inv[i], p);
                if (l < 0 || l >= 1) in_box = false;
                s += l;
            }
            if (in_box) {
                if (!found || s < best_sum || (s == best_sum && lex_less(p, best))) {
                    found = true;
                    best = p;
                    best_sum = s;
                }
            }
        }
        int c = n - 1;
        while (c >= 0) {
            if (p[c] < hi[c]) {
                ++p[c];
                break;
            }
            p[c] = lo[c];
            --c;
        }
        if (c < 0) break;
    }
    if (!found) throw Error("resolve: no parallelepiped point found");
    return best;
}

} // namespace detail

// Iterated stellar subdivision to a smooth complete refinement. Terminates by
// multiplicity descent; `max_insertions` guards against runaway inputs.
inline Fan resolve(const Fan& f, long max_insertions = 4096) {
    Fan cur = simplicialize(f);
    long steps = 0;
    while (true) {
        int bad = -1;
        for (int ci = 0; ci < cur.n_cones(); ++ci) {
            IntMatrix m;
            for (const auto& r : cur.cone_rays(ci)) m.push_back(r);
            Int d = det_int(m);
            if (d != 1 && d != -1) {
                bad = ci;
                break;
            }
        }
        if (bad < 0) return cur;
        if (steps >= max_insertions)
            throw DepthExceeded("resolve: insertion limit reached");
        IntVector v = detail::parallelepiped_insertion_point(cur.cone_rays(bad));
        cur = stellar_subdivision(cur, v);
        ++steps;
    }
}

} // namespace bchow

#endif
