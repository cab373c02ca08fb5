#ifndef BCHOW_BODIES_HPP
#define BCHOW_BODIES_HPP

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bchow/lp.hpp"
#include "bchow/polytope.hpp"
#include "bchow/ppoly.hpp"

namespace bchow {

// A rational compact convex body, accessed only through its support function
// h(u) = min over the body of <m, u>. Oracles are immutable and pure.
class SupportOracle {
  public:
    virtual ~SupportOracle() = default;

    virtual int dim() const = 0;
    virtual Rational eval(const RatVector& u) const = 0;
    virtual std::string kind() const = 0;

    // Structural identity, used to merge formal terms.
    virtual std::string key() const = 0;

    // The underlying polytope, when the body is polytope-backed.
    virtual std::optional<Polytope> backing_polytope() const { return std::nullopt; }

    // A complete fan on whose cones the support function is linear, when one
    // is known (polytopes and user tables; not curved builtins).
    virtual std::optional<Fan> linearity_fan() const { return std::nullopt; }

    Rational eval(const IntVector& u) const { return eval(to_rat(u)); }
};

using OraclePtr = std::shared_ptr<const SupportOracle>;

namespace detail {

inline std::string polytope_key(const Polytope& p) {
    std::ostringstream os;
    os << "poly[" << p.ambient_dim() << ":";
    for (const auto& v : p.vertices()) {
        for (const auto& x : v) os << rat_str(x) << ",";
        os << ";";
    }
    os << "]";
    return os.str();
}

} // namespace detail

class PolytopeOracle final : public SupportOracle {
  public:
    explicit PolytopeOracle(Polytope p) : p_(std::move(p)) {
        if (p_.is_empty()) throw EmptyInput("PolytopeOracle: empty polytope");
    }

    int dim() const override { return p_.ambient_dim(); }
    Rational eval(const RatVector& u) const override { return support_value(p_, u); }
    std::string kind() const override { return "polytope-backed"; }
    std::string key() const override { return detail::polytope_key(p_); }
    std::optional<Polytope> backing_polytope() const override { return p_; }

    std::optional<Fan> linearity_fan() const override {
        if (p_.is_full_dim()) return normal_fan(p_);
        // A lower-dimensional body: fatten by a unit cube; the normal fan of
        // the sum refines the linearity regions of h.
        std::vector<RatVector> cube;
        const int n = p_.ambient_dim();
        for (long mask = 0; mask < (1L << n); ++mask) {
            RatVector v(n);
            for (int c = 0; c < n; ++c) v[c] = (mask >> c) & 1 ? rat(1) : rat(0);
            cube.push_back(v);
        }
        return normal_fan(minkowski_sum(p_, hull(n, cube)));
    }

  private:
    Polytope p_;
};

// The curved example body: h(x,y) = xy/(x+y) on the positive quadrant and
// min(x,y) elsewhere. Its stability set is bounded by the chord x+y = 1 and
// the curve sqrt(x) + sqrt(y) = 1.
class KhOracle final : public SupportOracle {
  public:
    int dim() const override { return 2; }

    Rational eval(const RatVector& u) const override {
        if (u.size() != 2) throw DimensionMismatch("kh oracle: arity");
        const Rational &x = u[0], &y = u[1];
        if (x >= 0 && y >= 0) {
            if (x + y == 0) return 0;
            return x * y / (x + y);
        }
        return std::min(x, y);
    }

    std::string kind() const override { return "builtin"; }
    std::string key() const override { return "builtin:kh"; }
};

// Piecewise linear oracle from values at the rays of a declared fan.
class TableOracle final : public SupportOracle {
  public:
    TableOracle(FanPtr fan, std::vector<Rational> ray_values)
        : fan_(std::move(fan)), values_(std::move(ray_values)) {
        if (values_.size() != fan_->rays().size())
            throw DimensionMismatch("TableOracle: one value per ray");
        bool simplicial = true;
        for (int ci = 0; ci < fan_->n_cones(); ++ci)
            if (!fan_->cone_is_simplicial(ci)) simplicial = false;
        if (!simplicial) {
            Fan s = simplicialize(*fan_);
            // Ray set is unchanged by pulling; remap values.
            std::vector<Rational> vals(s.rays().size());
            for (size_t i = 0; i < s.rays().size(); ++i) {
                auto it = std::find(fan_->rays().begin(), fan_->rays().end(), s.rays()[i]);
                vals[i] = values_[it - fan_->rays().begin()];
            }
            fan_ = make_fan(std::move(s));
            values_ = std::move(vals);
        }
    }

    int dim() const override { return fan_->dim(); }

    Rational eval(const RatVector& u) const override {
        int ci = locate(*fan_, u);
        auto duals = cone_dual_forms(*fan_, ci);
        const auto& ids = fan_->max_cones()[ci].ray_ids;
        Rational s = 0;
        for (size_t i = 0; i < duals.size(); ++i) s += values_[ids[i]] * dot(duals[i], u);
        return s;
    }

    std::string kind() const override { return "user-table"; }

    std::string key() const override {
        std::ostringstream os;
        os << "tab[";
        for (const auto& r : fan_->rays()) {
            for (const auto& x : r) os << x.get_str() << ",";
            os << ";";
        }
        os << "|";
        for (const auto& v : values_) os << rat_str(v) << ",";
        os << "]";
        return os.str();
    }

    std::optional<Fan> linearity_fan() const override { return *fan_; }

    const FanPtr& fan() const { return fan_; }
    const std::vector<Rational>& values() const { return values_; }

  private:
    FanPtr fan_;
    std::vector<Rational> values_;
};

class SumOracle final : public SupportOracle {
  public:
    SumOracle(OraclePtr a, OraclePtr b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_->dim() != b_->dim()) throw DimensionMismatch("SumOracle: dimension");
    }

    int dim() const override { return a_->dim(); }
    Rational eval(const RatVector& u) const override { return a_->eval(u) + b_->eval(u); }
    std::string kind() const override { return "sum"; }
    std::string key() const override { return "sum(" + a_->key() + "," + b_->key() + ")"; }

    std::optional<Fan> linearity_fan() const override {
        auto fa = a_->linearity_fan();
        auto fb = b_->linearity_fan();
        if (!fa || !fb) return std::nullopt;
        return common_refinement(*fa, *fb);
    }

  private:
    OraclePtr a_, b_;
};

class ScaleOracle final : public SupportOracle {
  public:
    ScaleOracle(Rational lambda, OraclePtr inner)
        : lambda_(std::move(lambda)), inner_(std::move(inner)) {
        if (lambda_ < 0) throw Error("ScaleOracle: negative factor");
    }

    int dim() const override { return inner_->dim(); }
    Rational eval(const RatVector& u) const override { return lambda_ * inner_->eval(u); }
    std::string kind() const override { return "scaled"; }
    std::string key() const override {
        return "scl(" + rat_str(lambda_) + "," + inner_->key() + ")";
    }
    std::optional<Fan> linearity_fan() const override { return inner_->linearity_fan(); }

    const Rational& factor() const { return lambda_; }
    const OraclePtr& inner() const { return inner_; }

  private:
    Rational lambda_;
    OraclePtr inner_;
};

class TranslateOracle final : public SupportOracle {
  public:
    TranslateOracle(RatVector t, OraclePtr inner)
        : t_(std::move(t)), inner_(std::move(inner)) {
        if (static_cast<int>(t_.size()) != inner_->dim())
            throw DimensionMismatch("TranslateOracle: arity");
    }

    int dim() const override { return inner_->dim(); }
    Rational eval(const RatVector& u) const override {
        return inner_->eval(u) + dot(t_, u);
    }
    std::string kind() const override { return "translated"; }
    std::string key() const override {
        std::ostringstream os;
        os << "trl(";
        for (const auto& x : t_) os << rat_str(x) << ",";
        os << "|" << inner_->key() << ")";
        return os.str();
    }
    std::optional<Fan> linearity_fan() const override { return inner_->linearity_fan(); }

  private:
    RatVector t_;
    OraclePtr inner_;
};

inline OraclePtr oracle_from_polytope(const Polytope& p) {
    return std::make_shared<PolytopeOracle>(p);
}

inline OraclePtr builtin_kh() { return std::make_shared<KhOracle>(); }

namespace detail {

inline std::pair<Rational, OraclePtr> as_scaled(const OraclePtr& h) {
    if (auto s = std::dynamic_pointer_cast<const ScaleOracle>(h)) {
        auto inner = as_scaled(s->inner());
        return {s->factor() * inner.first, inner.second};
    }
    return {Rational(1), h};
}

} // namespace detail

inline OraclePtr scale_oracle(const Rational& lambda, const OraclePtr& h) {
    if (lambda == 0) {
        RatVector origin(h->dim(), Rational(0));
        return oracle_from_polytope(hull(h->dim(), {origin}));
    }
    if (lambda == 1) return h;
    if (auto p = h->backing_polytope()) return oracle_from_polytope(dilate(*p, lambda));
    auto [mu, base] = detail::as_scaled(h);
    return std::make_shared<ScaleOracle>(lambda * mu, base);
}

inline OraclePtr translate_oracle(const RatVector& t, const OraclePtr& h) {
    if (bchow::is_zero(t)) return h;
    if (auto p = h->backing_polytope()) return oracle_from_polytope(translate(*p, t));
    return std::make_shared<TranslateOracle>(t, h);
}

// Minkowski addition at the support-function level; polytope addition is
// carried out eagerly, repeated summands collapse to dilations.
inline OraclePtr minkowski_oracle(const OraclePtr& a, const OraclePtr& b) {
    if (a->dim() != b->dim()) throw DimensionMismatch("minkowski_oracle: dimension");
    auto pa = a->backing_polytope(), pb = b->backing_polytope();
    if (pa && pb) return oracle_from_polytope(minkowski_sum(*pa, *pb));
    auto [la, ba] = detail::as_scaled(a);
    auto [lb, bb] = detail::as_scaled(b);
    if (ba->key() == bb->key()) return scale_oracle(la + lb, ba);
    return std::make_shared<SumOracle>(a, b);
}

// All primitive integer directions of sup-norm at most d.
inline std::vector<IntVector> primitive_directions(int n, long d) {
    std::vector<IntVector> out;
    IntVector v(n, -d);
    while (true) {
        if (!bchow::is_zero(v) && content(v) == 1) out.push_back(v);
        int c = n - 1;
        while (c >= 0) {
            if (v[c] < d) {
                ++v[c];
                break;
            }
            v[c] = -d;
            --c;
        }
        if (c < 0) break;
    }
    return out;
}

// Outer polytope approximation: the intersection of the halfspaces
// {m : <m, v> >= h(v)} over the given directions. Exact, via an interior
// point and the polar dual hull.
inline Polytope outer_approx(const SupportOracle& h, const std::vector<IntVector>& dirs) {
    const int n = h.dim();
    if (n < 1 || n > 3) throw DimensionMismatch("outer_approx: dimension 1 to 3");
    if (dirs.empty()) throw NotSpanning("outer_approx: no directions");
    std::vector<RatVector> rows;
    RatVector rhs;
    for (const auto& v : dirs) {
        if (static_cast<int>(v.size()) != n) throw DimensionMismatch("outer_approx: arity");
        rows.push_back(to_rat(v));
        rhs.push_back(h.eval(rows.back()));
    }
    const size_t m = rows.size();

    // Interior point by a cutting-plane max-slack search: seed with the
    // axis-extreme directions, grow with the worst violator.
    std::vector<size_t> active;
    for (int c = 0; c < n; ++c) {
        size_t best_pos = 0, best_neg = 0;
        for (size_t i = 1; i < m; ++i) {
            if (rows[i][c] > rows[best_pos][c]) best_pos = i;
            if (rows[i][c] < rows[best_neg][c]) best_neg = i;
        }
        active.push_back(best_pos);
        active.push_back(best_neg);
    }
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    RatVector center;
    for (size_t round = 0;; ++round) {
        if (round > m + 8) throw Error("outer_approx: interior search stalled");
        std::vector<RatVector> sub;
        RatVector subr;
        for (size_t i : active) {
            sub.push_back(rows[i]);
            subr.push_back(rhs[i]);
        }
        auto opt = lp::max_slack_point(sub, subr);
        if (!opt) {
            // Unbounded slack on the subset: grow it.
            if (active.size() == m) throw NotSpanning("outer_approx: directions do not span");
            size_t step = std::max<size_t>(1, m / 8);
            for (size_t i = 0; i < m && active.size() < m; i += step) {
                if (std::find(active.begin(), active.end(), i) == active.end())
                    active.push_back(i);
            }
            std::sort(active.begin(), active.end());
            continue;
        }
        auto [x, s] = *opt;
        if (s <= 0) throw Error("outer_approx: intersection has empty interior");
        // Strictly feasible for all constraints?
        size_t worst = m;
        Rational worst_slack;
        for (size_t i = 0; i < m; ++i) {
            Rational sl = dot(rows[i], x) - rhs[i];
            if (worst == m || sl < worst_slack) {
                worst = i;
                worst_slack = sl;
            }
        }
        if (worst_slack > 0) {
            center = x;
            break;
        }
        if (std::find(active.begin(), active.end(), worst) != active.end())
            throw Error("outer_approx: interior search failed");
        active.push_back(worst);
        std::sort(active.begin(), active.end());
    }

    // Polar dual: P - center = conv(w_i)^o with w_i = -v_i / slack_i.
    std::vector<RatVector> dual_pts;
    for (size_t i = 0; i < m; ++i) {
        Rational b = dot(rows[i], center) - rhs[i];
        RatVector w(n);
        for (int c = 0; c < n; ++c) w[c] = -rows[i][c] / b;
        dual_pts.push_back(std::move(w));
    }
    Polytope dual = hull(n, dual_pts);
    if (!dual.is_full_dim()) throw NotSpanning("outer_approx: directions do not span");
    std::vector<RatVector> verts;
    for (const auto& hs : dual.halfspaces()) {
        if (hs.offset >= 0) throw NotSpanning("outer_approx: unbounded intersection");
        RatVector y(n);
        for (int c = 0; c < n; ++c) y[c] = Rational(hs.normal[c]) / hs.offset + center[c];
        verts.push_back(std::move(y));
    }
    return hull(n, verts);
}

// The divisor data a b-divisor induces on one fan: one coefficient per ray,
// and the concavity verdict of the piecewise linear interpolation.
struct Incarnation {
    FanPtr fan;
    std::vector<Rational> coefficients; // a_rho = -h(v_rho)
    bool nef = false;
};

// The local wall-domination test: across each wall the linear extension from
// one side weakly dominates the values on the other side's opposite ray.
inline bool pl_interpolation_concave(const Fan& simplicial_fan,
                                     const std::vector<Rational>& ray_values) {
    std::vector<Wall> walls;
    if (!enumerate_walls(simplicial_fan, &walls))
        throw Error("incarnation: walls not paired");
    for (const auto& w : walls) {
        for (int side = 0; side < 2; ++side) {
            int cs = side == 0 ? w.cone_a : w.cone_b;
            int co = side == 0 ? w.cone_b : w.cone_a;
            auto duals = cone_dual_forms(simplicial_fan, cs);
            const auto& ids = simplicial_fan.max_cones()[cs].ray_ids;
            RatVector ell(simplicial_fan.dim(), Rational(0));
            for (size_t i = 0; i < duals.size(); ++i)
                ell = add(ell, scale(ray_values[ids[i]], duals[i]));
            // Opposite ray of the other cone.
            for (int id : simplicial_fan.max_cones()[co].ray_ids) {
                if (std::find(w.ray_ids.begin(), w.ray_ids.end(), id) != w.ray_ids.end())
                    continue;
                if (dot(ell, simplicial_fan.rays()[id]) < ray_values[id]) return false;
            }
        }
    }
    return true;
}

inline Incarnation incarnation(const SupportOracle& h, const FanPtr& f) {
    if (h.dim() != f->dim()) throw DimensionMismatch("incarnation: dimension");
    Incarnation inc;
    inc.fan = f;
    std::vector<Rational> values;
    for (const auto& r : f->rays()) values.push_back(h.eval(r));
    for (const auto& v : values) inc.coefficients.push_back(-v);

    bool simplicial = true;
    for (int ci = 0; ci < f->n_cones(); ++ci)
        if (!f->cone_is_simplicial(ci)) simplicial = false;
    if (simplicial) {
        inc.nef = pl_interpolation_concave(*f, values);
    } else {
        Fan s = simplicialize(*f);
        std::vector<Rational> vals(s.rays().size());
        for (size_t i = 0; i < s.rays().size(); ++i) {
            auto it = std::find(f->rays().begin(), f->rays().end(), s.rays()[i]);
            vals[i] = values[it - f->rays().begin()];
        }
        inc.nef = pl_interpolation_concave(s, vals);
    }
    return inc;
}

// True when the oracle coincides with its piecewise linear interpolation on
// every maximal cone. For concave conical h this is certified by a single
// interior probe per cone (a nonnegative concave function with an interior
// zero vanishes on the whole cone).
inline bool oracle_adapted(const SupportOracle& h, const Fan& simplicial_fan) {
    for (int ci = 0; ci < simplicial_fan.n_cones(); ++ci) {
        Rational sum_vals = 0;
        for (int id : simplicial_fan.max_cones()[ci].ray_ids)
            sum_vals += h.eval(simplicial_fan.rays()[id]);
        if (h.eval(simplicial_fan.cone_interior_point(ci)) != sum_vals) return false;
    }
    return true;
}

struct RefineResult {
    Fan fan;
    int depth = 0;
};

// Searches for a smooth refinement of `start` on which the incarnation is
// nef (and, when the oracle has known linearity regions, exactly piecewise
// linear). Polytope-backed and table oracles converge by refining with the
// body's own normal fan; curved oracles insert kink directions at violated
// walls and fail honestly at the depth limit.
inline RefineResult refine_until_nef(const OraclePtr& h, const Fan& start,
                                     int depth_limit = 64) {
    if (!is_smooth(start)) throw NotSmooth("refine_until_nef: start fan not smooth");
    auto lin = h->linearity_fan();
    Fan cur = start;
    for (int depth = 0;; ++depth) {
        Incarnation inc = incarnation(*h, make_fan(cur));
        bool ok = inc.nef && (!lin || oracle_adapted(*h, cur));
        if (ok) return RefineResult{cur, depth};
        if (depth >= depth_limit)
            throw DepthExceeded("refine_until_nef: depth limit " +
                                std::to_string(depth_limit) + " reached");
        if (lin) {
            cur = resolve(common_refinement(cur, *lin));
            continue;
        }
        // Insert kink directions across violated walls.
        std::vector<Rational> values;
        for (const auto& r : cur.rays()) values.push_back(h->eval(r));
        std::vector<Wall> walls;
        enumerate_walls(cur, &walls);
        std::vector<IntVector> inserts;
        for (const auto& w : walls) {
            IntVector opp(cur.dim(), 0);
            bool violated = false;
            for (int side = 0; side < 2 && !violated; ++side) {
                int cs = side == 0 ? w.cone_a : w.cone_b;
                int co = side == 0 ? w.cone_b : w.cone_a;
                auto duals = cone_dual_forms(cur, cs);
                const auto& ids = cur.max_cones()[cs].ray_ids;
                RatVector ell(cur.dim(), Rational(0));
                for (size_t i = 0; i < duals.size(); ++i)
                    ell = add(ell, scale(values[ids[i]], duals[i]));
                for (int id : cur.max_cones()[co].ray_ids) {
                    if (std::find(w.ray_ids.begin(), w.ray_ids.end(), id) !=
                        w.ray_ids.end())
                        continue;
                    if (dot(ell, cur.rays()[id]) < values[id]) violated = true;
                }
            }
            if (!violated) continue;
            // The two opposite rays straddle the wall; their sum crosses it.
            IntVector sum(cur.dim(), 0);
            for (int cc : {w.cone_a, w.cone_b}) {
                for (int id : cur.max_cones()[cc].ray_ids) {
                    if (std::find(w.ray_ids.begin(), w.ray_ids.end(), id) !=
                        w.ray_ids.end())
                        continue;
                    for (int c = 0; c < cur.dim(); ++c) sum[c] += cur.rays()[id][c];
                }
            }
            (void)opp;
            if (!bchow::is_zero(sum)) inserts.push_back(primitive(sum));
        }
        if (inserts.empty())
            throw DepthExceeded("refine_until_nef: no insertable kink direction");
        for (const auto& v : inserts) {
            bool present = std::find(cur.rays().begin(), cur.rays().end(), v) !=
                           cur.rays().end();
            if (!present) cur = stellar_subdivision(cur, v);
        }
        cur = resolve(cur);
    }
}

} // namespace bchow

#endif
