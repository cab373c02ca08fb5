#ifndef BCHOW_PPOLY_HPP
#define BCHOW_PPOLY_HPP

#include <functional>
#include <memory>
#include <vector>

#include "bchow/fan.hpp"
#include "bchow/polynomial.hpp"
#include "bchow/ratfun.hpp"

namespace bchow {

using FanPtr = std::shared_ptr<const Fan>;

inline FanPtr make_fan(Fan f) { return std::make_shared<const Fan>(std::move(f)); }

inline bool same_fan(const FanPtr& a, const FanPtr& b) {
    return a == b || *a == *b;
}

// Dual linear forms of a simplicial full-dimensional cone: m_i with
// <m_i, r_j> = delta_ij. Integral when the cone is unimodular.
inline std::vector<RatVector> cone_dual_forms(const Fan& f, int ci) {
    if (!f.cone_is_simplicial(ci)) throw NotSmooth("cone is not simplicial");
    const int n = f.dim();
    auto rays = f.cone_rays(ci);
    RatMatrix rt(n, RatVector(n)); // rows are rays
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) rt[i][c] = Rational(rays[i][c]);
    std::vector<RatVector> out(n);
    for (int i = 0; i < n; ++i) {
        RatVector e(n, Rational(0));
        e[i] = 1;
        auto sol = solve_linear(rt, e); // <m, r_j> = delta_ij as rows
        if (!sol.consistent || !sol.kernel.empty())
            throw Error("cone_dual_forms: singular ray matrix");
        out[i] = sol.solution;
    }
    return out;
}

// The polynomial representing the Courant product phi_sigma on sigma itself:
// the product of the cone's dual linear forms.
inline Polynomial cone_courant_polynomial(const Fan& f, int ci) {
    Polynomial p = Polynomial::constant(f.dim(), 1);
    for (const auto& m : cone_dual_forms(f, ci)) p = p * Polynomial::linear_form(m);
    return p;
}

// An element of R_Sigma: one polynomial per maximal cone, compatible across
// walls (the difference across a wall is divisible by the wall's defining
// linear form). Immutable.
class PiecewisePolynomial {
  public:
    PiecewisePolynomial(FanPtr fan, std::vector<Polynomial> parts)
        : fan_(std::move(fan)), parts_(std::move(parts)) {
        if (static_cast<int>(parts_.size()) != fan_->n_cones())
            throw FanMismatch("PiecewisePolynomial: one part per maximal cone");
        for (const auto& p : parts_)
            if (p.nvars() != fan_->dim())
                throw DimensionMismatch("PiecewisePolynomial: arity");
        validate_walls();
    }

    const FanPtr& fan() const { return fan_; }
    const std::vector<Polynomial>& parts() const { return parts_; }
    const Polynomial& part(int ci) const { return parts_[ci]; }

    bool is_zero() const {
        for (const auto& p : parts_)
            if (!p.is_zero()) return false;
        return true;
    }

    bool is_homogeneous(long degree) const {
        for (const auto& p : parts_)
            if (!p.is_homogeneous(degree)) return false;
        return true;
    }

    // Largest total degree over the parts (-1 for the zero function).
    long degree() const {
        long d = -1;
        for (const auto& p : parts_) d = std::max(d, p.total_degree());
        return d;
    }

    Rational eval(const RatVector& u) const {
        return parts_[locate(*fan_, u)].eval(u);
    }

    friend PiecewisePolynomial operator+(const PiecewisePolynomial& a,
                                         const PiecewisePolynomial& b) {
        a.check(b);
        std::vector<Polynomial> parts;
        for (size_t i = 0; i < a.parts_.size(); ++i) parts.push_back(a.parts_[i] + b.parts_[i]);
        return PiecewisePolynomial(a.fan_, std::move(parts), false);
    }

    friend PiecewisePolynomial operator-(const PiecewisePolynomial& a,
                                         const PiecewisePolynomial& b) {
        a.check(b);
        std::vector<Polynomial> parts;
        for (size_t i = 0; i < a.parts_.size(); ++i) parts.push_back(a.parts_[i] - b.parts_[i]);
        return PiecewisePolynomial(a.fan_, std::move(parts), false);
    }

    friend PiecewisePolynomial operator*(const PiecewisePolynomial& a,
                                         const PiecewisePolynomial& b) {
        a.check(b);
        std::vector<Polynomial> parts;
        for (size_t i = 0; i < a.parts_.size(); ++i) parts.push_back(a.parts_[i] * b.parts_[i]);
        return PiecewisePolynomial(a.fan_, std::move(parts), false);
    }

    friend PiecewisePolynomial operator*(const Rational& c, const PiecewisePolynomial& p) {
        std::vector<Polynomial> parts;
        for (const auto& q : p.parts_) parts.push_back(c * q);
        return PiecewisePolynomial(p.fan_, std::move(parts), false);
    }

    bool operator==(const PiecewisePolynomial& o) const {
        return same_fan(fan_, o.fan_) && parts_ == o.parts_;
    }
    bool operator!=(const PiecewisePolynomial& o) const { return !(*this == o); }

  private:
    // Wall-compatible by construction for ring operations.
    PiecewisePolynomial(FanPtr fan, std::vector<Polynomial> parts, bool)
        : fan_(std::move(fan)), parts_(std::move(parts)) {}

    void check(const PiecewisePolynomial& o) const {
        if (!same_fan(fan_, o.fan_)) throw FanMismatch("piecewise polynomials on different fans");
    }

    void validate_walls() const {
        std::vector<Wall> walls;
        if (!enumerate_walls(*fan_, &walls))
            throw Error("PiecewisePolynomial: fan walls are not paired");
        for (const auto& w : walls) {
            Polynomial diff = parts_[w.cone_a] - parts_[w.cone_b];
            if (diff.is_zero()) continue;
            Polynomial lw = Polynomial::linear_form(to_rat(w.normal_a));
            if (!poly_divides(lw, diff))
                throw Error("PiecewisePolynomial: wall compatibility violated");
        }
    }

    friend PiecewisePolynomial pp_trusted(FanPtr fan, std::vector<Polynomial> parts);

    FanPtr fan_;
    std::vector<Polynomial> parts_;
};

// Internal constructor for pieces that are wall-compatible by construction.
inline PiecewisePolynomial pp_trusted(FanPtr fan, std::vector<Polynomial> parts) {
    return PiecewisePolynomial(std::move(fan), std::move(parts), false);
}

inline PiecewisePolynomial pp_constant(const FanPtr& fan, const Rational& c) {
    std::vector<Polynomial> parts(fan->n_cones(), Polynomial::constant(fan->dim(), c));
    return pp_trusted(fan, std::move(parts));
}

// A global polynomial viewed piecewise.
inline PiecewisePolynomial pp_global(const FanPtr& fan, const Polynomial& p) {
    std::vector<Polynomial> parts(fan->n_cones(), p);
    return pp_trusted(fan, std::move(parts));
}

// The piecewise linear function on a simplicial fan taking the given values
// at the primitive ray generators. Wall compatibility is automatic.
inline PiecewisePolynomial pp_from_ray_values(const FanPtr& fan,
                                              const std::vector<Rational>& values) {
    if (values.size() != fan->rays().size())
        throw DimensionMismatch("pp_from_ray_values: one value per ray");
    std::vector<Polynomial> parts;
    for (int ci = 0; ci < fan->n_cones(); ++ci) {
        auto duals = cone_dual_forms(*fan, ci);
        RatVector m(fan->dim(), Rational(0));
        const auto& ids = fan->max_cones()[ci].ray_ids;
        for (size_t i = 0; i < duals.size(); ++i) {
            if (values[ids[i]] != 0) m = add(m, scale(values[ids[i]], duals[i]));
        }
        parts.push_back(Polynomial::linear_form(m));
    }
    return pp_trusted(fan, std::move(parts));
}

// Courant function of a ray: 1 at the given primitive ray generator, 0 at
// all others. Requires a smooth fan.
inline PiecewisePolynomial courant_ray(const FanPtr& fan, int ray_id) {
    if (!is_smooth(*fan)) throw NotSmooth("courant_ray: fan not smooth");
    if (ray_id < 0 || ray_id >= static_cast<int>(fan->rays().size()))
        throw Error("courant_ray: ray id out of range");
    std::vector<Rational> values(fan->rays().size(), Rational(0));
    values[ray_id] = 1;
    return pp_from_ray_values(fan, values);
}

// Courant function of a cone given by ray ids: the product of its rays'
// Courant functions; the empty product is the constant 1.
inline PiecewisePolynomial courant_cone(const FanPtr& fan, const std::vector<int>& ray_ids) {
    if (!is_smooth(*fan)) throw NotSmooth("courant_cone: fan not smooth");
    PiecewisePolynomial out = pp_constant(fan, 1);
    for (int id : ray_ids) out = out * courant_ray(fan, id);
    return out;
}

inline PiecewisePolynomial pp_mul(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return a * b;
}

// Restriction of f to a refinement of its fan.
inline PiecewisePolynomial pullback(const PiecewisePolynomial& f, const FanPtr& target) {
    if (!refines(*target, *f.fan())) throw NotARefinement("pullback: target must refine");
    std::vector<Polynomial> parts;
    for (int ci = 0; ci < target->n_cones(); ++ci) {
        auto rays = target->cone_rays(ci);
        int found = -1;
        for (int cj = 0; cj < f.fan()->n_cones() && found < 0; ++cj) {
            bool all = true;
            for (const auto& r : rays)
                if (!f.fan()->cone_contains(cj, r)) {
                    all = false;
                    break;
                }
            if (all) found = cj;
        }
        if (found < 0) throw NotARefinement("pullback: cone not covered");
        parts.push_back(f.part(found));
    }
    return pp_trusted(target, parts);
}

// Brion's combinatorial push-forward to a coarser smooth fan: on a maximal
// cone sigma of the target,
//   pi(f)_sigma = phi_sigma * sum over maximal sigma' inside sigma of
//                 f_{sigma'} / phi_{sigma'},
// assembled over the common denominator and certified polynomial by exact
// division.
inline PiecewisePolynomial pushforward(const PiecewisePolynomial& f, const FanPtr& target) {
    const FanPtr& src = f.fan();
    if (!refines(*src, *target)) throw NotARefinement("pushforward: source must refine target");
    if (!is_smooth(*src) || !is_smooth(*target))
        throw NotSmooth("pushforward: both fans must be smooth");
    if (same_fan(src, target)) return pp_trusted(target, f.parts());

    std::vector<Polynomial> out_parts;
    for (int cj = 0; cj < target->n_cones(); ++cj) {
        std::vector<int> fine;
        for (int ci = 0; ci < src->n_cones(); ++ci) {
            bool all = true;
            for (const auto& r : src->cone_rays(ci))
                if (!target->cone_contains(cj, r)) {
                    all = false;
                    break;
                }
            if (all) fine.push_back(ci);
        }
        if (fine.empty()) throw NotARefinement("pushforward: empty fiber");
        std::vector<Polynomial> dens;
        dens.reserve(fine.size());
        for (int ci : fine) dens.push_back(cone_courant_polynomial(*src, ci));
        const size_t k = fine.size();
        // Prefix/suffix products for sum_j f_j * prod_{l != j} d_l.
        std::vector<Polynomial> pre(k + 1, Polynomial::constant(src->dim(), 1));
        std::vector<Polynomial> suf(k + 1, Polynomial::constant(src->dim(), 1));
        for (size_t j = 0; j < k; ++j) pre[j + 1] = pre[j] * dens[j];
        for (size_t j = k; j-- > 0;) suf[j] = suf[j + 1] * dens[j];
        Polynomial num(src->dim());
        for (size_t j = 0; j < k; ++j) num += f.part(fine[j]) * pre[j] * suf[j + 1];
        Polynomial result = poly_divide_exact(cone_courant_polynomial(*target, cj) * num,
                                              pre[k]);
        out_parts.push_back(std::move(result));
    }
    return PiecewisePolynomial(target, std::move(out_parts));
}

// Basis of the homogeneous slice R_{Sigma, d}, as coefficient vectors in the
// (cone, grlex monomial) coordinate system, via the wall constraints.
namespace detail {

inline std::vector<Exponent> monomials_of_degree(int nvars, int d) {
    std::vector<Exponent> out;
    if (nvars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    Exponent e(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars - 1) {
            e[pos] = left;
            out.push_back(e);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, d);
    return out;
}

struct SliceCoords {
    std::vector<Exponent> monomials;
    int n_cones = 0;

    size_t width() const { return monomials.size() * n_cones; }

    RatVector to_vector(const PiecewisePolynomial& f) const {
        RatVector v(width(), Rational(0));
        for (int ci = 0; ci < n_cones; ++ci) {
            for (size_t mi = 0; mi < monomials.size(); ++mi) {
                v[ci * monomials.size() + mi] = f.part(ci).coeff(monomials[mi]);
            }
        }
        return v;
    }

    PiecewisePolynomial to_pp(const FanPtr& fan, const RatVector& v) const {
        std::vector<Polynomial> parts;
        for (int ci = 0; ci < n_cones; ++ci) {
            Polynomial p(fan->dim());
            for (size_t mi = 0; mi < monomials.size(); ++mi) {
                p.set_coeff(monomials[mi], v[ci * monomials.size() + mi]);
            }
            parts.push_back(std::move(p));
        }
        return pp_trusted(fan, std::move(parts));
    }
};

inline SliceCoords slice_coords(const Fan& f, int d) {
    SliceCoords sc;
    sc.monomials = monomials_of_degree(f.dim(), d);
    sc.n_cones = f.n_cones();
    return sc;
}

// Spanning set of R_{Sigma,d} from the wall-compatibility nullspace.
inline std::vector<RatVector> slice_basis(const Fan& f, int d) {
    SliceCoords sc = slice_coords(f, d);
    std::vector<Wall> walls;
    if (!enumerate_walls(f, &walls)) throw Error("slice_basis: unpaired walls");
    const int n = f.dim();
    auto target_monos = monomials_of_degree(n - 1, d);

    RatMatrix rows;
    for (const auto& w : walls) {
        // Parametrize the wall span by its rays.
        std::vector<RatVector> basis; // n rows, (n-1) cols
        basis.assign(n, RatVector(n - 1, Rational(0)));
        for (size_t bi = 0; bi < w.ray_ids.size(); ++bi) {
            const auto& r = f.rays()[w.ray_ids[bi]];
            for (int c = 0; c < n; ++c) basis[c][bi] = Rational(r[c]);
        }
        if (static_cast<int>(w.ray_ids.size()) != n - 1)
            throw NotSmooth("slice_basis: fan must be simplicial");
        // For each source monomial, its composed expansion on the wall.
        for (const auto& tm : target_monos) {
            RatVector row(sc.width(), Rational(0));
            for (size_t mi = 0; mi < sc.monomials.size(); ++mi) {
                Polynomial mono(n);
                mono.set_coeff(sc.monomials[mi], Rational(1));
                Polynomial comp = mono.compose_linear(basis);
                Rational c = comp.coeff(tm);
                if (c == 0) continue;
                row[w.cone_a * sc.monomials.size() + mi] += c;
                row[w.cone_b * sc.monomials.size() + mi] -= c;
            }
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) {
        // Single-wall-free fan cannot happen for complete fans; treat all
        // coefficient vectors as compatible.
        rows.push_back(RatVector(sc.width(), Rational(0)));
    }
    auto sol = solve_linear(rows, RatVector(rows.size(), Rational(0)));
    return sol.kernel;
}

} // namespace detail

// Echelonized basis of the degree-ell piece of the ideal M_Q R_Sigma inside
// R_{Sigma, ell}: the span of u_i * g over g in R_{Sigma, ell-1}.
inline EchelonBasis linear_ideal_basis(const FanPtr& fan, int ell) {
    detail::SliceCoords sc = detail::slice_coords(*fan, ell);
    EchelonBasis eb(sc.width());
    if (ell == 0) return eb;
    auto lower = detail::slice_basis(*fan, ell - 1);
    detail::SliceCoords lo = detail::slice_coords(*fan, ell - 1);
    for (const auto& gv : lower) {
        PiecewisePolynomial g = lo.to_pp(fan, gv);
        for (int i = 0; i < fan->dim(); ++i) {
            PiecewisePolynomial ug =
                pp_global(fan, Polynomial::variable(fan->dim(), i)) * g;
            eb.insert(sc.to_vector(ug));
        }
    }
    return eb;
}

// Canonical coset representative of a homogeneous piecewise polynomial
// modulo the ideal generated by global linear forms.
inline PiecewisePolynomial reduce_mod_linear(const PiecewisePolynomial& f) {
    if (!is_smooth(*f.fan())) throw NotSmooth("reduce_mod_linear: fan not smooth");
    long d = f.degree();
    if (d < 0) return f;
    if (!f.is_homogeneous(d)) throw DegreeMismatch("reduce_mod_linear: not homogeneous");
    detail::SliceCoords sc = detail::slice_coords(*f.fan(), static_cast<int>(d));
    EchelonBasis eb = linear_ideal_basis(f.fan(), static_cast<int>(d));
    return sc.to_pp(f.fan(), eb.reduce(sc.to_vector(f)));
}

namespace detail {

// A rational point off every cone's dual-form hyperplanes.
inline RatVector generic_point(const Fan& f) {
    for (long t = 2; t < 4000; ++t) {
        RatVector u(f.dim());
        Rational p = 1;
        for (int c = 0; c < f.dim(); ++c) {
            p *= Rational(t) / Rational(t + 2 + c);
            u[c] = p;
        }
        bool ok = true;
        for (int ci = 0; ci < f.n_cones() && ok; ++ci) {
            for (const auto& m : cone_dual_forms(f, ci)) {
                if (dot(m, u) == 0) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return u;
    }
    throw Error("generic_point: search exhausted");
}

} // namespace detail

// The degree functional on top-degree classes, normalized so that every
// maximal-cone Courant product has degree 1. Computed by Brion's localized
// sum sum_sigma f_sigma / phi_sigma, which is a constant rational function
// for wall-compatible top-degree inputs; evaluated at two generic points as
// a consistency certificate.
inline Rational degree_functional(const PiecewisePolynomial& f) {
    const Fan& fan = *f.fan();
    if (!is_smooth(fan)) throw NotSmooth("degree_functional: fan not smooth");
    const int n = fan.dim();
    if (f.is_zero()) return 0;
    if (!f.is_homogeneous(n)) throw DegreeMismatch("degree_functional: degree must be n");

    auto eval_at = [&](const RatVector& u) {
        Rational s = 0;
        for (int ci = 0; ci < fan.n_cones(); ++ci) {
            Rational den = 1;
            for (const auto& m : cone_dual_forms(fan, ci)) den *= dot(m, u);
            s += f.part(ci).eval(u) / den;
        }
        return s;
    };

    RatVector u1 = detail::generic_point(fan);
    RatVector u2 = scale(rat(3, 7), u1);
    // A second, non-proportional sample.
    RatVector u3 = u1;
    u3[0] = u3[0] * rat(9, 11);
    Rational v1 = eval_at(u1);
    if (eval_at(u2) != v1) throw Error("degree_functional: localization not constant");
    bool ok = true;
    for (int ci = 0; ci < fan.n_cones() && ok; ++ci)
        for (const auto& m : cone_dual_forms(fan, ci))
            if (dot(m, u3) == 0) ok = false;
    if (ok && eval_at(u3) != v1)
        throw Error("degree_functional: localization not constant");
    return v1;
}

// Secondary route for the degree: the coefficient c with
// f = c * phi_{sigma_0} modulo the linear ideal, by exact linear algebra.
// Must agree with degree_functional; used for cross-validation.
inline Rational degree_via_reduction(const PiecewisePolynomial& f, int sigma0 = 0) {
    const FanPtr& fan = f.fan();
    if (!is_smooth(*fan)) throw NotSmooth("degree_via_reduction: fan not smooth");
    const int n = fan->dim();
    if (!f.is_homogeneous(n)) throw DegreeMismatch("degree_via_reduction: degree must be n");
    PiecewisePolynomial phi = courant_cone(fan, fan->max_cones()[sigma0].ray_ids);
    PiecewisePolynomial rf = reduce_mod_linear(f);
    PiecewisePolynomial rp = reduce_mod_linear(phi);
    if (rp.is_zero()) throw Error("degree_via_reduction: point class reduces to zero");
    // rf = c * rp componentwise.
    Rational c = 0;
    bool set = false;
    for (int ci = 0; ci < fan->n_cones(); ++ci) {
        for (const auto& [e, coef] : rp.part(ci).terms()) {
            Rational num = rf.part(ci).coeff(e);
            Rational ratio = num / coef;
            if (!set) {
                c = ratio;
                set = true;
            } else if (c != ratio) {
                throw Error("degree_via_reduction: classes not proportional");
            }
        }
    }
    PiecewisePolynomial residue = rf - c * rp;
    if (!residue.is_zero()) throw Error("degree_via_reduction: nonzero residue");
    return c;
}

// A Chow class presented on one fan: homogeneous components of degree 0..n.
class ChowClass {
  public:
    ChowClass(FanPtr fan, std::vector<PiecewisePolynomial> components)
        : fan_(std::move(fan)), components_(std::move(components)) {
        if (static_cast<int>(components_.size()) != fan_->dim() + 1)
            throw DimensionMismatch("ChowClass: need components 0..n");
        for (int l = 0; l <= fan_->dim(); ++l) {
            if (!same_fan(components_[l].fan(), fan_))
                throw FanMismatch("ChowClass: component fan mismatch");
            if (!components_[l].is_zero() && !components_[l].is_homogeneous(l))
                throw DegreeMismatch("ChowClass: component degree");
        }
    }

    static ChowClass zero(const FanPtr& fan) {
        std::vector<PiecewisePolynomial> comps(fan->dim() + 1, pp_constant(fan, 0));
        return ChowClass(fan, std::move(comps));
    }

    static ChowClass unit(const FanPtr& fan) {
        ChowClass z = zero(fan);
        z.components_[0] = pp_constant(fan, 1);
        return z;
    }

    const FanPtr& fan() const { return fan_; }
    const std::vector<PiecewisePolynomial>& components() const { return components_; }
    const PiecewisePolynomial& component(int l) const { return components_[l]; }

    bool is_zero() const {
        for (const auto& c : components_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend ChowClass operator+(const ChowClass& a, const ChowClass& b) {
        a.check(b);
        std::vector<PiecewisePolynomial> comps;
        for (size_t l = 0; l < a.components_.size(); ++l)
            comps.push_back(a.components_[l] + b.components_[l]);
        return ChowClass(a.fan_, std::move(comps));
    }

    friend ChowClass operator-(const ChowClass& a, const ChowClass& b) {
        a.check(b);
        std::vector<PiecewisePolynomial> comps;
        for (size_t l = 0; l < a.components_.size(); ++l)
            comps.push_back(a.components_[l] - b.components_[l]);
        return ChowClass(a.fan_, std::move(comps));
    }

    friend ChowClass operator*(const Rational& c, const ChowClass& a) {
        std::vector<PiecewisePolynomial> comps;
        for (const auto& comp : a.components_) comps.push_back(c * comp);
        return ChowClass(a.fan_, std::move(comps));
    }

    // Graded product, truncated beyond degree n.
    friend ChowClass operator*(const ChowClass& a, const ChowClass& b) {
        a.check(b);
        const int n = a.fan_->dim();
        ChowClass out = zero(a.fan_);
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; i + j <= n; ++j) {
                if (a.components_[i].is_zero() || b.components_[j].is_zero()) continue;
                out.components_[i + j] =
                    out.components_[i + j] + a.components_[i] * b.components_[j];
            }
        }
        return out;
    }

    bool operator==(const ChowClass& o) const {
        return same_fan(fan_, o.fan_) && components_ == o.components_;
    }
    bool operator!=(const ChowClass& o) const { return !(*this == o); }

    ChowClass reduced() const {
        std::vector<PiecewisePolynomial> comps;
        for (const auto& c : components_) comps.push_back(reduce_mod_linear(c));
        return ChowClass(fan_, std::move(comps));
    }

    Rational top_degree_value() const {
        return degree_functional(components_[fan_->dim()]);
    }

  private:
    void check(const ChowClass& o) const {
        if (!same_fan(fan_, o.fan_)) throw FanMismatch("ChowClass: fan mismatch");
    }

    FanPtr fan_;
    std::vector<PiecewisePolynomial> components_;
};

inline ChowClass pushforward(const ChowClass& c, const FanPtr& target) {
    std::vector<PiecewisePolynomial> comps;
    for (const auto& comp : c.components()) comps.push_back(pushforward(comp, target));
    return ChowClass(target, std::move(comps));
}

// exp of a piecewise linear function, truncated at degree n.
inline ChowClass exp_class_of(const PiecewisePolynomial& h) {
    const FanPtr& fan = h.fan();
    if (!h.is_zero() && !h.is_homogeneous(1))
        throw DegreeMismatch("exp_class_of: input must be piecewise linear");
    std::vector<PiecewisePolynomial> comps;
    PiecewisePolynomial cur = pp_constant(fan, 1);
    Rational fact = 1;
    for (int l = 0; l <= fan->dim(); ++l) {
        if (l > 0) {
            cur = cur * h;
            fact *= l;
        }
        comps.push_back(Rational(1 / fact) * cur);
    }
    return ChowClass(fan, std::move(comps));
}

} // namespace bchow

#endif
