#ifndef BCHOW_ALGEBRA_HPP
#define BCHOW_ALGEBRA_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "bchow/bodies.hpp"
#include "bchow/ppoly.hpp"

namespace bchow {

// Translation normalization: shift the body so that its support function
// vanishes at the standard basis directions. Any two translates of the same
// body normalize to the same oracle.
inline OraclePtr normalize_translation(const OraclePtr& h) {
    const int n = h->dim();
    RatVector t(n);
    bool zero = true;
    for (int i = 0; i < n; ++i) {
        RatVector e(n, Rational(0));
        e[i] = 1;
        t[i] = -h->eval(e);
        if (t[i] != 0) zero = false;
    }
    return zero ? h : translate_oracle(t, h);
}

// An element of the convex-set algebra: a Q-linear combination of generator
// classes [K]. Products of generators collapse eagerly through Minkowski
// sums, so every word has length one; bodies are translation-normalized.
class AlgebraElement {
  public:
    struct Term {
        Rational coeff;
        OraclePtr body;
    };

    explicit AlgebraElement(int n) : n_(n) {}

    static AlgebraElement zero(int n) { return AlgebraElement(n); }

    static AlgebraElement unit(int n) {
        AlgebraElement e(n);
        e.add_term(1, point_body(n));
        return e;
    }

    int dim() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Rational& c, const OraclePtr& body) {
        if (c == 0) return;
        std::string k = body->key();
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            if (it->body->key() == k) {
                it->coeff += c;
                if (it->coeff == 0) terms_.erase(it);
                return;
            }
        }
        terms_.push_back({c, body});
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return a.body->key() < b.body->key(); });
    }

    // Sum of all coefficients: the coefficient of 1 under iota in degree 0.
    Rational degree_zero_part() const {
        Rational s = 0;
        for (const auto& t : terms_) s += t.coeff;
        return s;
    }

    static OraclePtr point_body(int n) {
        RatVector origin(n, Rational(0));
        return oracle_from_polytope(hull(n, {origin}));
    }

    // Structural equality of normalized term lists.
    bool operator==(const AlgebraElement& o) const {
        if (n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].coeff != o.terms_[i].coeff) return false;
            if (terms_[i].body->key() != o.terms_[i].body->key()) return false;
        }
        return true;
    }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  private:
    int n_;
    std::vector<Term> terms_;
};

inline AlgebraElement cls(const OraclePtr& body) {
    AlgebraElement e(body->dim());
    e.add_term(1, normalize_translation(body));
    return e;
}

// The class of a polytope; the empty polytope maps to 0.
inline AlgebraElement cls(const Polytope& p) {
    if (p.is_empty()) return AlgebraElement::zero(p.ambient_dim());
    return cls(oracle_from_polytope(p));
}

inline AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("algebra add: dimension");
    AlgebraElement out = a;
    for (const auto& t : b.terms()) out.add_term(t.coeff, t.body);
    return out;
}

inline AlgebraElement scale(const Rational& c, const AlgebraElement& a) {
    AlgebraElement out(a.dim());
    for (const auto& t : a.terms()) out.add_term(c * t.coeff, t.body);
    return out;
}

inline AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
    return add(a, scale(-1, b));
}

inline AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("algebra mul: dimension");
    AlgebraElement out(a.dim());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            out.add_term(ta.coeff * tb.coeff, minkowski_oracle(ta.body, tb.body));
        }
    }
    return out;
}

inline AlgebraElement pow(const AlgebraElement& a, int k) {
    AlgebraElement out = AlgebraElement::unit(a.dim());
    for (int i = 0; i < k; ++i) out = mul(out, a);
    return out;
}

namespace detail {

inline bool is_point_body(const OraclePtr& h) {
    auto p = h->backing_polytope();
    return p && p->dim() == 0;
}

} // namespace detail

// The truncated logarithm of a generator class, via the nilpotency of
// ([K] - 1): log[K] = sum_{r=1}^{n} (-1)^{r+1} ([K]-1)^r / r.
inline AlgebraElement log_class(const AlgebraElement& a) {
    if (a.terms().size() != 1 || a.terms()[0].coeff != 1)
        throw NotAGenerator("log_class: expected a single generator class");
    const int n = a.dim();
    const OraclePtr& body = a.terms()[0].body;
    if (detail::is_point_body(body)) return AlgebraElement::zero(n);
    // Coefficient of [jK]: sum over r of (-1)^{r+1}/r * C(r,j) (-1)^{r-j}.
    AlgebraElement out(n);
    std::vector<Rational> coeff(n + 1, Rational(0));
    for (int r = 1; r <= n; ++r) {
        Rational lead = rat((r % 2 == 0) ? -1 : 1, r);
        Rational binom = 1;
        for (int j = 0; j <= r; ++j) {
            Rational sign = ((r - j) % 2 == 0) ? 1 : -1;
            coeff[j] += lead * binom * sign;
            binom = binom * Rational(r - j) / Rational(j + 1);
        }
    }
    for (int j = 0; j <= n; ++j) {
        if (coeff[j] == 0) continue;
        out.add_term(coeff[j], j == 0 ? AlgebraElement::point_body(n)
                                      : scale_oracle(rat(j), body));
    }
    return out;
}

// Truncated exponential; requires vanishing degree-zero part.
inline AlgebraElement exp_class(const AlgebraElement& a) {
    if (a.degree_zero_part() != 0)
        throw NonNilpotentInput("exp_class: nonzero degree-0 part");
    const int n = a.dim();
    AlgebraElement out = AlgebraElement::unit(n);
    AlgebraElement power = AlgebraElement::unit(n);
    Rational fact = 1;
    for (int r = 1; r <= n; ++r) {
        power = mul(power, a);
        fact *= r;
        out = add(out, scale(1 / fact, power));
    }
    return out;
}

// The level-l graded part: each generator contributes (log[K])^l / l!.
inline AlgebraElement graded_component(const AlgebraElement& a, int level) {
    const int n = a.dim();
    if (level < 0 || level > n)
        throw LevelOutOfRange("graded_component: level outside 0..n");
    AlgebraElement out(n);
    Rational fact = 1;
    for (int r = 1; r <= level; ++r) fact *= r;
    for (const auto& t : a.terms()) {
        if (detail::is_point_body(t.body)) {
            if (level == 0) out = add(out, scale(t.coeff, AlgebraElement::unit(n)));
            continue;
        }
        AlgebraElement gen(n);
        gen.add_term(1, t.body);
        AlgebraElement lg = log_class(gen);
        out = add(out, scale(t.coeff / fact, pow(lg, level)));
    }
    return out;
}

struct IotaOptions {
    int depth_limit = 64;
    long resolve_limit = 4096;
};

namespace detail {

// A smooth complete fan refining `base` and adapted to every body: support
// functions with known linearity regions become exactly piecewise linear,
// curved oracles get nef incarnations via kink refinement.
inline Fan common_adapted_fan(const std::vector<OraclePtr>& bodies, const Fan& base,
                              const IotaOptions& opt) {
    Fan acc = is_smooth(base) ? base : resolve(base, opt.resolve_limit);
    for (const auto& h : bodies) {
        if (auto lin = h->linearity_fan()) {
            if (!refines(acc, *lin))
                acc = resolve(common_refinement(acc, *lin), opt.resolve_limit);
        }
    }
    // Curved oracles: iterate until every one is nef on the accumulated fan.
    for (int round = 0; round <= opt.depth_limit; ++round) {
        bool stable = true;
        for (const auto& h : bodies) {
            if (h->linearity_fan()) continue;
            auto r = refine_until_nef(h, acc, opt.depth_limit);
            if (r.depth > 0) {
                acc = r.fan;
                stable = false;
            }
        }
        if (stable) return acc;
    }
    throw DepthExceeded("common_adapted_fan: nef refinement did not stabilize");
}

// The Chow class of the incarnation divisor: the piecewise linear function
// with value a_rho = -h(v_rho) at each ray (the coefficient-weighted sum of
// ray Courant functions). Exponentiating this class, rather than the
// min-convention support function itself, keeps top degrees equal to mixed
// volumes in every dimension.
inline PiecewisePolynomial divisor_class_pp(const SupportOracle& h, const FanPtr& fan) {
    std::vector<Rational> values;
    for (const auto& r : fan->rays()) values.push_back(-h.eval(r));
    return pp_from_ray_values(fan, values);
}

} // namespace detail

// The embedding into fan-level Chow classes: each generator [K] maps to
// exp(D_K) on a common adapted refinement, pushed forward to the target.
inline ChowClass iota(const AlgebraElement& a, const FanPtr& target,
                      const IotaOptions& opt = {}) {
    if (!is_smooth(*target)) throw NotSmooth("iota: target fan not smooth");
    std::vector<OraclePtr> bodies;
    for (const auto& t : a.terms()) bodies.push_back(t.body);
    if (bodies.empty()) return ChowClass::zero(target);
    FanPtr big = make_fan(detail::common_adapted_fan(bodies, *target, opt));
    ChowClass acc = ChowClass::zero(big);
    for (const auto& t : a.terms()) {
        ChowClass e = exp_class_of(detail::divisor_class_pp(*t.body, big));
        acc = acc + t.coeff * e;
    }
    if (same_fan(big, target)) return acc;
    return pushforward(acc, target);
}

// Exact or interval degree of a top-level element.
struct DegreeResult {
    bool exact = true;
    Rational value;          // exact mode
    Rational lo, hi;         // limit mode: bracketing interval
    Rational last, previous; // limit mode: last two schedule values
};

namespace detail {

// Vanishing of every lower-level component as a function. For piecewise
// linear bodies this is decided exactly on the common refinement of their
// linearity fans, cone by cone, with no smoothing needed; curved oracles
// fall back to exact sampling at deterministic rational points.
inline bool lower_components_vanish(const AlgebraElement& a, const IotaOptions& opt) {
    (void)opt;
    const int n = a.dim();
    bool all_pl = true;
    for (const auto& t : a.terms())
        if (!t.body->linearity_fan()) all_pl = false;
    if (all_pl && !a.terms().empty()) {
        std::optional<Fan> acc;
        for (const auto& t : a.terms()) {
            Fan lin = *t.body->linearity_fan();
            if (!acc) {
                acc = lin;
            } else if (!refines(*acc, lin)) {
                acc = common_refinement(*acc, lin);
            }
        }
        // On each maximal cone every body is linear; fit the linear form
        // from the ray values and test the polynomial identity per level.
        for (int ci = 0; ci < acc->n_cones(); ++ci) {
            auto rays = acc->cone_rays(ci);
            RatMatrix m;
            for (const auto& r : rays) m.push_back(to_rat(r));
            std::vector<Polynomial> forms;
            for (const auto& t : a.terms()) {
                RatVector vals;
                for (const auto& r : rays) vals.push_back(t.body->eval(r));
                auto sol = solve_linear(m, vals);
                if (!sol.consistent)
                    throw Error("deg_top: body not linear on its linearity fan");
                forms.push_back(Polynomial::linear_form(sol.solution));
            }
            for (int l = 0; l < n; ++l) {
                Polynomial s(n);
                for (size_t j = 0; j < forms.size(); ++j)
                    s += a.terms()[j].coeff * forms[j].pow(l);
                if (!s.is_zero()) return false;
            }
        }
        return true;
    }
    // Sampled check at deterministic rational points.
    for (int l = 0; l < n; ++l) {
        for (long t = 2; t < 26; ++t) {
            RatVector u(n);
            for (int c = 0; c < n; ++c)
                u[c] = rat((t * (c + 3)) % 17 - 8, t + c + 1);
            Rational s = 0;
            for (const auto& term : a.terms()) {
                Rational hv = term.body->eval(u);
                Rational p = 1;
                for (int k = 0; k < l; ++k) p *= hv;
                s += term.coeff * p;
            }
            if (s != 0) return false;
        }
    }
    return true;
}

} // namespace detail

inline DegreeResult deg_top_exact(const AlgebraElement& a, const IotaOptions& opt = {}) {
    if (!detail::lower_components_vanish(a, opt))
        throw NotTopDegree("deg_top: lower graded components do not vanish");
    DegreeResult out;
    out.exact = true;
    out.value = 0;
    for (const auto& t : a.terms()) {
        auto p = t.body->backing_polytope();
        if (!p)
            throw Error("deg_top: exact mode requires polytope-backed bodies");
        out.value += t.coeff * volume(*p);
    }
    return out;
}

struct LimitOptions {
    Rational tolerance = rat(1, 1000);
    std::vector<long> schedule = {1, 2, 4, 8, 16};
};

inline DegreeResult deg_top_limit(const AlgebraElement& a, const LimitOptions& lim = {},
                                  const IotaOptions& opt = {}) {
    if (!detail::lower_components_vanish(a, opt))
        throw NotTopDegree("deg_top: lower graded components do not vanish");
    const int n = a.dim();
    DegreeResult out;
    out.exact = false;
    bool have_prev = false;
    Rational prev;
    for (long d : lim.schedule) {
        auto dirs = primitive_directions(n, d);
        Rational e = 0;
        for (const auto& t : a.terms()) {
            Rational v;
            if (auto p = t.body->backing_polytope()) {
                v = volume(*p);
            } else {
                v = volume(outer_approx(*t.body, dirs));
            }
            e += t.coeff * v;
        }
        if (have_prev) {
            Rational delta = abs(e - prev);
            if (delta < lim.tolerance) {
                out.last = e;
                out.previous = prev;
                out.lo = e - delta;
                out.hi = e + delta;
                return out;
            }
        }
        prev = e;
        have_prev = true;
    }
    throw ToleranceNotReached("deg_top: schedule exhausted before tolerance");
}

struct EqualAtResult {
    bool equal = false;
    bool exact_certificate = false;
};

// Compare iota images componentwise after reduction. The certificate is
// exact when every generator is polytope-backed and piecewise linear on the
// given fan (the isomorphism hypothesis); otherwise equality is reported as
// a necessary condition only.
inline EqualAtResult equal_at(const AlgebraElement& a, const AlgebraElement& b,
                              const FanPtr& fan, const IotaOptions& opt = {}) {
    if (a.dim() != b.dim()) throw DimensionMismatch("equal_at: dimension");
    EqualAtResult out;
    ChowClass ca = iota(a, fan, opt).reduced();
    ChowClass cb = iota(b, fan, opt).reduced();
    out.equal = ca == cb;
    out.exact_certificate = true;
    for (const auto& t : a.terms()) {
        if (!t.body->backing_polytope() || !oracle_adapted(*t.body, *fan))
            out.exact_certificate = false;
    }
    for (const auto& t : b.terms()) {
        if (!t.body->backing_polytope() || !oracle_adapted(*t.body, *fan))
            out.exact_certificate = false;
    }
    return out;
}

} // namespace bchow

#endif
