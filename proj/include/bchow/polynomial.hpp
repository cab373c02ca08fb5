#ifndef BCHOW_POLYNOMIAL_HPP
#define BCHOW_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "bchow/rational.hpp"

namespace bchow {

using Exponent = std::vector<int>;

// Graded lexicographic order: total degree first, then lex. This is the
// canonical term order for serialization repo-wide.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        long da = 0, db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        if (da != db) return da < db;
        return a < b;
    }
};

// Multivariate polynomial over Q with a fixed number of variables.
// Zero coefficients are never stored.
class Polynomial {
  public:
    using TermMap = std::map<Exponent, Rational, GrlexLess>;

    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        if (c != 0) p.terms_[Exponent(nvars, 0)] = c;
        return p;
    }

    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        Exponent e(nvars, 0);
        e[i] = 1;
        p.terms_[e] = 1;
        return p;
    }

    // The linear form <coeffs, u>.
    static Polynomial linear_form(const RatVector& coeffs) {
        Polynomial p(static_cast<int>(coeffs.size()));
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0) continue;
            Exponent e(coeffs.size(), 0);
            e[i] = 1;
            p.terms_[e] = coeffs[i];
        }
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void set_coeff(const Exponent& e, const Rational& c) {
        if (c == 0)
            terms_.erase(e);
        else
            terms_[e] = c;
    }

    Rational coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    long total_degree() const {
        if (terms_.empty()) return -1;
        long d = 0;
        for (int x : terms_.rbegin()->first) d += x;
        return d;
    }

    bool is_homogeneous(long degree) const {
        for (const auto& [e, c] : terms_) {
            long d = 0;
            for (int x : e) d += x;
            if (d != degree) return false;
        }
        return true;
    }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
    }

    Polynomial homogeneous_component(long degree) const {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            long d = 0;
            for (int x : e) d += x;
            if (d == degree) out.terms_[e] = c;
        }
        return out;
    }

    Polynomial operator-() const {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) out.terms_[e] = -c;
        return out;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) {
                terms_[e] = c;
            } else {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_vars(b);
        Polynomial out(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                auto it = out.terms_.find(e);
                if (it == out.terms_.end()) {
                    Rational c = ca * cb;
                    if (c != 0) out.terms_[e] = c;
                } else {
                    it->second += ca * cb;
                    if (it->second == 0) out.terms_.erase(it);
                }
            }
        }
        return out;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        Polynomial out(p.nvars_);
        if (c == 0) return out;
        for (const auto& [e, pc] : p.terms_) out.terms_[e] = c * pc;
        return out;
    }

    Polynomial pow(int k) const {
        Polynomial out = constant(nvars_, 1);
        for (int i = 0; i < k; ++i) out = out * (*this);
        return out;
    }

    bool operator==(const Polynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Rational eval(const RatVector& u) const {
        if (static_cast<int>(u.size()) != nvars_)
            throw DimensionMismatch("Polynomial::eval: arity");
        Rational s = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < nvars_; ++i) {
                for (int k = 0; k < e[i]; ++k) t *= u[i];
            }
            s += t;
        }
        return s;
    }

    // Substitutes u_i = sum_j map[i][j] t_j, producing a polynomial in the
    // t variables. `map` has nvars() rows.
    Polynomial compose_linear(const std::vector<RatVector>& map) const {
        if (static_cast<int>(map.size()) != nvars_)
            throw DimensionMismatch("compose_linear: row count");
        int out_vars = map.empty() ? 0 : static_cast<int>(map[0].size());
        std::vector<Polynomial> images;
        images.reserve(nvars_);
        for (int i = 0; i < nvars_; ++i) images.push_back(linear_form(map[i]));
        Polynomial out(out_vars);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(out_vars, c);
            for (int i = 0; i < nvars_; ++i) {
                for (int k = 0; k < e[i]; ++k) t = t * images[i];
            }
            out += t;
        }
        return out;
    }

    // Grlex-leading term.
    std::pair<Exponent, Rational> leading() const {
        if (terms_.empty()) throw Error("leading term of zero polynomial");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!first) os << " + ";
            first = false;
            os << rat_str(c);
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                os << "*";
                if (static_cast<size_t>(i) < names.size())
                    os << names[i];
                else
                    os << "u" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

  private:
    void check_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial arity mismatch");
    }

    int nvars_;
    TermMap terms_;
};

namespace detail {

inline bool exponent_divides(const Exponent& a, const Exponent& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

} // namespace detail

// Division with remainder by a single divisor under grlex.
inline std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& num,
                                                     const Polynomial& den) {
    if (den.is_zero()) throw Error("poly_divmod: zero divisor");
    const auto [lde, ldc] = den.leading();
    Polynomial q(num.nvars()), r(num.nvars());
    Polynomial cur = num;
    while (!cur.is_zero()) {
        auto [le, lc] = cur.leading();
        if (detail::exponent_divides(lde, le)) {
            Exponent e(le.size());
            for (size_t i = 0; i < le.size(); ++i) e[i] = le[i] - lde[i];
            Polynomial t(num.nvars());
            t.set_coeff(e, lc / ldc);
            q += t;
            cur -= t * den;
        } else {
            Polynomial t(num.nvars());
            t.set_coeff(le, lc);
            r += t;
            cur -= t;
        }
    }
    return {q, r};
}

// Exact division; throws NonExactDivision if den does not divide num.
inline Polynomial poly_divide_exact(const Polynomial& num, const Polynomial& den) {
    auto [q, r] = poly_divmod(num, den);
    if (!r.is_zero()) throw NonExactDivision("polynomial division not exact");
    return q;
}

inline bool poly_divides(const Polynomial& den, const Polynomial& num) {
    if (num.is_zero()) return true;
    auto [q, r] = poly_divmod(num, den);
    (void)q;
    return r.is_zero();
}

namespace detail {

// Integer-content / primitive-part multivariate gcd, one variable at a time.
// Polynomials are put into primitive integer form first; over Q the result
// is canonical up to the sign convention (positive grlex-leading coeff).

inline int top_variable(const Polynomial& p) {
    int top = -1;
    for (const auto& [e, c] : p.terms()) {
        for (int i = static_cast<int>(e.size()) - 1; i > top; --i)
            if (e[i] > 0) top = i;
    }
    return top;
}

// View of p as a univariate polynomial in variable v with Polynomial coeffs.
inline std::map<int, Polynomial> univariate_view(const Polynomial& p, int v) {
    std::map<int, Polynomial> out;
    for (const auto& [e, c] : p.terms()) {
        int d = e[v];
        Exponent rest = e;
        rest[v] = 0;
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, Polynomial(p.nvars())).first;
        it->second.set_coeff(rest, it->second.coeff(rest) + c);
    }
    return out;
}

inline Polynomial from_univariate(const std::map<int, Polynomial>& coeffs, int v,
                                  int nvars) {
    Polynomial out(nvars);
    for (const auto& [d, c] : coeffs) {
        if (c.is_zero()) continue;
        Polynomial vd(nvars);
        Exponent e(nvars, 0);
        e[v] = d;
        vd.set_coeff(e, Rational(1));
        out += vd * c;
    }
    return out;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

// Pseudo-remainder of a by b in variable v.
inline Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, int v) {
    auto ua = univariate_view(a, v);
    auto ub = univariate_view(b, v);
    int db = ub.rbegin()->first;
    Polynomial lcb = ub.rbegin()->second;
    Polynomial r = a;
    while (true) {
        if (r.is_zero()) return r;
        auto ur = univariate_view(r, v);
        int dr = ur.rbegin()->first;
        if (dr < db) return r;
        Polynomial lcr = ur.rbegin()->second;
        Exponent shift(a.nvars(), 0);
        shift[v] = dr - db;
        Polynomial mono(a.nvars());
        mono.set_coeff(shift, Rational(1));
        r = lcb * r - mono * lcr * b;
    }
}

inline Polynomial normalize_sign(Polynomial p) {
    if (p.is_zero()) return p;
    if (p.leading().second < 0) return Rational(-1) * p;
    return p;
}

// Primitive integer form: clears denominators and divides by int content.
inline Polynomial primitive_part_q(const Polynomial& p) {
    if (p.is_zero()) return p;
    Int l = 1;
    for (const auto& [e, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Int g = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational s = c * Rational(l);
        Int num = abs(s.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    Polynomial out(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        Rational s = c * Rational(l) / Rational(g);
        out.set_coeff(e, s);
    }
    return normalize_sign(out);
}

inline Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return primitive_part_q(b);
    if (b.is_zero()) return primitive_part_q(a);
    int v = std::max(top_variable(a), top_variable(b));
    if (v < 0) return Polynomial::constant(a.nvars(), 1);

    auto content_in = [&](const Polynomial& p) {
        auto u = univariate_view(p, v);
        Polynomial c(p.nvars());
        bool first = true;
        for (const auto& [d, cp] : u) {
            if (cp.is_zero()) continue;
            c = first ? primitive_part_q(cp) : gcd_impl(c, cp);
            first = false;
        }
        return c;
    };

    Polynomial ca = content_in(a), cb = content_in(b);
    Polynomial ppa = poly_divide_exact(primitive_part_q(a), ca);
    Polynomial ppb = poly_divide_exact(primitive_part_q(b), cb);
    Polynomial c = gcd_impl(ca, cb);

    // Primitive Euclidean loop in variable v.
    auto deg_v = [&](const Polynomial& p) {
        auto u = univariate_view(p, v);
        return u.empty() ? -1 : u.rbegin()->first;
    };
    if (deg_v(ppa) < deg_v(ppb)) std::swap(ppa, ppb);
    while (!ppb.is_zero()) {
        Polynomial r = pseudo_rem(ppa, ppb, v);
        ppa = ppb;
        ppb = r.is_zero() ? r : poly_divide_exact(primitive_part_q(r), content_in(r));
    }
    return normalize_sign(c * primitive_part_q(ppa));
}

} // namespace detail

// Multivariate gcd over Q, normalized to primitive integer coefficients
// with positive grlex-leading coefficient.
inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars()) throw DimensionMismatch("poly_gcd arity");
    return detail::gcd_impl(a, b);
}

} // namespace bchow

#endif
