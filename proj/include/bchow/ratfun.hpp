#ifndef BCHOW_RATFUN_HPP
#define BCHOW_RATFUN_HPP

#include "bchow/polynomial.hpp"

namespace bchow {

// Quotient of polynomials, kept reduced by multivariate gcd with the
// denominator's grlex-leading coefficient normalized to 1.
class RationalFunction {
  public:
    explicit RationalFunction(int nvars = 0)
        : num_(Polynomial(nvars)), den_(Polynomial::constant(nvars, 1)) {}

    RationalFunction(Polynomial num, Polynomial den) : num_(num), den_(den) {
        if (den_.is_zero()) throw Error("RationalFunction: zero denominator");
        reduce();
    }

    static RationalFunction from_poly(const Polynomial& p) {
        return RationalFunction(p, Polynomial::constant(p.nvars(), 1));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    int nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }

    bool is_polynomial() const { return den_ == Polynomial::constant(den_.nvars(), 1); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.num_.is_zero()) throw Error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    bool operator==(const RationalFunction& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(den_.nvars(), 1);
            return;
        }
        Polynomial g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = poly_divide_exact(num_, g);
            den_ = poly_divide_exact(den_, g);
        }
        Rational lc = den_.leading().second;
        num_ = (1 / lc) * num_;
        den_ = (1 / lc) * den_;
    }

    Polynomial num_, den_;
};

inline RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) { return a + b; }
inline RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) { return a * b; }
inline RationalFunction rf_reduce(const Polynomial& num, const Polynomial& den) {
    return RationalFunction(num, den);
}

} // namespace bchow

#endif
