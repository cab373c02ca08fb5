#ifndef BCHOW_RATIONAL_HPP
#define BCHOW_RATIONAL_HPP

#include <gmpxx.h>

#include <numeric>
#include <string>
#include <vector>

#include "bchow/errors.hpp"

namespace bchow {

// Exact arithmetic kernel. Rational is GMP's canonical mpq: always reduced,
// denominator positive. Every operation in the library is exact; no floats
// enter any verdict or geometry path.
using Int = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(const Int& num, const Int& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p" (arbitrary precision).
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
    if (r.get_den() == 0) throw ParseError("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline RatVector to_rat(const IntVector& v) {
    RatVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const RatVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
    return s;
}

inline Int dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVector add(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("add: length mismatch");
    RatVector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline RatVector sub(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sub: length mismatch");
    RatVector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline RatVector scale(const Rational& c, const RatVector& a) {
    RatVector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

inline bool is_zero(const RatVector& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline bool is_zero(const IntVector& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

// gcd of all entries, nonnegative.
inline Int content(const IntVector& v) {
    Int g = 0;
    for (const auto& x : v) {
        Int a = abs(x);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    }
    return g;
}

// Scales an integer vector down to its primitive representative.
inline IntVector primitive(const IntVector& v) {
    Int g = content(v);
    if (g == 0) throw Error("primitive: zero vector");
    IntVector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

// Clears denominators: primitive integer vector pointing the same way.
inline IntVector primitive_direction(const RatVector& v) {
    Int l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * Rational(l);
        out[i] = s.get_num();
    }
    return primitive(out);
}

inline bool lex_less(const RatVector& a, const RatVector& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

inline bool lex_less(const IntVector& a, const IntVector& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

} // namespace bchow

#endif
