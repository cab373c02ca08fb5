#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bchow/linalg.hpp"
#include "bchow/polynomial.hpp"
#include "bchow/ratfun.hpp"

using namespace bchow;

namespace {

Rational rand_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    return rat(num(rng), den(rng));
}

Polynomial rand_poly(std::mt19937_64& rng, int nvars, int max_deg, int nterms) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    Polynomial p(nvars);
    for (int t = 0; t < nterms; ++t) {
        Exponent e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = deg(rng);
        p.set_coeff(e, p.coeff(e) + rand_rat(rng));
    }
    return p;
}

} // namespace

TEST_CASE("rational parse and print round-trip") {
    CHECK(rat_str(rat_parse("3/6")) == "1/2");
    CHECK(rat_str(rat_parse("-4/2")) == "-2");
    CHECK(rat_str(rat_parse("7")) == "7");
    CHECK(rat_parse("0/5") == 0);
    CHECK_THROWS_AS(rat_parse("1/0"), ParseError);
    CHECK_THROWS_AS(rat_parse("x"), ParseError);
}

TEST_CASE("primitive directions") {
    CHECK(primitive(IntVector{4, -6}) == IntVector{2, -3});
    CHECK(primitive_direction(RatVector{rat(1, 2), rat(-3, 4)}) == IntVector{2, -3});
    CHECK_THROWS(primitive(IntVector{0, 0}));
}

TEST_CASE("solve_linear identity and symmetric cases") {
    RatMatrix id = {{rat(1), rat(0)}, {rat(0), rat(1)}};
    auto r = solve_linear(id, {rat(1, 2), rat(3)});
    REQUIRE(r.consistent);
    CHECK(r.solution == RatVector{rat(1, 2), rat(3)});
    CHECK(r.kernel.empty());

    RatMatrix m = {{rat(1), rat(1)}, {rat(1), rat(-1)}};
    auto s = solve_linear(m, {rat(1), rat(0)});
    REQUIRE(s.consistent);
    CHECK(s.solution == RatVector{rat(1, 2), rat(1, 2)});
}

TEST_CASE("solve_linear detects inconsistency") {
    RatMatrix m = {{rat(1), rat(1)}, {rat(2), rat(2)}};
    auto r = solve_linear(m, {rat(1), rat(3)});
    CHECK_FALSE(r.consistent);

    // Same matrix, consistent rhs: one-dimensional kernel.
    auto s = solve_linear(m, {rat(1), rat(2)});
    REQUIRE(s.consistent);
    REQUIRE(s.kernel.size() == 1);
    CHECK(dot(s.kernel[0], RatVector{rat(1), rat(1)}) == 0);
}

TEST_CASE("solve_linear composed with the matrix reproduces rhs") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 40; ++it) {
        int n = 1 + static_cast<int>(rng() % 4);
        RatMatrix m(n, RatVector(n));
        RatVector b(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m[i][j] = rand_rat(rng);
            b[i] = rand_rat(rng);
        }
        auto r = solve_linear(m, b);
        if (!r.consistent) continue;
        for (int i = 0; i < n; ++i) {
            Rational s = 0;
            for (int j = 0; j < n; ++j) s += m[i][j] * r.solution[j];
            CHECK(s == b[i]);
        }
    }
}

TEST_CASE("integer determinants") {
    CHECK(det_int({{Int(1), Int(0)}, {Int(1), Int(2)}}) == 2);
    CHECK(det_int({{Int(2), Int(3)}, {Int(4), Int(6)}}) == 0);
    CHECK(det_int({{Int(0), Int(1), Int(0)},
                   {Int(0), Int(0), Int(1)},
                   {Int(1), Int(0), Int(0)}}) == 1);
}

TEST_CASE("polynomial ring axioms hold on random inputs") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 30; ++it) {
        Polynomial a = rand_poly(rng, 2, 3, 4);
        Polynomial b = rand_poly(rng, 2, 3, 4);
        Polynomial c = rand_poly(rng, 2, 3, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("poly_divide_exact on the named cases") {
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    CHECK(poly_divide_exact(x * x - y * y, x - y) == x + y);
    CHECK(poly_divide_exact(x * y, x) == y);
    CHECK_THROWS_AS(poly_divide_exact(x + Polynomial::constant(2, 1), x), NonExactDivision);
}

TEST_CASE("multivariate gcd and rational function reduction") {
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);

    Polynomial g = poly_gcd(x * x - y * y, x * x + rat(2) * x * y + y * y);
    CHECK(g == x + y);

    CHECK(rf_reduce(x * x * y, x * y) == RationalFunction::from_poly(x));

    RationalFunction a(Polynomial::constant(2, 1), x - y);
    RationalFunction b(Polynomial::constant(2, 1), y - x);
    CHECK((a + b).is_zero());

    RationalFunction xy(x, y), yx(y, x);
    CHECK(xy * yx == RationalFunction::from_poly(Polynomial::constant(2, 1)));
}

TEST_CASE("rf_reduce(a*b/b) == a on random inputs") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 20; ++it) {
        Polynomial a = rand_poly(rng, 2, 2, 3);
        Polynomial b = rand_poly(rng, 2, 2, 3);
        if (b.is_zero()) continue;
        RationalFunction q(a * b, b);
        CHECK(q == RationalFunction::from_poly(a));
    }
}

TEST_CASE("compose_linear substitutes exactly") {
    // p(u1,u2) = u1^2 - u2 composed with u1 = t, u2 = 2t.
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    Polynomial p = x * x - y;
    auto q = p.compose_linear({{rat(1)}, {rat(2)}});
    Polynomial t = Polynomial::variable(1, 0);
    CHECK(q == t * t - rat(2) * t);
}

TEST_CASE("echelon basis reduces deterministically") {
    EchelonBasis eb(3);
    CHECK(eb.insert({rat(1), rat(2), rat(0)}));
    CHECK(eb.insert({rat(0), rat(1), rat(1)}));
    CHECK_FALSE(eb.insert({rat(1), rat(3), rat(1)}));
    CHECK(eb.contains({rat(2), rat(5), rat(1)}));
    CHECK_FALSE(eb.contains({rat(0), rat(0), rat(1)}));
}
