#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bchow/algebra.hpp"
#include "test_oracles.hpp"

using namespace bchow;

namespace {

FanPtr square_fan() {
    return make_fan(Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                                        {{Int(0), Int(1)}, {Int(-1), Int(0)}},
                                        {{Int(-1), Int(0)}, {Int(0), Int(-1)}},
                                        {{Int(0), Int(-1)}, {Int(1), Int(0)}}}));
}

FanPtr p2_fan() {
    return make_fan(Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                                        {{Int(0), Int(1)}, {Int(-1), Int(-1)}},
                                        {{Int(-1), Int(-1)}, {Int(1), Int(0)}}}));
}

PiecewisePolynomial support_pp(const FanPtr& f, const Polytope& p) {
    std::vector<Rational> vals;
    for (const auto& r : f->rays()) vals.push_back(support_value(p, r));
    return pp_from_ray_values(f, vals);
}

} // namespace

TEST_CASE("generator classes") {
    // The class of a point is the unit.
    Polytope pt = hull(2, {{rat(4), rat(-2)}});
    CHECK(cls(pt) == AlgebraElement::unit(2));

    // Translation invariance is syntactic after normalization.
    Polytope s = oracles::unit_square();
    CHECK(cls(s) == cls(translate(s, {rat(5), rat(7)})));

    // The empty set maps to zero.
    CHECK(cls(Polytope::empty(2)).is_zero());
}

TEST_CASE("products collapse through Minkowski sums") {
    Polytope s = oracles::unit_square(), t = oracles::std_triangle();
    CHECK(mul(cls(s), cls(t)) == cls(minkowski_sum(s, t)));
    AlgebraElement a = cls(s);
    CHECK(mul(AlgebraElement::unit(2), a) == a);
}

TEST_CASE("log and exp basics") {
    CHECK(log_class(AlgebraElement::unit(2)).is_zero());
    CHECK(exp_class(AlgebraElement::zero(2)) == AlgebraElement::unit(2));
    CHECK_THROWS_AS(log_class(scale(rat(2), cls(oracles::unit_square()))), NotAGenerator);
    CHECK_THROWS_AS(exp_class(AlgebraElement::unit(2)), NonNilpotentInput);

    // log[K] = -3/2 + 2[K] - 1/2 [2K] in dimension 2.
    Polytope t = oracles::std_triangle();
    AlgebraElement lg = log_class(cls(t));
    AlgebraElement expect(2);
    expect.add_term(rat(-3, 2), AlgebraElement::point_body(2));
    expect.add_term(rat(2), oracle_from_polytope(t));
    expect.add_term(rat(-1, 2), oracle_from_polytope(dilate(t, rat(2))));
    CHECK(lg == expect);
}

TEST_CASE("iota of a triangle on the projective plane fan") {
    FanPtr p2 = p2_fan();
    Polytope t = oracles::std_triangle();
    ChowClass c = iota(cls(t), p2);
    // The degree-1 component is the divisor class: ray values -h(v_rho).
    auto d = rat(-1) * support_pp(p2, t);
    CHECK(c.component(0) == pp_constant(p2, 1));
    CHECK(c.component(1) == d);
    CHECK(c.component(2) == rat(1, 2) * (d * d));
    CHECK(c.top_degree_value() == rat(1, 2));

    CHECK(iota(AlgebraElement::unit(2), p2) == ChowClass::unit(p2));
    CHECK(iota(AlgebraElement::zero(2), p2) == ChowClass::zero(p2));
}

TEST_CASE("exp(log) is the identity under iota") {
    FanPtr p2 = p2_fan();
    FanPtr sq = square_fan();
    for (const Polytope& p : {oracles::std_triangle(), oracles::unit_square()}) {
        AlgebraElement back = exp_class(log_class(cls(p)));
        for (const FanPtr& f : {p2, sq}) {
            CHECK(iota(back, f).reduced() == iota(cls(p), f).reduced());
        }
    }
}

TEST_CASE("exp adds under iota for commuting log classes") {
    std::mt19937_64 rng(61);
    FanPtr sq = square_fan();
    for (int it = 0; it < 4; ++it) {
        Polytope a = oracles::random_polytope(rng, 2, 4, -3, 3);
        Polytope b = oracles::random_polytope(rng, 2, 4, -3, 3);
        AlgebraElement x = log_class(cls(a)), y = log_class(cls(b));
        AlgebraElement lhs = mul(exp_class(x), exp_class(y));
        AlgebraElement rhs = exp_class(add(x, y));
        CHECK(iota(lhs, sq).reduced() == iota(rhs, sq).reduced());
    }
}

TEST_CASE("nilpotency at fan level") {
    std::mt19937_64 rng(67);
    FanPtr sq = square_fan(), p2 = p2_fan();
    for (int it = 0; it < 5; ++it) {
        Polytope p = oracles::random_polytope(rng, 2, 5, -4, 4);
        AlgebraElement x = sub(cls(p), AlgebraElement::unit(2));
        AlgebraElement cube = pow(x, 3); // ([K]-1)^{n+1}, n = 2
        CHECK(iota(cube, sq).is_zero());
        CHECK(iota(cube, p2).is_zero());
    }
}

TEST_CASE("graded components") {
    Polytope t = oracles::std_triangle();
    AlgebraElement k = cls(t);
    CHECK(graded_component(k, 0) == AlgebraElement::unit(2));
    CHECK_THROWS_AS(graded_component(k, 3), LevelOutOfRange);

    // The graded pieces sum back to the class under iota.
    FanPtr p2 = p2_fan();
    AlgebraElement total = AlgebraElement::zero(2);
    for (int l = 0; l <= 2; ++l) total = add(total, graded_component(k, l));
    CHECK(iota(total, p2).reduced() == iota(k, p2).reduced());

    // Grading compatibility: level-l parts land in degree l only.
    for (int l = 0; l <= 2; ++l) {
        ChowClass c = iota(graded_component(k, l), p2).reduced();
        for (int j = 0; j <= 2; ++j) {
            if (j != l) CHECK(c.component(j).is_zero());
        }
    }
}

TEST_CASE("iota is a ring map via products on a common refinement") {
    std::mt19937_64 rng(71);
    FanPtr p2 = p2_fan();
    for (int it = 0; it < 3; ++it) {
        Polytope a = oracles::random_polytope(rng, 2, 4, -3, 3);
        Polytope b = oracles::random_polytope(rng, 2, 4, -3, 3);
        AlgebraElement xa = cls(a), xb = cls(b);
        // Product upstairs on a common adapted fan, then push forward.
        FanPtr big = make_fan(resolve(common_refinement(
            common_refinement(normal_fan(a), normal_fan(b)), *p2)));
        ChowClass up = iota(xa, big) * iota(xb, big);
        CHECK(pushforward(up, p2) == iota(mul(xa, xb), p2));
    }
}

TEST_CASE("tower compatibility") {
    std::mt19937_64 rng(73);
    FanPtr p2 = p2_fan();
    FanPtr bl = make_fan(stellar_subdivision(*p2, {Int(1), Int(1)}));
    FanPtr bl2 = make_fan(stellar_subdivision(*bl, {Int(2), Int(1)}));
    for (int it = 0; it < 3; ++it) {
        Polytope p = oracles::random_polytope(rng, 2, 5, -3, 3);
        AlgebraElement a = cls(p);
        CHECK(pushforward(iota(a, bl), p2) == iota(a, p2));
        CHECK(pushforward(iota(a, bl2), p2) == iota(a, p2));
        CHECK(pushforward(iota(a, bl2), bl) == iota(a, bl));
    }
}

TEST_CASE("exact degrees from mixed volumes") {
    Polytope s = oracles::unit_square(), t = oracles::std_triangle();
    AlgebraElement ks = log_class(cls(s)), kt = log_class(cls(t));
    CHECK(deg_top_exact(mul(ks, kt)).value == 2);
    CHECK(deg_top_exact(mul(kt, kt)).value == 1);
    CHECK(deg_top_exact(mul(ks, ks)).value == 2);

    // Not top degree: a generator class has nonvanishing lower components.
    CHECK_THROWS_AS(deg_top_exact(cls(s)), NotTopDegree);
}

TEST_CASE("limit degree of the curved example body brackets 2/3") {
    AlgebraElement k = log_class(cls(builtin_kh()));
    AlgebraElement k2 = mul(k, k);
    LimitOptions lim;
    lim.tolerance = rat(1, 100);
    DegreeResult r = deg_top_limit(k2, lim);
    CHECK_FALSE(r.exact);
    CHECK(r.lo <= rat(2, 3));
    CHECK(r.hi >= rat(2, 3));
    CHECK(r.hi - r.lo < rat(2, 100));
}

TEST_CASE("equal_at decides the valuation relation with exact certificates") {
    Polytope p1 = oracles::unit_square();
    Polytope p2 = hull(2, {{rat(1), rat(0)}, {rat(2), rat(0)}, {rat(2), rat(1)},
                           {rat(1), rat(1)}});
    Polytope uni = hull(2, {{rat(0), rat(0)}, {rat(2), rat(0)}, {rat(2), rat(1)},
                            {rat(0), rat(1)}});
    Polytope inter = hull(2, {{rat(1), rat(0)}, {rat(1), rat(1)}});
    FanPtr fan = square_fan();
    AlgebraElement lhs = add(cls(p1), cls(p2));
    AlgebraElement rhs = add(cls(uni), cls(inter));
    auto res = equal_at(lhs, rhs, fan);
    CHECK(res.equal);
    CHECK(res.exact_certificate);

    // Translations are equal; distinct bodies are not.
    auto tr = equal_at(cls(p1), cls(translate(p1, {rat(5), rat(7)})), fan);
    CHECK(tr.equal);
    auto ne = equal_at(cls(p1), cls(oracles::std_triangle()), fan);
    CHECK_FALSE(ne.equal);
}

TEST_CASE("degree functional on iota images equals mixed volumes") {
    std::mt19937_64 rng(79);
    for (int it = 0; it < 5; ++it) {
        Polytope a = oracles::random_polytope(rng, 2, 5, -4, 4);
        Polytope b = oracles::random_polytope(rng, 2, 5, -4, 4);
        AlgebraElement prod = mul(log_class(cls(a)), log_class(cls(b)));
        FanPtr big = make_fan(resolve(common_refinement(normal_fan(a), normal_fan(b))));
        ChowClass c = iota(prod, big);
        CHECK(degree_functional(c.component(2)) == mixed_volume({a, b}));
        CHECK(deg_top_exact(prod).value == mixed_volume({a, b}));
    }
}
