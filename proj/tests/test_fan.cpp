#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bchow/fan.hpp"
#include "bchow/polytope.hpp"
#include "test_oracles.hpp"

using namespace bchow;

namespace {

Fan square_fan() {
    return Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                               {{Int(0), Int(1)}, {Int(-1), Int(0)}},
                               {{Int(-1), Int(0)}, {Int(0), Int(-1)}},
                               {{Int(0), Int(-1)}, {Int(1), Int(0)}}});
}

Fan p2_fan() {
    return Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                               {{Int(0), Int(1)}, {Int(-1), Int(-1)}},
                               {{Int(-1), Int(-1)}, {Int(1), Int(0)}}});
}

} // namespace

TEST_CASE("completeness") {
    CHECK(is_complete(p2_fan()));
    CHECK(is_complete(square_fan()));
    Fan quadrant = Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}}});
    CHECK_FALSE(is_complete(quadrant));
}

TEST_CASE("smoothness") {
    CHECK(is_smooth(square_fan()));
    CHECK(is_smooth(p2_fan()));
    Fan f = Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(1), Int(2)}},
                                {{Int(1), Int(2)}, {Int(-1), Int(0)}},
                                {{Int(-1), Int(0)}, {Int(0), Int(-1)}},
                                {{Int(0), Int(-1)}, {Int(1), Int(0)}}});
    CHECK(is_complete(f));
    CHECK_FALSE(is_smooth(f));
}

TEST_CASE("common refinement in 2d") {
    Fan sq = square_fan(), p2 = p2_fan();
    CHECK(common_refinement(sq, sq) == sq);
    Fan r = common_refinement(sq, p2);
    CHECK(r.rays().size() == 5);
    CHECK(r.n_cones() == 5);
    CHECK(is_complete(r));
    CHECK(refines(r, sq));
    CHECK(refines(r, p2));
}

TEST_CASE("refines") {
    Fan sq = square_fan(), p2 = p2_fan();
    CHECK(refines(sq, sq));
    CHECK_FALSE(refines(sq, p2));
    CHECK_FALSE(refines(p2, sq));
    Fan r = resolve(common_refinement(sq, p2));
    CHECK(refines(r, sq));
    CHECK(refines(r, p2));
}

TEST_CASE("locate") {
    Fan sq = square_fan();
    int c = locate(sq, {rat(3), rat(5)});
    auto rays = sq.cone_rays(c);
    CHECK(std::find(rays.begin(), rays.end(), IntVector{Int(1), Int(0)}) != rays.end());
    CHECK(std::find(rays.begin(), rays.end(), IntVector{Int(0), Int(1)}) != rays.end());

    // Wall point: lowest incident cone index wins.
    int w = locate(sq, {rat(1), rat(0)});
    CHECK(sq.cone_contains(w, RatVector{rat(1), rat(0)}));
    for (int ci = 0; ci < w; ++ci)
        CHECK_FALSE(sq.cone_contains(ci, RatVector{rat(1), rat(0)}));

    // P^2 fan at (-2,-1): the containing cone is spanned by (-1,-1) and (0,1).
    Fan p2 = p2_fan();
    int c2 = locate(p2, {rat(-2), rat(-1)});
    auto r2 = p2.cone_rays(c2);
    CHECK(std::find(r2.begin(), r2.end(), IntVector{Int(-1), Int(-1)}) != r2.end());
    CHECK(std::find(r2.begin(), r2.end(), IntVector{Int(0), Int(1)}) != r2.end());
}

TEST_CASE("resolve weighted projective fan") {
    Fan wps = Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                                  {{Int(0), Int(1)}, {Int(-1), Int(-2)}},
                                  {{Int(-1), Int(-2)}, {Int(1), Int(0)}}});
    CHECK(is_complete(wps));
    CHECK_FALSE(is_smooth(wps));
    Fan r = resolve(wps);
    CHECK(is_smooth(r));
    CHECK(is_complete(r));
    CHECK(refines(r, wps));
    // The Hirzebruch-Jung insertion for cone((1,0),(-1,-2)) is (0,-1).
    CHECK(std::find(r.rays().begin(), r.rays().end(), IntVector{Int(0), Int(-1)}) !=
          r.rays().end());
    CHECK(resolve(r) == r);
}

TEST_CASE("resolve inserts the interior parallelepiped point") {
    Fan f = Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(1), Int(2)}},
                                {{Int(1), Int(2)}, {Int(-1), Int(0)}},
                                {{Int(-1), Int(0)}, {Int(0), Int(-1)}},
                                {{Int(0), Int(-1)}, {Int(1), Int(0)}}});
    Fan r = resolve(f);
    CHECK(is_smooth(r));
    CHECK(std::find(r.rays().begin(), r.rays().end(), IntVector{Int(1), Int(1)}) !=
          r.rays().end());
}

TEST_CASE("resolve in 3d") {
    // Weighted projective space P(1,1,2): singular cones.
    Fan wps = Fan::from_cones(
        3, {{{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}},
            {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(-1), Int(-1), Int(-2)}},
            {{Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1)}, {Int(-1), Int(-1), Int(-2)}},
            {{Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}, {Int(-1), Int(-1), Int(-2)}}});
    CHECK(is_complete(wps));
    CHECK_FALSE(is_smooth(wps));
    Fan r = resolve(wps);
    CHECK(is_smooth(r));
    CHECK(is_complete(r));
    CHECK(refines(r, wps));
    CHECK(resolve(r) == r);
}

TEST_CASE("simplicialize the octahedron normal fan") {
    Polytope octa = hull(3, {{rat(1), rat(0), rat(0)}, {rat(-1), rat(0), rat(0)},
                             {rat(0), rat(1), rat(0)}, {rat(0), rat(-1), rat(0)},
                             {rat(0), rat(0), rat(1)}, {rat(0), rat(0), rat(-1)}});
    Fan f = normal_fan(octa);
    Fan s = simplicialize(f);
    CHECK(is_complete(s));
    CHECK(refines(s, f));
    for (int ci = 0; ci < s.n_cones(); ++ci) CHECK(s.cone_is_simplicial(ci));
    Fan r = resolve(f);
    CHECK(is_smooth(r));
    CHECK(refines(r, f));
}

TEST_CASE("normal fan of a sum is the common refinement") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 12; ++it) {
        Polytope a = oracles::random_polytope(rng, 2, 5, -4, 4);
        Polytope b = oracles::random_polytope(rng, 2, 5, -4, 4);
        CHECK(normal_fan(minkowski_sum(a, b)) ==
              common_refinement(normal_fan(a), normal_fan(b)));
    }
    for (int it = 0; it < 4; ++it) {
        Polytope a = oracles::random_polytope(rng, 3, 6, -2, 2);
        Polytope b = oracles::random_polytope(rng, 3, 6, -2, 2);
        CHECK(normal_fan(minkowski_sum(a, b)) ==
              common_refinement(normal_fan(a), normal_fan(b)));
    }
}

TEST_CASE("refinement partial order") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 6; ++it) {
        Polytope a = oracles::random_polytope(rng, 2, 5, -4, 4);
        Polytope b = oracles::random_polytope(rng, 2, 5, -4, 4);
        Fan fa = normal_fan(a), fb = normal_fan(b);
        Fan r = common_refinement(fa, fb);
        CHECK(refines(r, fa));
        CHECK(refines(r, fb));
        if (refines(fa, fb) && refines(fb, fa)) CHECK(fa == fb);
        Fan rr = resolve(r);
        CHECK(refines(rr, fa));
    }
}

TEST_CASE("every wall of a complete fan bounds exactly two cones") {
    std::vector<Wall> walls;
    CHECK(enumerate_walls(p2_fan(), &walls));
    CHECK(walls.size() == 3);
    CHECK(enumerate_walls(square_fan(), &walls));
    CHECK(walls.size() == 4);

    std::mt19937_64 rng(47);
    Polytope a = oracles::random_polytope(rng, 3, 7, -3, 3);
    Fan f = normal_fan(a);
    CHECK(enumerate_walls(f, &walls));
    for (const auto& w : walls) {
        CHECK(w.cone_a != w.cone_b);
        CHECK(w.ray_ids.size() == 2);
    }
}

TEST_CASE("stellar subdivision keeps completeness and smoothness at ray sums") {
    Fan sq = square_fan();
    Fan bl = stellar_subdivision(sq, {Int(1), Int(1)});
    CHECK(is_complete(bl));
    CHECK(is_smooth(bl));
    CHECK(bl.n_cones() == 5);
    CHECK(refines(bl, sq));
}
