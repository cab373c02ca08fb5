#include <catch2/catch_amalgamated.hpp>

#include "bchow/checks.hpp"
#include "test_oracles.hpp"

using namespace bchow;

namespace {

OraclePtr sq_o() { return oracle_from_polytope(oracles::unit_square()); }
OraclePtr tri_o() { return oracle_from_polytope(oracles::std_triangle()); }
OraclePtr box_o(const std::vector<long>& sides) {
    return oracle_from_polytope(oracles::box(sides));
}

} // namespace

TEST_CASE("alexandrov-fenchel on the named instances") {
    // (S, T): 2^2 = 4 >= 2 * 1 = 2.
    auto rep = check_af({sq_o(), tri_o()});
    REQUIRE(rep.instances.size() == 1);
    CHECK(rep.instances[0].lhs.lo == 4);
    CHECK(rep.instances[0].rhs.lo == 2);
    CHECK(rep.verdict == Verdict::kPass);

    // Boxes in n = 3: 12^2 = 144 >= 6 * 22 = 132.
    auto rep3 = check_af({box_o({1, 1, 1}), box_o({1, 2, 3}), box_o({1, 1, 1})});
    REQUIRE(rep3.instances.size() == 1);
    CHECK(rep3.instances[0].lhs.lo == 144);
    CHECK(rep3.instances[0].rhs.lo == 132);
    CHECK(rep3.verdict == Verdict::kPass);
    // Cross-check the right-hand side against the permanent oracle.
    CHECK(oracles::permanent({{rat(1), rat(1), rat(1)},
                              {rat(1), rat(1), rat(1)},
                              {rat(1), rat(1), rat(1)}}) == 6);
    CHECK(oracles::permanent({{rat(1), rat(2), rat(3)},
                              {rat(1), rat(2), rat(3)},
                              {rat(1), rat(1), rat(1)}}) == 22);

    // Equal bodies: equality on both sides.
    auto repe = check_af({tri_o(), tri_o()});
    CHECK(repe.instances[0].lhs.lo == repe.instances[0].rhs.lo);
    CHECK(repe.verdict == Verdict::kPass);
}

TEST_CASE("generalized hodge") {
    // p = 1 is an identity.
    auto rep1 = check_gen_hodge({sq_o()}, {tri_o()});
    CHECK(rep1.instances[0].lhs.lo == rep1.instances[0].rhs.lo);
    CHECK(rep1.verdict == Verdict::kPass);

    // p = n = 2 specializes Alexandrov-Fenchel.
    auto rep2 = check_gen_hodge({sq_o(), tri_o()}, {});
    CHECK(rep2.instances[0].lhs.lo == 4);
    CHECK(rep2.instances[0].rhs.lo == 2);
    CHECK(rep2.verdict == Verdict::kPass);

    // p = n = 3 with boxes.
    auto rep3 = check_gen_hodge({box_o({1, 1, 1}), box_o({1, 2, 3}), box_o({2, 1, 1})}, {});
    CHECK(rep3.verdict == Verdict::kPass);
}

TEST_CASE("gen hodge at p = 2 equals alexandrov-fenchel verdicts") {
    std::mt19937_64 rng(91);
    for (int it = 0; it < 10; ++it) {
        auto a = oracle_from_polytope(random_lattice_polytope(rng, 2, 4));
        auto b = oracle_from_polytope(random_lattice_polytope(rng, 2, 4));
        auto raf = check_af({a, b});
        auto rgh = check_gen_hodge({a, b}, {});
        CHECK(raf.verdict == rgh.verdict);
        CHECK(raf.instances[0].lhs.lo == rgh.instances[0].lhs.lo);
        CHECK(raf.instances[0].rhs.lo == rgh.instances[0].rhs.lo);
    }
}

TEST_CASE("corollary items") {
    // Item (3) on (S, T): deg((k+l)^2) = 7 and 7 >= 3 + 2 sqrt(2).
    auto rep = check_corollary_items(sq_o(), tri_o(), 1, 2);
    REQUIRE(rep.instances.size() == 3);
    CHECK(rep.verdict == Verdict::kPass);
    CHECK(detail::root_sum_le(2, rat(7), rat(2), rat(1)));
    CHECK_FALSE(detail::root_sum_le(2, rat(58, 10), rat(2), rat(1)));

    // q = p: item (1) trivializes to equality.
    auto repq = check_corollary_items(sq_o(), tri_o(), 2, 2);
    CHECK(repq.instances[0].lhs.lo == repq.instances[0].rhs.lo);
    CHECK(repq.verdict == Verdict::kPass);

    // item (2) with i = n: equality of both sides.
    CHECK(repq.instances[1].lhs.lo == repq.instances[1].rhs.lo);
}

TEST_CASE("root comparisons in dimension 3") {
    // Brunn-Minkowski for cubes: (a+b)^3 scaling is exact equality.
    CHECK(detail::root_sum_le(3, rat(27), rat(1), rat(8)));
    CHECK_FALSE(detail::root_sum_le(3, rat(26), rat(1), rat(8)));
    CHECK(detail::root_sum_le(3, rat(8), rat(8), rat(0)));
    CHECK_FALSE(detail::root_sum_le(3, rat(7), rat(8), rat(0)));
}

TEST_CASE("bj concavity") {
    auto rep = check_bj_concavity(sq_o(), tri_o());
    REQUIRE(rep.instances.size() == 1);
    // degrees (1, 2, 2): 2^2 >= 1 * 2.
    CHECK(rep.instances[0].lhs.lo == 4);
    CHECK(rep.instances[0].rhs.lo == 2);
    CHECK(rep.verdict == Verdict::kPass);

    // Equal bodies: constant sequence.
    auto repe = check_bj_concavity(tri_o(), tri_o());
    CHECK(repe.instances[0].lhs.lo == repe.instances[0].rhs.lo);

    // Boxes in n = 3.
    auto rep3 = check_bj_concavity(box_o({1, 2, 3}), box_o({2, 1, 1}));
    CHECK(rep3.instances.size() == 2);
    CHECK(rep3.verdict == Verdict::kPass);
}

TEST_CASE("hodge index in dimension 2") {
    // Segments: premise holds, conclusion holds.
    auto seg1 = oracle_from_polytope(hull(2, {{rat(0), rat(0)}, {rat(1), rat(0)}}));
    auto rep = check_hodge_index_2d(seg1, seg1);
    CHECK(rep.verdict == Verdict::kPass);

    // deg(k l) != 0: vacuous pass.
    auto rep2 = check_hodge_index_2d(sq_o(), tri_o());
    CHECK(rep2.verdict == Verdict::kPass);
    auto rep3 = check_hodge_index_2d(sq_o(), seg1);
    CHECK(rep3.verdict == Verdict::kPass);
}

TEST_CASE("nilpotency check") {
    FanPtr p2 = make_fan(Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                                             {{Int(0), Int(1)}, {Int(-1), Int(-1)}},
                                             {{Int(-1), Int(-1)}, {Int(1), Int(0)}}}));
    FanPtr sq = make_fan(normal_fan(oracles::unit_square()));
    auto rep = check_nilpotency(tri_o(), {p2, sq});
    CHECK(rep.instances.size() == 2);
    CHECK(rep.verdict == Verdict::kPass);
}

TEST_CASE("valuation check") {
    Polytope p1 = oracles::unit_square();
    Polytope p2 = translate(p1, {rat(1), rat(0)});
    auto rep = check_valuation(p1, p2);
    CHECK(rep.verdict == Verdict::kPass);

    // Non-convex union rejected.
    Polytope far = translate(p1, {rat(3), rat(3)});
    CHECK_THROWS(check_valuation(p1, far));
}

TEST_CASE("pushforward axiom check") {
    FanPtr p2 = make_fan(Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                                             {{Int(0), Int(1)}, {Int(-1), Int(-1)}},
                                             {{Int(-1), Int(-1)}, {Int(1), Int(0)}}}));
    FanPtr bl = make_fan(stellar_subdivision(*p2, {Int(1), Int(1)}));
    auto rep = check_pushforward_axioms(bl, p2, 5);
    CHECK(rep.verdict == Verdict::kPass);
}

TEST_CASE("small seeded campaigns stay clean") {
    for (const char* name : {"af", "hodge", "corollary", "bj", "hodge-index"}) {
        CampaignConfig cfg;
        cfg.n = 2;
        cfg.instances = 8;
        cfg.seed = 1234;
        auto rep = campaign(name, cfg);
        CHECK(rep.verdict == Verdict::kPass);
        CHECK(rep.seed == 1234);
    }
    CampaignConfig cfg3;
    cfg3.n = 3;
    cfg3.instances = 3;
    cfg3.seed = 99;
    cfg3.box = 3;
    auto rep = campaign("af", cfg3);
    CHECK(rep.verdict == Verdict::kPass);
}

TEST_CASE("verdicts recompute from stored samples") {
    auto rep = check_af({sq_o(), tri_o()});
    for (auto& inst : rep.instances) {
        Verdict v = inst.verdict;
        inst.settle();
        CHECK(inst.verdict == v);
    }
}
