#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "bchow/json_io.hpp"
#include "test_oracles.hpp"

using namespace bchow;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(BCHOW_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

std::string data(const std::string& name) {
    return std::string(BCHOW_DATA_DIR) + "/" + name;
}

FanPtr p2_fan() {
    return make_fan(Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                                        {{Int(0), Int(1)}, {Int(-1), Int(-1)}},
                                        {{Int(-1), Int(-1)}, {Int(1), Int(0)}}}));
}

} // namespace

TEST_CASE("polytope json round-trip") {
    Polytope p = oracles::unit_square();
    Json j = to_json(p);
    CHECK(polytope_from_json(j) == p);
    // Vertex order is lex-sorted on output.
    CHECK(j.at("vertices")[0] == Json::array({"0", "0"}));

    std::mt19937_64 rng(3);
    for (int it = 0; it < 6; ++it) {
        Polytope q = oracles::random_polytope(rng, 3, 7, -3, 3);
        CHECK(polytope_from_json(to_json(q)) == q);
        CHECK(to_json(polytope_from_json(to_json(q))) == to_json(q));
    }
}

TEST_CASE("halfspace json round-trip") {
    Halfspace h{IntVector{Int(2), Int(-3)}, rat(1, 2)};
    Json j = to_json(h);
    CHECK(halfspace_from_json(j) == h);
}

TEST_CASE("fan json round-trip") {
    FanPtr p2 = p2_fan();
    Json j = to_json(*p2);
    CHECK(fan_from_json(j) == *p2);

    std::mt19937_64 rng(5);
    Fan f = normal_fan(oracles::random_polytope(rng, 3, 7, -3, 3));
    CHECK(fan_from_json(to_json(f)) == f);
}

TEST_CASE("piecewise polynomial and chow class json round-trips") {
    FanPtr p2 = p2_fan();
    std::vector<Rational> vals;
    for (const auto& r : p2->rays())
        vals.push_back(support_value(oracles::std_triangle(), r));
    auto h = pp_from_ray_values(p2, vals);
    CHECK(ppoly_from_json(to_json(h)) == h);
    CHECK(ppoly_from_json(to_json(h * h)) == h * h);

    ChowClass c = exp_class_of(h);
    CHECK(chow_from_json(to_json(c)) == c);
}

TEST_CASE("oracle json parsing") {
    CHECK(oracle_from_json(Json::parse(R"({"builtin": "kh"})"))->kind() == "builtin");
    Json table = {
        {"dim", 2},
        {"fan", to_json(*p2_fan())},
        {"values",
         Json::array({Json{{"u", Json::array({1, 0})}, {"h", "0"}},
                      Json{{"u", Json::array({0, 1})}, {"h", "0"}},
                      Json{{"u", Json::array({-1, -1})}, {"h", "-1"}}})}};
    auto t = oracle_from_json(table);
    CHECK(t->kind() == "user-table");
    CHECK(t->eval(RatVector{rat(-2), rat(-1)}) ==
          support_value(oracles::std_triangle(), RatVector{rat(-2), rat(-1)}));
    CHECK_THROWS_AS(oracle_from_json(Json::parse(R"({"builtin": "nope"})")), ParseError);
}

TEST_CASE("expression parsing") {
    Json prod = Json::parse(R"({
      "dim": 2,
      "terms": [
        {"coeff": "1", "body": {"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]]}, "op": "log"},
        {"coeff": "1", "body": {"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]]}, "op": "log"}
      ],
      "product": [0, 1]})");
    AlgebraElement e = expression_from_json(prod);
    CHECK(deg_top_exact(e).value == 1);

    Json sum = Json::parse(R"({
      "dim": 2,
      "terms": [
        {"coeff": "2", "body": {"dim": 2, "vertices": [["0","0"]]}, "op": "cls"},
        {"coeff": "-2", "body": {"dim": 2, "vertices": [["3","5"]]}, "op": "cls"}
      ]})");
    CHECK(expression_from_json(sum).is_zero());

    Json empty_body = Json::parse(R"({
      "dim": 2,
      "terms": [{"coeff": "1", "body": {"dim": 2, "vertices": []}, "op": "cls"}]})");
    CHECK(expression_from_json(empty_body).is_zero());
}

TEST_CASE("report json recomputes its verdict") {
    auto rep = check_af({oracle_from_polytope(oracles::unit_square()),
                         oracle_from_polytope(oracles::std_triangle())});
    Json j = to_json(rep);
    CHECK(j.at("verdict") == "pass");
    Rational lhs_lo = rat_parse(j.at("instances")[0].at("lhs")[0].get<std::string>());
    Rational rhs_hi = rat_parse(j.at("instances")[0].at("rhs")[1].get<std::string>());
    CHECK(lhs_lo >= rhs_hi);
}

TEST_CASE("cli volume and mixed volume") {
    auto v = run_cli("volume " + data("square.json"));
    CHECK(v.exit_code == 0);
    CHECK(v.out == "1\n");
    auto mv = run_cli("mixed-volume " + data("square.json") + " " + data("triangle.json"));
    CHECK(mv.out == "2\n");
    auto mv3 = run_cli("mixed-volume " + data("box111.json") + " " + data("box111.json") +
                       " " + data("box123.json"));
    CHECK(mv3.out == "12\n");
}

TEST_CASE("cli normal-fan refine resolve") {
    auto nf = run_cli("normal-fan " + data("triangle.json"));
    CHECK(nf.exit_code == 0);
    CHECK(fan_from_json(Json::parse(nf.out)) == *p2_fan());

    auto rf = run_cli("refine " + data("square_fan.json") + " " + data("p2_fan.json"));
    Fan refined = fan_from_json(Json::parse(rf.out));
    CHECK(refined.rays().size() == 5);
    CHECK(refined.n_cones() == 5);

    auto rs = run_cli("resolve " + data("wps112_fan.json"));
    Fan resolved = fan_from_json(Json::parse(rs.out));
    CHECK(is_smooth(resolved));
    CHECK(std::find(resolved.rays().begin(), resolved.rays().end(),
                    IntVector{Int(0), Int(-1)}) != resolved.rays().end());
}

TEST_CASE("cli degree modes and exit codes") {
    auto d = run_cli("degree " + data("expr_logS_logT.json"));
    CHECK(d.exit_code == 0);
    CHECK(d.out == "2\n");
    auto d2 = run_cli("degree " + data("expr_logT_logT.json"));
    CHECK(d2.out == "1\n");

    // Limit mode prints an interval that brackets 2/3.
    auto dl = run_cli("degree " + data("expr_kh2.json") + " --mode limit");
    CHECK(dl.exit_code == 0);
    CHECK(dl.out.front() == '[');

    // A non-top expression exits 3 with E_NOT_TOP.
    auto bad = run_cli("degree " + data("expr_clsT.json"));
    CHECK(bad.exit_code == 3);

    // Parse failures exit 1.
    auto missing = run_cli("volume /nonexistent.json");
    CHECK(missing.exit_code == 1);
    auto unknown = run_cli("check not-a-check");
    CHECK(unknown.exit_code == 1);
}

TEST_CASE("cli class and push") {
    auto c = run_cli("class " + data("expr_clsT.json") + " --fan " + data("p2_fan.json"));
    CHECK(c.exit_code == 0);
    ChowClass cc = chow_from_json(Json::parse(c.out));
    CHECK(cc.component(0) == pp_constant(cc.fan(), 1));
    CHECK(cc.top_degree_value() == rat(1, 2));

    // Push the exceptional Courant class from the blow-up to the base.
    FanPtr bl = make_fan(fan_from_json(Json::parse(
        run_cli("resolve " + data("p2blowup_fan.json")).out)));
    auto exc = courant_ray(bl, 3); // ray (1,1) is last in lex order
    ChowClass cls_exc = ChowClass::zero(bl);
    std::vector<PiecewisePolynomial> comps = {pp_constant(bl, 0), exc,
                                              pp_constant(bl, 0) * exc, exc * exc};
    // Build a degree-1 class holding the exceptional divisor class.
    std::vector<PiecewisePolynomial> comps2(3, pp_constant(bl, 0));
    comps2[1] = exc;
    ChowClass excc(bl, comps2);
    std::string tmp = "/tmp/bchow_exc_class.json";
    {
        std::ofstream out(tmp);
        out << to_json(excc).dump();
    }
    auto pushed = run_cli("push " + tmp + " --to " + data("p2_fan.json"));
    CHECK(pushed.exit_code == 0);
    CHECK(chow_from_json(Json::parse(pushed.out)).is_zero());
}

TEST_CASE("cli checks set exit codes by verdict") {
    auto af = run_cli("check af " + data("square.json") + " " + data("triangle.json"));
    CHECK(af.exit_code == 0);
    auto nil = run_cli("check nilpotency " + data("triangle.json"));
    CHECK(nil.exit_code == 0);
    auto pf = run_cli("check pushforward-axioms " + data("p2blowup_fan.json") + " " +
                      data("p2_fan.json"));
    CHECK(pf.exit_code == 0);
    auto kh_af = run_cli("check af " + data("kh.json") + " " + data("kh.json") +
                         " --tolerance 0.01");
    CHECK((kh_af.exit_code == 0 || kh_af.exit_code == 3));
}

TEST_CASE("identical inputs produce byte-identical outputs") {
    auto a = run_cli("check af --instances 4 --seed 42");
    auto b = run_cli("check af --instances 4 --seed 42");
    CHECK(a.out == b.out);
    auto c = run_cli("class " + data("expr_clsT.json") + " --fan " + data("p2_fan.json"));
    auto d = run_cli("class " + data("expr_clsT.json") + " --fan " + data("p2_fan.json"));
    CHECK(c.out == d.out);
}
