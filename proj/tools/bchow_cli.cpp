// bchow: exact convex-set algebra and toric b-Chow computations.
//
// JSON in, JSON (or a single rational) out; diagnostics on standard error.
// Exit codes: 0 success/pass, 1 usage or parse error, 2 failed check,
// 3 inconclusive or tolerance not reached.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "bchow/json_io.hpp"

namespace {

using namespace bchow;

struct Options {
    Rational tolerance = rat(1, 1000);
    std::vector<long> depth_schedule = {1, 2, 4, 8, 16};
    int resolution_limit = 64;
    std::uint64_t seed = 1;
    std::string output;
};

Rational parse_tolerance(const std::string& s) {
    if (s.find('/') != std::string::npos) return rat_parse(s);
    auto dotpos = s.find('.');
    if (dotpos == std::string::npos) return rat_parse(s);
    std::string head = s.substr(0, dotpos), frac = s.substr(dotpos + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    Rational num(Int(head + frac));
    Int den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational out = num / Rational(den);
    return neg ? -out : out;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(opt.output);
        if (!out) throw Error("cannot write " + opt.output);
        out << text << "\n";
    }
}

void emit(const Options& opt, const Json& j) { emit(opt, j.dump(2)); }

LimitOptions limit_options(const Options& opt) {
    LimitOptions lim;
    lim.tolerance = opt.tolerance;
    lim.schedule = opt.depth_schedule;
    return lim;
}

IotaOptions iota_options(const Options& opt) {
    IotaOptions io;
    io.depth_limit = opt.resolution_limit;
    return io;
}

int exit_code_of(Verdict v) {
    switch (v) {
        case Verdict::kPass: return 0;
        case Verdict::kFail: return 2;
        default: return 3;
    }
}

std::vector<FanPtr> nilpotency_probes(int n) {
    if (n == 1) {
        return {make_fan(Fan::from_cones(1, {{{Int(1)}}, {{Int(-1)}}}))};
    }
    if (n == 2) {
        FanPtr p2 = make_fan(Fan::from_cones(2, {{{Int(1), Int(0)}, {Int(0), Int(1)}},
                                                 {{Int(0), Int(1)}, {Int(-1), Int(-1)}},
                                                 {{Int(-1), Int(-1)}, {Int(1), Int(0)}}}));
        std::vector<RatVector> sq = {{rat(0), rat(0)}, {rat(1), rat(0)},
                                     {rat(1), rat(1)}, {rat(0), rat(1)}};
        FanPtr sqf = make_fan(normal_fan(hull(2, sq)));
        return {p2, sqf};
    }
    std::vector<RatVector> spts = {{rat(0), rat(0), rat(0)}, {rat(1), rat(0), rat(0)},
                                   {rat(0), rat(1), rat(0)}, {rat(0), rat(0), rat(1)}};
    std::vector<RatVector> cpts;
    for (long mask = 0; mask < 8; ++mask) {
        cpts.push_back({rat((mask >> 0) & 1), rat((mask >> 1) & 1), rat((mask >> 2) & 1)});
    }
    return {make_fan(normal_fan(hull(3, spts))), make_fan(normal_fan(hull(3, cpts)))};
}

int run_check(const Options& opt, const std::string& name,
              const std::vector<std::string>& inputs, int p_flag, int q_flag,
              int instances, int nflag) {
    DegreeEvaluator ev(limit_options(opt), iota_options(opt));
    InequalityReport rep;
    if (name == "af" || name == "hodge" || name == "corollary" || name == "bj" ||
        name == "hodge-index") {
        if (inputs.empty()) {
            CampaignConfig cfg;
            cfg.n = nflag;
            cfg.instances = instances;
            cfg.seed = opt.seed;
            cfg.box = nflag == 3 ? 3 : 5;
            rep = campaign(name, cfg);
        } else {
            std::vector<OraclePtr> bodies;
            for (const auto& path : inputs) bodies.push_back(oracle_from_json(read_json(path)));
            if (name == "af") {
                rep = check_af(bodies, ev);
            } else if (name == "hodge") {
                int p = p_flag > 0 ? p_flag : static_cast<int>(bodies.size());
                std::vector<OraclePtr> ks(bodies.begin(), bodies.begin() + p);
                std::vector<OraclePtr> ls(bodies.begin() + p, bodies.end());
                rep = check_gen_hodge(ks, ls, ev);
            } else if (name == "corollary") {
                if (bodies.size() != 2) throw ParseError("corollary check needs two bodies");
                int n = bodies[0]->dim();
                int p = p_flag > 0 ? p_flag : n;
                int q = q_flag > 0 ? q_flag : 1;
                rep = check_corollary_items(bodies[0], bodies[1], q, p, ev);
            } else if (name == "bj") {
                if (bodies.size() != 2) throw ParseError("bj check needs two bodies");
                rep = check_bj_concavity(bodies[0], bodies[1], ev);
            } else {
                if (bodies.size() != 2) throw ParseError("hodge-index check needs two bodies");
                rep = check_hodge_index_2d(bodies[0], bodies[1], ev);
            }
            rep.seed = opt.seed;
        }
    } else if (name == "nilpotency") {
        if (inputs.size() != 1) throw ParseError("nilpotency check needs one body");
        OraclePtr body = oracle_from_json(read_json(inputs[0]));
        rep = check_nilpotency(body, nilpotency_probes(body->dim()), iota_options(opt));
        rep.seed = opt.seed;
    } else if (name == "valuation") {
        if (inputs.size() != 2) throw ParseError("valuation check needs two polytopes");
        Polytope p1 = polytope_from_json(read_json(inputs[0]));
        Polytope p2 = polytope_from_json(read_json(inputs[1]));
        rep = check_valuation(p1, p2, iota_options(opt));
        rep.seed = opt.seed;
    } else if (name == "pushforward-axioms") {
        if (inputs.size() != 2) throw ParseError("pushforward-axioms check needs two fans");
        FanPtr fine = make_fan(fan_from_json(read_json(inputs[0])));
        FanPtr coarse = make_fan(fan_from_json(read_json(inputs[1])));
        rep = check_pushforward_axioms(fine, coarse, opt.seed);
    } else {
        std::cerr << "unknown check name: " << name << "\n";
        return 1;
    }
    emit(opt, to_json(rep));
    return exit_code_of(rep.verdict);
}

} // namespace

int main(int argc, char** argv) {
    using namespace bchow;
    CLI::App app{"exact convex-set algebra and toric b-Chow computations"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    std::string tolerance_str, schedule_str;
    app.add_option("--tolerance", tolerance_str, "limit-mode tolerance (default 0.001)");
    app.add_option("--depth-schedule", schedule_str,
                   "comma-separated direction schedule (default 1,2,4,8,16)");
    app.add_option("--resolution-limit", opt.resolution_limit,
                   "nef refinement depth limit (default 64)");
    app.add_option("--seed", opt.seed, "seed for randomized checks");
    app.add_option("--output", opt.output, "write output to a file instead of stdout");

    std::vector<std::string> paths;
    std::string mode = "exact", fan_path, to_path, check_name;
    int p_flag = 0, q_flag = 0, instances = 25, nflag = 2;

    auto* c_volume = app.add_subcommand("volume", "exact volume of a polytope");
    c_volume->add_option("polytope", paths)->required();

    auto* c_mixed = app.add_subcommand("mixed-volume", "exact mixed volume of n polytopes");
    c_mixed->add_option("polytopes", paths)->required();

    auto* c_nf = app.add_subcommand("normal-fan", "normal fan of a full-dimensional polytope");
    c_nf->add_option("polytope", paths)->required();

    auto* c_refine = app.add_subcommand("refine", "common refinement of two fans");
    c_refine->add_option("fans", paths)->required();

    auto* c_resolve = app.add_subcommand("resolve", "smooth resolution of a fan");
    c_resolve->add_option("fan", paths)->required();

    auto* c_degree = app.add_subcommand("degree", "degree of a top-level expression");
    c_degree->add_option("expression", paths)->required();
    c_degree->add_option("--mode", mode, "exact | limit");

    auto* c_class = app.add_subcommand("class", "Chow class of an expression on a fan");
    c_class->add_option("expression", paths)->required();
    c_class->add_option("--fan", fan_path, "target fan JSON")->required();

    auto* c_push = app.add_subcommand("push", "push a Chow class to a coarser fan");
    c_push->add_option("class", paths)->required();
    c_push->add_option("--to", to_path, "target fan JSON")->required();

    auto* c_check = app.add_subcommand("check", "verify a theorem instance or campaign");
    c_check->add_option("name", check_name,
                        "af | hodge | corollary | bj | hodge-index | nilpotency | "
                        "valuation | pushforward-axioms")
        ->required();
    c_check->add_option("inputs", paths);
    c_check->add_option("--p", p_flag, "first p inputs are the k-bodies (hodge, corollary)");
    c_check->add_option("--q", q_flag, "q parameter (corollary)");
    c_check->add_option("--instances", instances, "campaign size (default 25)");
    c_check->add_option("--n", nflag, "campaign dimension (default 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        // Defaults from a config file, overridden by explicit flags.
        if (const char* cfg_path = std::getenv("BCHOW_CONFIG")) {
            Json cfg = read_json(cfg_path);
            if (cfg.contains("tolerance") && tolerance_str.empty())
                opt.tolerance = parse_tolerance(cfg.at("tolerance").is_string()
                                                    ? cfg.at("tolerance").get<std::string>()
                                                    : std::to_string(cfg.at("tolerance").get<double>()));
            if (cfg.contains("depth_schedule") && schedule_str.empty()) {
                opt.depth_schedule.clear();
                for (const auto& d : cfg.at("depth_schedule"))
                    opt.depth_schedule.push_back(d.get<long>());
            }
            if (cfg.contains("resolution_limit") && app.count("--resolution-limit") == 0)
                opt.resolution_limit = cfg.at("resolution_limit").get<int>();
            if (cfg.contains("seed") && app.count("--seed") == 0)
                opt.seed = cfg.at("seed").get<std::uint64_t>();
        }
        if (!tolerance_str.empty()) opt.tolerance = parse_tolerance(tolerance_str);
        if (!schedule_str.empty()) {
            opt.depth_schedule.clear();
            std::string cur;
            for (char c : schedule_str + ",") {
                if (c == ',') {
                    if (!cur.empty()) opt.depth_schedule.push_back(std::stol(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
        }
        if (opt.tolerance <= 0) throw ParseError("tolerance must be positive");
        for (size_t i = 1; i < opt.depth_schedule.size(); ++i)
            if (opt.depth_schedule[i] <= opt.depth_schedule[i - 1])
                throw ParseError("depth schedule must be strictly increasing");

        if (c_volume->parsed()) {
            Polytope p = polytope_from_json(read_json(paths.at(0)));
            if (p.is_empty()) throw EmptyInput("volume: empty polytope");
            emit(opt, rat_str(volume(p)));
            return 0;
        }
        if (c_mixed->parsed()) {
            std::vector<Polytope> bodies;
            for (const auto& path : paths) bodies.push_back(polytope_from_json(read_json(path)));
            emit(opt, rat_str(mixed_volume(bodies)));
            return 0;
        }
        if (c_nf->parsed()) {
            Polytope p = polytope_from_json(read_json(paths.at(0)));
            emit(opt, to_json(normal_fan(p)));
            return 0;
        }
        if (c_refine->parsed()) {
            if (paths.size() != 2) throw ParseError("refine needs two fan files");
            Fan a = fan_from_json(read_json(paths[0]));
            Fan b = fan_from_json(read_json(paths[1]));
            if (!is_complete(a) || !is_complete(b))
                throw Error("E_NOT_COMPLETE: refine expects complete fans");
            emit(opt, to_json(common_refinement(a, b)));
            return 0;
        }
        if (c_resolve->parsed()) {
            Fan f = fan_from_json(read_json(paths.at(0)));
            if (!is_complete(f)) throw Error("E_NOT_COMPLETE: resolve expects a complete fan");
            emit(opt, to_json(resolve(f)));
            return 0;
        }
        if (c_degree->parsed()) {
            AlgebraElement e = expression_from_json(read_json(paths.at(0)));
            if (mode == "exact") {
                DegreeResult r = deg_top_exact(e, iota_options(opt));
                emit(opt, rat_str(r.value));
            } else if (mode == "limit") {
                DegreeResult r = deg_top_limit(e, limit_options(opt), iota_options(opt));
                emit(opt, "[" + rat_str(r.lo) + ", " + rat_str(r.hi) + "]");
            } else {
                throw ParseError("degree: --mode must be exact or limit");
            }
            return 0;
        }
        if (c_class->parsed()) {
            AlgebraElement e = expression_from_json(read_json(paths.at(0)));
            FanPtr fan = make_fan(fan_from_json(read_json(fan_path)));
            ChowClass c = iota(e, fan, iota_options(opt)).reduced();
            emit(opt, to_json(c));
            return 0;
        }
        if (c_push->parsed()) {
            ChowClass c = chow_from_json(read_json(paths.at(0)));
            FanPtr to = make_fan(fan_from_json(read_json(to_path)));
            emit(opt, to_json(pushforward(c, to).reduced()));
            return 0;
        }
        if (c_check->parsed()) {
            return run_check(opt, check_name, paths, p_flag, q_flag, instances, nflag);
        }
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const ToleranceNotReached& e) {
        std::cerr << "E_TOL: " << e.what() << "\n";
        return 3;
    } catch (const NotTopDegree& e) {
        std::cerr << "E_NOT_TOP: " << e.what() << "\n";
        return 3;
    } catch (const NotSmooth& e) {
        std::cerr << "E_NOT_SMOOTH: " << e.what() << "\n";
        return 1;
    } catch (const NotARefinement& e) {
        std::cerr << "E_NOT_REFINEMENT: " << e.what() << "\n";
        return 1;
    } catch (const DimensionMismatch& e) {
        std::cerr << "E_DIM: " << e.what() << "\n";
        return 1;
    } catch (const DegenerateFan& e) {
        std::cerr << "E_DIM: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
