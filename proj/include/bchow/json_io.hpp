#ifndef BCHOW_JSON_IO_HPP
#define BCHOW_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "bchow/algebra.hpp"
#include "bchow/checks.hpp"
#include "bchow/polytope.hpp"
#include "bchow/ppoly.hpp"

namespace bchow {

// Canonical JSON bridges. All rationals serialize as "p/q" (or "p" when the
// denominator is 1); emitted objects keep a fixed key order so identical
// inputs produce byte-identical outputs.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return rat_str(r); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return rat_parse(j.get<std::string>());
    throw ParseError("expected a rational as \"p/q\" or integer");
}

inline Json to_json(const RatVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rat_str(x));
    return out;
}

inline RatVector rat_vector_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    RatVector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline Json to_json(const IntVector& v) {
    Json out = Json::array();
    for (const auto& x : v) {
        if (!x.fits_slong_p()) throw Error("integer too large for JSON");
        out.push_back(static_cast<long long>(x.get_si()));
    }
    return out;
}

inline IntVector int_vector_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of integers");
    IntVector v;
    for (const auto& x : j) {
        if (x.is_number_integer())
            v.emplace_back(static_cast<long>(x.get<long long>()));
        else if (x.is_string())
            v.emplace_back(x.get<std::string>());
        else
            throw ParseError("expected an integer entry");
    }
    return v;
}

inline Json to_json(const Polytope& p) {
    Json out;
    out["dim"] = p.ambient_dim();
    Json verts = Json::array();
    for (const auto& v : p.vertices()) verts.push_back(to_json(v));
    out["vertices"] = verts;
    return out;
}

inline Polytope polytope_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
        throw ParseError("polytope: expected {\"dim\", \"vertices\"}");
    int n = j.at("dim").get<int>();
    std::vector<RatVector> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(rat_vector_from_json(v));
    return hull(n, pts);
}

inline Json to_json(const Halfspace& h) {
    Json out;
    out["normal"] = to_json(h.normal);
    out["offset"] = rat_str(h.offset);
    return out;
}

inline Halfspace halfspace_from_json(const Json& j) {
    Halfspace h;
    h.normal = int_vector_from_json(j.at("normal"));
    h.offset = rational_from_json(j.at("offset"));
    return h;
}

inline Json to_json(const Fan& f) {
    Json out;
    out["dim"] = f.dim();
    Json rays = Json::array();
    for (const auto& r : f.rays()) rays.push_back(to_json(r));
    out["rays"] = rays;
    Json cones = Json::array();
    for (const auto& c : f.max_cones()) {
        Json ids = Json::array();
        for (int id : c.ray_ids) ids.push_back(id);
        cones.push_back(ids);
    }
    out["max_cones"] = cones;
    return out;
}

inline Fan fan_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rays") ||
        !j.contains("max_cones"))
        throw ParseError("fan: expected {\"dim\", \"rays\", \"max_cones\"}");
    int n = j.at("dim").get<int>();
    std::vector<IntVector> rays;
    for (const auto& r : j.at("rays")) rays.push_back(int_vector_from_json(r));
    std::vector<std::vector<int>> cones;
    for (const auto& c : j.at("max_cones")) {
        std::vector<int> ids;
        for (const auto& id : c) ids.push_back(id.get<int>());
        cones.push_back(ids);
    }
    return Fan(n, rays, cones);
}

namespace detail {

inline std::string exponent_key(const Exponent& e) {
    std::string out;
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(e[i]);
    }
    return out;
}

inline Exponent exponent_from_key(const std::string& s, int nvars) {
    Exponent e;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) e.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (static_cast<int>(e.size()) != nvars)
        throw ParseError("piecewise polynomial: exponent arity");
    return e;
}

} // namespace detail

inline Json to_json(const PiecewisePolynomial& f) {
    Json out;
    out["fan"] = to_json(*f.fan());
    long d = f.degree();
    if (d >= 0 && f.is_homogeneous(d))
        out["degree"] = d;
    else
        out["degree"] = "mixed";
    Json parts = Json::object();
    for (int ci = 0; ci < f.fan()->n_cones(); ++ci) {
        if (f.part(ci).is_zero()) continue;
        Json terms = Json::object();
        for (const auto& [e, c] : f.part(ci).terms())
            terms[detail::exponent_key(e)] = rat_str(c);
        parts[std::to_string(ci)] = terms;
    }
    out["parts"] = parts;
    return out;
}

inline PiecewisePolynomial ppoly_from_json(const Json& j) {
    FanPtr fan = make_fan(fan_from_json(j.at("fan")));
    std::vector<Polynomial> parts(fan->n_cones(), Polynomial(fan->dim()));
    for (const auto& [key, terms] : j.at("parts").items()) {
        int ci = std::stoi(key);
        if (ci < 0 || ci >= fan->n_cones()) throw ParseError("ppoly: cone index");
        Polynomial p(fan->dim());
        for (const auto& [ek, cv] : terms.items()) {
            p.set_coeff(detail::exponent_from_key(ek, fan->dim()),
                        rational_from_json(cv));
        }
        parts[ci] = std::move(p);
    }
    return PiecewisePolynomial(fan, parts);
}

inline Json to_json(const ChowClass& c) {
    Json out;
    out["fan"] = to_json(*c.fan());
    Json comps = Json::array();
    for (const auto& comp : c.components()) comps.push_back(to_json(comp));
    out["components"] = comps;
    return out;
}

inline ChowClass chow_from_json(const Json& j) {
    FanPtr fan = make_fan(fan_from_json(j.at("fan")));
    std::vector<PiecewisePolynomial> comps;
    for (const auto& cj : j.at("components")) {
        PiecewisePolynomial p = ppoly_from_json(cj);
        if (!same_fan(p.fan(), fan)) throw ParseError("chow class: component fan mismatch");
        comps.push_back(pp_trusted(fan, p.parts()));
    }
    return ChowClass(fan, comps);
}

// Body: a polytope, {"builtin": "kh"}, or a user table with a declared fan.
inline OraclePtr oracle_from_json(const Json& j) {
    if (j.is_object() && j.contains("builtin")) {
        std::string name = j.at("builtin").get<std::string>();
        if (name == "kh") return builtin_kh();
        throw ParseError("unknown builtin oracle: " + name);
    }
    if (j.is_object() && j.contains("values")) {
        if (!j.contains("fan"))
            throw ParseError("user-table oracle: missing declared \"fan\"");
        FanPtr fan = make_fan(fan_from_json(j.at("fan")));
        std::vector<Rational> vals(fan->rays().size());
        std::vector<bool> seen(fan->rays().size(), false);
        for (const auto& entry : j.at("values")) {
            IntVector u = int_vector_from_json(entry.at("u"));
            auto it = std::find(fan->rays().begin(), fan->rays().end(), u);
            if (it == fan->rays().end())
                throw ParseError("user-table oracle: direction is not a fan ray");
            size_t idx = it - fan->rays().begin();
            vals[idx] = rational_from_json(entry.at("h"));
            seen[idx] = true;
        }
        for (bool s : seen)
            if (!s) throw ParseError("user-table oracle: missing a ray value");
        return std::make_shared<TableOracle>(fan, vals);
    }
    return oracle_from_polytope(polytope_from_json(j));
}

// Expression: {"dim", "terms": [{"coeff", "body", "op"}], "product": [ids]}.
// With "product" the element is the product of the referenced terms;
// otherwise it is the sum of all terms. Empty polytope bodies denote 0.
inline AlgebraElement expression_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("terms"))
        throw ParseError("expression: expected {\"dim\", \"terms\"}");
    int n = j.at("dim").get<int>();
    std::vector<AlgebraElement> elems;
    for (const auto& t : j.at("terms")) {
        Rational coeff = t.contains("coeff") ? rational_from_json(t.at("coeff"))
                                             : Rational(1);
        std::string op = t.contains("op") ? t.at("op").get<std::string>() : "cls";
        AlgebraElement e(n);
        const Json& body = t.at("body");
        bool empty_body = body.is_object() && body.contains("vertices") &&
                          body.at("vertices").empty();
        if (!empty_body) {
            OraclePtr h = oracle_from_json(body);
            if (h->dim() != n) throw ParseError("expression: body dimension mismatch");
            e = cls(h);
            if (op == "log")
                e = log_class(e);
            else if (op != "cls")
                throw ParseError("expression: op must be \"cls\" or \"log\"");
        }
        elems.push_back(scale(coeff, e));
    }
    if (j.contains("product")) {
        AlgebraElement out = AlgebraElement::unit(n);
        for (const auto& idx : j.at("product")) {
            size_t i = idx.get<size_t>();
            if (i >= elems.size()) throw ParseError("expression: product index");
            out = mul(out, elems[i]);
        }
        return out;
    }
    AlgebraElement out = AlgebraElement::zero(n);
    for (const auto& e : elems) out = add(out, e);
    return out;
}

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kPass: return "pass";
        case Verdict::kFail: return "fail";
        default: return "inconclusive";
    }
}

inline Json to_json(const InequalityReport& rep) {
    Json out;
    out["name"] = rep.name;
    out["seed"] = rep.seed;
    Json insts = Json::array();
    for (const auto& inst : rep.instances) {
        Json ij;
        ij["label"] = inst.label;
        ij["lhs"] = Json::array({rat_str(inst.lhs.lo), rat_str(inst.lhs.hi)});
        ij["rhs"] = Json::array({rat_str(inst.rhs.lo), rat_str(inst.rhs.hi)});
        ij["verdict"] = verdict_name(inst.verdict);
        insts.push_back(ij);
    }
    out["instances"] = insts;
    out["verdict"] = verdict_name(rep.verdict);
    out["worst_margin"] = rep.worst_margin;
    return out;
}

} // namespace bchow

#endif
