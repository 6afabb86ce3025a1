#pragma once

#include <string>

#include <json.hpp>

#include "rk2/heisenberg.hpp"
#include "rk2/rank2.hpp"

namespace rk2 {

using nlohmann::json;

// Scalars are serialized symbolically: numerator and denominator as sparse
// [exponent, coefficient] term lists with decimal-string coefficients.

inline json poly_to_json(const detail::IntPoly& p) {
    json terms = json::array();
    for (int k = 0; k <= p.degree(); ++k)
        if (p.coeff(k) != 0) terms.push_back({k, p.coeff(k).str()});
    return terms;
}

inline detail::IntPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw SchemaError("polynomial must be an array of [k, c] pairs");
    detail::IntPoly out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw SchemaError("bad polynomial term");
        int k = t[0].get<int>();
        BigInt c(t[1].is_string() ? t[1].get<std::string>()
                                  : std::to_string(t[1].get<long long>()));
        out = out + detail::IntPoly::monomial(c, k);
    }
    return out;
}

inline json to_json(const Scalar& s) {
    return json{{"num", poly_to_json(s.num())}, {"den", poly_to_json(s.den())}};
}

inline Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long long>());
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw SchemaError("scalar must be {num, den}");
    return Scalar::from_fraction(poly_from_json(j["num"]), poly_from_json(j["den"]));
}

inline json to_json(const BreveElement& b) {
    if (b.finite) return json::array({b.n, b.p});
    return json::array({b.n, "-inf"});
}

inline BreveElement breve_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw SchemaError("point must be [n, p] or [n, \"-inf\"]");
    std::int64_t n = j[0].get<std::int64_t>();
    if (j[1].is_string()) {
        if (j[1].get<std::string>() != "-inf") throw SchemaError("bad fiber coordinate");
        return BreveElement::column(n);
    }
    return BreveElement::at(n, j[1].get<std::int64_t>());
}

inline json to_json(GammaElement g) { return json::array({g.n, g.p}); }
inline GammaElement gamma_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[1].is_number())
        throw SchemaError("group element must be [n, p]");
    return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

inline json to_json(const Staircase& z) {
    json ex = json::array();
    for (auto [n, v] : z.exceptions()) ex.push_back({n, v});
    return json{{"slope", z.slope()}, {"intercept", z.intercept()}, {"exceptions", ex}};
}

inline Staircase staircase_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("staircase must be an object");
    std::map<std::int64_t, std::int64_t> ex;
    if (j.contains("exceptions"))
        for (const auto& t : j["exceptions"]) ex[t[0].get<std::int64_t>()] = t[1].get<std::int64_t>();
    return Staircase(j.value("slope", 0), j.value("intercept", 0), std::move(ex));
}

inline json to_json(const TorsorElement& h) {
    return json{{"alpha", to_json(h.alpha)}, {"beta", to_json(h.beta)}, {"t", h.t}};
}

inline TorsorElement torsor_from_json(const json& j) {
    return {breve_from_json(j.at("alpha")), breve_from_json(j.at("beta")),
            j.at("t").get<std::int64_t>()};
}

inline json to_json(const MeasureElement& m) {
    return json{{"alpha", to_json(m.alpha)}, {"beta", to_json(m.beta)}, {"c", to_json(m.c)}};
}

inline MeasureElement measure_from_json(const json& j) {
    return {breve_from_json(j.at("alpha")), breve_from_json(j.at("beta")),
            scalar_from_json(j.at("c"))};
}

inline json to_json(const RankOneFunction& f) {
    json vals = json::array();
    for (std::int64_t p = f.base(); p < f.base() + f.len(); ++p) vals.push_back(to_json(f.at(p)));
    return json{{"k", f.fiber()}, {"base", f.base()}, {"values", vals}, {"tail", to_json(f.tail())}};
}

inline RankOneFunction fn_from_json(const json& j) {
    std::vector<Scalar> vals;
    for (const auto& v : j.at("values")) vals.push_back(scalar_from_json(v));
    return RankOneFunction(j.at("k").get<std::int64_t>(), j.at("base").get<std::int64_t>(),
                           std::move(vals), scalar_from_json(j.at("tail")));
}

// The two tails live in the span of the constant and geometric sequences:
// lo/hi are {const, geom} coefficient pairs.
inline json to_json(const RankOneDistribution& d) {
    json mid = json::array();
    for (const auto& v : d.mid()) mid.push_back(to_json(v));
    return json{{"k", d.fiber()},
                {"xlo", d.xlo()},
                {"xhi", d.xhi()},
                {"lo", {{"const", to_json(d.lo_const())}, {"geom", to_json(d.lo_geom())}}},
                {"middle", mid},
                {"hi", {{"const", to_json(d.hi_const())}, {"geom", to_json(d.hi_geom())}}}};
}

inline RankOneDistribution dist_from_json(const json& j) {
    std::vector<Scalar> mid;
    for (const auto& v : j.at("middle")) mid.push_back(scalar_from_json(v));
    return RankOneDistribution(j.at("k").get<std::int64_t>(), Scalar::r(),
                               j.at("xlo").get<std::int64_t>(), j.at("xhi").get<std::int64_t>(),
                               scalar_from_json(j.at("lo").at("const")),
                               scalar_from_json(j.at("lo").at("geom")), std::move(mid),
                               scalar_from_json(j.at("hi").at("const")),
                               scalar_from_json(j.at("hi").at("geom")));
}

inline json to_json(const RankTwoFunction& q) {
    json slots = json::array();
    auto [lo, hi] = q.work_window();
    for (std::int64_t k = lo; k <= hi; ++k)
        slots.push_back(json{{"f", to_json(q.slot_product(k))},
                             {"mu", to_json(mu_base(BreveElement::column(k + 1), q.alpha()))}});
    return json{{"schema", "rank2fn"},
                {"alpha", to_json(q.alpha())},
                {"Z", to_json(q.staircase())},
                {"klo", lo},
                {"below_mode", q.below_mode() == BelowMode::Zero ? "zero" : "staircase"},
                {"slots", slots}};
}

inline RankTwoFunction rank2fn_from_json(const json& j) {
    if (j.value("schema", "") != "rank2fn") throw SchemaError("expected schema rank2fn");
    BreveElement alpha = breve_from_json(j.at("alpha"));
    std::int64_t klo = j.at("klo").get<std::int64_t>();
    std::vector<RankTwoFunction::RawSlot> slots;
    for (const auto& s : j.at("slots"))
        slots.push_back({fn_from_json(s.at("f")), measure_from_json(s.at("mu"))});
    BelowMode below =
        j.value("below_mode", "staircase") == "zero" ? BelowMode::Zero : BelowMode::Staircase;
    return RankTwoFunction::make(alpha, staircase_from_json(j.at("Z")), klo, slots, below);
}

inline json to_json(const RankTwoDistribution& s) {
    json terms = json::array();
    for (const auto& [k, g] : s.terms())
        terms.push_back(json{{"k", k},
                             {"g", to_json(g)},
                             {"lambda", to_json(mu_base(s.alpha(), BreveElement::column(k + 1)))}});
    return json{{"schema", "rank2dist"}, {"alpha", to_json(s.alpha())}, {"terms", terms}};
}

inline RankTwoDistribution rank2dist_from_json(const json& j) {
    if (j.value("schema", "") != "rank2dist") throw SchemaError("expected schema rank2dist");
    BreveElement alpha = breve_from_json(j.at("alpha"));
    std::vector<RankTwoDistribution::RawTerm> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({t.at("k").get<std::int64_t>(), dist_from_json(t.at("g")),
                         measure_from_json(t.at("lambda"))});
    return RankTwoDistribution::reduce(alpha, terms);
}

inline json to_json(const HeisQuad& q) { return json::array({q.a, q.b, q.c, q.m}); }

inline HeisQuad quad_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw SchemaError("quadruple must be [a,b,c,m]");
    return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>(),
            j[3].get<std::int64_t>()};
}

inline json to_json(const HeisTilde& x) {
    return json{{"alpha", to_json(x.alpha)}, {"beta", to_json(x.beta)}, {"h", to_json(x.h)}};
}

inline HeisTilde tilde_from_json(const json& j) {
    HeisTilde x{breve_from_json(j.at("alpha")), gamma_from_json(j.at("beta")),
                torsor_from_json(j.at("h"))};
    if (x.h.alpha != x.alpha || x.h.beta != circ(x.beta, x.alpha))
        throw SchemaError("torsor endpoints do not match (alpha, beta ∘ alpha)");
    return x;
}

} // namespace rk2
