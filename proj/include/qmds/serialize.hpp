#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmds/construct.hpp"
#include "qmds/enumerate.hpp"
#include "qmds/errors.hpp"
#include "qmds/field.hpp"
#include "qmds/grs.hpp"
#include "qmds/verify.hpp"

namespace qmds {

using nlohmann::json;

// Field elements serialize as the integer exponent of g, or the literal
// string "0" for ZERO.
inline json element_to_json(FieldElement x) {
    if (x.is_zero())
        return json("0");
    return json(static_cast<std::int64_t>(x.exponent()));
}

inline FieldElement element_from_json(const json& j, const FieldContext& F) {
    if (j.is_string()) {
        if (j.get<std::string>() == "0")
            return FieldElement::zero();
        throw FormatError("field element must be an exponent or the string \"0\"");
    }
    if (!j.is_number_integer())
        throw FormatError("field element must be an exponent or the string \"0\"");
    std::int64_t k = j.get<std::int64_t>();
    if (k < 0 || k >= static_cast<std::int64_t>(F.group_order()))
        throw FormatError("exponent out of range [0, q^2-2]");
    return FieldElement::from_exponent(static_cast<std::uint32_t>(k));
}

inline json to_json(const GrsCode& code) {
    json j;
    j["p"] = code.ctx->p();
    j["e"] = code.ctx->e();
    j["modulus"] = code.ctx->modulus();
    json a = json::array(), v = json::array();
    for (auto x : code.a)
        a.push_back(element_to_json(x));
    for (auto x : code.v)
        v.push_back(element_to_json(x));
    j["a"] = std::move(a);
    j["v"] = std::move(v);
    j["d"] = code.d;
    return j;
}

struct Provenance {
    Theorem theorem = Theorem::t4;
    std::int64_t s = 0, t = 0, h = 0, r = 0, d = 0;
};

inline json to_json(const ConstructedCode& built) {
    json j = to_json(built.code);
    json prov;
    prov["theorem"] = to_string(built.params.theorem);
    prov["s"] = built.params.s;
    prov["t"] = built.params.t;
    prov["h"] = built.params.h;
    prov["r"] = built.params.r;
    prov["d"] = built.code.d;
    prov["n"] = built.params.n;
    prov["d_max"] = built.params.d_max;
    prov["lambda"] = element_to_json(built.witness.lambda);
    prov["e"] = element_to_json(built.witness.e);
    json u = json::array();
    for (auto c : built.witness.u)
        u.push_back(element_to_json(c));
    prov["u"] = std::move(u);
    auto qp = built.quantum();
    prov["quantum"] = {{"n", qp.n}, {"k", qp.k}, {"dmin", qp.dmin}, {"q", qp.q}};
    j["provenance"] = std::move(prov);
    return j;
}

struct LoadedCode {
    GrsCode code;
    std::optional<Provenance> provenance;
};

inline LoadedCode code_from_json(const json& j) {
    try {
        std::int64_t p = j.at("p").get<std::int64_t>();
        int e = j.at("e").get<int>();
        FieldPtr ctx = make_field(p, e);
        if (j.contains("modulus")) {
            auto mod = j.at("modulus").get<std::vector<std::int64_t>>();
            if (mod != ctx->modulus())
                throw FormatError("modulus does not match the canonical context for (p, e)");
        }
        GrsCode code;
        code.ctx = ctx;
        for (const auto& x : j.at("a"))
            code.a.push_back(element_from_json(x, *ctx));
        for (const auto& x : j.at("v"))
            code.v.push_back(element_from_json(x, *ctx));
        code.d = j.at("d").get<std::int64_t>();
        validate(code);

        LoadedCode out{std::move(code), std::nullopt};
        if (j.contains("provenance")) {
            const auto& prov = j.at("provenance");
            out.provenance = Provenance{theorem_from_string(prov.at("theorem").get<std::string>()),
                                        prov.at("s").get<std::int64_t>(),
                                        prov.at("t").get<std::int64_t>(),
                                        prov.at("h").get<std::int64_t>(),
                                        prov.at("r").get<std::int64_t>(),
                                        prov.at("d").get<std::int64_t>()};
        }
        return out;
    } catch (const json::exception& err) {
        throw FormatError(std::string("malformed code JSON: ") + err.what());
    } catch (const ParamError& err) {
        throw FormatError(std::string("invalid code: ") + err.what());
    }
}

// Report JSON: {subject, checks:[{name, range, pass, counterexample?}],
// meta:{q, theorem, params}}. Timings stay out of the file so identical runs
// produce identical bytes.
inline json to_json(const VerificationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json jc;
        jc["name"] = c.name;
        jc["range"] = c.range;
        jc["pass"] = c.pass;
        if (c.counter_ij) {
            json ce;
            ce["i"] = (*c.counter_ij)[0];
            ce["j"] = (*c.counter_ij)[1];
            if (c.counter_value)
                ce["value"] = *c.counter_value;
            jc["counterexample"] = std::move(ce);
        }
        for (const auto& [key, val] : c.data)
            jc[key] = val;
        checks.push_back(std::move(jc));
    }
    json meta;
    meta["q"] = report.q;
    if (report.theorem)
        meta["theorem"] = to_string(*report.theorem);
    meta["params"] = report.params;
    return json{{"subject", report.subject}, {"checks", std::move(checks)}, {"meta", std::move(meta)}};
}

inline json to_json(const ParameterRecord& rec) {
    return json{{"q", rec.q},
                {"theorem", to_string(rec.theorem)},
                {"s", rec.s},
                {"t", rec.t},
                {"h", rec.h},
                {"r", rec.r},
                {"n", rec.n},
                {"d_max", rec.d_max},
                {"quantum",
                 {{"n", rec.quantum.n}, {"k", rec.quantum.k}, {"dmin", rec.quantum.dmin},
                  {"q", rec.quantum.q}}},
                {"verified", rec.verified}};
}

inline ParameterRecord record_from_json(const json& j) {
    try {
        ParameterRecord rec;
        rec.q = j.at("q").get<std::int64_t>();
        rec.theorem = theorem_from_string(j.at("theorem").get<std::string>());
        rec.s = j.at("s").get<std::int64_t>();
        rec.t = j.at("t").get<std::int64_t>();
        rec.h = j.at("h").get<std::int64_t>();
        rec.r = j.at("r").get<std::int64_t>();
        rec.n = j.at("n").get<std::int64_t>();
        rec.d_max = j.at("d_max").get<std::int64_t>();
        const auto& qp = j.at("quantum");
        rec.quantum = QuantumParams{qp.at("n").get<std::int64_t>(), qp.at("k").get<std::int64_t>(),
                                    qp.at("dmin").get<std::int64_t>(), qp.at("q").get<std::int64_t>()};
        rec.verified = j.value("verified", false);
        return rec;
    } catch (const json::exception& err) {
        throw FormatError(std::string("malformed record JSON: ") + err.what());
    }
}

} // namespace qmds
