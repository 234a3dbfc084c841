// SPDX-License-Identifier: Apache-2.0
#include "witt/json_io.hpp"

#include "witt/error.hpp"

namespace witt {

namespace {

template <typename T>
T field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw UsageError(std::string("JSON is missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("JSON field '") + name + "': " + e.what());
    }
}

}  // namespace

Json poly_to_json(const PolyRecord& rec) {
    Json terms = Json::array();
    for (const auto& t : rec.poly.terms()) {
        Json mono = Json::array();
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            if (t.monomial[i] == 0) continue;
            mono.push_back(Json::array({i < kMaxSlots ? "X" : "Y", i % kMaxSlots, t.monomial[i]}));
        }
        terms.push_back({{"coeff", t.coeff.get_str(10)}, {"monomial", std::move(mono)}});
    }
    return {{"p", rec.p}, {"kind", to_string(rec.kind)}, {"level", rec.level}, {"terms", std::move(terms)}};
}

PolyRecord poly_from_json(const Json& j) {
    PolyRecord rec;
    rec.p = field<unsigned>(j, "p");
    rec.kind = parse_poly_kind(field<std::string>(j, "kind"));
    rec.level = field<unsigned>(j, "level");
    std::vector<Term> terms;
    for (const auto& t : field<Json>(j, "terms")) {
        Term term;
        const std::string coeff = field<std::string>(t, "coeff");
        if (!parse_integer(coeff, term.coeff)) throw UsageError("bad coefficient '" + coeff + "'");
        for (const auto& f : field<Json>(t, "monomial")) {
            if (!f.is_array() || f.size() != 3) throw UsageError("monomial factors are [series, slot, exponent]");
            const std::string series = f[0].get<std::string>();
            const unsigned slot = f[1].get<unsigned>();
            const unsigned exp = f[2].get<unsigned>();
            if ((series != "X" && series != "Y") || slot >= kMaxSlots || exp == 0 || exp > 0xFFFF)
                throw UsageError("bad monomial factor " + f.dump());
            term.monomial[index_of({series == "X" ? Series::X : Series::Y, slot})] += static_cast<std::uint16_t>(exp);
        }
        terms.push_back(std::move(term));
    }
    rec.poly = SparsePoly::from_terms(std::move(terms));
    return rec;
}

Json witt_to_json(const WittVector& x) {
    Json comps = Json::array();
    for (const auto& c : x.components()) comps.push_back(c.to_string());
    return {{"p", x.prime()}, {"ring", x.ring()->spec()}, {"components", std::move(comps)}};
}

WittVector witt_from_json(const Json& j) {
    return witt_from_json(j, Ring::parse(field<std::string>(j, "ring")), field<unsigned>(j, "p"));
}

WittVector witt_from_json(const Json& j, const RingPtr& ring, unsigned p) {
    if (j.contains("p") && field<unsigned>(j, "p") != p)
        throw UsageError("Witt vector JSON has p=" + j.at("p").dump() + ", expected " + std::to_string(p));
    if (j.contains("ring") && !(parse_ring_spec(field<std::string>(j, "ring")) == ring->descriptor()))
        throw UsageError("Witt vector JSON is over " + j.at("ring").dump() + ", expected " + ring->spec());
    std::vector<RingElement> comps;
    for (const auto& c : field<Json>(j, "components")) {
        if (c.is_string()) comps.push_back(ring->parse_element(c.get<std::string>()));
        else if (c.is_number_integer()) comps.push_back(ring->parse_element(c.dump()));
        else throw UsageError("Witt vector components are strings or integers, got " + c.dump());
    }
    return WittVector(p, ring, std::move(comps));
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
}

}  // namespace witt
