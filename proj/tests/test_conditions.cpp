#include <set>

#include "doctest.h"
#include "witt/conditions.hpp"
#include "witt/error.hpp"

using namespace witt;
using C = ConditionId;

namespace {

StatusMap decided_only(const StatusMap& m) {
    StatusMap out;
    for (const auto& [id, s] : m)
        if (s.is_decided()) out[id] = s;
    return out;
}

const std::vector<std::pair<std::string, unsigned>> kRings{
    {"Z", 2},         {"Z", 3},         {"Z/4", 2},          {"Z/9", 3},       {"Z/5", 2},
    {"GF(2)[T]", 2},  {"GF(3)[T]", 3},  {"GF(3)[T]/(T^3)", 3}, {"Zeta(2,2)", 2}, {"Zeta(3,1)", 3},
    {"Zeta(5,2)", 5}, {"ZetaTower(2)", 2}, {"ZetaTower(3)", 3}, {"ZetaTower(5)", 5},
};

}  // namespace

TEST_CASE("condition catalog") {
    const auto& cat = condition_catalog();
    CHECK(cat.size() == 22);
    std::set<std::string> mnemonics, labels;
    for (std::size_t i = 0; i < cat.size(); ++i) {
        CHECK(static_cast<std::size_t>(cat[i].id) == i);
        mnemonics.insert(cat[i].mnemonic);
        labels.insert(cat[i].label);
        CHECK(parse_condition(cat[i].mnemonic) == cat[i].id);
        CHECK(parse_condition(cat[i].label) == cat[i].id);
    }
    CHECK(mnemonics.size() == 22);
    CHECK(labels.size() == 22);
    CHECK(std::string(condition_info(C::PrModp2).label) == "xv");
    CHECK(std::string(condition_info(C::PthrootsInPrime).label) == "xiv'");
    CHECK_FALSE(parse_condition("NOPE").has_value());
}

TEST_CASE("implication graph shape") {
    const auto& edges = ImplicationGraph::standard().edges();
    CHECK(edges.size() == 25);
    int joint = 0, bidi = 0;
    for (const auto& e : edges) {
        if (e.kind == EdgeKind::Joint) {
            ++joint;
            CHECK(e.tails.size() == 2);
        } else {
            CHECK(e.tails.size() == 1);
        }
        if (e.kind == EdgeKind::Bidirectional) ++bidi;
    }
    CHECK(joint == 3);
    CHECK(bidi == 9);
}

TEST_CASE("checker examples") {
    auto Z = Ring::parse("Z");
    ConditionStatus s = check(Z, 3, C::PrModp2);
    CHECK(s.verdict == Verdict::Fails);
    CHECK(s.payload.at("r") == "1");
    // no s mod 9 with s^3 = 3
    for (long t = 0; t < 9; ++t) CHECK(mod_floor(Integer(t * t * t - 3), Integer(9)) != 0);

    for (unsigned p : {3U, 5U, 7U}) CHECK(check(Z, p, C::PthrootsModp).verdict == Verdict::Holds);

    for (unsigned p : {2U, 3U, 5U}) {
        auto FpT = Ring::parse("GF(" + std::to_string(p) + ")[T]");
        ConditionStatus pr = check(FpT, p, C::PrModp2);
        CHECK(pr.verdict == Verdict::Holds);
        CHECK(pr.payload.at("s") == "0");
        ConditionStatus roots = check(FpT, p, C::PthrootsModp);
        CHECK(roots.verdict == Verdict::Fails);
        CHECK(roots.payload.at("element") == "T");
    }

    CHECK(check(Ring::parse("Z/5"), 2, C::PInv).verdict == Verdict::Holds);
    CHECK(check(Z, 2, C::PInv).verdict == Verdict::Fails);
    CHECK(check(Z, 2, C::SomePower).verdict == Verdict::Fails);
    CHECK(check(Z, 2, C::Surj).verdict == Verdict::Unknown);
    CHECK_THROWS_AS(check(Z, 4, C::PInv), UsageError);
}

TEST_CASE("closure propagation") {
    auto holds = ConditionStatus::holds(Method::FixtureAsserted, Json::object());
    auto fails = ConditionStatus::fails(Method::FixtureAsserted, Json::object());

    auto r1 = implication_closure({{C::PthrootsInPrime, holds}});
    CHECK(r1.statuses.at(C::Finlev).verdict == Verdict::Holds);
    CHECK(r1.statuses.at(C::Lev1).verdict == Verdict::Holds);
    CHECK(r1.statuses.at(C::PthrootsModp).verdict == Verdict::Holds);
    CHECK(r1.statuses.at(C::Surj).verdict == Verdict::Unknown);
    CHECK(r1.contradictions.empty());

    auto r2 = implication_closure({{C::Finlev, fails}});
    CHECK(r2.statuses.at(C::Surj).verdict == Verdict::Fails);
    CHECK(r2.statuses.at(C::TeichImage).verdict == Verdict::Fails);

    auto r3 = implication_closure({{C::Surj, holds}});
    CHECK(r3.statuses.at(C::TeichImage).verdict == Verdict::Holds);
    CHECK(r3.statuses.at(C::Spher).verdict == Verdict::Holds);

    auto r4 = implication_closure({{C::SomePower, fails}});
    CHECK(r4.statuses.at(C::Pmodp2).verdict == Verdict::Fails);
    CHECK(r4.statuses.at(C::PrModp2).verdict == Verdict::Fails);

    auto r5 = implication_closure({{C::Lev1, holds}, {C::SomePower, holds}});
    CHECK(r5.statuses.at(C::Finlev).verdict == Verdict::Holds);
    auto r6 = implication_closure({{C::Lev1, holds}});
    CHECK(r6.statuses.at(C::Finlev).verdict == Verdict::Unknown);

    auto bad = implication_closure({{C::PthrootsInPrime, holds}, {C::PthrootsModp, fails}});
    CHECK_FALSE(bad.contradictions.empty());
}

TEST_CASE("closure is idempotent and monotone") {
    for (const auto& [spec, p] : kRings) {
        auto R = Ring::parse(spec);
        ConditionReport rep = condition_matrix(R, p);
        StatusMap base;
        for (const auto& c : condition_catalog()) base[c.id] = check(R, p, c.id);
        auto once = implication_closure(decided_only(base));
        auto twice = implication_closure(once.statuses);
        CHECK(once.statuses == twice.statuses);

        std::size_t k = 0;
        StatusMap half;
        for (const auto& [id, s] : decided_only(base))
            if (k++ % 2 == 0) half[id] = s;
        auto partial = implication_closure(half);
        for (const auto& [id, s] : partial.statuses)
            if (s.is_decided()) CHECK(once.statuses.at(id).verdict == s.verdict);
    }
}

TEST_CASE("matrices are consistent and certificates recheck") {
    for (const auto& [spec, p] : kRings) {
        CAPTURE(spec);
        auto R = Ring::parse(spec);
        ConditionReport rep = condition_matrix(R, p);
        CHECK(rep.contradictions.empty());
        for (const auto& c : condition_catalog()) {
            ConditionStatus s = check(R, p, c.id);
            CAPTURE(c.mnemonic);
            CHECK(s.method != Method::FixtureAsserted);
            CHECK(recheck(R, p, c.id, s));
        }
    }
}

TEST_CASE("example matrices") {
    auto verdict = [](const ConditionReport& r, C id) { return r.statuses.at(id).verdict; };
    for (unsigned p : {2U, 3U, 5U}) {
        auto Zr = condition_matrix(Ring::parse("Z"), p);
        CHECK(verdict(Zr, C::PthrootsModp) == Verdict::Holds);
        CHECK(verdict(Zr, C::SomePower) == Verdict::Fails);
        CHECK(verdict(Zr, C::Finlev) == Verdict::Fails);
        CHECK(verdict(Zr, C::Pmodp2) == Verdict::Fails);

        auto F = condition_matrix(Ring::parse("GF(" + std::to_string(p) + ")[T]"), p);
        CHECK(verdict(F, C::PrModp2) == Verdict::Holds);
        CHECK(verdict(F, C::PthrootsModp) == Verdict::Fails);

        auto M = condition_matrix(Ring::parse("Zeta(" + std::to_string(p) + ",2)"), p);
        CHECK(verdict(M, C::VImage) == Verdict::Holds);
        CHECK(M.statuses.at(C::VImage).method == Method::Witness);
        CHECK(verdict(M, C::PthrootsModp) == Verdict::Fails);
        CHECK(verdict(M, C::PrModp2) == Verdict::Fails);

        auto T = condition_matrix(Ring::parse("ZetaTower(" + std::to_string(p) + ")"), p);
        CHECK(verdict(T, C::PthrootsModp) == Verdict::Holds);
        CHECK(verdict(T, C::Finlev) == Verdict::Holds);
    }
}

TEST_CASE("report rendering") {
    auto rep = condition_matrix(Ring::parse("Z"), 2);
    Json j = rep.to_json();
    CHECK(j.at("ring") == "Z");
    CHECK(j.at("conditions").size() == 22);
    const Json& row = j.at("conditions").at(static_cast<std::size_t>(C::PrModp2));
    CHECK(row.at("condition") == "PR-MODP2");
    CHECK(row.at("label") == "xv");
    CHECK(row.at("status") == "fails");
    CHECK(row.contains("counterexample"));
    CHECK(j.dump() == condition_matrix(Ring::parse("Z"), 2).to_json().dump());
    CHECK(rep.to_text().find("PR-MODP2") != std::string::npos);

    StatusMap asserted{{C::Spher, ConditionStatus::holds(Method::FixtureAsserted, {{"note", "asserted"}})}};
    auto with = condition_matrix(Ring::parse("Z"), 2, {}, asserted);
    CHECK(with.statuses.at(C::Spher).method == Method::FixtureAsserted);
    CHECK(with.contradictions.empty());
}
