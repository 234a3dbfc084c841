#include <set>

#include "doctest.h"
#include "witt/error.hpp"
#include "witt/fixtures.hpp"

using namespace witt;

namespace {

// Coefficient vectors mod (p, T^m).
using Trunc = std::vector<int>;

Trunc mul_trunc(const Trunc& a, const Trunc& b, int p) {
    Trunc c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return c;
}

int count_solutions(int p, int m, int e) {
    int total = 1;
    for (int i = 0; i < m; ++i) total *= p;
    int count = 0;
    for (int code = 0; code < total; ++code) {
        Trunc w(m);
        for (int i = 0, c = code; i < m; ++i, c /= p) w[i] = c % p;
        Trunc wp = w;
        for (int k = 1; k < p; ++k) wp = mul_trunc(wp, w, p);
        Trunc lhs = wp;
        for (int i = 0; i + e < m; ++i) lhs[i + e] = ((lhs[i + e] - w[i]) % p + p) % p;
        Trunc one(m, 0);
        one[0] = 1;
        if (lhs == one) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("registry") {
    const auto& reg = fixture_registry();
    std::set<std::string> names;
    for (const auto& f : reg) {
        names.insert(f.name);
        CHECK_FALSE(f.claim.empty());
        CHECK_FALSE(f.primes.empty());
    }
    CHECK(names.size() == reg.size());
    CHECK(names.count("condition-matrices") == 1);
    CHECK_THROWS_AS(run_fixtures("no-such-fixture"), UsageError);
    auto one = run_fixtures("mup2-3");
    REQUIRE(one.size() == 1);
    CHECK(one[0].name == "mup2-3");
}

TEST_CASE("every fixture passes") {
    for (const auto& r : run_fixtures()) {
        CAPTURE(r.name);
        for (const auto& d : r.details) CAPTURE(d);
        CHECK(r.passed);
    }
}

TEST_CASE("p*1 against ghost inversion over Z") {
    auto Z = Ring::parse("Z");
    const std::pair<unsigned, unsigned> cases[] = {{2, 4}, {3, 3}, {5, 2}};
    for (auto [p, d] : cases) {
        GhostVector g;
        for (unsigned i = 0; i < d; ++i) g.components.push_back(Z->from_integer(p));
        WittVector over_z = from_ghost(p, Z, g);
        auto R = Ring::parse("Z/" + std::to_string(p * p));
        std::vector<RingElement> reduced;
        for (std::size_t i = 0; i < d; ++i) reduced.push_back(R->parse_element(over_z[i].to_string()));
        WittVector sum = WittVector::zero(p, R, d);
        for (unsigned i = 0; i < p; ++i) sum = witt_add(sum, WittVector::one(p, R, d));
        CHECK(sum == WittVector(p, R, reduced));
        CHECK(fixture_components_of_p(p, d).passed);
    }
    CHECK_FALSE(fixture_components_of_p(7, 2).passed);
}

TEST_CASE("no p-th root against direct enumeration") {
    CHECK(count_solutions(3, 3, 2) == 0);
    CHECK(count_solutions(5, 5, 4) == 0);
    // control: w^p = 1 alone
    CHECK(count_solutions(3, 3, 3) > 0);
    CHECK(fixture_no_pth_root(3, 2).passed);
    CHECK(fixture_no_pth_root(5, 2).passed);
}

TEST_CASE("power of mu and norms") {
    const std::pair<unsigned, unsigned> cases[] = {{3, 2}, {3, 3}, {5, 2}};
    for (auto [p, n] : cases) {
        auto R = Ring::parse("Zeta(" + std::to_string(p) + "," + std::to_string(n) + ")");
        const unsigned pn = upow(p, n);
        const unsigned phi = pn - pn / p;
        RingElement pi = R->one() - R->generator();
        CHECK(abs(R->norm(pi)) == p);
        // v(a) >= p^n forces p^{p^n} | N(a)
        Integer big = ipow(Integer(p), pn);
        CHECK(mod_floor(R->norm(pi.pow(phi) + R->from_integer(p)), big) == 0);
        CHECK(mod_floor(R->norm(pi.pow(phi) - R->from_integer(p)), big) != 0);
        CHECK(fixture_power_of_mu(p, n).passed);
    }
    CHECK_FALSE(fixture_power_of_mu(2, 2).passed);
}

TEST_CASE("asserted statuses") {
    auto z = asserted_statuses(Ring::parse("Z"), 3);
    REQUIRE(z.count(ConditionId::Spher) == 1);
    CHECK(z.at(ConditionId::Spher).verdict == Verdict::Holds);
    CHECK(z.at(ConditionId::Spher).method == Method::FixtureAsserted);
    auto t = asserted_statuses(Ring::parse("ZetaTower(3)"), 3);
    REQUIRE(t.count(ConditionId::PthrootsIinf) == 1);
    CHECK(t.at(ConditionId::PthrootsIinf).verdict == Verdict::Fails);
    CHECK(asserted_statuses(Ring::parse("ZetaTower(2)"), 2).empty());
    CHECK(asserted_statuses(Ring::parse("Z/4"), 2).empty());
}
