#include "doctest.h"
#include "support.hpp"
#include "witt/error.hpp"
#include "witt/preimage.hpp"

using namespace witt;
using witt::testing::random_witt;
using witt::testing::witt_of;

TEST_CASE("exact division by prime powers") {
    for (const char* spec : {"Z", "Z/8", "Z/12", "Z/25", "GF(3)[T]/(T^2)", "Zeta(3,2)"}) {
        auto R = Ring::parse(spec);
        std::mt19937_64 rng(7);
        for (unsigned p : {2U, 3U, 5U}) {
            for (int trial = 0; trial < 200; ++trial) {
                RingElement a = R->sample(rng);
                for (unsigned k = 1; k <= 2; ++k) {
                    auto t = R->exact_div_p_power(a, p, k);
                    bool member = R->reduce_mod_prime_power(a, p, k).is_zero();
                    CHECK(t.has_value() == member);
                    if (t) CHECK(t->scaled(ipow(Integer(p), k)) == a);
                }
            }
        }
    }
}

TEST_CASE("level-1 solving") {
    auto Z = Ring::parse("Z");
    auto o = SolverOracles::for_ring(Z, 2);
    CHECK(solve_level1(Z->from_integer(7), 1, o) == witt_of(2, Z, {"7", "-21"}));
    CHECK(solve_level1(Z->from_integer(7), 0, o) == witt_of(2, Z, {"7"}));
    CHECK(solve_level1(Z->zero(), 3, o).is_zero());

    std::mt19937_64 rng(11);
    for (const char* spec : {"Z", "Z/9", "GF(3)[T]/(T^3+2*T+1)", "ZetaTower(3)"}) {
        auto R = Ring::parse(spec);
        auto o3 = SolverOracles::for_ring(R, 3);
        for (int trial = 0; trial < 30; ++trial) {
            RingElement r = R->sample(rng);
            for (unsigned n = 0; n <= 2; ++n) {
                WittVector x = solve_level1(r, n, o3);
                CHECK(x.length() == n + 1);
                CHECK(ghost(x).components.back() == r);
            }
        }
    }

    auto FpT = Ring::parse("GF(2)[T]");
    auto oT = SolverOracles::for_ring(FpT, 2);
    CHECK_THROWS_AS(solve_level1(FpT->generator(), 1, oT), CapabilityError);
}

TEST_CASE("PR-MODP2 oracles") {
    // Z: no s mod p^2 with s^p = p mod p^2.
    for (unsigned p : {2U, 3U, 5U}) {
        long pp = static_cast<long>(p) * p;
        for (long s = 0; s < pp; ++s) {
            Integer sp = ipow(Integer(s), p);
            CHECK(mod_floor(sp - p, Integer(pp)) != 0);
        }
        auto Z = Ring::parse("Z");
        auto o = SolverOracles::for_ring(Z, p);
        REQUIRE(o.prmodp2);
        CHECK_FALSE(o.prmodp2(Z->one()).has_value());
        CHECK_THROWS_AS(solve_V_power_preimage(1, 1, o), CapabilityError);
    }

    auto FpT = Ring::parse("GF(3)[T]");
    auto o = SolverOracles::for_ring(FpT, 3);
    REQUIRE(o.prmodp2);
    auto s = o.prmodp2(FpT->generator());
    REQUIRE(s);
    CHECK(s->is_zero());
    CHECK(prmodp2_certificate(3, FpT->generator(), *s));

    auto R = Ring::parse("Z/4");
    auto o4 = SolverOracles::for_ring(R, 2);
    REQUIRE(o4.prmodp2);
    CHECK_FALSE(o4.prmodp2(R->one()).has_value());
    auto zero = o4.prmodp2(R->zero());
    REQUIRE(zero);
    CHECK(prmodp2_certificate(2, R->zero(), *zero));
}

TEST_CASE("SOMEPOWER witnesses") {
    for (unsigned p : {2U, 3U, 5U}) {
        for (std::string spec : {"ZetaTower(" + std::to_string(p) + ")", "Zeta(" + std::to_string(p) + ",2)"}) {
            auto R = Ring::parse(spec);
            SomePowerWitness w = mup2_witness(R, p);
            CHECK(w.r.pow(p) + R->from_integer(p) == (w.s * w.cofactor).scaled(p));
            CHECK(R->reduce_mod_prime_power(w.s.pow(w.N), p, 1).is_zero());
            auto o = SolverOracles::for_ring(R, p);
            CHECK(o.somepower.has_value());

            SomePowerWitness bad = w;
            bad.r = bad.r + R->one();
            CHECK_THROWS_AS(o.set_somepower(bad), VerificationError);
            bad = w;
            bad.N = 1;
            CHECK_THROWS_AS(o.set_somepower(bad), VerificationError);
        }
    }
    CHECK_THROWS_AS(mup2_witness(Ring::parse("Zeta(3,1)"), 3), CapabilityError);
    CHECK_THROWS_AS(mup2_witness(Ring::parse("Z"), 2), CapabilityError);
}

TEST_CASE("mu_{p^2} vector maps to V(1)") {
    auto Zi = Ring::parse("Zeta(2,2)");
    WittVector x2 = mup2_vector(Zi, 2, 3);
    CHECK(x2[0] == Zi->parse_element("1+T"));
    CHECK(frobenius(x2) == witt_of(2, Zi, {"0", "1"}));
    for (unsigned p : {2U, 3U, 5U}) {
        auto R = Ring::parse("Zeta(" + std::to_string(p) + ",2)");
        WittVector x = mup2_vector(R, p, 3);
        CHECK(frobenius(x) == v_power_of_one(p, R, 1, 2));
        auto o = SolverOracles::for_ring(R, p);
        PreimageResult res = solve_V_power_preimage(1, 1, o);
        CHECK(frobenius(res.solution) == v_power_of_one(p, R, 1, 2));
    }
}

TEST_CASE("derived PR-MODP2 hook on the tower") {
    for (unsigned p : {2U, 3U, 5U}) {
        auto R = Ring::parse("ZetaTower(" + std::to_string(p) + ")");
        auto o = SolverOracles::for_ring(R, p);
        REQUIRE(o.prmodp2);
        std::mt19937_64 rng(p);
        const int trials = p == 3 ? 100 : 30;
        for (int t = 0; t < trials; ++t) {
            RingElement r = R->sample(rng);
            auto s = o.prmodp2(r);
            REQUIRE(s);
            RingElement diff = s->pow(p) - r.scaled(p);
            auto q1 = R->exact_div_p(diff, p);
            REQUIRE(q1);
            CHECK(R->exact_div_p(q1->quotient, p).has_value());
        }
        auto zero = o.prmodp2(R->zero());
        REQUIRE(zero);
        CHECK(zero->is_zero());
    }
}

TEST_CASE("V-power preimages") {
    auto R = Ring::parse("ZetaTower(3)");
    auto o = SolverOracles::for_ring(R, 3);
    for (unsigned n = 0; n <= 2; ++n)
        for (unsigned k = 0; k <= n; ++k) {
            PreimageResult res = solve_V_power_preimage(k, n, o);
            CHECK(res.solution.length() == n + 2);
            CHECK(frobenius(res.solution) == v_power_of_one(3, R, k, n + 1));
        }
    CHECK_THROWS_AS(solve_V_power_preimage(2, 1, o), UsageError);

    auto F2 = Ring::parse("GF(2)[T]/(T^4)");
    auto o2 = SolverOracles::for_ring(F2, 2);
    PreimageResult res = solve_V_power_preimage(2, 2, o2);
    CHECK(frobenius(res.solution) == v_power_of_one(2, F2, 2, 3));
}

TEST_CASE("differences of vectors agreeing on a prefix") {
    std::mt19937_64 rng(5);
    for (const char* spec : {"Z", "Z/9", "GF(3)[T]/(T^3)", "ZetaTower(3)"}) {
        auto R = Ring::parse(spec);
        for (int t = 0; t < 100; ++t) {
            WittVector a = random_witt(rng, 3, R, 3);
            std::vector<RingElement> c = a.components();
            c[2] = R->sample(rng);
            WittVector b(3, R, c);
            WittVector d = witt_sub(a, b);
            CHECK(d[0].is_zero());
            CHECK(d[1].is_zero());
        }
    }
}

TEST_CASE("Frobenius preimages over the tower") {
    auto R = Ring::parse("ZetaTower(3)");
    auto o = SolverOracles::for_ring(R, 3);
    std::mt19937_64 rng(2024);
    SampleOptions opts;
    opts.coeff_bound = 3;
    opts.max_degree = 2;
    for (std::size_t len : {2U, 3U}) {
        for (int t = 0; t < 100; ++t) {
            WittVector x = random_witt(rng, 3, R, len + 1, opts);
            WittVector y = frobenius(x);
            PreimageResult res = solve_frobenius(y, o);
            CHECK(frobenius(res.solution) == y);
        }
    }

    RingElement r = R->sample(rng);
    WittVector tr = teichmuller(3, r.pow(3), 3);
    CHECK(frobenius(teichmuller(3, r, 4)) == tr);
    CHECK(frobenius(solve_frobenius(tr, o).solution) == tr);

    WittVector w = random_witt(rng, 3, R, 2);
    WittVector pw = witt_scale(w, 3);
    CHECK(frobenius(verschiebung(w)) == pw);
    CHECK(frobenius(solve_frobenius(pw, o).solution) == pw);

    WittVector v2 = v_power_of_one(3, R, 2, 3);
    CHECK(frobenius(solve_frobenius(v2, o).solution) == v2);
}

TEST_CASE("preimage failures name the missing condition") {
    auto Z = Ring::parse("Z");
    auto o = SolverOracles::for_ring(Z, 3);
    WittVector y = witt_of(3, Z, {"1", "1"});
    try {
        solve_frobenius(y, o);
        FAIL("expected a capability error");
    } catch (const CapabilityError& e) {
        CHECK(std::string(e.what()).find("PR-MODP2") != std::string::npos);
    }
    WittVector y1 = witt_of(3, Z, {"5"});
    CHECK(frobenius(solve_frobenius(y1, o).solution) == y1);

    auto Zeta = Ring::parse("Zeta(3,2)");
    auto oz = SolverOracles::for_ring(Zeta, 3);
    CHECK_THROWS_AS(solve_frobenius(witt_of(3, Zeta, {"T"}), oz), CapabilityError);
}
