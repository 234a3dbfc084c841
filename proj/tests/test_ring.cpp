#include <random>
#include <set>

#include "doctest.h"
#include "witt/error.hpp"
#include "witt/ring.hpp"

using namespace witt;

namespace {

RingElement el(const RingPtr& R, const char* text) { return R->parse_element(text); }

const char* kConcreteRings[] = {"Z",          "Z/4",        "Z/9",         "GF(3)[T]/(T^3)", "Zeta(3,2)",
                                "Zeta(2,2)",  "ZetaTower(3)", "GF(5)[T]",  "Z[T]/(T^2+1)",   "Z/12[T]/(T^2+5*T+1)"};

}  // namespace

TEST_CASE("ring specs parse and render") {
    CHECK(parse_ring_spec("Z/4") == RingDescriptor::modular(4));
    CHECK(parse_ring_spec("Zeta(3,2)") == RingDescriptor::cyclotomic(3, 2));
    CHECK(parse_ring_spec("ZetaTower(5)") == RingDescriptor::tower(5));
    CHECK(parse_ring_spec(" GF(5)[T]/(T^2) ").to_spec() == "GF(5)[T]/(T^2)");
    CHECK(parse_ring_spec("Z[x]/(x^2+1)").to_spec() == "Z[x]/(x^2+1)");
    for (const char* spec : kConcreteRings) CHECK(parse_ring_spec(parse_ring_spec(spec).to_spec()) == parse_ring_spec(spec));

    try {
        parse_ring_spec("Z[T]/(T^2+1");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 11);
        CHECK(e.exit_code() == 1);
    }
    CHECK_THROWS_AS(parse_ring_spec("Q"), ParseError);
    CHECK_THROWS_AS(Ring::parse("GF(4)"), UsageError);
    CHECK_THROWS_AS(Ring::parse("Z[T]/(2*T^2+1)"), UsageError);
    CHECK_THROWS_AS(Ring::parse("Z/1"), UsageError);
}

TEST_CASE("basic arithmetic examples") {
    auto Z4 = Ring::parse("Z/4");
    CHECK(el(Z4, "2") + el(Z4, "3") == el(Z4, "1"));
    CHECK((el(Z4, "2") + el(Z4, "3")).to_string() == "1");

    auto Z3 = Ring::parse("Zeta(3,1)");
    auto mu = Z3->generator();
    CHECK(mu + mu.pow(2) == Z3->from_integer(-1));

    auto Z = Ring::parse("Z");
    CHECK(el(Z, "7").pow(2) == el(Z, "49"));

    auto Zi = Ring::parse("Z[T]/(T^2+1)");
    CHECK(Zi->generator().pow(2) == Zi->from_integer(-1));
    CHECK(el(Zi, "3*T+2").to_string() == "3*T+2");

    auto other = Ring::parse("Z/9");
    CHECK_THROWS_AS(el(Z4, "1") + el(other, "1"), UsageError);
    // equal descriptors give interchangeable elements
    CHECK(el(Z4, "3") + el(Ring::parse("Z/4"), "1") == Z4->zero());
}

TEST_CASE("exact division by p") {
    auto Z = Ring::parse("Z");
    auto q = Z->exact_div_p(el(Z, "-42"), 2);
    REQUIRE(q);
    CHECK(q->quotient == el(Z, "-21"));
    CHECK(q->unique);
    CHECK_FALSE(Z->exact_div_p(el(Z, "3"), 2));

    // oracle: all t in Z/8 with 2t = 6
    auto Z8 = Ring::parse("Z/8");
    std::set<long> solutions;
    for (long t = 0; t < 8; ++t)
        if ((2 * t) % 8 == 6) solutions.insert(t);
    auto d = Z8->exact_div_p(el(Z8, "6"), 2);
    REQUIRE(d);
    CHECK_FALSE(d->unique);
    CHECK(d->quotient == el(Z8, "3"));
    CHECK(solutions.count(d->quotient.coefficients()[0].get_si()) == 1);
    CHECK(solutions.size() == 2);
    CHECK_FALSE(Z8->exact_div_p(el(Z8, "3"), 2));

    auto Z5 = Ring::parse("Z/5");
    auto inv = Z5->exact_div_p(Z5->one(), 2);
    REQUIRE(inv);
    CHECK(inv->quotient.scaled(2) == Z5->one());
}

TEST_CASE("p-th roots modulo p") {
    auto Z = Ring::parse("Z");
    CHECK(*Z->pth_root_mod_p(el(Z, "5"), 3) == el(Z, "5"));

    auto tower = Ring::parse("ZetaTower(3)");
    auto mu3 = tower->generator();
    auto root = tower->pth_root_mod_p(mu3, 3);
    REQUIRE(root);
    CHECK(root->level() == 2);
    CHECK(*root == el(tower, "[0,1]@2"));
    CHECK(root->pow(3) == mu3);

    // oracle: enumerate all 25 residues of GF(5)[T]/(T^2)
    auto R = Ring::parse("GF(5)[T]/(T^2)");
    int hits = 0;
    R->for_each_element([&](const RingElement& s) {
        if (s.pow(5) == R->generator()) ++hits;
        return true;
    });
    CHECK(hits == 0);
    CHECK_FALSE(R->pth_root_mod_p(R->generator(), 5));

    auto Fp = Ring::parse("GF(3)[T]");
    CHECK_FALSE(Fp->pth_root_mod_p(Fp->generator(), 3));
    auto r = Fp->pth_root_mod_p(el(Fp, "T^6+2*T^3+1"), 3);
    REQUIRE(r);
    CHECK(r->pow(3) == el(Fp, "T^6+2*T^3+1"));

    auto Z9ring = Ring::parse("Zeta(3,2)");
    CHECK_FALSE(Z9ring->pth_root_mod_p(Z9ring->generator(), 3));
}

TEST_CASE("p-th roots satisfy s^p - a in pR on samples") {
    std::mt19937_64 rng(7);
    for (const char* spec : {"Z", "Z/9", "ZetaTower(3)", "ZetaTower(2)", "GF(3)[T]/(T^3)", "Z[T]/(T^2+1)"}) {
        auto R = Ring::parse(spec);
        for (int k = 0; k < 60; ++k) {
            unsigned p = R->cyclotomic_prime() ? R->cyclotomic_prime() : 3;
            if (std::string(spec) == "Z[T]/(T^2+1)") p = 2;
            auto a = R->sample(rng);
            auto s = R->pth_root_mod_p(a, p);
            if (!s) continue;
            CHECK(R->exact_div_p(s->pow(p) - a, p).has_value());
        }
    }
}

TEST_CASE("valuations") {
    auto Z = Ring::parse("Z");
    CHECK(Z->valuation(el(Z, "18"), 3) == Valuation{Rational(2)});
    CHECK(Z->valuation(Z->zero(), 3).is_infinite());

    auto R = Ring::parse("Zeta(3,2)");
    auto pi = R->one() - R->generator();
    CHECK(R->valuation(pi, 3) == Valuation{Rational(1, 6)});
    CHECK(R->valuation(R->from_integer(3), 3) == Valuation{Rational(1)});
    CHECK(R->capabilities(3).valuation_denominator == Integer(6));

    auto tower = Ring::parse("ZetaTower(3)");
    auto mu9 = tower->parse_element("[0,1]@2");
    CHECK(tower->valuation(tower->one() - mu9, 3) == Valuation{Rational(1, 6)});
    CHECK(tower->valuation(tower->one() - tower->generator(), 3) == Valuation{Rational(1, 2)});
}

TEST_CASE("cyclotomic valuation agrees with the norm") {
    std::mt19937_64 rng(11);
    for (auto [p, n] : {std::pair{3U, 2U}, {2U, 2U}, {2U, 3U}, {5U, 1U}, {3U, 1U}}) {
        auto R = Ring::make(RingDescriptor::cyclotomic(p, n));
        Integer d = R->capabilities(p).valuation_denominator.value();
        for (int k = 0; k < 200; ++k) {
            auto a = R->sample(rng);
            if (k % 3 == 0) a = a * (R->one() - R->generator()).pow(k % 7);
            if (a.is_zero()) continue;
            Integer N = R->norm(a);
            REQUIRE(N != 0);
            Rational expected(Integer(valuation_of(N, p)), d);
            expected.canonicalize();
            CHECK(R->valuation(a, p) == Valuation{expected});
        }
    }
}

TEST_CASE("valuation is multiplicative and ultrametric on samples") {
    std::mt19937_64 rng(5);
    for (const char* spec : {"Z", "Zeta(3,2)", "Zeta(2,3)", "ZetaTower(3)"}) {
        auto R = Ring::parse(spec);
        unsigned p = R->cyclotomic_prime() ? R->cyclotomic_prime() : 3;
        for (int k = 0; k < 300; ++k) {
            auto a = R->sample(rng), b = R->sample(rng);
            auto va = R->valuation(a, p), vb = R->valuation(b, p);
            auto vab = R->valuation(a * b, p);
            if (va.is_infinite() || vb.is_infinite())
                CHECK(vab.is_infinite());
            else
                CHECK(vab == Valuation{*va.value + *vb.value});
            auto vsum = R->valuation(a + b, p);
            CHECK_FALSE(vsum < std::min(va, vb));
        }
    }
}

TEST_CASE("quotient enumeration") {
    auto Z = Ring::parse("Z");
    auto q = Z->enumerate_quotient(2, 2);
    REQUIRE(q.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(q[i] == Z->from_integer(i));

    auto F3 = Ring::parse("GF(3)");
    CHECK(F3->enumerate_quotient(3, 1).size() == 3);

    auto Zi = Ring::parse("Zeta(2,2)");
    auto reps = Zi->enumerate_quotient(2, 1);
    REQUIRE(reps.size() == 4);
    std::set<std::string> names;
    for (const auto& r : reps) names.insert(r.to_string());
    CHECK(names == std::set<std::string>{"0", "1", "[0,1]@2", "[1,1]@2"});

    CHECK_THROWS_AS(Ring::parse("GF(3)[T]")->enumerate_quotient(3, 1), CapabilityError);
    CHECK(*Ring::parse("Z/5")->quotient_size(2, 3) == 1);
}

TEST_CASE("tower embedding and level normalisation") {
    auto tower = Ring::parse("ZetaTower(3)");
    auto mu3 = tower->generator();
    auto rep = tower->embed_tower(mu3, 2);
    CHECK(rep.level == 2);
    CHECK(rep.coefficients == Coeffs{0, 0, 0, 1});
    CHECK(tower->from_coefficients(rep.coefficients, 2) == mu3);
    CHECK(tower->from_coefficients({0, 0, 0, 1}, 2).level() == 1);

    auto five = tower->from_integer(5);
    auto rep5 = tower->embed_tower(five, 2);
    CHECK(tower->from_coefficients(rep5.coefficients, 2) == five);
    CHECK_THROWS_AS(tower->embed_tower(tower->parse_element("[0,1]@2"), 1), UsageError);

    // mu_9^3 = mu_3 computed inside Z[T]/(Phi_9)
    auto mu9 = tower->parse_element("[0,1]@2");
    CHECK(mu9.pow(3) == mu3);
    CHECK(mu9.pow(9) == tower->one());

    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        auto a = tower->sample(rng), b = tower->sample(rng);
        unsigned target = std::max(a.level(), b.level()) + 1;
        auto ea = tower->embed_tower(a, target), eb = tower->embed_tower(b, target);
        auto level2 = Ring::make(RingDescriptor::cyclotomic(3, target));
        auto A = level2->from_coefficients(ea.coefficients), B = level2->from_coefficients(eb.coefficients);
        auto prod = tower->embed_tower(a * b, target);
        auto sum = tower->embed_tower(a + b, target);
        CHECK(level2->from_coefficients(prod.coefficients) == A * B);
        CHECK(level2->from_coefficients(sum.coefficients) == A + B);
        // embed, take a root, raise back
        auto root = tower->pth_root_mod_p(tower->from_coefficients(ea.coefficients, target), 3);
        CHECK(tower->exact_div_p(root->pow(3) - a, 3).has_value());
        // normalisation is idempotent
        auto again = tower->from_coefficients(a.coefficients(), a.level());
        CHECK(again == a);
    }
}

TEST_CASE("ring axioms on random triples") {
    for (const char* spec : kConcreteRings) {
        CAPTURE(spec);
        auto R = Ring::parse(spec);
        std::mt19937_64 rng(42);
        int failures = 0;
        for (int k = 0; k < 1000; ++k) {
            auto a = R->sample(rng), b = R->sample(rng), c = R->sample(rng);
            bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a && a * b == b * a &&
                      a * (b + c) == a * b + a * c && a + R->zero() == a && a * R->one() == a && a - a == R->zero();
            if (!ok) ++failures;
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("exact_div_p inverts multiplication by p on torsion-free rings") {
    std::mt19937_64 rng(9);
    for (const char* spec : {"Z", "Zeta(3,2)", "ZetaTower(2)", "Z[T]/(T^2+1)", "GF(5)[T]", "Z/7"}) {
        auto R = Ring::parse(spec);
        for (unsigned p : {2U, 3U}) {
            if (!R->capabilities(p).is_p_torsion_free) continue;
            for (int k = 0; k < 200; ++k) {
                auto a = R->sample(rng);
                auto q = R->exact_div_p(a.scaled(p), p);
                REQUIRE(q);
                CHECK(q->quotient == a);
            }
        }
    }
}

TEST_CASE("element literals round-trip") {
    auto tower = Ring::parse("ZetaTower(3)");
    for (const char* lit : {"0", "-7", "[1,2]@1", "[0,1]@2", "[1,0,0,2,5]@2"}) {
        auto e = tower->parse_element(lit);
        CHECK(tower->parse_element(e.to_string()) == e);
    }
    CHECK(tower->parse_element("[1,0,0,2]@2").to_string() == "[1,2]@1");
    auto poly = Ring::parse("GF(3)[T]/(T^3)");
    CHECK(poly->parse_element("4*T^2 - 1").to_string() == "T^2+2");
    CHECK_THROWS_AS(poly->parse_element("T^"), ParseError);
    CHECK_THROWS_AS(Ring::parse("Z")->parse_element("1x"), ParseError);
    CHECK_THROWS_AS(Ring::parse("Zeta(3,2)")->parse_element("[1]@3"), UsageError);
}

TEST_CASE("p-torsion of finite rings") {
    auto Z9 = Ring::parse("Z/9");
    auto t = Z9->p_torsion(3);
    REQUIRE(t.size() == 3);
    for (const auto& x : t) CHECK(x.scaled(3).is_zero());
    CHECK(Ring::parse("Z/4")->p_torsion(3).size() == 1);
}
