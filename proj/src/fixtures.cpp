// SPDX-License-Identifier: Apache-2.0
#include "witt/fixtures.hpp"

#include <chrono>

#include "witt/error.hpp"
#include "witt/preimage.hpp"

namespace witt {

namespace {

using C = ConditionId;

class Recorder {
public:
    explicit Recorder(std::string name) : start_(std::chrono::steady_clock::now()) { result_.name = std::move(name); }

    void expect(bool ok, std::string what) {
        result_.details.push_back((ok ? "ok: " : "FAILED: ") + what);
        if (!ok) failed_ = true;
    }

    FixtureResult finish() {
        result_.passed = !failed_ && !result_.details.empty();
        result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(result_);
    }

    FixtureResult fail(const std::exception& e) {
        expect(false, std::string("exception: ") + e.what());
        return finish();
    }

private:
    FixtureResult result_;
    bool failed_ = false;
    std::chrono::steady_clock::time_point start_;
};

std::string str(unsigned v) { return std::to_string(v); }

}  // namespace

Json FixtureResult::to_json() const {
    return Json{{"name", name}, {"passed", passed}, {"details", details}};
}

FixtureResult fixture_components_of_p(unsigned p, unsigned depth) {
    Recorder rec("components-of-p(" + str(p) + "," + str(depth) + ")");
    try {
        if (p != 2 && p != 3 && p != 5) throw UsageError("components-of-p needs p in {2,3,5}");
        if (depth == 0 || depth > 5) throw UsageError("components-of-p needs 1 <= depth <= 5");
        auto R = Ring::parse("Z/" + str(p * p));
        WittVector one = WittVector::one(p, R, depth);
        WittVector sum = WittVector::zero(p, R, depth);
        for (unsigned i = 0; i < p; ++i) sum = witt_add(sum, one);

        RingElement sign = R->from_integer(p % 2 == 1 ? 1 : -1);
        WittVector rhs = teichmuller(p, R->from_integer(p), depth);
        if (depth > 1) rhs = witt_add(rhs, verschiebung(teichmuller(p, sign, depth - 1)));
        rec.expect(sum == rhs, "p*1 = " + sum.to_string() + ", [p] + V([(-1)^(p-1)]) = " + rhs.to_string());

        std::vector<RingElement> expected(depth, R->zero());
        expected[0] = R->from_integer(p);
        if (depth > 1) expected[1] = sign;
        rec.expect(sum == WittVector(p, R, expected),
                   "components are (p, (-1)^(p-1), 0, ...) = " + WittVector(p, R, expected).to_string());
        return rec.finish();
    } catch (const std::exception& e) {
        return rec.fail(e);
    }
}

FixtureResult fixture_mup2(unsigned p) {
    Recorder rec("mup2(" + str(p) + ")");
    try {
        auto R = Ring::parse("Zeta(" + str(p) + ",2)");
        const std::size_t len = 3;
        WittVector x = mup2_vector(R, p, len);
        WittVector v1 = v_power_of_one(p, R, 1, len - 1);
        WittVector fx = frobenius(x);
        rec.expect(fx == v1, "F(x) = " + fx.to_string() + ", V(1) = " + v1.to_string());

        const RingElement zeta = R->generator();
        std::vector<RingElement> direct(len, R->zero());
        RingElement power = R->one();
        for (unsigned i = 0; i < p; ++i) {
            RingElement t = power;
            for (std::size_t k = 0; k < len; ++k) {
                direct[k] += t;
                t = t.pow(p);
            }
            power *= zeta;
        }
        rec.expect(ghost(x).components == direct, "ghost(x) is the sum of ghost([zeta^i]) = (zeta^{i p^k})");

        GhostVector gv = ghost(v_power_of_one(p, R, 1, len));
        std::vector<RingElement> expected{R->zero(), R->from_integer(p), R->from_integer(p)};
        rec.expect(gv.components == expected, "ghost(V(1)) = (0, p, p)");
        std::vector<RingElement> shifted(direct.begin() + 1, direct.end());
        rec.expect(shifted == std::vector<RingElement>(expected.begin(), expected.begin() + 2),
                   "ghost_k(F(x)) = ghost_{k+1}(x) = ghost_k(V(1))");
        if (p == 2) rec.expect(x[0] == R->parse_element("1+T"), "x_0 = 1 + i");
        return rec.finish();
    } catch (const std::exception& e) {
        return rec.fail(e);
    }
}

FixtureResult fixture_power_of_mu(unsigned p, unsigned n) {
    Recorder rec("power-of-mu(" + str(p) + "," + str(n) + ")");
    try {
        if (p % 2 == 0 || n < 2) throw UsageError("power-of-mu needs odd p and n >= 2");
        auto R = Ring::parse("Zeta(" + str(p) + "," + str(n) + ")");
        const unsigned pn = upow(p, n);
        const unsigned phi = pn - pn / p;
        const RingElement zeta = R->generator();
        const RingElement pi = R->one() - zeta;

        // p = u * pi^phi with u = prod_k (1 + zeta + ... + zeta^{k-1}) over k prime to p,
        // and u^{-1} = prod_k (1 + zeta^k + ... + zeta^{k(k'-1)}) with k k' = 1 mod p^n.
        RingElement u = R->one();
        RingElement v = R->one();
        for (unsigned k = 1; k < pn; ++k) {
            if (k % p == 0) continue;
            RingElement geo = R->zero();
            RingElement t = R->one();
            for (unsigned j = 0; j < k; ++j) {
                geo += t;
                t *= zeta;
            }
            u *= geo;
            unsigned kinv = 1;
            while ((static_cast<unsigned long>(k) * kinv) % pn != 1) ++kinv;
            RingElement zk = zeta.pow(k);
            RingElement inv = R->zero();
            t = R->one();
            for (unsigned j = 0; j < kinv; ++j) {
                inv += t;
                t *= zk;
            }
            v *= inv;
        }
        rec.expect(u * pi.pow(phi) == R->from_integer(p), "p = u * (1 - zeta)^" + str(phi));
        rec.expect(u * v == R->one(), "u is a unit");

        // With (pi^phi) = (p): a in (pi^{p^n}) iff a = p c and c pi^{phi - p^{n-1}} in (p).
        auto in_ideal = [&](const RingElement& a) {
            auto c = R->exact_div_p(a, p);
            if (!c) return false;
            return R->exact_div_p(c->quotient * pi.pow(phi - pn / p), p).has_value();
        };
        RingElement a = pi.pow(phi) + R->from_integer(p);
        rec.expect(in_ideal(a), "(1 - zeta)^" + str(phi) + " + " + str(p) + " in ((1 - zeta)^" + str(pn) + ")");
        rec.expect(!in_ideal(pi.pow(phi) - R->from_integer(p)),
                   "control: (1 - zeta)^" + str(phi) + " - " + str(p) + " is not in the ideal");
        rec.expect(!in_ideal(pi.pow(pn - 1)), "control: (1 - zeta)^" + str(pn - 1) + " is not in the ideal");
        return rec.finish();
    } catch (const std::exception& e) {
        return rec.fail(e);
    }
}

FixtureResult fixture_no_pth_root(unsigned p, unsigned n) {
    Recorder rec("no-pth-root(" + str(p) + "," + str(n) + ")");
    try {
        if (n < 2) throw UsageError("no-pth-root needs n >= 2");
        const unsigned m = upow(p, n - 1);
        const unsigned e = m - m / p;
        auto R = Ring::parse("GF(" + str(p) + ")[T]/(T^" + str(m) + ")");
        const RingElement shift = R->generator().pow(e);
        std::uint64_t candidates = 0, solutions = 0, control = 0;
        R->for_each_element([&](const RingElement& w) {
            ++candidates;
            RingElement wp = w.pow(p);
            if (wp - w * shift == R->one()) ++solutions;
            if (wp == R->one()) ++control;
            return true;
        });
        rec.expect(candidates == upow(p, m), str(static_cast<unsigned>(candidates)) + " candidates searched");
        rec.expect(solutions == 0, "solutions of w^" + str(p) + " - w T^" + str(e) + " = 1 mod T^" + str(m) + ": " +
                                       std::to_string(solutions));
        rec.expect(control > 0, "control: w^" + str(p) + " = 1 has " + std::to_string(control) + " solutions");
        return rec.finish();
    } catch (const std::exception& e) {
        return rec.fail(e);
    }
}

StatusMap asserted_statuses(const RingPtr& ring, unsigned p) {
    StatusMap out;
    if (ring->shape() == Ring::Shape::Scalar && ring->coefficient_modulus() == 0)
        out[C::Spher] = ConditionStatus::holds(
            Method::FixtureAsserted, Json{{"note", "nested cosets of the ideals (p^k) in Z have a common point"}});
    if (ring->shape() == Ring::Shape::Tower && ring->cyclotomic_prime() == p && p > 2)
        out[C::PthrootsIinf] = ConditionStatus::fails(
            Method::FixtureAsserted,
            Json{{"element", "1 - zeta_" + str(p * p)},
                 {"fixture", "no-pth-root(" + str(p) + ",2)"},
                 {"note", "a p-th root mod p I_inf would give w with w^p - w T^{p-1} = 1 mod T^p in F_p[T]"}});
    return out;
}

FixtureResult fixture_condition_matrices() {
    Recorder rec("condition-matrices");
    try {
        struct Cell {
            C id;
            Verdict verdict;
            Method method = Method::None;
        };
        auto run = [&](const std::string& spec, unsigned p, const std::vector<Cell>& cells) {
            auto R = Ring::parse(spec);
            ConditionReport rep = condition_matrix(R, p, {}, asserted_statuses(R, p));
            for (const Cell& c : cells) {
                const ConditionStatus& s = rep.statuses.at(c.id);
                bool ok = s.verdict == c.verdict && (c.method == Method::None || s.method == c.method);
                rec.expect(ok, spec + " p=" + str(p) + " " + condition_info(c.id).mnemonic + ": " +
                                   to_string(s.verdict) + " (" + to_string(s.method) + "), expected " +
                                   to_string(c.verdict) +
                                   (c.method == Method::None ? "" : " (" + to_string(c.method) + ")"));
            }
            rec.expect(rep.contradictions.empty(),
                       spec + " p=" + str(p) + ": " + std::to_string(rep.contradictions.size()) + " contradictions");
        };
        for (unsigned p : {2U, 3U, 5U}) {
            const std::string ps = str(p);
            run("Z", p,
                {{C::PthrootsModp, Verdict::Holds},
                 {C::SomePower, Verdict::Fails},
                 {C::Finlev, Verdict::Fails},
                 {C::Spher, Verdict::Holds, Method::FixtureAsserted}});
            run("GF(" + ps + ")[T]", p, {{C::PrModp2, Verdict::Holds}, {C::PthrootsModp, Verdict::Fails}});
            run("Zeta(" + ps + ",2)", p,
                {{C::VImage, Verdict::Holds, Method::Witness},
                 {C::PthrootsModp, Verdict::Fails},
                 {C::PrModp2, Verdict::Fails}});
            std::vector<Cell> tower{{C::PthrootsModp, Verdict::Holds}, {C::Finlev, Verdict::Holds, Method::Witness}};
            if (p > 2) {
                tower.push_back({C::PthrootsIinf, Verdict::Fails, Method::FixtureAsserted});
                tower.push_back({C::TeichImage, Verdict::Fails});
            }
            run("ZetaTower(" + ps + ")", p, tower);
        }
        for (const auto& [spec, p] : std::vector<std::pair<std::string, unsigned>>{
                 {"Z/4", 2}, {"Z/9", 3}, {"Z/5", 2}, {"GF(3)[T]/(T^3)", 3}, {"Zeta(3,1)", 3}})
            run(spec, p, {});
        return rec.finish();
    } catch (const std::exception& e) {
        return rec.fail(e);
    }
}

const std::vector<Fixture>& fixture_registry() {
    static const std::vector<Fixture> registry = [] {
        std::vector<Fixture> out;
        const std::pair<unsigned, unsigned> depths[] = {{2, 4}, {3, 3}, {5, 2}};
        for (auto [p, d] : depths)
            out.push_back({"components-of-p-" + str(p), "Z/" + str(p * p), {p},
                           "p*1 = [p] + V([(-1)^{p-1}]) in W_{p^" + str(d) + "}(Z/p^2)",
                           [p, d] { return fixture_components_of_p(p, d); }});
        for (unsigned p : {2U, 3U, 5U})
            out.push_back({"mup2-" + str(p), "Zeta(" + str(p) + ",2)", {p},
                           "F(sum_{i<p} [zeta_{p^2}^i]) = V(1), checked componentwise and on ghosts",
                           [p] { return fixture_mup2(p); }});
        const std::pair<unsigned, unsigned> mus[] = {{3, 2}, {3, 3}, {5, 2}};
        for (auto [p, n] : mus)
            out.push_back({"power-of-mu-" + str(p) + "-" + str(n), "Zeta(" + str(p) + "," + str(n) + ")", {p},
                           "(1 - zeta)^{p^n - p^{n-1}} = -p mod (1 - zeta)^{p^n}",
                           [p, n] { return fixture_power_of_mu(p, n); }});
        for (unsigned p : {3U, 5U})
            out.push_back({"no-pth-root-" + str(p) + "-2", "GF(" + str(p) + ")[T]/(T^" + str(p) + ")", {p},
                           "w^p - w T^{p-1} = 1 has no solution mod T^p over F_p",
                           [p] { return fixture_no_pth_root(p, 2); }});
        out.push_back({"condition-matrices", "Z, GF(p)[T], Zeta(p,2), ZetaTower(p)", {2, 3, 5},
                       "expected condition cells for the example rings and consistent closures",
                       [] { return fixture_condition_matrices(); }});
        return out;
    }();
    return registry;
}

std::vector<FixtureResult> run_fixtures(const std::string& name) {
    std::vector<FixtureResult> out;
    for (const Fixture& f : fixture_registry())
        if (name.empty() || f.name == name) {
            out.push_back(f.run());
            out.back().name = f.name;
        }
    if (out.empty()) throw UsageError("unknown fixture '" + name + "'");
    return out;
}

}  // namespace witt
