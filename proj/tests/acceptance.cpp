// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sys/wait.h>

#include "support.hpp"
#include "witt/error.hpp"
#include "witt/fixtures.hpp"
#include "witt/frobenius_kernel.hpp"
#include "witt/preimage.hpp"
#include "witt/universal.hpp"

using namespace witt;
using witt::testing::random_witt;
using witt::testing::witt_sum;

namespace {

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::pair<unsigned, unsigned> kLimits[] = {{2, 5}, {3, 3}, {5, 2}};

bool ac1(std::string& note) {
    auto t0 = std::chrono::steady_clock::now();
    for (auto [p, L] : kLimits) {
        auto s = sum_polys(p, L);
        auto m = product_polys(p, L);
        auto n = neg_polys(p, L);
        auto f = frobenius_polys(p, L);
        for (unsigned i = 0; i <= L; ++i) {
            SparsePoly gx = ghost_poly(p, i, Series::X), gy = ghost_poly(p, i, Series::Y);
            if (!(ghost_of(p, i, s) == gx + gy) || !(ghost_of(p, i, m) == gx * gy) || !(ghost_of(p, i, n) == -gx))
                return note = "ghost identity fails at p=" + std::to_string(p) + " level " + std::to_string(i), false;
        }
        for (unsigned i = 0; i < L; ++i)
            if (!(ghost_of(p, i, f) == ghost_poly(p, i + 1, Series::X)))
                return note = "Frobenius ghost shift fails at p=" + std::to_string(p), false;
    }
    double t = since(t0);
    note = std::to_string(t) + " s";
    return t < 300;
}

bool ac2(std::string& note) {
    for (auto [p, L] : kLimits) {
        FPolyReport r = f_poly_report(p, L - 1);
        if (!r.all_passed()) return note = "f polynomial report fails for p=" + std::to_string(p), false;
    }
    // x_1^p coefficient of f_p against -p^{p-2} mod p
    for (unsigned p : {2U, 3U, 5U}) {
        Integer c = f_poly(p, 1).coefficient_of(make_monomial({{{Series::X, 1}, p}}));
        Integer want = -ipow(Integer(p), p - 2);
        if (mod_floor(c - want, Integer(p)) != 0) return note = "x_1^p coefficient for p=" + std::to_string(p), false;
    }
    for (unsigned i : {2U, 3U})
        if (!reduce_for_ideal_check(f_poly(2, i)).is_zero()) return note = "p=2 substitution at i=" + std::to_string(i), false;
    return true;
}

bool fixtures_pass(const std::vector<FixtureResult>& rs, std::string& note) {
    for (const auto& r : rs)
        if (!r.passed) {
            note = r.name;
            for (const auto& d : r.details) note += "; " + d;
            return false;
        }
    return true;
}

bool ac3(std::string& note) {
    return fixtures_pass({fixture_components_of_p(2, 4), fixture_components_of_p(3, 3), fixture_components_of_p(5, 2)},
                         note);
}

bool ac4(std::string& note) {
    const std::pair<const char*, unsigned> rings[] = {
        {"Z", 2}, {"Z", 3}, {"Z/4", 2}, {"Z/9", 3}, {"GF(3)[T]/(T^3)", 3}, {"Zeta(3,2)", 3}};
    long cases = 0;
    for (auto [spec, p] : rings) {
        auto R = Ring::parse(spec);
        std::mt19937_64 rng(97);
        for (int k = 0; k < 1000; ++k) {
            auto x = random_witt(rng, p, R, 3), y = random_witt(rng, p, R, 3);
            auto x2 = restrict_to(x, 2), y3 = random_witt(rng, p, R, 3);
            auto gx = ghost(x), gy = ghost(y);
            auto gs = ghost(witt_add(x, y)), gp = ghost(witt_mul(x, y));
            bool ok = true;
            for (std::size_t i = 0; i < 3; ++i)
                ok = ok && gs.components[i] == gx.components[i] + gy.components[i] &&
                     gp.components[i] == gx.components[i] * gy.components[i];
            ok = ok && frobenius(verschiebung(x2)) == witt_scale(x2, p);
            ok = ok && verschiebung(witt_mul(x2, frobenius(y3))) == witt_mul(verschiebung(x2), y3);
            ok = ok && frobenius(teichmuller(p, x[0], 3)) == teichmuller(p, x[0].pow(p), 2);
            ok = ok && witt_sum(v_decompose(x)) == x;
            if (!ok) return note = std::string(spec) + " case " + std::to_string(k), false;
            ++cases;
        }
    }
    note = std::to_string(cases) + " cases";
    return true;
}

std::set<Coeffs> ideal_by_definition(const RingPtr& R, unsigned p, unsigned i) {
    std::vector<RingElement> all;
    R->for_each_element([&](const RingElement& r) {
        all.push_back(r);
        return true;
    });
    std::set<Coeffs> current;
    for (const auto& r : all) current.insert(r.coefficients());
    for (unsigned k = 0; k < i; ++k) {
        std::set<Coeffs> next;
        for (const auto& r : all)
            for (const auto& t : all)
                if (current.count(t.coefficients()) && t.scaled(p) == r.pow(p)) {
                    next.insert(r.coefficients());
                    break;
                }
        current = std::move(next);
    }
    return current;
}

bool ac5(std::string& note) {
    auto Z = Ring::parse("Z");
    for (unsigned p : {2U, 3U})
        for (unsigned n = 1; n <= 3; ++n) {
            WittVector z = kernel_element(Z, p, Z->from_integer(p), n);
            if (!frobenius(z).is_zero()) return note = "F(z) != 0 over Z", false;
            auto g = ghost(z).components;
            if (!(g[0] == Z->from_integer(p))) return note = "ghost_0 != p", false;
            for (unsigned i = 1; i <= n; ++i)
                if (!g[i].is_zero()) return note = "ghost not (p, 0, ..., 0)", false;
        }
    for (auto [spec, p] : {std::pair{"Z/4", 2U}, {"Z/9", 3U}}) {
        auto R = Ring::parse(spec);
        for (unsigned n = 1; n <= 2; ++n) {
            std::set<Coeffs> built;
            R->for_each_element([&](const RingElement& r) {
                try {
                    WittVector z = kernel_element(R, p, r, n);
                    if (frobenius(z).is_zero() && z[0] == r) built.insert(r.coefficients());
                } catch (const CapabilityError&) {
                }
                return true;
            });
            if (built != ideal_by_definition(R, p, n)) return note = std::string(spec) + " I_" + std::to_string(n), false;
        }
    }
    return true;
}

bool ac6(std::string& note) { return fixtures_pass({fixture_mup2(2), fixture_mup2(3), fixture_mup2(5)}, note); }

bool ac7(std::string& note) {
    return fixtures_pass({fixture_power_of_mu(3, 2), fixture_power_of_mu(3, 3), fixture_power_of_mu(5, 2)}, note);
}

bool ac8(std::string& note) {
    for (unsigned p : {3U, 5U}) {
        FixtureResult r = fixture_no_pth_root(p, 2);
        if (!fixtures_pass({r}, note)) return false;
        if (r.seconds >= 10) return note = r.name + " took " + std::to_string(r.seconds) + " s", false;
        const std::string want = std::to_string(upow(p, p)) + " candidates searched";
        bool counted = false;
        for (const auto& d : r.details) counted = counted || d.find(want) != std::string::npos;
        if (!counted) return note = r.name + " did not search " + want, false;
    }
    return true;
}

bool ac9(std::string& note) {
    auto R = Ring::parse("ZetaTower(3)");
    auto o = SolverOracles::for_ring(R, 3);
    std::mt19937_64 rng(4242);
    SampleOptions opts;
    opts.coeff_bound = 3;
    opts.max_degree = 2;
    for (std::size_t len : {2U, 3U})
        for (int t = 0; t < 100; ++t) {
            WittVector y = frobenius(random_witt(rng, 3, R, len + 1, opts));
            if (!(frobenius(solve_frobenius(y, o).solution) == y))
                return note = "length " + std::to_string(len) + " target " + y.to_string(), false;
        }
    if (!o.prmodp2) return note = "no PR-MODP2 hook", false;
    for (int t = 0; t < 100; ++t) {
        RingElement r = R->sample(rng);
        auto s = o.prmodp2(r);
        if (!s || !prmodp2_certificate(3, r, *s)) return note = "certificate fails for r = " + r.to_string(), false;
    }
    return true;
}

bool ac10(std::string& note) { return fixtures_pass({fixture_condition_matrices()}, note); }

std::pair<int, std::string> shell(const std::string& cmd) {
    std::string out;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return {-1, out};
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int status = pclose(f);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool ac11(std::string& note) {
    const std::string exe = WITTVEC_PATH;
    const std::string cmds[] = {
        exe + " poly --p 2 --level 1 --which sum --format json",
        exe + " poly --p 3 --level 2 --which product --format json",
        exe + " conditions --ring Z --p 3 --json",
        exe + " conditions --ring 'ZetaTower(3)' --p 3 --json",
    };
    for (const auto& c : cmds) {
        auto a = shell(c), b = shell(c);
        if (a.first != 0 || b.first != 0 || a.second.empty() || a.second != b.second)
            return note = "not byte-identical: " + c, false;
    }
    auto v = shell(exe + " verify");
    if (v.first != 0) return note = "verify exited " + std::to_string(v.first), false;
    return true;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<bool(std::string&)>> criteria[] = {
        {"AC1 universal polynomial integrality", ac1},
        {"AC2 f-polynomial structure report", ac2},
        {"AC3 components of p in W(Z/p^2)", ac3},
        {"AC4 structural identities", ac4},
        {"AC5 kernel machinery", ac5},
        {"AC6 mu_{p^2} vector maps to V(1)", ac6},
        {"AC7 power of mu congruence", ac7},
        {"AC8 no p-th root search", ac8},
        {"AC9 Frobenius preimages over ZetaTower(3)", ac9},
        {"AC10 condition matrices", ac10},
        {"AC11 CLI determinism and verify", ac11},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        std::string note;
        bool ok = false;
        try {
            ok = fn(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS " : "FAIL ") << name << (note.empty() ? "" : " (" + note + ")") << std::endl;
        if (!ok) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
