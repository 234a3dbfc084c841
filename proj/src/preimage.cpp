// SPDX-License-Identifier: Apache-2.0
#include "witt/preimage.hpp"

#include "witt/error.hpp"

namespace witt {

namespace {

void note(std::vector<std::string>* trace, std::string line) {
    if (trace) trace->push_back(std::move(line));
}

RingElement divide(const SolverOracles& o, const RingElement& a, unsigned k, const char* what) {
    auto q = o.exact_division(a, k);
    if (!q)
        throw InternalError(std::string(what) + ": " + a.to_string() + " is not divisible by p^" + std::to_string(k));
    return *q;
}

void verify(const WittVector& x, const WittVector& y, const char* what) {
    WittVector image = frobenius(x);
    if (!(image == y))
        throw InternalError(std::string(what) + ": F" + x.to_string() + " = " + image.to_string() + ", expected " +
                            y.to_string());
}

bool trivial_prmodp2(const RingPtr& ring, unsigned p) {
    const Integer& m = ring->coefficient_modulus();
    if (m == 0) return false;
    return gcd(m, Integer(p) * p) == gcd(m, Integer(p));
}

bool has_primitive_p2_root(const RingPtr& ring, unsigned p) {
    if (ring->cyclotomic_prime() != p) return false;
    return ring->shape() == Ring::Shape::Tower ||
           (ring->shape() == Ring::Shape::Cyclotomic && ring->cyclotomic_level() >= 2);
}

}  // namespace

void validate_somepower(unsigned p, const SomePowerWitness& w) {
    if (w.N == 0) throw VerificationError("SOMEPOWER witness needs N > 0");
    const RingPtr& ring = w.r.ring();
    RingElement lhs = w.r.pow(p) + ring->from_integer(p);
    RingElement rhs = (w.s * w.cofactor).scaled(p);
    if (!(lhs == rhs))
        throw VerificationError("SOMEPOWER witness: r^p + p = " + lhs.to_string() + " but p*s*t = " + rhs.to_string());
    if (!ring->reduce_mod_prime_power(w.s.pow(w.N), p, 1).is_zero())
        throw VerificationError("SOMEPOWER witness: s^" + std::to_string(w.N) + " is not in pR");
}

void SolverOracles::set_somepower(const SomePowerWitness& w) {
    validate_somepower(p, w);
    somepower = w;
}

void SolverOracles::derive_missing() {
    if (!prmodp2 && somepower && pth_root_mod_p) prmodp2 = derive_prmodp2(*this);
}

SolverOracles SolverOracles::for_ring(const RingPtr& ring, unsigned p, std::uint64_t budget) {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw UsageError("p must be prime");
    SolverOracles o;
    o.p = p;
    o.ring = ring;
    o.exact_division = [ring, p](const RingElement& a, unsigned k) { return ring->exact_div_p_power(a, p, k); };
    if (ring->capabilities(p).has_pth_root_mod_p)
        o.pth_root_mod_p = [ring, p, budget](const RingElement& a) { return ring->pth_root_mod_p(a, p, budget); };
    if (trivial_prmodp2(ring, p)) {
        o.prmodp2 = [ring](const RingElement&) -> std::optional<RingElement> { return ring->zero(); };
    } else if (auto size = ring->quotient_size(p, 2); size && *size <= budget) {
        o.prmodp2 = [ring, p](const RingElement& r) -> std::optional<RingElement> {
            std::optional<RingElement> found;
            ring->for_each_residue(p, 2, [&](const RingElement& s) {
                if (prmodp2_certificate(p, r, s)) {
                    found = s;
                    return false;
                }
                return true;
            });
            return found;
        };
    }
    if (has_primitive_p2_root(ring, p)) o.set_somepower(mup2_witness(ring, p));
    o.derive_missing();
    return o;
}

WittVector mup2_vector(const RingPtr& ring, unsigned p, std::size_t length) {
    if (!has_primitive_p2_root(ring, p))
        throw CapabilityError(ring->spec() + " has no primitive p^2-th root of unity for p=" + std::to_string(p));
    RingElement zeta = ring->shape() == Ring::Shape::Tower
                           ? ring->from_coefficients({0, 1}, 2)
                           : ring->generator().pow(upow(p, ring->cyclotomic_level() - 2));
    WittVector x = WittVector::zero(p, ring, length);
    RingElement power = ring->one();
    for (unsigned i = 0; i < p; ++i) {
        x = witt_add(x, teichmuller(p, power, length));
        power *= zeta;
    }
    return x;
}

SomePowerWitness mup2_witness(const RingPtr& ring, unsigned p) {
    WittVector x = mup2_vector(ring, p, 2);
    SomePowerWitness w{x[0], ring->one() - x[1], ring->one(), p};
    validate_somepower(p, w);
    return w;
}

WittVector solve_level1(const RingElement& r, unsigned n, const SolverOracles& o, std::vector<std::string>* trace) {
    const RingPtr& ring = o.ring;
    if (n == 0) return WittVector(o.p, ring, {r});
    if (!o.pth_root_mod_p) throw CapabilityError("LEV1: no p-th root oracle mod p for " + ring->spec());
    RingElement t = r;
    for (unsigned k = 0; k < n; ++k) {
        auto root = o.pth_root_mod_p(t);
        if (!root) throw CapabilityError("PTHROOTS-MODP: " + t.to_string() + " has no p-th root mod p");
        t = *root;
    }
    note(trace, "level " + std::to_string(n) + ": root " + t.to_string() + " of " + r.to_string());
    RingElement s = divide(o, r - t.pow(upow(o.p, n)), 1, "LEV1");
    WittVector rest = solve_level1(s, n - 1, o, trace);
    std::vector<RingElement> c{t};
    c.insert(c.end(), rest.components().begin(), rest.components().end());
    WittVector x(o.p, ring, std::move(c));
    if (!(ghost(x).components.back() == r))
        throw InternalError("LEV1: top ghost component of " + x.to_string() + " is not " + r.to_string());
    return x;
}

bool prmodp2_certificate(unsigned p, const RingElement& r, const RingElement& s) {
    return r.ring()->reduce_mod_prime_power(s.pow(p) - r.scaled(p), p, 2).is_zero();
}

SolverOracles::RootHook derive_prmodp2(const SolverOracles& o) {
    if (!o.somepower) throw CapabilityError("SOMEPOWER: no witness for " + o.ring->spec());
    if (!o.pth_root_mod_p) throw CapabilityError("PTHROOTS-MODP: no p-th root oracle mod p for " + o.ring->spec());
    const SomePowerWitness w = *o.somepower;
    const auto root = o.pth_root_mod_p;
    const unsigned p = o.p;
    const RingElement s1 = w.r;
    const RingElement s2 = w.s * w.cofactor;
    RingElement geometric = o.ring->zero();
    RingElement power = o.ring->one();
    for (unsigned i = 0; i < w.N; ++i) {
        geometric += power;
        power *= s2;
    }
    return [=](const RingElement& r) -> std::optional<RingElement> {
        auto s3 = root(-(r * geometric));
        if (!s3) return std::nullopt;
        RingElement s = s1 * *s3;
        if (!prmodp2_certificate(p, r, s))
            throw InternalError("derived PR-MODP2 answer " + s.to_string() + " fails for r = " + r.to_string());
        return s;
    };
}

PreimageResult solve_V_power_preimage(unsigned k, unsigned n, const SolverOracles& o) {
    if (k > n) throw UsageError("V^k(1) in W_{p^n} needs k <= n");
    const RingPtr& ring = o.ring;
    const unsigned p = o.p;
    const WittVector target = v_power_of_one(p, ring, k, n + 1);
    PreimageResult out;
    if (k == 0) {
        out.solution = WittVector::one(p, ring, n + 2);
        out.trace.push_back("F(1) = 1");
        verify(out.solution, target, "V-power preimage");
        return out;
    }
    if (k < n) {
        out = solve_frobenius(target, o);
        out.trace.insert(out.trace.begin(), "V^" + std::to_string(k) + "(1) solved as a general target");
        return out;
    }
    if (n == 1 && o.somepower) {
        const SomePowerWitness& w = *o.somepower;
        std::vector<RingElement> x{w.r, ring->one() - w.s * w.cofactor};
        auto last = o.exact_division(ring->one() - x[1].pow(p) - p_times_f(p, 1, ring, x), 1);
        if (last) {
            x.push_back(*last);
            out.solution = WittVector(p, ring, std::move(x));
            out.trace.push_back("PMODP2 witness r = " + w.r.to_string() + ", s = " + w.s.to_string());
            verify(out.solution, target, "V-power preimage");
            return out;
        }
        out.trace.push_back("PMODP2 witness does not close the last slot");
    }
    if (!o.prmodp2) throw CapabilityError("PR-MODP2: no oracle for " + ring->spec() + " at p=" + std::to_string(p));
    std::vector<RingElement> pre(n + 1);
    pre[n] = ring->one();
    for (unsigned i = n; i-- > 0;) {
        RingElement r = -pre[i + 1];
        auto s = o.prmodp2(r);
        if (!s) throw CapabilityError("PR-MODP2: no s with s^p = p*(" + r.to_string() + ") mod p^2");
        pre[i] = *s;
        out.trace.push_back("preliminary slot " + std::to_string(i) + ": " + s->to_string());
    }
    std::vector<RingElement> x{pre[0]};
    for (unsigned i = 0; i < n; ++i) {
        RingElement a = -(x[i].pow(p) + pre[i + 1].scaled(p) + p_times_f(p, i, ring, x));
        RingElement y = divide(o, a, 2, "V-power correction");
        x.push_back(pre[i + 1] + y.scaled(p));
        out.trace.push_back("correction slot " + std::to_string(i + 1) + ": " + y.to_string());
    }
    x.push_back(divide(o, ring->one() - x[n].pow(p) - p_times_f(p, n, ring, x), 1, "V-power last slot"));
    out.solution = WittVector(p, ring, std::move(x));
    verify(out.solution, target, "V-power preimage");
    return out;
}

PreimageResult lift_one_level(const WittVector& y, const PreimageSolver& shorter, const SolverOracles& o) {
    const std::size_t m = y.length();
    if (m < 2) throw UsageError("lift_one_level needs a target of length >= 2");
    const RingPtr& ring = o.ring;
    PreimageResult out = shorter(restrict_to(y, m - 1));
    std::vector<RingElement> c = out.solution.components();
    c.push_back(ring->zero());
    WittVector r(o.p, ring, std::move(c));
    WittVector diff = witt_sub(y, frobenius(r));
    for (std::size_t j = 0; j + 1 < m; ++j)
        if (!diff[j].is_zero())
            throw InternalError("lift_one_level: difference " + diff.to_string() + " is nonzero at slot " +
                                std::to_string(j));
    const RingElement& d = diff[m - 1];
    if (d.is_zero()) {
        out.solution = r;
        out.trace.push_back("length " + std::to_string(m) + ": zero lift already maps to the target");
    } else {
        WittVector second = solve_level1(d, static_cast<unsigned>(m), o, &out.trace);
        PreimageResult first = solve_V_power_preimage(static_cast<unsigned>(m - 1), static_cast<unsigned>(m - 1), o);
        out.trace.insert(out.trace.end(), first.trace.begin(), first.trace.end());
        out.trace.push_back("length " + std::to_string(m) + ": correction " + d.to_string());
        out.solution = witt_add(r, witt_mul(first.solution, second));
    }
    verify(out.solution, y, "lift_one_level");
    return out;
}

PreimageResult solve_frobenius(const WittVector& y, const SolverOracles& o) {
    if (y.prime() != o.p || !y.ring()->same_ring(*o.ring))
        throw UsageError("target " + y.to_string() + " does not match the oracles' ring and prime");
    PreimageResult out;
    if (y.length() == 1) {
        out.solution = solve_level1(y[0], 1, o, &out.trace);
    } else {
        out = lift_one_level(y, [&o](const WittVector& t) { return solve_frobenius(t, o); }, o);
    }
    verify(out.solution, y, "solve_frobenius");
    return out;
}

}  // namespace witt
