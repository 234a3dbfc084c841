// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "witt/ring.hpp"
#include "witt/witt_vector.hpp"

namespace witt {

/// r^p + p = p * s * cofactor and s^N in pR.
struct SomePowerWitness {
    RingElement r;
    RingElement s;
    RingElement cofactor;
    unsigned N = 1;
};

struct SolverOracles {
    using RootHook = std::function<std::optional<RingElement>(const RingElement&)>;
    using DivisionHook = std::function<std::optional<RingElement>(const RingElement&, unsigned k)>;

    unsigned p = 0;
    RingPtr ring;
    /// a -> s with s^p = a mod pR.
    RootHook pth_root_mod_p;
    /// r -> s with s^p = p r mod p^2 R.
    RootHook prmodp2;
    std::optional<SomePowerWitness> somepower;
    /// (a, k) -> t with p^k t = a.
    DivisionHook exact_division;

    /// Hooks backed by the ring's own capabilities, plus the built-in
    /// SOMEPOWER witness for cyclotomic rings containing mu_{p^2}. The
    /// PR-MODP2 hook is derived from the witness when the ring has none.
    static SolverOracles for_ring(const RingPtr& ring, unsigned p, std::uint64_t budget = kDefaultSearchBudget);

    /// Installs a witness after checking both certificates; throws
    /// VerificationError when either fails.
    void set_somepower(const SomePowerWitness& w);
    /// Fills prmodp2 from the witness when it is empty and roots are available.
    void derive_missing();
};

/// Throws VerificationError unless r^p + p = p s t and s^N in pR.
void validate_somepower(unsigned p, const SomePowerWitness& w);

/// sum_{i<p} [mu_{p^2}^i], the element whose Frobenius is V(1). Needs a
/// cyclotomic ring of level >= 2 or a tower.
WittVector mup2_vector(const RingPtr& ring, unsigned p, std::size_t length);
/// (x_0, 1 - x_1, 1, p) read off mup2_vector.
SomePowerWitness mup2_witness(const RingPtr& ring, unsigned p);

struct PreimageResult {
    WittVector solution;
    std::vector<std::string> trace;
};

/// x of length n+1 with sum_i p^i x_i^{p^{n-i}} = r, i.e. F^n(x) = (r).
WittVector solve_level1(const RingElement& r, unsigned n, const SolverOracles& oracles,
                        std::vector<std::string>* trace = nullptr);

/// The PR-MODP2 hook built from a SOMEPOWER witness and p-th roots mod p.
SolverOracles::RootHook derive_prmodp2(const SolverOracles& oracles);

/// s^p - p r in p^2 R.
bool prmodp2_certificate(unsigned p, const RingElement& r, const RingElement& s);

/// x of length n+2 with F(x) = V^k(1) of length n+1 (k <= n).
PreimageResult solve_V_power_preimage(unsigned k, unsigned n, const SolverOracles& oracles);

using PreimageSolver = std::function<PreimageResult(const WittVector&)>;

/// Preimage of y (length n+1) from a preimage of its restriction to length n.
PreimageResult lift_one_level(const WittVector& y, const PreimageSolver& shorter, const SolverOracles& oracles);

/// x of length len(y)+1 with F(x) = y.
PreimageResult solve_frobenius(const WittVector& y, const SolverOracles& oracles);

}  // namespace witt
