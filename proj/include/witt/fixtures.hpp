// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "witt/conditions.hpp"

namespace witt {

struct FixtureResult {
    std::string name;
    bool passed = false;
    /// One line per check; failures say what differed.
    std::vector<std::string> details;
    double seconds = 0;

    Json to_json() const;
};

struct Fixture {
    std::string name;
    std::string ring;
    std::vector<unsigned> primes;
    /// What the fixture establishes, stated as the identity being checked.
    std::string claim;
    std::function<FixtureResult()> run;
};

/// p*1 = [p] + V([(-1)^{p-1}]) in W_{p^depth}(Z/p^2); p in {2,3,5}, depth <= 5.
FixtureResult fixture_components_of_p(unsigned p, unsigned depth);

/// x = sum_{i<p} [zeta^i] over Z[mu_{p^2}] satisfies F(x) = V(1) at length 3,
/// with a separate ghost-component check.
FixtureResult fixture_mup2(unsigned p);

/// (1 - zeta)^{p^n - p^{n-1}} + p lies in ((1 - zeta)^{p^n}) in Z[mu_{p^n}].
FixtureResult fixture_power_of_mu(unsigned p, unsigned n);

/// No w in F_p[T]/(T^{p^{n-1}}) has w^p - w T^{p^{n-1} - p^{n-2}} = 1.
FixtureResult fixture_no_pth_root(unsigned p, unsigned n);

/// Statuses fixed by hand rather than by a checker: SPHER for Z and
/// PTHROOTS-Iinf on the p-power cyclotomic tower for odd p.
StatusMap asserted_statuses(const RingPtr& ring, unsigned p);

/// Expected cells of the condition matrices for Z, F_p[T], Z[mu_{p^2}] and
/// the tower, plus zero contradictions on every fixture ring.
FixtureResult fixture_condition_matrices();

/// Every fixture in a fixed order.
const std::vector<Fixture>& fixture_registry();

/// Runs the named fixture, or all of them when name is empty. Throws
/// UsageError for an unknown name.
std::vector<FixtureResult> run_fixtures(const std::string& name = {});

}  // namespace witt
