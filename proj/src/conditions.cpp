// SPDX-License-Identifier: Apache-2.0
#include "witt/conditions.hpp"

#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "witt/error.hpp"
#include "witt/frobenius_kernel.hpp"
#include "witt/preimage.hpp"

namespace witt {

namespace {

using C = ConditionId;

const std::array<ConditionInfo, kConditionCount> kCatalog{{
    {C::Surj, "SURJ", "i", "F: W(R) -> W(R) is surjective"},
    {C::Finlev, "FINLEV", "ii", "F: W_{p^n}(R) -> W_{p^{n-1}}(R) is surjective for all n >= 2"},
    {C::FinlevPrime, "FINLEV'", "ii'", "F: W_{p^2}(R) -> W_p(R) is surjective"},
    {C::TeichDense, "TEICH-DENSE", "iii", "for every x in W(R) there is r in R with x - [r] in pW(R)"},
    {C::TeichImage, "TEICH-IMAGE", "iv", "the image of F: W(R) -> W(R) contains all Teichmuller elements"},
    {C::TeichImageFin, "TEICH-IMAGE-FIN", "v",
     "for all n >= 2, the image of F: W_{p^n}(R) -> W_{p^{n-1}}(R) contains all elements of the form (r,0,...,0)"},
    {C::TeichImageFinPrime, "TEICH-IMAGE-FIN'", "v'", "F: W_{p^2}(R) -> W_p(R) contains all elements of the form (r,0)"},
    {C::VImage, "V-IMAGE", "vi", "the image of F: W(R) -> W(R) contains V(1)"},
    {C::VImageAll, "V-IMAGE-ALL", "vii", "for all n >= 2, the image of F: W_{p^n}(R) -> W_{p^{n-1}}(R) contains V(1)"},
    {C::VImageFin2, "V-IMAGE-FIN2", "viii",
     "for all n >= 2, the image of F: W_{p^n}(R) -> W_{p^{n-1}}(R) contains V^{n-1}(1)"},
    {C::VImageFin, "V-IMAGE-FIN", "ix", "the image of F: W_{p^2}(R) -> W_p(R) contains V(1)"},
    {C::Lev1, "LEV1", "x", "F^n: W_{p^n}(R) -> W_1(R) is surjective for all n >= 1"},
    {C::Lev1Prime, "LEV1'", "x'", "F: W_p(R) -> W_1(R) is surjective"},
    {C::PInv, "P-INV", "xi", "R contains p^{-1}"},
    {C::Spher, "SPHER", "xii",
     "for any decreasing chain of balls B(r_0, I_0) >= B(r_1, I_1) >= ..., the intersection is non-empty"},
    {C::PthrootsIinf, "PTHROOTS-Iinf", "xiii", "the p-th power map on R/pI_inf is surjective"},
    {C::PthrootsIn, "PTHROOTS-In", "xiv", "for each n >= 1, the p-th power map on R/pI_n is surjective"},
    {C::PthrootsInPrime, "PTHROOTS-In'", "xiv'", "the p-th power map on R/pI_1 is surjective"},
    {C::PrModp2, "PR-MODP2", "xv", "for every r in R there is s in R with s^p = pr mod p^2 R"},
    {C::Pmodp2, "PMODP2", "xvi", "there are r, s in R with r^p = -p mod psR and s in I_1"},
    {C::SomePower, "SOMEPOWER", "xvii", "there are r, s in R with r^p = -p mod psR and s^N in pR for some N > 0"},
    {C::PthrootsModp, "PTHROOTS-MODP", "xviii", "the Frobenius r -> r^p on R/pR is surjective"},
}};

std::string str(const RingElement& a) { return a.to_string(); }

Json somepower_json(const SomePowerWitness& w) {
    return {{"r", str(w.r)}, {"s", str(w.s)}, {"cofactor", str(w.cofactor)}, {"N", w.N}};
}

SomePowerWitness somepower_from_json(const RingPtr& ring, const Json& j) {
    return {ring->parse_element(j.at("r").get<std::string>()), ring->parse_element(j.at("s").get<std::string>()),
            ring->parse_element(j.at("cofactor").get<std::string>()), j.at("N").get<unsigned>()};
}

Coeffs key(const RingPtr& ring, const RingElement& a, unsigned p, unsigned k) {
    return ring->reduce_mod_prime_power(a, p, k).coefficients();
}

std::vector<RingElement> all_elements(const RingPtr& ring) {
    std::vector<RingElement> out;
    ring->for_each_element([&](const RingElement& r) {
        out.push_back(r);
        return true;
    });
    return out;
}

bool p_annihilates(const RingPtr& ring, unsigned p) {
    const Integer& m = ring->coefficient_modulus();
    return m != 0 && divides(m, Integer(p));
}

bool p_is_unit(const RingPtr& ring, unsigned p) {
    const Integer& m = ring->coefficient_modulus();
    return m != 0 && gcd(m, Integer(p)) == 1;
}

/// s^p = c + p^k b has no solution when v(c) < k and v(c)/p is not a value.
std::optional<Json> valuation_obstruction(const RingPtr& ring, unsigned p, const RingElement& c, unsigned k) {
    const RingCapabilities caps = ring->capabilities(p);
    if (!caps.has_valuation || !caps.valuation_denominator) return std::nullopt;
    Valuation v = ring->valuation(c, p);
    if (v.is_infinite() || *v.value >= Rational(k)) return std::nullopt;
    Rational scaled = *v.value * Rational(*caps.valuation_denominator) / Rational(p);
    scaled.canonicalize();
    if (scaled.get_den() == 1) return std::nullopt;
    return Json{{"element", str(c)},
                {"valuation", to_string(*v.value)},
                {"value_group", "1/" + caps.valuation_denominator->get_str(10) + " Z"}};
}

std::optional<RingElement> uniformizer_candidate(const RingPtr& ring, unsigned p) {
    if (ring->shape() == Ring::Shape::Cyclotomic && ring->cyclotomic_prime() == p)
        return ring->one() - ring->generator();
    return std::nullopt;
}

class Checker {
public:
    Checker(RingPtr ring, unsigned p, CheckBudget budget) : ring_(std::move(ring)), p_(p), budget_(budget) {
        if (!is_prime(static_cast<std::uint64_t>(p_))) throw UsageError("p must be prime, got " + std::to_string(p_));
    }

    const ConditionStatus& get(ConditionId id) {
        auto it = memo_.find(id);
        if (it != memo_.end()) return it->second;
        ConditionStatus s;
        try {
            s = compute(id);
        } catch (const CapabilityError& e) {
            s = ConditionStatus::unknown(e.what());
        }
        return memo_.emplace(id, std::move(s)).first->second;
    }

private:
    ConditionStatus compute(ConditionId id) {
        switch (id) {
            case C::PthrootsModp: return pthroots_modp();
            case C::PrModp2: return prmodp2();
            case C::Pmodp2: return somepower(true);
            case C::SomePower: return somepower(false);
            case C::PthrootsInPrime: return pthroots_in_prime();
            case C::VImageFin: return vimage_fin();
            case C::VImage: return vimage();
            case C::PInv: return pinv();
            case C::Lev1:
            case C::Lev1Prime: return via(C::PthrootsModp);
            case C::Finlev: {
                ConditionStatus s = via(C::PthrootsInPrime);
                return s.is_decided() ? s : finlev_demo();
            }
            case C::FinlevPrime:
            case C::TeichImageFin:
            case C::TeichImageFinPrime:
            case C::PthrootsIn: return via(C::PthrootsInPrime);
            case C::Spher: return ConditionStatus::unknown("no decision procedure; needs an asserted status");
            case C::VImageFin2: return ConditionStatus::unknown("decided only through implications");
            default: return ConditionStatus::unknown("condition on W(R); needs a witness or an asserted status");
        }
    }

    ConditionStatus via(ConditionId base) {
        const ConditionStatus& b = get(base);
        if (!b.is_decided()) return ConditionStatus::unknown("equivalent to " + std::string(condition_info(base).mnemonic) +
                                                             ", which is undecided");
        Json payload{{"via", condition_info(base).mnemonic}};
        ConditionStatus s = b;
        s.method = Method::DerivedByImplication;
        s.payload = payload;
        return s;
    }

    ConditionStatus pthroots_modp() {
        auto size = ring_->quotient_size(p_, 1);
        if (size && *size <= budget_.residues) {
            std::set<Coeffs> powers;
            ring_->for_each_residue(p_, 1, [&](const RingElement& s) {
                powers.insert(key(ring_, s.pow(p_), p_, 1));
                return true;
            });
            std::optional<RingElement> missing;
            ring_->for_each_residue(p_, 1, [&](const RingElement& a) {
                if (powers.count(key(ring_, a, p_, 1))) return true;
                missing = a;
                return false;
            });
            if (missing) return ConditionStatus::fails(Method::BruteForce, {{"element", str(*missing)}, {"residues", size->get_str(10)}});
            return ConditionStatus::holds(Method::BruteForce, {{"residues", size->get_str(10)}});
        }
        const RingCapabilities caps = ring_->capabilities(p_);
        if (caps.pth_roots_total)
            return ConditionStatus::holds(Method::Witness, {{"oracle", "p-th root mod p of every element"}});
        if (ring_->shape() == Ring::Shape::Polynomial && caps.has_pth_root_mod_p &&
            !ring_->pth_root_mod_p(ring_->generator(), p_, budget_.residues))
            return ConditionStatus::fails(Method::Witness,
                                          {{"element", str(ring_->generator())},
                                           {"argument", "every exponent of a p-th power mod p is divisible by p"}});
        if (auto u = uniformizer_candidate(ring_, p_))
            if (auto obs = valuation_obstruction(ring_, p_, *u, 1)) return ConditionStatus::fails(Method::Witness, *obs);
        return ConditionStatus::unknown(size ? "budget" : "R/pR is infinite and no certificate applies");
    }

    ConditionStatus prmodp2() {
        if (p_annihilates(ring_, p_) || p_is_unit(ring_, p_))
            return ConditionStatus::holds(Method::Witness, {{"s", "0"}, {"argument", "pR = p^2 R"}});
        auto size = ring_->quotient_size(p_, 2);
        if (size && *size <= budget_.residues) {
            std::set<Coeffs> powers;
            ring_->for_each_residue(p_, 2, [&](const RingElement& s) {
                powers.insert(key(ring_, s.pow(p_), p_, 2));
                return true;
            });
            std::optional<RingElement> missing;
            ring_->for_each_residue(p_, 1, [&](const RingElement& r) {
                if (powers.count(key(ring_, r.scaled(p_), p_, 2))) return true;
                missing = r;
                return false;
            });
            if (missing) return ConditionStatus::fails(Method::BruteForce, {{"r", str(*missing)}, {"residues", size->get_str(10)}});
            return ConditionStatus::holds(Method::BruteForce, {{"residues", size->get_str(10)}});
        }
        std::vector<RingElement> candidates{ring_->one()};
        if (auto u = uniformizer_candidate(ring_, p_)) candidates.push_back(*u);
        for (const auto& r : candidates)
            if (auto obs = valuation_obstruction(ring_, p_, r.scaled(p_), 2)) {
                Json payload = *obs;
                payload["r"] = str(r);
                return ConditionStatus::fails(Method::Witness, payload);
            }
        SolverOracles o = SolverOracles::for_ring(ring_, p_, budget_.residues);
        if (o.somepower && ring_->capabilities(p_).pth_roots_total)
            return ConditionStatus::holds(Method::Witness,
                                          {{"somepower", somepower_json(*o.somepower)},
                                           {"construction", "s = r_w * root(-r(1 + t + ... + t^(N-1))), t = s_w * cofactor"}});
        return ConditionStatus::unknown(size ? "budget" : "R/p^2R is infinite and no certificate applies");
    }

    ConditionStatus somepower(bool need_I1) {
        const RingElement zero = ring_->zero(), one = ring_->one();
        std::optional<SomePowerWitness> w;
        try {
            w = mup2_witness(ring_, p_);
        } catch (const CapabilityError&) {
        }
        if (!w && p_annihilates(ring_, p_)) w = SomePowerWitness{zero, zero, zero, 1};
        if (!w && p_is_unit(ring_, p_)) w = SomePowerWitness{zero, one, one, 1};
        if (w) {
            validate_somepower(p_, *w);
            if (!need_I1 || ring_->reduce_mod_prime_power(w->s.pow(p_), p_, 1).is_zero())
                return ConditionStatus::holds(Method::Witness, somepower_json(*w));
        }
        const RingCapabilities caps = ring_->capabilities(p_);
        if (caps.has_valuation && caps.valuation_denominator && !divides(Integer(p_), *caps.valuation_denominator))
            return ConditionStatus::fails(
                Method::Witness, {{"value_group", "1/" + caps.valuation_denominator->get_str(10) + " Z"},
                                  {"argument", "r^p = -p mod psR with v(s) > 0 forces v(r) = 1/p"}});
        auto card = ring_->cardinality();
        if (card && *card * *card <= budget_.residues) {
            const auto all = all_elements(ring_);
            const unsigned long n_max = card->get_ui();
            std::optional<IdealChainModel> model;
            if (need_I1) model = IdealChainModel::build(ring_, p_, 1, budget_.residues);
            for (const auto& s : all) {
                unsigned N = 0;
                if (need_I1) {
                    if (!model->contains(s, 1)) continue;
                    N = p_;
                } else {
                    RingElement power = s;
                    for (unsigned long k = 1; k <= n_max && N == 0; ++k, power *= s)
                        if (ring_->reduce_mod_prime_power(power, p_, 1).is_zero()) N = static_cast<unsigned>(k);
                    if (N == 0) continue;
                }
                std::map<Coeffs, RingElement> multiples;
                for (const auto& t : all) multiples.emplace((s * t).scaled(p_).coefficients(), t);
                for (const auto& r : all) {
                    auto hit = multiples.find((r.pow(p_) + ring_->from_integer(p_)).coefficients());
                    if (hit != multiples.end())
                        return ConditionStatus::holds(Method::BruteForce,
                                                      somepower_json({r, s, hit->second, N}));
                }
            }
            return ConditionStatus::fails(Method::BruteForce, {{"elements", card->get_str(10)}});
        }
        return ConditionStatus::unknown(card ? "budget" : "no witness or certificate applies");
    }

    ConditionStatus pthroots_in_prime() {
        auto card = ring_->cardinality();
        if (card && *card <= budget_.residues) {
            IdealChainModel model = IdealChainModel::build(ring_, p_, 1, budget_.residues);
            std::set<Coeffs> pI1;
            for (const auto& t : model.members(1)) pI1.insert(t.scaled(p_).coefficients());
            if (*card * pI1.size() > budget_.residues) return ConditionStatus::unknown("budget");
            const auto all = all_elements(ring_);
            std::set<Coeffs> hit;
            for (const auto& s : all) {
                RingElement sp = s.pow(p_);
                for (const auto& j : pI1) hit.insert((sp + ring_->from_coefficients(j)).coefficients());
            }
            for (const auto& a : all)
                if (!hit.count(a.coefficients()))
                    return ConditionStatus::fails(Method::BruteForce, {{"element", str(a)}, {"elements", card->get_str(10)}});
            return ConditionStatus::holds(Method::BruteForce, {{"elements", card->get_str(10)}});
        }
        const RingCapabilities caps = ring_->capabilities(p_);
        if (caps.has_valuation && caps.valuation_denominator) {
            IdealChainModel model = IdealChainModel::build(ring_, p_, 1, budget_.residues);
            Rational bound = Rational(1) + model.cutoff(1);
            bound.canonicalize();
            if (bound.get_den() == 1) {
                const unsigned k = static_cast<unsigned>(bound.get_num().get_ui());
                auto size = ring_->quotient_size(p_, k);
                if (size && *size <= budget_.residues) {
                    std::set<Coeffs> powers;
                    ring_->for_each_residue(p_, k, [&](const RingElement& s) {
                        powers.insert(key(ring_, s.pow(p_), p_, k));
                        return true;
                    });
                    std::optional<RingElement> missing;
                    ring_->for_each_residue(p_, k, [&](const RingElement& a) {
                        if (powers.count(a.coefficients())) return true;
                        missing = a;
                        return false;
                    });
                    const std::string modulus = "p^" + std::to_string(k);
                    if (missing)
                        return ConditionStatus::fails(Method::BruteForce, {{"element", str(*missing)}, {"pI_1", modulus}});
                    return ConditionStatus::holds(Method::BruteForce, {{"pI_1", modulus}});
                }
            }
        }
        return ConditionStatus::unknown("R/pI_1 is not enumerable");
    }

    ConditionStatus vimage_fin() {
        const WittVector target = v_power_of_one(p_, ring_, 1, 2);
        try {
            SolverOracles o = SolverOracles::for_ring(ring_, p_, budget_.residues);
            PreimageResult res = solve_V_power_preimage(1, 1, o);
            return ConditionStatus::holds(Method::Witness, {{"x", witt_to_json(res.solution)}});
        } catch (const CapabilityError&) {
        }
        auto card = ring_->cardinality();
        if (card && *card * *card * *card <= budget_.residues) {
            const auto all = all_elements(ring_);
            for (const auto& a : all)
                for (const auto& b : all)
                    for (const auto& c : all) {
                        WittVector x(p_, ring_, {a, b, c});
                        if (frobenius(x) == target)
                            return ConditionStatus::holds(Method::BruteForce, {{"x", witt_to_json(x)}});
                    }
            return ConditionStatus::fails(Method::BruteForce, {{"elements", card->get_str(10)}});
        }
        return ConditionStatus::unknown(card ? "budget" : "no constructive route and R is infinite");
    }

    ConditionStatus vimage() {
        WittVector x;
        try {
            x = mup2_vector(ring_, p_, budget_.witness_depth + 1);
        } catch (const CapabilityError&) {
            return ConditionStatus::unknown("condition on W(R); needs a witness or an asserted status");
        }
        if (!(frobenius(x) == v_power_of_one(p_, ring_, 1, budget_.witness_depth)))
            throw InternalError("sum of [mu_{p^2}^i] does not map to V(1)");
        Json payload{{"x", witt_to_json(x)}, {"depth", budget_.witness_depth}};
        if (ring_->capabilities(p_).is_p_torsion_free) {
            payload["ghost"] = "zeta^{p^2} = 1, so ghost_k(x) = p for k >= 2 and ghost_1(x) = 0: ghost(F(x)) = ghost(V(1))";
        }
        return ConditionStatus::holds(Method::Witness, payload);
    }

    ConditionStatus pinv() {
        auto q = ring_->exact_div_p(ring_->one(), p_);
        if (q) return ConditionStatus::holds(Method::Witness, {{"inverse", str(q->quotient)}});
        return ConditionStatus::fails(Method::Witness, {{"argument", "1 is not in pR"}});
    }

    ConditionStatus finlev_demo() {
        SolverOracles o = SolverOracles::for_ring(ring_, p_, budget_.residues);
        if (!o.somepower || !ring_->capabilities(p_).pth_roots_total || !o.prmodp2)
            return ConditionStatus::unknown("equivalent to PTHROOTS-In', which is undecided");
        Json demo = Json::array();
        std::mt19937_64 rng(1);
        SampleOptions opts;
        opts.coeff_bound = 2;
        opts.max_degree = 2;
        opts.max_tower_level = 1;
        for (std::size_t len = 1; len <= 2; ++len) {
            std::vector<RingElement> c;
            for (std::size_t i = 0; i < len; ++i) c.push_back(ring_->sample(rng, opts));
            WittVector y(p_, ring_, std::move(c));
            PreimageResult res = solve_frobenius(y, o);
            demo.push_back({{"target", witt_to_json(y)}, {"preimage", witt_to_json(res.solution)}});
        }
        return ConditionStatus::holds(Method::Witness,
                                      {{"roots", "p-th root mod p of every element"},
                                       {"somepower", somepower_json(*o.somepower)},
                                       {"demo", std::move(demo)}});
    }

    RingPtr ring_;
    unsigned p_;
    CheckBudget budget_;
    std::map<ConditionId, ConditionStatus> memo_;
};

std::vector<RingElement> recheck_samples(const RingPtr& ring) {
    std::mt19937_64 rng(99);
    std::vector<RingElement> out;
    for (int i = 0; i < 20; ++i) out.push_back(ring->sample(rng));
    return out;
}

bool recheck_witness(const RingPtr& ring, unsigned p, ConditionId id, const ConditionStatus& s) {
    const Json& j = s.payload;
    auto elem = [&](const char* name) { return ring->parse_element(j.at(name).get<std::string>()); };
    const bool holds = s.verdict == Verdict::Holds;
    switch (id) {
        case C::PthrootsModp:
            if (holds) {
                for (const auto& a : recheck_samples(ring)) {
                    auto root = ring->pth_root_mod_p(a, p);
                    if (!root || !ring->reduce_mod_prime_power(root->pow(p) - a, p, 1).is_zero()) return false;
                }
                return true;
            }
            if (j.contains("valuation")) return valuation_obstruction(ring, p, elem("element"), 1).has_value();
            return !ring->pth_root_mod_p(elem("element"), p).has_value();
        case C::PrModp2:
            if (!holds) return valuation_obstruction(ring, p, elem("r").scaled(p), 2).has_value();
            if (j.contains("somepower")) {
                SolverOracles o = SolverOracles::for_ring(ring, p);
                o.set_somepower(somepower_from_json(ring, j.at("somepower")));
                auto hook = derive_prmodp2(o);
                for (const auto& r : recheck_samples(ring)) {
                    auto sv = hook(r);
                    if (!sv || !prmodp2_certificate(p, r, *sv)) return false;
                }
                return true;
            }
            for (const auto& r : recheck_samples(ring))
                if (!prmodp2_certificate(p, r, ring->zero())) return false;
            return true;
        case C::SomePower:
        case C::Pmodp2:
            if (holds) {
                SomePowerWitness w = somepower_from_json(ring, j);
                validate_somepower(p, w);
                return id == C::SomePower || ring->reduce_mod_prime_power(w.s.pow(p), p, 1).is_zero();
            } else {
                auto d = ring->capabilities(p).valuation_denominator;
                return d && !divides(Integer(p), *d);
            }
        case C::VImageFin:
        case C::VImage: {
            WittVector x = witt_from_json(j.at("x"), ring, p);
            return frobenius(x) == v_power_of_one(p, ring, 1, x.length() - 1);
        }
        case C::PInv:
            if (holds) return elem("inverse").scaled(p) == ring->one();
            return !ring->exact_div_p(ring->one(), p).has_value();
        case C::Finlev: {
            validate_somepower(p, somepower_from_json(ring, j.at("somepower")));
            for (const auto& d : j.at("demo"))
                if (!(frobenius(witt_from_json(d.at("preimage"), ring, p)) == witt_from_json(d.at("target"), ring, p)))
                    return false;
            return true;
        }
        default: return false;
    }
}

}  // namespace

const std::array<ConditionInfo, kConditionCount>& condition_catalog() { return kCatalog; }

const ConditionInfo& condition_info(ConditionId id) { return kCatalog.at(static_cast<std::size_t>(id)); }

std::optional<ConditionId> parse_condition(std::string_view name) {
    for (const auto& c : kCatalog)
        if (name == c.mnemonic || name == c.label) return c.id;
    return std::nullopt;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(Method m) {
    switch (m) {
        case Method::None: return "none";
        case Method::BruteForce: return "brute-force";
        case Method::Witness: return "witness";
        case Method::DerivedByImplication: return "derived-by-implication";
        case Method::FixtureAsserted: return "fixture-asserted";
    }
    return "?";
}

ConditionStatus ConditionStatus::holds(Method m, Json witness) { return {Verdict::Holds, m, std::move(witness)}; }
ConditionStatus ConditionStatus::fails(Method m, Json counterexample) {
    return {Verdict::Fails, m, std::move(counterexample)};
}
ConditionStatus ConditionStatus::unknown(std::string reason) {
    return {Verdict::Unknown, Method::None, Json{{"reason", std::move(reason)}}};
}

const ImplicationGraph& ImplicationGraph::standard() {
    static const ImplicationGraph g({
        {{C::Surj}, C::TeichImage, EdgeKind::Single},
        {{C::Surj}, C::TeichDense, EdgeKind::Single},
        {{C::Surj}, C::Spher, EdgeKind::Single},
        {{C::Finlev}, C::TeichImageFin, EdgeKind::Bidirectional},
        {{C::Finlev}, C::Lev1, EdgeKind::Single},
        {{C::PthrootsIn}, C::PrModp2, EdgeKind::Single},
        {{C::Pmodp2}, C::SomePower, EdgeKind::Single},
        {{C::TeichImageFin}, C::PthrootsIn, EdgeKind::Bidirectional},
        {{C::TeichImage}, C::TeichImageFin, EdgeKind::Single},
        {{C::VImage}, C::VImageAll, EdgeKind::Single},
        {{C::VImageAll}, C::VImageFin, EdgeKind::Single},
        {{C::VImageFin2}, C::VImageFin, EdgeKind::Single},
        {{C::VImageFin}, C::Pmodp2, EdgeKind::Bidirectional},
        {{C::Lev1}, C::PthrootsModp, EdgeKind::Bidirectional},
        {{C::PrModp2}, C::VImageFin2, EdgeKind::Single},
        {{C::PrModp2}, C::VImage, EdgeKind::Single},
        {{C::PthrootsIinf}, C::TeichImage, EdgeKind::Bidirectional},
        {{C::PInv}, C::Surj, EdgeKind::Single},
        {{C::Lev1, C::SomePower}, C::Finlev, EdgeKind::Joint},
        {{C::TeichDense, C::TeichImage}, C::Surj, EdgeKind::Joint},
        {{C::Spher, C::Finlev}, C::Surj, EdgeKind::Joint},
        {{C::Finlev}, C::FinlevPrime, EdgeKind::Bidirectional},
        {{C::TeichImageFin}, C::TeichImageFinPrime, EdgeKind::Bidirectional},
        {{C::Lev1}, C::Lev1Prime, EdgeKind::Bidirectional},
        {{C::PthrootsIn}, C::PthrootsInPrime, EdgeKind::Bidirectional},
    });
    return g;
}

ConditionStatus check(const RingPtr& ring, unsigned p, ConditionId id, const CheckBudget& budget) {
    Checker checker(ring, p, budget);
    return checker.get(id);
}

bool recheck(const RingPtr& ring, unsigned p, ConditionId id, const ConditionStatus& status, const CheckBudget& budget) {
    switch (status.method) {
        case Method::None:
        case Method::FixtureAsserted: return true;
        case Method::BruteForce:
        case Method::DerivedByImplication: return check(ring, p, id, budget) == status;
        case Method::Witness: return recheck_witness(ring, p, id, status);
    }
    return false;
}

ClosureResult implication_closure(const StatusMap& statuses, const ImplicationGraph& graph) {
    ClosureResult out;
    for (const auto& c : kCatalog) out.statuses[c.id] = ConditionStatus::unknown("not determined");
    for (const auto& [id, s] : statuses) out.statuses[id] = s;

    std::set<std::string> seen;
    bool changed = true;
    auto assign = [&](ConditionId target, Verdict v, const std::vector<ConditionId>& from) {
        ConditionStatus& cur = out.statuses[target];
        if (cur.verdict == v) return;
        Json sources = Json::array();
        for (ConditionId f : from) sources.push_back(condition_info(f).mnemonic);
        if (cur.verdict == Verdict::Unknown) {
            cur = {v, Method::DerivedByImplication, Json{{"from", std::move(sources)}}};
            changed = true;
            return;
        }
        std::string detail = std::string(condition_info(target).mnemonic) + " is " + to_string(cur.verdict) + " (" +
                             to_string(cur.method) + ") but " + sources.dump() + " imply it " + to_string(v);
        if (seen.insert(detail).second) out.contradictions.push_back({target, detail});
    };
    while (changed) {
        changed = false;
        for (const auto& e : graph.edges()) {
            std::vector<std::pair<std::vector<ConditionId>, ConditionId>> directed{{e.tails, e.head}};
            if (e.kind == EdgeKind::Bidirectional) directed.push_back({{e.head}, e.tails.front()});
            for (const auto& [tails, head] : directed) {
                bool all = true;
                for (ConditionId t : tails) all = all && out.statuses[t].verdict == Verdict::Holds;
                if (all) assign(head, Verdict::Holds, tails);
                if (tails.size() == 1 && out.statuses[head].verdict == Verdict::Fails)
                    assign(tails.front(), Verdict::Fails, {head});
            }
        }
    }
    return out;
}

Json ConditionReport::to_json() const {
    Json rows = Json::array();
    for (const auto& c : kCatalog) {
        const ConditionStatus& s = statuses.at(c.id);
        Json row{{"condition", c.mnemonic}, {"label", c.label}, {"status", to_string(s.verdict)},
                 {"method", to_string(s.method)}};
        switch (s.verdict) {
            case Verdict::Holds: row["witness"] = s.payload; break;
            case Verdict::Fails: row["counterexample"] = s.payload; break;
            case Verdict::Unknown: row["reason"] = s.payload.value("reason", ""); break;
        }
        rows.push_back(std::move(row));
    }
    Json contra = Json::array();
    for (const auto& c : contradictions) contra.push_back({{"condition", condition_info(c.condition).mnemonic}, {"detail", c.detail}});
    return {{"ring", ring}, {"p", p}, {"conditions", std::move(rows)}, {"contradictions", std::move(contra)}};
}

std::string ConditionReport::to_text() const {
    std::ostringstream out;
    out << "conditions for " << ring << " at p=" << p << "\n";
    for (const auto& c : kCatalog) {
        const ConditionStatus& s = statuses.at(c.id);
        out << std::left << std::setw(18) << c.mnemonic << std::setw(6) << c.label << std::setw(8)
            << to_string(s.verdict) << to_string(s.method) << "\n";
    }
    for (const auto& c : contradictions) out << "contradiction: " << c.detail << "\n";
    return out.str();
}

ConditionReport condition_matrix(const RingPtr& ring, unsigned p, const CheckBudget& budget, const StatusMap& asserted) {
    Checker checker(ring, p, budget);
    StatusMap statuses;
    for (const auto& c : kCatalog) statuses[c.id] = checker.get(c.id);
    std::vector<Contradiction> clashes;
    for (const auto& [id, s] : asserted) {
        ConditionStatus& cur = statuses[id];
        if (cur.is_decided() && s.is_decided() && cur.verdict != s.verdict)
            clashes.push_back({id, std::string(condition_info(id).mnemonic) + " is asserted " + to_string(s.verdict) +
                                       " but checks " + to_string(cur.verdict)});
        else if (!cur.is_decided())
            cur = s;
    }
    ClosureResult closed = implication_closure(statuses);
    ConditionReport report{ring->spec(), p, std::move(closed.statuses), std::move(clashes)};
    report.contradictions.insert(report.contradictions.end(), closed.contradictions.begin(), closed.contradictions.end());
    return report;
}

}  // namespace witt
