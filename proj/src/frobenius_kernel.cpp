// SPDX-License-Identifier: Apache-2.0
#include "witt/frobenius_kernel.hpp"

#include <functional>

#include "witt/error.hpp"

namespace witt {

ChainIndex ChainIndex::minus(unsigned j) const {
    if (is_infinite()) return *this;
    if (j > *value_) throw UsageError("chain index " + std::to_string(*value_) + " - " + std::to_string(j) + " is negative");
    return ChainIndex(*value_ - j);
}

bool IdealChainModel::available(const RingPtr& ring, unsigned p, std::uint64_t budget) {
    auto card = ring->cardinality();
    if (card && *card <= budget) return true;
    return ring->capabilities(p).has_valuation;
}

IdealChainModel IdealChainModel::build(const RingPtr& ring, unsigned p, unsigned depth, std::uint64_t budget) {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw UsageError("p must be prime");
    IdealChainModel m;
    m.ring_ = ring;
    m.p_ = p;
    m.depth_ = depth;
    auto card = ring->cardinality();
    if (card && *card <= budget) {
        m.strategy_ = ChainStrategy::BruteForce;
        std::vector<RingElement> all;
        ring->for_each_element([&](const RingElement& r) {
            all.push_back(r);
            return true;
        });
        std::vector<RingElement> current = all;
        while (true) {
            std::set<Coeffs> keys, pkeys;
            for (const auto& r : current) {
                keys.insert(r.coefficients());
                pkeys.insert(r.scaled(p).coefficients());
            }
            m.members_.push_back(current);
            m.member_keys_.push_back(std::move(keys));
            m.p_multiple_keys_.push_back(pkeys);
            std::vector<RingElement> next;
            for (const auto& r : all)
                if (pkeys.count(r.pow(p).coefficients())) next.push_back(r);
            if (next.size() == current.size()) break;
            current = std::move(next);
        }
        m.stable_at_ = static_cast<unsigned>(m.members_.size() - 1);
        return m;
    }
    const RingCapabilities caps = ring->capabilities(p);
    if (!caps.has_valuation)
        throw CapabilityError("no ideal-chain model for " + ring->spec() + " at p=" + std::to_string(p) +
                              " (neither finite nor valued)");
    m.strategy_ = ChainStrategy::ValuationCutoff;
    m.denominator_ = caps.valuation_denominator;
    auto step = [&](const Rational& prev) {
        Rational next = (1 + prev) / Rational(p);
        next.canonicalize();
        return m.denominator_ ? ceil_to_denominator(next, *m.denominator_) : next;
    };
    m.cutoffs_.push_back(Rational(0));
    for (unsigned i = 1; i <= depth; ++i) m.cutoffs_.push_back(step(m.cutoffs_.back()));
    if (m.denominator_) {
        Rational c = m.cutoffs_.back();
        for (Rational next = step(c); next != c; next = step(c)) c = next;
        m.inf_cutoff_ = c;
    } else {
        m.inf_cutoff_ = Rational(1, p - 1);
    }
    m.inf_cutoff_.canonicalize();
    return m;
}

IdealChainModel IdealChainModel::deepen(unsigned depth) const {
    if (depth <= depth_) return *this;
    IdealChainModel out = *this;
    out.depth_ = depth;
    if (strategy_ == ChainStrategy::ValuationCutoff) {
        out.cutoffs_.clear();
        IdealChainModel fresh = build(ring_, p_, depth);
        out.cutoffs_ = fresh.cutoffs_;
    }
    return out;
}

void IdealChainModel::check_depth(ChainIndex i) const {
    if (!i.is_infinite() && i.value() > depth_)
        throw UsageError("ideal chain index " + i.to_string() + " exceeds computed depth " + std::to_string(depth_));
}

std::size_t IdealChainModel::level_slot(ChainIndex i) const {
    if (i.is_infinite()) return stable_at_;
    return std::min<std::size_t>(i.value(), stable_at_);
}

bool IdealChainModel::contains(const RingElement& r, ChainIndex i) const {
    check_depth(i);
    if (strategy_ == ChainStrategy::BruteForce) return member_keys_[level_slot(i)].count(r.coefficients()) > 0;
    Valuation v = ring_->valuation(r, p_);
    return v.is_infinite() || *v.value >= cutoff(i);
}

bool IdealChainModel::contains_p_multiple(const RingElement& r, ChainIndex i) const {
    check_depth(i);
    if (strategy_ == ChainStrategy::BruteForce) return p_multiple_keys_[level_slot(i)].count(r.coefficients()) > 0;
    Valuation v = ring_->valuation(r, p_);
    return v.is_infinite() || *v.value >= 1 + cutoff(i);
}

const std::vector<RingElement>& IdealChainModel::members(ChainIndex i) const {
    if (strategy_ != ChainStrategy::BruteForce) throw CapabilityError("ideal members are only listed for finite rings");
    check_depth(i);
    return members_[level_slot(i)];
}

Rational IdealChainModel::cutoff(ChainIndex i) const {
    if (strategy_ != ChainStrategy::ValuationCutoff) throw CapabilityError("cutoffs need a valuation model");
    check_depth(i);
    return i.is_infinite() ? inf_cutoff_ : cutoffs_[i.value()];
}

WittVector kernel_element(const RingPtr& ring, unsigned p, const RingElement& r, unsigned n,
                          const IdealChainModel* model, const KernelOptions& opts) {
    if (model && !model->contains(r, n))
        throw CapabilityError("first component " + r.to_string() + " is not in I_" + std::to_string(n));
    std::vector<RingElement> torsion;
    if (opts.backtrack && !ring->capabilities(p).is_p_torsion_free && ring->cardinality()) torsion = ring->p_torsion(p);

    std::vector<RingElement> z{r};
    std::function<bool()> extend = [&]() -> bool {
        const std::size_t i = z.size();
        if (i == n + 1) return true;
        RingElement rhs = -(z[i - 1].pow(p) + p_times_f(p, static_cast<unsigned>(i - 1), ring, z));
        auto q = ring->exact_div_p(rhs, p);
        if (!q) return false;
        std::vector<RingElement> candidates{q->quotient};
        if (!q->unique)
            for (const auto& t : torsion)
                if (!t.is_zero()) candidates.push_back(q->quotient + t);
        for (const auto& c : candidates) {
            if (model && !model->contains(c, n - static_cast<unsigned>(i))) continue;
            z.push_back(c);
            if (extend()) return true;
            z.pop_back();
        }
        return false;
    };
    if (!extend())
        throw CapabilityError("no kernel element of W_{p^" + std::to_string(n) + "}(" + ring->spec() +
                              ") starts with " + r.to_string() + ": first component not in I_" + std::to_string(n) +
                              " (or capability gap)");
    WittVector out(p, ring, std::move(z));
    if (n >= 1 && !frobenius(out).is_zero())
        throw InternalError("kernel construction produced " + out.to_string() + " with nonzero Frobenius");
    return out;
}

bool CongruenceReport::conclusion_holds() const {
    for (const auto& c : conclusions)
        if (!c.holds) return false;
    return true;
}

CongruenceReport congruence_forward(const WittVector& x, const WittVector& y, const IdealChainModel& model,
                                    ChainIndex n) {
    if (x.length() != y.length() || x.length() < 2) throw UsageError("congruence checks need equal lengths >= 2");
    const unsigned i = static_cast<unsigned>(x.length() - 1);
    if (!n.is_infinite() && n.value() < i) throw UsageError("congruence checks need n >= " + std::to_string(i));
    CongruenceReport rep;
    rep.hypotheses_hold = true;
    for (unsigned j = 0; j <= i; ++j) {
        ChainIndex idx = n.minus(j);
        bool ok = model.contains(x[j] - y[j], idx);
        rep.hypotheses.push_back({j, idx, ok});
        rep.hypotheses_hold = rep.hypotheses_hold && ok;
    }
    if (!rep.hypotheses_hold) return rep;
    WittVector fx = frobenius(x), fy = frobenius(y);
    for (unsigned j = 0; j < i; ++j) {
        ChainIndex idx = n.minus(j + 1);
        rep.conclusions.push_back({j, idx, model.contains_p_multiple(fx[j] - fy[j], idx)});
    }
    return rep;
}

CongruenceReport congruence_backward(const WittVector& x, const WittVector& y, const IdealChainModel& model,
                                     ChainIndex n) {
    if (x.length() != y.length() || x.length() < 2) throw UsageError("congruence checks need equal lengths >= 2");
    const unsigned i = static_cast<unsigned>(x.length() - 1);
    if (!n.is_infinite() && n.value() < i) throw UsageError("congruence checks need n >= " + std::to_string(i));
    CongruenceReport rep;
    rep.hypotheses_hold = true;
    WittVector fx = frobenius(x), fy = frobenius(y);
    for (unsigned j = 0; j < i; ++j) {
        ChainIndex idx = n.minus(j);
        bool ok = model.contains_p_multiple(fx[j] - fy[j], idx);
        rep.hypotheses.push_back({j, idx, ok});
        rep.hypotheses_hold = rep.hypotheses_hold && ok;
    }
    {
        ChainIndex idx = n.minus(i);
        bool ok = model.contains(x[i] - y[i], idx);
        rep.hypotheses.push_back({i, idx, ok});
        rep.hypotheses_hold = rep.hypotheses_hold && ok;
    }
    if (!rep.hypotheses_hold) return rep;
    for (unsigned j = 0; j <= i; ++j) {
        ChainIndex idx = n.minus(j);
        rep.conclusions.push_back({j, idx, model.contains(x[j] - y[j], idx)});
    }
    return rep;
}

WittVector kernel_lift(const WittVector& x, const IdealChainModel& model) {
    const RingPtr& ring = x.ring();
    const unsigned p = x.prime();
    if (model.strategy() != ChainStrategy::ValuationCutoff || !model.infinite_cutoff_attained())
        throw CapabilityError("kernel_lift needs a valuation model with an attained I_inf cutoff");
    for (std::size_t i = 0; i < x.length(); ++i)
        if (!model.contains_p_multiple(x[i], ChainIndex::infinity()))
            throw CapabilityError("component " + std::to_string(i) + " (" + x[i].to_string() + ") is not in p*I_inf");
    std::vector<RingElement> y{ring->zero()};
    for (std::size_t i = 0; i < x.length(); ++i) {
        RingElement rhs = x[i] - y[i].pow(p) - p_times_f(p, static_cast<unsigned>(i), ring, y);
        auto q = ring->exact_div_p(rhs, p);
        if (!q) throw CapabilityError("kernel_lift: slot " + std::to_string(i + 1) + " is not divisible by p");
        y.push_back(q->quotient);
    }
    WittVector out(p, ring, std::move(y));
    if (!(frobenius(out) == x)) throw InternalError("kernel_lift result does not map to the target");
    for (std::size_t i = 0; i < out.length(); ++i)
        if (!model.contains(out[i], ChainIndex::infinity()))
            throw InternalError("kernel_lift slot " + std::to_string(i) + " left I_inf");
    return out;
}

}  // namespace witt
