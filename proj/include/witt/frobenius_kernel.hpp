// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "witt/ring.hpp"
#include "witt/witt_vector.hpp"

namespace witt {

/// Index into the chain I_0 ⊇ I_1 ⊇ ... ⊇ I_inf.
class ChainIndex {
public:
    ChainIndex(unsigned i) : value_(i) {}  // NOLINT(google-explicit-constructor)
    static ChainIndex infinity() { return ChainIndex(); }

    bool is_infinite() const { return !value_.has_value(); }
    unsigned value() const { return *value_; }
    /// n - j, saturating at infinity.
    ChainIndex minus(unsigned j) const;
    std::string to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

private:
    ChainIndex() = default;
    std::optional<unsigned> value_;
};

enum class ChainStrategy { BruteForce, ValuationCutoff };

/// I_i = { r : r^p in p I_{i-1} }, I_0 = R.
class IdealChainModel {
public:
    /// Picks BruteForce for finite rings within budget, ValuationCutoff for
    /// rings with a p-adic valuation; throws CapabilityError otherwise.
    static IdealChainModel build(const RingPtr& ring, unsigned p, unsigned depth,
                                 std::uint64_t budget = kDefaultSearchBudget);
    static bool available(const RingPtr& ring, unsigned p, std::uint64_t budget = kDefaultSearchBudget);

    ChainStrategy strategy() const { return strategy_; }
    const RingPtr& ring() const { return ring_; }
    unsigned prime() const { return p_; }
    unsigned depth() const { return depth_; }
    IdealChainModel deepen(unsigned depth) const;

    bool contains(const RingElement& r, ChainIndex i) const;
    /// r in p * I_i.
    bool contains_p_multiple(const RingElement& r, ChainIndex i) const;

    /// BruteForce: the elements of I_i (I_inf once the chain stabilises).
    const std::vector<RingElement>& members(ChainIndex i) const;
    /// BruteForce: first i with I_i = I_{i+1}.
    unsigned stabilization_index() const { return stable_at_; }

    /// ValuationCutoff: I_i = { v >= cutoff(i) }.
    Rational cutoff(ChainIndex i) const;
    /// ValuationCutoff: whether the value group contains cutoff(inf).
    bool infinite_cutoff_attained() const { return inf_attained_; }
    std::optional<Integer> value_denominator() const { return denominator_; }

private:
    IdealChainModel() = default;
    void check_depth(ChainIndex i) const;
    std::size_t level_slot(ChainIndex i) const;

    ChainStrategy strategy_ = ChainStrategy::BruteForce;
    RingPtr ring_;
    unsigned p_ = 0;
    unsigned depth_ = 0;

    std::vector<std::vector<RingElement>> members_;
    std::vector<std::set<Coeffs>> member_keys_;
    std::vector<std::set<Coeffs>> p_multiple_keys_;
    unsigned stable_at_ = 0;

    std::vector<Rational> cutoffs_;
    Rational inf_cutoff_;
    bool inf_attained_ = true;
    std::optional<Integer> denominator_;
};

/// The coset center + I_i.
struct Ball {
    RingElement center;
    ChainIndex index = 0;
    bool contains(const IdealChainModel& model, const RingElement& r) const {
        return model.contains(r - center, index);
    }
};

struct KernelOptions {
    /// Explore every p-torsion alternative when p-division is not unique.
    bool backtrack = true;
};

/// z of length n+1 with z_0 = r and F(z) = 0. When a model is given, r is
/// first checked against I_n and each z_i is kept in I_{n-i}. Throws
/// CapabilityError when no such z exists.
WittVector kernel_element(const RingPtr& ring, unsigned p, const RingElement& r, unsigned n,
                          const IdealChainModel* model = nullptr, const KernelOptions& opts = {});

struct SlotCheck {
    std::size_t slot = 0;
    ChainIndex index = 0;
    bool holds = false;
};

struct CongruenceReport {
    bool hypotheses_hold = false;
    std::vector<SlotCheck> hypotheses;
    std::vector<SlotCheck> conclusions;
    bool conclusion_holds() const;
};

/// x_j - y_j in I_{n-j} for all slots  ==>  F(x)_j - F(y)_j in p I_{n-j-1}.
CongruenceReport congruence_forward(const WittVector& x, const WittVector& y, const IdealChainModel& model,
                                    ChainIndex n);
/// F(x)_j - F(y)_j in p I_{n-j} and x_i - y_i in I_{n-i} (last slot)
///  ==>  x_j - y_j in I_{n-j} for all slots.
CongruenceReport congruence_backward(const WittVector& x, const WittVector& y, const IdealChainModel& model,
                                     ChainIndex n);

/// y of length len(x)+1 with y_0 = 0, F(y) = x and every y_i in I_inf, for x
/// with every component in p I_inf.
WittVector kernel_lift(const WittVector& x, const IdealChainModel& model);

}  // namespace witt
