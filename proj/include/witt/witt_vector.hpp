// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "witt/ring.hpp"
#include "witt/sparse_poly.hpp"

namespace witt {

/// Element of W_{p^n}(R): components[j] is the x_{p^j} slot; length = n + 1.
class WittVector {
public:
    WittVector() = default;
    WittVector(unsigned p, RingPtr ring, std::vector<RingElement> components);

    static WittVector zero(unsigned p, const RingPtr& ring, std::size_t length);
    static WittVector one(unsigned p, const RingPtr& ring, std::size_t length);

    unsigned prime() const { return p_; }
    const RingPtr& ring() const { return ring_; }
    std::size_t length() const { return components_.size(); }
    const std::vector<RingElement>& components() const { return components_; }
    const RingElement& operator[](std::size_t slot) const { return components_.at(slot); }
    bool is_zero() const;

    std::string to_string() const;

    friend bool operator==(const WittVector& a, const WittVector& b);

private:
    unsigned p_ = 0;
    RingPtr ring_;
    std::vector<RingElement> components_;
};

struct GhostVector {
    std::vector<RingElement> components;
    friend bool operator==(const GhostVector& a, const GhostVector& b) { return a.components == b.components; }
};

/// Polynomial: evaluate universal polynomials. Ghost: go through the ghost
/// map and invert by exact division (p-torsion-free rings only). Auto picks
/// Ghost when the ring is p-torsion-free. CrossCheck runs both and throws
/// InternalError when they differ.
enum class EvalMode { Auto, Polynomial, Ghost, CrossCheck };

WittVector witt_add(const WittVector& x, const WittVector& y, EvalMode mode = EvalMode::Auto);
WittVector witt_sub(const WittVector& x, const WittVector& y, EvalMode mode = EvalMode::Auto);
WittVector witt_mul(const WittVector& x, const WittVector& y, EvalMode mode = EvalMode::Auto);
WittVector witt_neg(const WittVector& x, EvalMode mode = EvalMode::Auto);
/// k * x for an integer k by doubling and adding.
WittVector witt_scale(const WittVector& x, const Integer& k, EvalMode mode = EvalMode::Auto);

GhostVector ghost(const WittVector& x);
/// Inverse of the ghost map by exact division; throws InternalError when a
/// division fails and CapabilityError on rings with p-torsion.
WittVector from_ghost(unsigned p, const RingPtr& ring, const GhostVector& g);

/// W_{p^n}(R) -> W_{p^{n-1}}(R).
WittVector frobenius(const WittVector& x, EvalMode mode = EvalMode::Auto);
/// W_{p^n}(R) -> W_{p^{n+1}}(R), prepending a zero slot.
WittVector verschiebung(const WittVector& x);
/// (r, 0, ..., 0) of the given length.
WittVector teichmuller(unsigned p, const RingElement& r, std::size_t length);
WittVector restrict_to(const WittVector& x, std::size_t length);
/// V^i([x_i]) for each slot i, all of the input length.
std::vector<WittVector> v_decompose(const WittVector& x);
/// V^k(1) at the given length (k < length).
WittVector v_power_of_one(unsigned p, const RingPtr& ring, unsigned k, std::size_t length);

/// Value of a universal polynomial at x (X series) and y (Y series, optional).
RingElement evaluate(const SparsePoly& f, const RingPtr& ring, const std::vector<RingElement>& x,
                     const std::vector<RingElement>& y = {});

/// p * f_{p^i}(x_0, ..., x_i), the correction term of slot i of the Frobenius.
/// Uses the universal f polynomial within its level limit, the ghost map beyond it.
RingElement p_times_f(unsigned p, unsigned i, const RingPtr& ring, const std::vector<RingElement>& x);

bool ghost_path_available(unsigned p, const RingPtr& ring);

}  // namespace witt
