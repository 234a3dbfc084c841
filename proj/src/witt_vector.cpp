// SPDX-License-Identifier: Apache-2.0
#include "witt/witt_vector.hpp"

#include <map>

#include "witt/error.hpp"
#include "witt/universal.hpp"

namespace witt {

namespace {

void check_compatible(const WittVector& x, const WittVector& y, const char* op) {
    if (x.prime() != y.prime() || x.length() != y.length() || !x.ring()->same_ring(*y.ring()))
        throw UsageError(std::string("Witt vector mismatch in ") + op + ": (p=" + std::to_string(x.prime()) +
                         ", length " + std::to_string(x.length()) + ", " + x.ring()->spec() + ") vs (p=" +
                         std::to_string(y.prime()) + ", length " + std::to_string(y.length()) + ", " +
                         y.ring()->spec() + ")");
}

class PowerCache {
public:
    PowerCache(const std::vector<RingElement>& x, const std::vector<RingElement>& y) : x_(x), y_(y) {}

    const RingElement& power(std::size_t index, unsigned e) {
        auto& table = cache_[index];
        auto it = table.find(e);
        if (it != table.end()) return it->second;
        const RingElement& base = index < kMaxSlots ? x_.at(index) : y_.at(index - kMaxSlots);
        return table.emplace(e, base.pow(e)).first->second;
    }

private:
    const std::vector<RingElement>& x_;
    const std::vector<RingElement>& y_;
    std::map<std::size_t, std::map<unsigned, RingElement>> cache_;
};

bool use_ghost(EvalMode mode, unsigned p, const RingPtr& ring) {
    switch (mode) {
        case EvalMode::Auto: return ghost_path_available(p, ring);
        case EvalMode::Ghost:
            if (!ghost_path_available(p, ring))
                throw CapabilityError("ghost evaluation needs a p-torsion-free ring, " + ring->spec() + " is not");
            return true;
        default: return false;
    }
}

enum class Op { Add, Mul, Neg, Frobenius };

std::vector<SparsePoly> polys_for(Op op, unsigned p, std::size_t length) {
    const unsigned level = static_cast<unsigned>(length - 1);
    switch (op) {
        case Op::Add: return sum_polys(p, level);
        case Op::Mul: return product_polys(p, level);
        case Op::Neg: return neg_polys(p, level);
        case Op::Frobenius: return frobenius_polys(p, level + 1);
    }
    throw InternalError("unknown Witt operation");
}

WittVector by_polynomials(Op op, const WittVector& x, const WittVector* y) {
    const std::size_t out_length = op == Op::Frobenius ? x.length() - 1 : x.length();
    const auto polys = polys_for(op, x.prime(), out_length);
    std::vector<RingElement> out;
    out.reserve(out_length);
    for (std::size_t i = 0; i < out_length; ++i)
        out.push_back(evaluate(polys[i], x.ring(), x.components(), y ? y->components() : std::vector<RingElement>{}));
    return WittVector(x.prime(), x.ring(), std::move(out));
}

WittVector by_ghosts(Op op, const WittVector& x, const WittVector* y) {
    GhostVector gx = ghost(x);
    GhostVector out;
    switch (op) {
        case Op::Add: {
            GhostVector gy = ghost(*y);
            for (std::size_t i = 0; i < gx.components.size(); ++i) out.components.push_back(gx.components[i] + gy.components[i]);
            break;
        }
        case Op::Mul: {
            GhostVector gy = ghost(*y);
            for (std::size_t i = 0; i < gx.components.size(); ++i) out.components.push_back(gx.components[i] * gy.components[i]);
            break;
        }
        case Op::Neg:
            for (const auto& g : gx.components) out.components.push_back(-g);
            break;
        case Op::Frobenius:
            out.components.assign(gx.components.begin() + 1, gx.components.end());
            break;
    }
    return from_ghost(x.prime(), x.ring(), out);
}

WittVector apply(Op op, const WittVector& x, const WittVector* y, EvalMode mode) {
    if (mode == EvalMode::CrossCheck) {
        WittVector a = by_polynomials(op, x, y);
        if (ghost_path_available(x.prime(), x.ring())) {
            WittVector b = by_ghosts(op, x, y);
            if (!(a == b))
                throw InternalError("polynomial and ghost evaluation disagree: " + a.to_string() + " vs " + b.to_string());
        }
        return a;
    }
    return use_ghost(mode, x.prime(), x.ring()) ? by_ghosts(op, x, y) : by_polynomials(op, x, y);
}

}  // namespace

WittVector::WittVector(unsigned p, RingPtr ring, std::vector<RingElement> components)
    : p_(p), ring_(std::move(ring)), components_(std::move(components)) {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw UsageError("p must be prime, got " + std::to_string(p));
    if (!ring_) throw UsageError("Witt vector without a ring");
    if (components_.empty()) throw UsageError("Witt vectors need at least one component");
    for (const auto& c : components_)
        if (c.is_null() || !c.ring()->same_ring(*ring_))
            throw UsageError("Witt vector component does not belong to " + ring_->spec());
}

WittVector WittVector::zero(unsigned p, const RingPtr& ring, std::size_t length) {
    return WittVector(p, ring, std::vector<RingElement>(length, ring->zero()));
}

WittVector WittVector::one(unsigned p, const RingPtr& ring, std::size_t length) {
    return teichmuller(p, ring->one(), length);
}

bool WittVector::is_zero() const {
    for (const auto& c : components_)
        if (!c.is_zero()) return false;
    return true;
}

std::string WittVector::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) out += ", ";
        out += components_[i].to_string();
    }
    return out + ")";
}

bool operator==(const WittVector& a, const WittVector& b) {
    return a.p_ == b.p_ && a.components_.size() == b.components_.size() && a.ring_->same_ring(*b.ring_) &&
           a.components_ == b.components_;
}

bool ghost_path_available(unsigned p, const RingPtr& ring) { return ring->capabilities(p).is_p_torsion_free; }

RingElement evaluate(const SparsePoly& f, const RingPtr& ring, const std::vector<RingElement>& x,
                     const std::vector<RingElement>& y) {
    PowerCache cache(x, y);
    RingElement total = ring->zero();
    for (const auto& t : f.terms()) {
        RingElement term = ring->from_integer(t.coeff);
        if (term.is_zero()) continue;
        for (std::size_t i = 0; i < t.monomial.size() && !term.is_zero(); ++i) {
            if (t.monomial[i] == 0) continue;
            std::size_t slot = i % kMaxSlots;
            if ((i < kMaxSlots ? x.size() : y.size()) <= slot)
                throw InternalError("polynomial refers to slot " + std::to_string(slot) + " beyond the input");
            term *= cache.power(i, t.monomial[i]);
        }
        total += term;
    }
    return total;
}

RingElement p_times_f(unsigned p, unsigned i, const RingPtr& ring, const std::vector<RingElement>& x) {
    if (x.size() <= i) throw UsageError("f_{p^i} needs components 0..i");
    std::vector<RingElement> prefix(x.begin(), x.begin() + i + 1);
    if (i <= level_limit(p)) return evaluate(f_poly(p, i), ring, prefix).scaled(p);
    if (!ghost_path_available(p, ring))
        throw CapabilityError("f_{p^" + std::to_string(i) + "} is beyond the universal polynomial limit for p=" +
                              std::to_string(p) + " and " + ring->spec() + " has p-torsion");
    prefix.push_back(ring->zero());
    WittVector image = frobenius(WittVector(p, ring, prefix), EvalMode::Ghost);
    return image[i] - prefix[i].pow(p);
}

WittVector witt_add(const WittVector& x, const WittVector& y, EvalMode mode) {
    check_compatible(x, y, "add");
    return apply(Op::Add, x, &y, mode);
}

WittVector witt_mul(const WittVector& x, const WittVector& y, EvalMode mode) {
    check_compatible(x, y, "mul");
    return apply(Op::Mul, x, &y, mode);
}

WittVector witt_neg(const WittVector& x, EvalMode mode) { return apply(Op::Neg, x, nullptr, mode); }

WittVector witt_sub(const WittVector& x, const WittVector& y, EvalMode mode) {
    check_compatible(x, y, "sub");
    return witt_add(x, witt_neg(y, mode), mode);
}

WittVector witt_scale(const WittVector& x, const Integer& k, EvalMode mode) {
    Integer n = abs(k);
    WittVector result = WittVector::zero(x.prime(), x.ring(), x.length());
    WittVector base = x;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = witt_add(result, base, mode);
        n >>= 1;
        if (n > 0) base = witt_add(base, base, mode);
    }
    return k < 0 ? witt_neg(result, mode) : result;
}

GhostVector ghost(const WittVector& x) {
    const unsigned p = x.prime();
    GhostVector g;
    for (std::size_t i = 0; i < x.length(); ++i) {
        RingElement w = x.ring()->zero();
        Integer pj = 1;
        for (std::size_t j = 0; j <= i; ++j) {
            w += x[j].pow(upow(p, static_cast<unsigned>(i - j))).scaled(pj);
            pj *= p;
        }
        g.components.push_back(std::move(w));
    }
    return g;
}

WittVector from_ghost(unsigned p, const RingPtr& ring, const GhostVector& g) {
    if (!ghost_path_available(p, ring))
        throw CapabilityError("the ghost map is not invertible over " + ring->spec() + " (p-torsion)");
    std::vector<RingElement> c;
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        RingElement rest = g.components[i];
        Integer pj = 1;
        for (std::size_t j = 0; j < i; ++j) {
            rest -= c[j].pow(upow(p, static_cast<unsigned>(i - j))).scaled(pj);
            pj *= p;
        }
        for (std::size_t k = 0; k < i; ++k) {
            auto q = ring->exact_div_p(rest, p);
            if (!q) throw InternalError("ghost vector is not in the image of the ghost map at slot " + std::to_string(i));
            rest = q->quotient;
        }
        c.push_back(std::move(rest));
    }
    return WittVector(p, ring, std::move(c));
}

WittVector frobenius(const WittVector& x, EvalMode mode) {
    if (x.length() < 2) throw UsageError("Frobenius needs a Witt vector of length >= 2");
    return apply(Op::Frobenius, x, nullptr, mode);
}

WittVector verschiebung(const WittVector& x) {
    std::vector<RingElement> c;
    c.reserve(x.length() + 1);
    c.push_back(x.ring()->zero());
    c.insert(c.end(), x.components().begin(), x.components().end());
    return WittVector(x.prime(), x.ring(), std::move(c));
}

WittVector teichmuller(unsigned p, const RingElement& r, std::size_t length) {
    if (length == 0) throw UsageError("Witt vectors need at least one component");
    std::vector<RingElement> c(length, r.ring()->zero());
    c[0] = r;
    return WittVector(p, r.ring(), std::move(c));
}

WittVector restrict_to(const WittVector& x, std::size_t length) {
    if (length == 0 || length > x.length())
        throw UsageError("cannot restrict a length-" + std::to_string(x.length()) + " Witt vector to length " +
                         std::to_string(length));
    return WittVector(x.prime(), x.ring(), {x.components().begin(), x.components().begin() + length});
}

std::vector<WittVector> v_decompose(const WittVector& x) {
    std::vector<WittVector> out;
    for (std::size_t i = 0; i < x.length(); ++i) {
        WittVector term = teichmuller(x.prime(), x[i], x.length() - i);
        for (std::size_t k = 0; k < i; ++k) term = verschiebung(term);
        out.push_back(std::move(term));
    }
    return out;
}

WittVector v_power_of_one(unsigned p, const RingPtr& ring, unsigned k, std::size_t length) {
    if (k >= length) throw UsageError("V^k(1) needs k < length");
    std::vector<RingElement> c(length, ring->zero());
    c[k] = ring->one();
    return WittVector(p, ring, std::move(c));
}

}  // namespace witt
