// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "witt/integer.hpp"

namespace witt {

/// Dense coefficient vector, lowest degree first, no trailing zeros.
using Coeffs = std::vector<Integer>;

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

struct RingDescriptor;
using DescriptorPtr = std::shared_ptr<const RingDescriptor>;

struct Integers {};
struct ModularIntegers {
    Integer modulus;
};
struct PrimeField {
    Integer order;
};
/// One-variable polynomial ring over a scalar base (Z, Z/m or GF(q)).
struct PolynomialRing {
    DescriptorPtr base;
    std::string variable;
};
/// base must be a PolynomialRing; modulus is monic, lowest degree first.
struct QuotientRing {
    DescriptorPtr base;
    Coeffs modulus;
};
/// Z[mu_{p^n}] presented as Z[T]/(Phi_{p^n}).
struct CyclotomicLevel {
    unsigned prime;
    unsigned level;
};
/// The direct limit Z[mu_{p^infinity}].
struct CyclotomicTower {
    unsigned prime;
};

struct RingDescriptor {
    using Variant = std::variant<Integers, ModularIntegers, PrimeField, PolynomialRing, QuotientRing,
                                 CyclotomicLevel, CyclotomicTower>;
    Variant variant;

    static RingDescriptor integers();
    static RingDescriptor modular(const Integer& m);
    static RingDescriptor prime_field(const Integer& q);
    static RingDescriptor polynomial(const RingDescriptor& base, std::string variable = "T");
    static RingDescriptor quotient(const RingDescriptor& polynomial_ring, Coeffs monic_modulus);
    static RingDescriptor cyclotomic(unsigned p, unsigned n);
    static RingDescriptor tower(unsigned p);

    /// Renders the CLI ring-spec grammar; parse_ring_spec(to_spec()) == *this.
    std::string to_spec() const;

    friend bool operator==(const RingDescriptor& a, const RingDescriptor& b);
};

/// Parses `Z`, `Z/<m>`, `GF(<q>)`, optionally followed by `[<var>]` and
/// `/(<poly>)`, plus `Zeta(<p>,<n>)` and `ZetaTower(<p>)`.
RingDescriptor parse_ring_spec(std::string_view text);

/// Integer polynomial literal in one variable (e.g. `T^2+2*T-1`). Offsets in
/// errors are shifted by base_offset.
Coeffs parse_univariate(std::string_view text, std::string_view variable, std::size_t base_offset = 0);
std::string render_univariate(const Coeffs& c, std::string_view variable);

struct RingCapabilities {
    bool is_finite = false;
    bool is_p_torsion_free = false;
    bool has_exact_p_division = false;
    bool has_pth_root_mod_p = false;
    /// The p-th root oracle never reports absence (R/pR is perfect and the root is computable).
    bool pth_roots_total = false;
    bool has_valuation = false;
    /// Attainable valuations are Z*(1/d); absent when the value group is p-divisible.
    std::optional<Integer> valuation_denominator;
    bool can_enumerate_quotient = false;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// An element in canonical form. Immutable; cheap to copy relative to the arithmetic.
class RingElement {
public:
    RingElement() = default;

    const RingPtr& ring() const { return ring_; }
    const Coeffs& coefficients() const { return coeffs_; }
    /// Level inside a cyclotomic tower; 0 for every other ring.
    unsigned level() const { return level_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_null() const { return ring_ == nullptr; }

    RingElement pow(unsigned long k) const;
    RingElement scaled(const Integer& k) const;
    std::string to_string() const;

    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a);
    friend bool operator==(const RingElement& a, const RingElement& b);

    RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
    RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
    RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

private:
    friend class Ring;
    RingElement(RingPtr ring, Coeffs coeffs, unsigned level)
        : ring_(std::move(ring)), coeffs_(std::move(coeffs)), level_(level) {}

    RingPtr ring_;
    Coeffs coeffs_;
    unsigned level_ = 0;
};

struct PDivision {
    RingElement quotient;
    /// False when p is a zero divisor; quotient is then the minimal solution.
    bool unique = true;
};

/// +infinity is represented by an empty value.
struct Valuation {
    std::optional<Rational> value;

    bool is_infinite() const { return !value.has_value(); }
    static Valuation infinite() { return {}; }
    friend bool operator==(const Valuation& a, const Valuation& b) { return a.value == b.value; }
    /// Total order with +infinity on top.
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return *a.value < *b.value;
    }
    std::string to_string() const { return is_infinite() ? "inf" : witt::to_string(*value); }
};

struct SampleOptions {
    long coeff_bound = 4;
    unsigned max_degree = 3;
    unsigned max_tower_level = 2;
};

class Ring : public std::enable_shared_from_this<Ring> {
public:
    enum class Shape { Scalar, Polynomial, Quotient, Cyclotomic, Tower };

    static RingPtr make(const RingDescriptor& d);
    static RingPtr parse(std::string_view spec) { return make(parse_ring_spec(spec)); }

    const RingDescriptor& descriptor() const { return descriptor_; }
    std::string spec() const { return descriptor_.to_spec(); }
    Shape shape() const { return shape_; }
    /// 0 for characteristic-zero coefficients, else the coefficient modulus.
    const Integer& coefficient_modulus() const { return coef_mod_; }
    /// Rank of the ring over its coefficient ring (0 = unbounded).
    std::size_t basis_size() const;
    /// Prime of a cyclotomic ring or tower, 0 otherwise.
    unsigned cyclotomic_prime() const { return prime_; }
    unsigned cyclotomic_level() const { return level_; }

    RingCapabilities capabilities(unsigned p) const;

    RingElement zero() const;
    RingElement one() const;
    RingElement from_integer(const Integer& k) const;
    /// The polynomial variable, or mu_{p^n} (mu_p at tower level 1).
    RingElement generator() const;
    /// Coefficients on the power basis; level is only read for towers.
    RingElement from_coefficients(Coeffs c, unsigned level = 0) const;
    RingElement parse_element(std::string_view text) const;
    std::string render(const RingElement& a) const;

    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement sub(const RingElement& a, const RingElement& b) const;
    RingElement neg(const RingElement& a) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement pow(const RingElement& a, unsigned long k) const;

    /// t with p*t = a, or empty when a is not in pR.
    std::optional<PDivision> exact_div_p(const RingElement& a, unsigned p) const;
    /// Some t with p^k * t = a, or empty when a is not in p^k R.
    std::optional<RingElement> exact_div_p_power(const RingElement& a, unsigned p, unsigned k) const;
    /// s with s^p = a mod pR, or empty when none exists.
    /// Throws CapabilityError when the search would exceed the budget.
    std::optional<RingElement> pth_root_mod_p(const RingElement& a, unsigned p,
                                              std::uint64_t budget = kDefaultSearchBudget) const;
    /// Valuation normalised by v(p) = 1.
    Valuation valuation(const RingElement& a, unsigned p) const;
    /// Field norm of a cyclotomic element (resultant against Phi).
    Integer norm(const RingElement& a) const;

    /// Canonical representative of a + p^k R.
    RingElement reduce_mod_prime_power(const RingElement& a, unsigned p, unsigned k) const;
    /// |R / p^k R| when finite.
    std::optional<Integer> quotient_size(unsigned p, unsigned k) const;
    void for_each_residue(unsigned p, unsigned k, const std::function<bool(const RingElement&)>& visit) const;
    std::vector<RingElement> enumerate_quotient(unsigned p, unsigned k) const;

    std::optional<Integer> cardinality() const;
    /// Visits every element of a finite ring; stops early when visit returns false.
    void for_each_element(const std::function<bool(const RingElement&)>& visit) const;
    /// Elements t with p*t = 0 (finite rings only).
    std::vector<RingElement> p_torsion(unsigned p) const;

    /// Coefficients of a tower element written at a higher level. Feeding the
    /// result back through from_coefficients normalises to the original element.
    struct TowerRepresentation {
        Coeffs coefficients;
        unsigned level = 1;
    };
    TowerRepresentation embed_tower(const RingElement& a, unsigned target_level) const;

    RingElement sample(std::mt19937_64& rng, const SampleOptions& opts = {}) const;

    bool same_ring(const Ring& other) const;

private:
    explicit Ring(RingDescriptor d);

    RingElement make_element(Coeffs c, unsigned level) const;
    void check_owner(const RingElement& a, const char* op) const;
    void reduce(Coeffs& c, unsigned level) const;
    void normalize_tower(Coeffs& c, unsigned& level) const;
    Coeffs lift_to_level(const Coeffs& c, unsigned from, unsigned to) const;
    std::size_t degree_bound(unsigned level) const;
    void for_each_vector(const Integer& g, std::size_t slots, unsigned level,
                         const std::function<bool(const RingElement&)>& visit) const;
    Valuation cyclotomic_valuation(const Coeffs& c, unsigned level) const;

    RingDescriptor descriptor_;
    Shape shape_ = Shape::Scalar;
    Integer coef_mod_ = 0;
    bool coef_field_ = false;
    Coeffs modulus_;
    std::string variable_ = "T";
    unsigned prime_ = 0;
    unsigned level_ = 0;
};

/// Fixed-level cyclotomic polynomial Phi_{p^n}, lowest degree first.
Coeffs cyclotomic_polynomial(unsigned p, unsigned n);

}  // namespace witt
