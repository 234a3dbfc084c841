// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "witt/integer.hpp"

namespace witt {

enum class Series : std::uint8_t { X = 0, Y = 1 };

/// Slots per series; slot j is the component x_{p^j}.
inline constexpr unsigned kMaxSlots = 8;

struct WittVariable {
    Series series = Series::X;
    unsigned slot = 0;
};

/// Dense exponent vector: X slots 0..7 then Y slots 0..7.
using Monomial = std::array<std::uint16_t, 2 * kMaxSlots>;

inline constexpr std::size_t index_of(WittVariable v) {
    return static_cast<std::size_t>(v.series) * kMaxSlots + v.slot;
}

Monomial make_monomial(std::initializer_list<std::pair<WittVariable, unsigned>> factors);

struct Term {
    Integer coeff;
    Monomial monomial{};
};

/// Multivariate integer polynomial in the Witt variables. Terms are unique,
/// nonzero and sorted by descending lexicographic order of the exponent
/// vector (x_1 > x_p > ... > y_1 > y_p > ...).
class SparsePoly {
public:
    SparsePoly() = default;

    static SparsePoly constant(const Integer& c);
    static SparsePoly variable(WittVariable v);
    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    static SparsePoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    SparsePoly operator-() const;
    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend bool operator==(const SparsePoly& a, const SparsePoly& b);

    SparsePoly scaled(const Integer& k) const;
    SparsePoly pow(unsigned long k) const;

    /// Quotient by d when every coefficient is divisible; empty otherwise.
    std::optional<SparsePoly> divide_exact(const Integer& d) const;
    /// First coefficient not divisible by d, if any.
    std::optional<Term> first_non_divisible(const Integer& d) const;

    Integer coefficient_of(const Monomial& m) const;
    /// True when every term has weighted degree `expected` (slot j weighs p^j).
    bool weighted_degree_check(unsigned p, const Integer& expected) const;
    /// True when every term has X-weight x_weight and Y-weight y_weight.
    bool bihomogeneous_check(unsigned p, const Integer& x_weight, const Integer& y_weight) const;
    /// Highest slot with a nonzero exponent in the series, or -1.
    int max_slot(Series s) const;

    /// Replaces each variable by a polynomial (identity where the entry is empty).
    SparsePoly substitute(const std::array<std::optional<SparsePoly>, 2 * kMaxSlots>& images) const;
    /// Reduces coefficients to [0, m).
    SparsePoly mod_coefficients(const Integer& m) const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

Integer weighted_degree(const Monomial& m, unsigned p);
std::string monomial_to_string(const Monomial& m);

}  // namespace witt
