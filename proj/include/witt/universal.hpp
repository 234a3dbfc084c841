// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "witt/sparse_poly.hpp"

namespace witt {

enum class PolyKind { Sum, Product, Neg, Frobenius, F };

std::string to_string(PolyKind kind);
PolyKind parse_poly_kind(std::string_view name);

/// w_{p^i}(X) = sum_{j<=i} p^j x_j^{p^{i-j}}; Y-series when series == Series::Y.
SparsePoly ghost_poly(unsigned p, unsigned i, Series series = Series::X);

/// Evaluates w_{p^i} at a vector of polynomials c_0..c_i.
SparsePoly ghost_of(unsigned p, unsigned i, const std::vector<SparsePoly>& components);

/// Inverts the ghost map: c_i = (g_i - sum_{j<i} p^j c_j^{p^{i-j}}) / p^i.
/// Throws VerificationError naming the level and offending term when a
/// division is inexact.
std::vector<SparsePoly> ghost_solve(unsigned p, const std::vector<SparsePoly>& targets);

/// Largest level the universal polynomial engine will compute for p.
unsigned level_limit(unsigned p);
void set_level_limit(unsigned p, unsigned level);

/// Components 0..n of the universal sum, product and negation.
std::vector<SparsePoly> sum_polys(unsigned p, unsigned n);
std::vector<SparsePoly> product_polys(unsigned p, unsigned n);
std::vector<SparsePoly> neg_polys(unsigned p, unsigned n);
/// F_0..F_{n-1}: components of the Frobenius W_{p^n} -> W_{p^{n-1}}.
std::vector<SparsePoly> frobenius_polys(unsigned p, unsigned n);
/// f_{p^i} = (F_i - x_i^p - p x_{i+1}) / p.
SparsePoly f_poly(unsigned p, unsigned i);

/// The polynomial a CLI `poly --which KIND --level L` request refers to.
SparsePoly universal_poly(unsigned p, PolyKind kind, unsigned level);

/// Drops every memoized polynomial.
void clear_universal_cache();

struct FPolyCheck {
    char part = 'a';
    unsigned level = 0;
    bool passed = false;
    std::string detail;
};

struct FPolyReport {
    unsigned p = 0;
    unsigned max_level = 0;
    std::vector<FPolyCheck> checks;
    bool all_passed() const;
};

/// Structural checks on the f_{p^i}: (a) slot range and homogeneity,
/// (b) no pure x_0 power, (c) x_1^{p^i} coefficient divisible by p,
/// (d) x_1^p coefficient of f_p is -p^{p-2} mod p, (e) for p = 2 the
/// membership of f_{2^i} in (2, x_0, x_1^2 - x_2, x_3, ..., x_i).
FPolyReport f_poly_report(unsigned p, unsigned max_level);

/// Image of f under the quotient map used by check (e): coefficients mod 2,
/// x_0 -> 0, x_2 -> x_1^2, x_j -> 0 for j >= 3.
SparsePoly reduce_for_ideal_check(const SparsePoly& f);

}  // namespace witt
