// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace witt {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

/// p^k as an unsigned 64-bit value; throws std::overflow_error on overflow.
std::uint64_t upow(std::uint64_t base, unsigned exp);

inline std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q);

/// Parses an optionally signed decimal integer; returns false on bad syntax.
bool parse_integer(std::string_view text, Integer& out);

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

/// Largest e with p^e | n; n must be nonzero.
unsigned valuation_of(const Integer& n, unsigned p);

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const Integer& d, const Integer& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Integer exact_quotient(const Integer& n, const Integer& d) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// Smallest multiple of 1/d that is >= q.
Rational ceil_to_denominator(const Rational& q, const Integer& d);

}  // namespace witt
