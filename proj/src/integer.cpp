// SPDX-License-Identifier: Apache-2.0
#include "witt/integer.hpp"

#include <limits>
#include <stdexcept>

namespace witt {

std::uint64_t upow(std::uint64_t base, unsigned exp) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
            throw std::overflow_error("upow overflow");
        out *= base;
    }
    return out;
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str(10);
    return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

bool parse_integer(std::string_view text, Integer& out) {
    if (text.empty()) return false;
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') i = 1;
    if (i == text.size()) return false;
    for (std::size_t k = i; k < text.size(); ++k)
        if (text[k] < '0' || text[k] > '9') return false;
    std::string s(text.substr(text[0] == '+' ? 1 : 0));
    return out.set_str(s, 10) == 0;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

unsigned valuation_of(const Integer& n, unsigned p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    Integer prime = p;
    Integer rest;
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

Rational ceil_to_denominator(const Rational& q, const Integer& d) {
    Integer scaled_num = q.get_num() * d;
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
    Rational out(c, d);
    out.canonicalize();
    return out;
}

}  // namespace witt
