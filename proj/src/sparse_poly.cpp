// SPDX-License-Identifier: Apache-2.0
#include "witt/sparse_poly.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "witt/error.hpp"

namespace witt {

namespace {

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto e : m) {
            h ^= e;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

using Accumulator = std::unordered_map<Monomial, Integer, MonomialHash>;

bool term_before(const Term& a, const Term& b) { return a.monomial > b.monomial; }

std::vector<Term> collect(Accumulator& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.push_back(Term{std::move(c), m});
    std::sort(out.begin(), out.end(), term_before);
    return out;
}

Monomial add_exponents(const Monomial& a, const Monomial& b) {
    Monomial out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        unsigned s = static_cast<unsigned>(a[i]) + b[i];
        if (s > std::numeric_limits<std::uint16_t>::max()) throw InternalError("monomial exponent overflow");
        out[i] = static_cast<std::uint16_t>(s);
    }
    return out;
}

const char* series_name(std::size_t index) { return index < kMaxSlots ? "x" : "y"; }

}  // namespace

Monomial make_monomial(std::initializer_list<std::pair<WittVariable, unsigned>> factors) {
    Monomial m{};
    for (const auto& [v, e] : factors) {
        if (v.slot >= kMaxSlots) throw UsageError("Witt variable slot out of range");
        m[index_of(v)] = static_cast<std::uint16_t>(m[index_of(v)] + e);
    }
    return m;
}

Integer weighted_degree(const Monomial& m, unsigned p) {
    Integer total = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) total += ipow(Integer(p), i % kMaxSlots) * m[i];
    return total;
}

std::string monomial_to_string(const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += series_name(i);
        out += std::to_string(i % kMaxSlots);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

SparsePoly SparsePoly::constant(const Integer& c) {
    SparsePoly out;
    if (c != 0) out.terms_.push_back(Term{c, Monomial{}});
    return out;
}

SparsePoly SparsePoly::variable(WittVariable v) {
    if (v.slot >= kMaxSlots) throw UsageError("Witt variable slot out of range");
    SparsePoly out;
    Monomial m{};
    m[index_of(v)] = 1;
    out.terms_.push_back(Term{1, m});
    return out;
}

SparsePoly SparsePoly::from_terms(std::vector<Term> terms) {
    Accumulator acc;
    for (auto& t : terms) acc[t.monomial] += t.coeff;
    SparsePoly out;
    out.terms_ = collect(acc);
    return out;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && term_before(a.terms_[i], b.terms_[j]))) {
            out.terms_.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || term_before(b.terms_[j], a.terms_[i])) {
            out.terms_.push_back(b.terms_[j++]);
        } else {
            Integer c = a.terms_[i].coeff + b.terms_[j].coeff;
            if (c != 0) out.terms_.push_back(Term{std::move(c), a.terms_[i].monomial});
            ++i;
            ++j;
        }
    }
    return out;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return a + (-b); }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Accumulator acc;
    acc.reserve(a.size() * b.size() / 2 + 1);
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            Integer& slot = acc[add_exponents(s.monomial, t.monomial)];
            mpz_addmul(slot.get_mpz_t(), s.coeff.get_mpz_t(), t.coeff.get_mpz_t());
        }
    SparsePoly out;
    out.terms_ = collect(acc);
    return out;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].monomial != b.terms_[i].monomial || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

SparsePoly SparsePoly::scaled(const Integer& k) const {
    if (k == 0) return {};
    SparsePoly out = *this;
    for (auto& t : out.terms_) t.coeff *= k;
    return out;
}

SparsePoly SparsePoly::pow(unsigned long k) const {
    SparsePoly result = constant(1);
    SparsePoly base = *this;
    while (k > 0) {
        if (k & 1UL) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

std::optional<SparsePoly> SparsePoly::divide_exact(const Integer& d) const {
    SparsePoly out = *this;
    for (auto& t : out.terms_) {
        if (!divides(d, t.coeff)) return std::nullopt;
        t.coeff = exact_quotient(t.coeff, d);
    }
    return out;
}

std::optional<Term> SparsePoly::first_non_divisible(const Integer& d) const {
    for (const auto& t : terms_)
        if (!divides(d, t.coeff)) return t;
    return std::nullopt;
}

Integer SparsePoly::coefficient_of(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.monomial > key; });
    if (it != terms_.end() && it->monomial == m) return it->coeff;
    return 0;
}

bool SparsePoly::weighted_degree_check(unsigned p, const Integer& expected) const {
    for (const auto& t : terms_)
        if (weighted_degree(t.monomial, p) != expected) return false;
    return true;
}

bool SparsePoly::bihomogeneous_check(unsigned p, const Integer& x_weight, const Integer& y_weight) const {
    for (const auto& t : terms_) {
        Monomial xs{}, ys{};
        std::copy_n(t.monomial.begin(), kMaxSlots, xs.begin());
        std::copy_n(t.monomial.begin() + kMaxSlots, kMaxSlots, ys.begin() + kMaxSlots);
        if (weighted_degree(xs, p) != x_weight || weighted_degree(ys, p) != y_weight) return false;
    }
    return true;
}

int SparsePoly::max_slot(Series s) const {
    int best = -1;
    const std::size_t base = static_cast<std::size_t>(s) * kMaxSlots;
    for (const auto& t : terms_)
        for (int j = static_cast<int>(kMaxSlots) - 1; j > best; --j)
            if (t.monomial[base + j] != 0) {
                best = j;
                break;
            }
    return best;
}

SparsePoly SparsePoly::substitute(const std::array<std::optional<SparsePoly>, 2 * kMaxSlots>& images) const {
    SparsePoly out;
    for (const auto& t : terms_) {
        Monomial kept{};
        SparsePoly factor = constant(t.coeff);
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            if (t.monomial[i] == 0) continue;
            if (images[i])
                factor = factor * images[i]->pow(t.monomial[i]);
            else
                kept[i] = t.monomial[i];
        }
        SparsePoly rest;
        rest.terms_.push_back(Term{1, kept});
        out = out + factor * rest;
    }
    return out;
}

SparsePoly SparsePoly::mod_coefficients(const Integer& m) const {
    std::vector<Term> reduced;
    for (const auto& t : terms_) {
        Integer c = mod_floor(t.coeff, m);
        if (c != 0) reduced.push_back(Term{std::move(c), t.monomial});
    }
    SparsePoly out;
    out.terms_ = std::move(reduced);
    return out;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        bool constant_term = t.monomial == Monomial{};
        Integer mag = abs(t.coeff);
        if (t.coeff < 0)
            out += out.empty() ? "-" : " - ";
        else if (!out.empty())
            out += " + ";
        if (constant_term) {
            out += mag.get_str(10);
            continue;
        }
        if (mag != 1) out += mag.get_str(10) + "*";
        out += monomial_to_string(t.monomial);
    }
    return out;
}

}  // namespace witt
