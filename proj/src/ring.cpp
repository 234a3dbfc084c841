// SPDX-License-Identifier: Apache-2.0
#include "witt/ring.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "witt/error.hpp"

namespace witt {

namespace {

void trim(Coeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

void reduce_coeffs(Coeffs& c, const Integer& m) {
    if (m != 0)
        for (auto& x : c) x = mod_floor(x, m);
    trim(c);
}

Coeffs poly_mul(const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return out;
}

struct SparseTerm {
    std::size_t exponent;
    Integer coeff;
};

/// Reduces c modulo the monic polynomial x^degree + sum(lower).
void reduce_sparse(Coeffs& c, std::size_t degree, const std::vector<SparseTerm>& lower) {
    if (c.size() <= degree) return;
    for (std::size_t e = c.size(); e-- > degree;) {
        if (c[e] == 0) continue;
        Integer q = c[e];
        c[e] = 0;
        for (const auto& t : lower)
            mpz_submul(c[e - degree + t.exponent].get_mpz_t(), q.get_mpz_t(), t.coeff.get_mpz_t());
    }
    c.resize(degree);
}

std::vector<SparseTerm> sparse_lower(const Coeffs& monic) {
    std::vector<SparseTerm> out;
    for (std::size_t i = 0; i + 1 < monic.size(); ++i)
        if (monic[i] != 0) out.push_back({i, monic[i]});
    return out;
}

std::size_t cyclotomic_degree(unsigned p, unsigned n) {
    return static_cast<std::size_t>(upow(p, n - 1) * (p - 1));
}

std::vector<SparseTerm> cyclotomic_lower(unsigned p, unsigned n) {
    std::vector<SparseTerm> out;
    std::size_t step = static_cast<std::size_t>(upow(p, n - 1));
    for (unsigned i = 0; i + 1 < p; ++i) out.push_back({i * step, Integer(1)});
    return out;
}

Integer random_below(std::mt19937_64& rng, const Integer& m) {
    if (m.fits_ulong_p()) {
        std::uniform_int_distribution<unsigned long> dist(0, m.get_ui() - 1);
        return Integer(dist(rng));
    }
    Integer acc = 0;
    std::size_t words = mpz_sizeinbase(m.get_mpz_t(), 2) / 64 + 2;
    for (std::size_t i = 0; i < words; ++i) {
        acc <<= 64;
        acc += Integer(static_cast<unsigned long>(rng()));
    }
    return mod_floor(acc, m);
}

Integer random_signed(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    return Integer(dist(rng));
}

bool is_scalar_descriptor(const RingDescriptor& d) {
    return std::holds_alternative<Integers>(d.variant) || std::holds_alternative<ModularIntegers>(d.variant) ||
           std::holds_alternative<PrimeField>(d.variant);
}

/// Determinant by fraction-free elimination.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = exact_quotient(v, prev);
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Ring-spec parsing

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    RingDescriptor parse() {
        skip_ws();
        RingDescriptor d = parse_base();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return d;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    Integer parse_uint() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected unsigned integer");
        return Integer(std::string(text_.substr(start, pos_ - start)), 10);
    }

    unsigned parse_small(const char* what) {
        std::size_t at = pos_;
        Integer v = parse_uint();
        if (!v.fits_uint_p()) throw ParseError(std::string(what) + " out of range", at);
        return static_cast<unsigned>(v.get_ui());
    }

    RingDescriptor parse_base() {
        if (accept("ZetaTower")) {
            expect("(");
            unsigned p = parse_small("prime");
            expect(")");
            return RingDescriptor::tower(p);
        }
        if (accept("Zeta")) {
            expect("(");
            unsigned p = parse_small("prime");
            expect(",");
            unsigned n = parse_small("level");
            expect(")");
            return RingDescriptor::cyclotomic(p, n);
        }
        RingDescriptor scalar;
        if (accept("GF")) {
            expect("(");
            Integer q = parse_uint();
            expect(")");
            scalar = RingDescriptor::prime_field(q);
        } else if (accept("Z")) {
            skip_ws();
            if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                scalar = RingDescriptor::modular(parse_uint());
            } else {
                scalar = RingDescriptor::integers();
            }
        } else {
            fail("expected Z, Z/<m>, GF(<q>), Zeta(<p>,<n>) or ZetaTower(<p>)");
        }
        if (!accept("[")) return scalar;
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected variable name");
        std::string var(text_.substr(start, pos_ - start));
        expect("]");
        RingDescriptor poly = RingDescriptor::polynomial(scalar, var);
        if (!accept("/")) return poly;
        expect("(");
        std::size_t body = pos_;
        std::size_t close = text_.find(')', body);
        if (close == std::string_view::npos) {
            pos_ = text_.size();
            fail("expected ')'");
        }
        Coeffs modulus = parse_univariate(text_.substr(body, close - body), var, body);
        pos_ = close + 1;
        return RingDescriptor::quotient(poly, std::move(modulus));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

struct BracketLiteral {
    Coeffs coeffs;
    std::optional<unsigned> level;
};

BracketLiteral parse_bracket(std::string_view text) {
    BracketLiteral out;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos >= text.size() || text[pos] != '[') throw ParseError("expected '['", pos);
    ++pos;
    skip();
    if (pos < text.size() && text[pos] == ']') {
        ++pos;
    } else {
        while (true) {
            skip();
            std::size_t start = pos;
            if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            Integer v;
            if (!parse_integer(text.substr(start, pos - start), v)) throw ParseError("expected integer", start);
            out.coeffs.push_back(v);
            skip();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ']') {
                ++pos;
                break;
            }
            throw ParseError("expected ',' or ']'", pos);
        }
    }
    skip();
    if (pos < text.size() && text[pos] == '@') {
        ++pos;
        skip();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        Integer lv;
        if (!parse_integer(text.substr(start, pos - start), lv) || !lv.fits_uint_p())
            throw ParseError("expected level", start);
        out.level = static_cast<unsigned>(lv.get_ui());
        skip();
    }
    if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
    return out;
}

std::string render_bracket(const Coeffs& c, unsigned level) {
    std::string out = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ",";
        out += c[i].get_str(10);
    }
    return out + "]@" + std::to_string(level);
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors

RingDescriptor RingDescriptor::integers() { return {Integers{}}; }

RingDescriptor RingDescriptor::modular(const Integer& m) { return {ModularIntegers{m}}; }

RingDescriptor RingDescriptor::prime_field(const Integer& q) { return {PrimeField{q}}; }

RingDescriptor RingDescriptor::polynomial(const RingDescriptor& base, std::string variable) {
    return {PolynomialRing{std::make_shared<const RingDescriptor>(base), std::move(variable)}};
}

RingDescriptor RingDescriptor::quotient(const RingDescriptor& polynomial_ring, Coeffs monic_modulus) {
    const auto* poly = std::get_if<PolynomialRing>(&polynomial_ring.variant);
    if (poly == nullptr) throw UsageError("quotient base must be a polynomial ring");
    Integer m = 0;
    if (const auto* mod = std::get_if<ModularIntegers>(&poly->base->variant)) m = mod->modulus;
    if (const auto* gf = std::get_if<PrimeField>(&poly->base->variant)) m = gf->order;
    reduce_coeffs(monic_modulus, m);
    return {QuotientRing{std::make_shared<const RingDescriptor>(polynomial_ring), std::move(monic_modulus)}};
}

RingDescriptor RingDescriptor::cyclotomic(unsigned p, unsigned n) { return {CyclotomicLevel{p, n}}; }

RingDescriptor RingDescriptor::tower(unsigned p) { return {CyclotomicTower{p}}; }

std::string RingDescriptor::to_spec() const {
    struct Visitor {
        std::string operator()(const Integers&) const { return "Z"; }
        std::string operator()(const ModularIntegers& m) const { return "Z/" + m.modulus.get_str(10); }
        std::string operator()(const PrimeField& f) const { return "GF(" + f.order.get_str(10) + ")"; }
        std::string operator()(const PolynomialRing& r) const { return r.base->to_spec() + "[" + r.variable + "]"; }
        std::string operator()(const QuotientRing& q) const {
            const auto& poly = std::get<PolynomialRing>(q.base->variant);
            return q.base->to_spec() + "/(" + render_univariate(q.modulus, poly.variable) + ")";
        }
        std::string operator()(const CyclotomicLevel& c) const {
            return "Zeta(" + std::to_string(c.prime) + "," + std::to_string(c.level) + ")";
        }
        std::string operator()(const CyclotomicTower& t) const { return "ZetaTower(" + std::to_string(t.prime) + ")"; }
    };
    return std::visit(Visitor{}, variant);
}

bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    if (a.variant.index() != b.variant.index()) return false;
    struct Visitor {
        const RingDescriptor::Variant& other;
        bool operator()(const Integers&) const { return true; }
        bool operator()(const ModularIntegers& m) const { return m.modulus == std::get<ModularIntegers>(other).modulus; }
        bool operator()(const PrimeField& f) const { return f.order == std::get<PrimeField>(other).order; }
        bool operator()(const PolynomialRing& r) const {
            const auto& o = std::get<PolynomialRing>(other);
            return r.variable == o.variable && *r.base == *o.base;
        }
        bool operator()(const QuotientRing& q) const {
            const auto& o = std::get<QuotientRing>(other);
            return q.modulus == o.modulus && *q.base == *o.base;
        }
        bool operator()(const CyclotomicLevel& c) const {
            const auto& o = std::get<CyclotomicLevel>(other);
            return c.prime == o.prime && c.level == o.level;
        }
        bool operator()(const CyclotomicTower& t) const { return t.prime == std::get<CyclotomicTower>(other).prime; }
    };
    return std::visit(Visitor{b.variant}, a.variant);
}

RingDescriptor parse_ring_spec(std::string_view text) { return SpecParser(text).parse(); }

Coeffs parse_univariate(std::string_view text, std::string_view variable, std::size_t base_offset) {
    Coeffs out;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, base_offset + pos); };
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) {
            if (first) fail("empty polynomial");
            break;
        }
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Integer coeff = 1;
        bool have_coeff = false;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos > start) {
            coeff = Integer(std::string(text.substr(start, pos - start)), 10);
            have_coeff = true;
        }
        skip();
        bool star = false;
        if (have_coeff && pos < text.size() && text[pos] == '*') {
            ++pos;
            skip();
            star = true;
        }
        unsigned long exponent = 0;
        if (!variable.empty() && text.substr(pos, variable.size()) == variable) {
            pos += variable.size();
            exponent = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                std::size_t es = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (es == pos) fail("expected exponent");
                Integer e(std::string(text.substr(es, pos - es)), 10);
                if (!e.fits_uint_p() || e > 1'000'000) fail("exponent too large");
                exponent = e.get_ui();
            }
        } else if (star || !have_coeff) {
            fail(variable.empty() ? std::string("expected integer") : "expected '" + std::string(variable) + "'");
        }
        if (out.size() <= exponent) out.resize(exponent + 1);
        out[exponent] += sign * coeff;
    }
    trim(out);
    return out;
}

std::string render_univariate(const Coeffs& c, std::string_view variable) {
    std::string out;
    for (std::size_t e = c.size(); e-- > 0;) {
        if (c[e] == 0) continue;
        Integer mag = abs(c[e]);
        if (c[e] < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (e == 0) {
            out += mag.get_str(10);
            continue;
        }
        if (mag != 1) out += mag.get_str(10) + "*";
        out += variable;
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "0" : out;
}

Coeffs cyclotomic_polynomial(unsigned p, unsigned n) {
    std::size_t step = static_cast<std::size_t>(upow(p, n - 1));
    Coeffs c(step * (p - 1) + 1);
    for (unsigned i = 0; i < p; ++i) c[i * step] = 1;
    return c;
}

// ---------------------------------------------------------------------------
// RingElement

RingElement RingElement::pow(unsigned long k) const { return ring_->pow(*this, k); }

RingElement RingElement::scaled(const Integer& k) const { return ring_->mul(*this, ring_->from_integer(k)); }

std::string RingElement::to_string() const { return ring_ ? ring_->render(*this) : "<null>"; }

RingElement operator+(const RingElement& a, const RingElement& b) {
    if (!a.ring_) throw UsageError("arithmetic on a null element");
    return a.ring_->add(a, b);
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    if (!a.ring_) throw UsageError("arithmetic on a null element");
    return a.ring_->sub(a, b);
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    if (!a.ring_) throw UsageError("arithmetic on a null element");
    return a.ring_->mul(a, b);
}

RingElement operator-(const RingElement& a) {
    if (!a.ring_) throw UsageError("arithmetic on a null element");
    return a.ring_->neg(a);
}

bool operator==(const RingElement& a, const RingElement& b) {
    if (a.ring_ != b.ring_) {
        if (!a.ring_ || !b.ring_ || !a.ring_->same_ring(*b.ring_)) return false;
    }
    return a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(RingDescriptor d) : descriptor_(std::move(d)) {
    auto scalar_modulus = [](const RingDescriptor& base, Integer& m, bool& field) {
        if (std::holds_alternative<Integers>(base.variant)) {
            m = 0;
            field = false;
        } else if (const auto* mod = std::get_if<ModularIntegers>(&base.variant)) {
            if (mod->modulus < 2) throw UsageError("Z/m requires m >= 2");
            m = mod->modulus;
            field = is_prime(m);
        } else if (const auto* gf = std::get_if<PrimeField>(&base.variant)) {
            if (!is_prime(gf->order)) throw UsageError("GF(q) requires q prime, got " + gf->order.get_str(10));
            m = gf->order;
            field = true;
        } else {
            throw UsageError("polynomial rings need a scalar base (Z, Z/m or GF(q))");
        }
    };

    if (is_scalar_descriptor(descriptor_)) {
        shape_ = Shape::Scalar;
        scalar_modulus(descriptor_, coef_mod_, coef_field_);
    } else if (const auto* poly = std::get_if<PolynomialRing>(&descriptor_.variant)) {
        shape_ = Shape::Polynomial;
        scalar_modulus(*poly->base, coef_mod_, coef_field_);
        if (poly->variable.empty()) throw UsageError("empty polynomial variable");
        variable_ = poly->variable;
    } else if (const auto* q = std::get_if<QuotientRing>(&descriptor_.variant)) {
        shape_ = Shape::Quotient;
        const auto* base = std::get_if<PolynomialRing>(&q->base->variant);
        if (base == nullptr) throw UsageError("quotient base must be a polynomial ring");
        scalar_modulus(*base->base, coef_mod_, coef_field_);
        variable_ = base->variable;
        modulus_ = q->modulus;
        reduce_coeffs(modulus_, coef_mod_);
        if (modulus_.size() < 2) throw UsageError("quotient modulus must have degree >= 1");
        if (modulus_.back() != 1) throw UsageError("quotient modulus must be monic");
    } else if (const auto* c = std::get_if<CyclotomicLevel>(&descriptor_.variant)) {
        if (!is_prime(static_cast<std::uint64_t>(c->prime))) throw UsageError("Zeta(p,n) requires p prime");
        if (c->level < 1) throw UsageError("Zeta(p,n) requires n >= 1");
        if (upow(c->prime, c->level) > 100'000) throw UsageError("Zeta(p,n) degree too large");
        shape_ = Shape::Cyclotomic;
        prime_ = c->prime;
        level_ = c->level;
        modulus_ = cyclotomic_polynomial(prime_, level_);
    } else if (const auto* t = std::get_if<CyclotomicTower>(&descriptor_.variant)) {
        if (!is_prime(static_cast<std::uint64_t>(t->prime))) throw UsageError("ZetaTower(p) requires p prime");
        shape_ = Shape::Tower;
        prime_ = t->prime;
    }
}

RingPtr Ring::make(const RingDescriptor& d) { return RingPtr(new Ring(d)); }

bool Ring::same_ring(const Ring& other) const { return this == &other || descriptor_ == other.descriptor_; }

std::size_t Ring::basis_size() const {
    switch (shape_) {
        case Shape::Scalar: return 1;
        case Shape::Polynomial: return 0;
        case Shape::Quotient:
        case Shape::Cyclotomic: return modulus_.size() - 1;
        case Shape::Tower: return 0;
    }
    return 0;
}

std::size_t Ring::degree_bound(unsigned level) const {
    if (shape_ == Shape::Tower) return cyclotomic_degree(prime_, level);
    return basis_size();
}

RingCapabilities Ring::capabilities(unsigned p) const {
    RingCapabilities caps;
    const Integer prime = p;
    const bool p_unit_coeffs = coef_mod_ != 0 && gcd(coef_mod_, prime) == 1;
    caps.is_finite = coef_mod_ != 0 && (shape_ == Shape::Scalar || shape_ == Shape::Quotient);
    caps.is_p_torsion_free = coef_mod_ == 0 || p_unit_coeffs;
    caps.has_exact_p_division = true;
    switch (shape_) {
        case Shape::Scalar:
            caps.has_pth_root_mod_p = true;
            caps.pth_roots_total = true;
            break;
        case Shape::Polynomial:
            caps.has_pth_root_mod_p = true;
            caps.pth_roots_total = p_unit_coeffs;
            break;
        case Shape::Quotient:
        case Shape::Cyclotomic: {
            auto size = quotient_size(p, 1);
            caps.has_pth_root_mod_p = size && *size <= kDefaultSearchBudget;
            caps.pth_roots_total = p_unit_coeffs;
            break;
        }
        case Shape::Tower:
            caps.has_pth_root_mod_p = true;
            caps.pth_roots_total = true;
            break;
    }
    if (shape_ == Shape::Scalar && coef_mod_ == 0) {
        caps.has_valuation = true;
        caps.valuation_denominator = Integer(1);
    } else if (shape_ == Shape::Cyclotomic && p == prime_) {
        caps.has_valuation = true;
        caps.valuation_denominator = Integer(static_cast<unsigned long>(cyclotomic_degree(prime_, level_)));
    } else if (shape_ == Shape::Tower && p == prime_) {
        caps.has_valuation = true;
    }
    caps.can_enumerate_quotient = quotient_size(p, 1).has_value();
    return caps;
}

void Ring::check_owner(const RingElement& a, const char* op) const {
    if (!a.ring_ || !same_ring(*a.ring_))
        throw UsageError(std::string("ring mismatch in ") + op + ": element of " +
                         (a.ring_ ? a.ring_->spec() : std::string("<null>")) + " used in " + spec());
}

void Ring::reduce(Coeffs& c, unsigned level) const {
    switch (shape_) {
        case Shape::Scalar:
            if (c.size() > 1) throw InternalError("scalar ring element with positive degree");
            break;
        case Shape::Polynomial: break;
        case Shape::Quotient:
        case Shape::Cyclotomic:
            if (c.size() >= modulus_.size()) {
                if (coef_mod_ != 0)
                    for (auto& x : c) x = mod_floor(x, coef_mod_);
                reduce_sparse(c, modulus_.size() - 1, sparse_lower(modulus_));
            }
            break;
        case Shape::Tower: {
            std::size_t d = cyclotomic_degree(prime_, level);
            if (c.size() > d) reduce_sparse(c, d, cyclotomic_lower(prime_, level));
            break;
        }
    }
    reduce_coeffs(c, coef_mod_);
}

void Ring::normalize_tower(Coeffs& c, unsigned& level) const {
    if (c.empty()) {
        level = 1;
        return;
    }
    while (level > 1) {
        bool divisible = true;
        for (std::size_t i = 0; i < c.size() && divisible; ++i)
            if (c[i] != 0 && i % prime_ != 0) divisible = false;
        if (!divisible) break;
        Coeffs down((c.size() - 1) / prime_ + 1);
        for (std::size_t i = 0; i < down.size(); ++i) down[i] = c[i * prime_];
        c = std::move(down);
        --level;
    }
}

Coeffs Ring::lift_to_level(const Coeffs& c, unsigned from, unsigned to) const {
    if (from == to || c.empty()) return c;
    std::size_t stride = static_cast<std::size_t>(upow(prime_, to - from));
    Coeffs out((c.size() - 1) * stride + 1);
    for (std::size_t i = 0; i < c.size(); ++i) out[i * stride] = c[i];
    return out;
}

RingElement Ring::make_element(Coeffs c, unsigned level) const {
    if (shape_ == Shape::Tower) {
        if (level == 0) level = 1;
        reduce(c, level);
        normalize_tower(c, level);
    } else {
        reduce(c, 0);
        level = 0;
    }
    return RingElement(shared_from_this(), std::move(c), level);
}

RingElement Ring::zero() const { return make_element({}, 1); }

RingElement Ring::one() const { return from_integer(1); }

RingElement Ring::from_integer(const Integer& k) const { return make_element({k}, 1); }

RingElement Ring::generator() const {
    if (shape_ == Shape::Scalar) throw UsageError("scalar ring " + spec() + " has no generator");
    return make_element({0, 1}, 1);
}

RingElement Ring::from_coefficients(Coeffs c, unsigned level) const {
    if (shape_ == Shape::Scalar && c.size() > 1) {
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] != 0) throw UsageError("scalar ring element with positive-degree coefficients");
        c.resize(1);
    }
    if (shape_ == Shape::Tower && level == 0) throw UsageError("tower elements need a level >= 1");
    return make_element(std::move(c), level);
}

RingElement Ring::parse_element(std::string_view text) const {
    std::size_t first = text.find_first_not_of(" \t\n");
    if (first == std::string_view::npos) throw ParseError("empty element literal", 0);
    if (text[first] == '[') {
        if (shape_ != Shape::Cyclotomic && shape_ != Shape::Tower)
            throw ParseError("bracket literals are only valid in Zeta rings", first);
        BracketLiteral lit = parse_bracket(text);
        if (shape_ == Shape::Cyclotomic) {
            if (lit.level && *lit.level != level_)
                throw UsageError("literal level " + std::to_string(*lit.level) + " does not match " + spec());
            return make_element(std::move(lit.coeffs), 0);
        }
        if (!lit.level) {
            if (lit.coeffs.size() > 1) throw ParseError("tower literal needs '@<level>'", text.size());
            lit.level = 1;
        }
        if (*lit.level < 1 || upow(prime_, *lit.level) > 10'000'000) throw UsageError("tower level out of range");
        return make_element(std::move(lit.coeffs), *lit.level);
    }
    switch (shape_) {
        case Shape::Scalar:
        case Shape::Tower: {
            Integer v;
            std::string_view trimmed = text.substr(first);
            while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
                trimmed.remove_suffix(1);
            if (!parse_integer(trimmed, v)) throw ParseError("expected integer literal", first);
            return from_integer(v);
        }
        case Shape::Cyclotomic: return make_element(parse_univariate(text, "T"), 0);
        case Shape::Polynomial:
        case Shape::Quotient: return make_element(parse_univariate(text, variable_), 0);
    }
    throw InternalError("unreachable");
}

std::string Ring::render(const RingElement& a) const {
    check_owner(a, "render");
    const Coeffs& c = a.coeffs_;
    switch (shape_) {
        case Shape::Scalar: return c.empty() ? "0" : c[0].get_str(10);
        case Shape::Polynomial:
        case Shape::Quotient: return render_univariate(c, variable_);
        case Shape::Cyclotomic:
            if (c.size() <= 1) return c.empty() ? "0" : c[0].get_str(10);
            return render_bracket(c, level_);
        case Shape::Tower:
            if (c.size() <= 1) return c.empty() ? "0" : c[0].get_str(10);
            return render_bracket(c, a.level_);
    }
    return "?";
}

RingElement Ring::add(const RingElement& a, const RingElement& b) const {
    check_owner(a, "add");
    check_owner(b, "add");
    unsigned level = std::max(a.level_, b.level_);
    Coeffs x = shape_ == Shape::Tower ? lift_to_level(a.coeffs_, a.level_, level) : a.coeffs_;
    const Coeffs y = shape_ == Shape::Tower ? lift_to_level(b.coeffs_, b.level_, level) : b.coeffs_;
    if (x.size() < y.size()) x.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
    return make_element(std::move(x), level);
}

RingElement Ring::neg(const RingElement& a) const {
    check_owner(a, "neg");
    Coeffs x = a.coeffs_;
    for (auto& v : x) v = -v;
    return make_element(std::move(x), a.level_);
}

RingElement Ring::sub(const RingElement& a, const RingElement& b) const { return add(a, neg(b)); }

RingElement Ring::mul(const RingElement& a, const RingElement& b) const {
    check_owner(a, "mul");
    check_owner(b, "mul");
    if (shape_ == Shape::Tower) {
        unsigned level = std::max(a.level_, b.level_);
        return make_element(poly_mul(lift_to_level(a.coeffs_, a.level_, level), lift_to_level(b.coeffs_, b.level_, level)),
                            level);
    }
    return make_element(poly_mul(a.coeffs_, b.coeffs_), 0);
}

RingElement Ring::pow(const RingElement& a, unsigned long k) const {
    check_owner(a, "pow");
    RingElement result = one();
    RingElement base = a;
    while (k > 0) {
        if (k & 1UL) result = mul(result, base);
        k >>= 1;
        if (k > 0) base = mul(base, base);
    }
    return result;
}

std::optional<PDivision> Ring::exact_div_p(const RingElement& a, unsigned p) const {
    check_owner(a, "exact_div_p");
    const Integer prime = p;
    Coeffs q = a.coeffs_;
    bool unique = true;
    if (coef_mod_ == 0) {
        for (auto& c : q) {
            if (!divides(prime, c)) return std::nullopt;
            c = exact_quotient(c, prime);
        }
    } else if (gcd(coef_mod_, prime) == 1) {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), prime.get_mpz_t(), coef_mod_.get_mpz_t());
        for (auto& c : q) c = mod_floor(c * inv, coef_mod_);
    } else {
        unique = false;
        for (auto& c : q) {
            if (!divides(prime, c)) return std::nullopt;
            c = exact_quotient(c, prime);
        }
    }
    return PDivision{make_element(std::move(q), a.level_), unique};
}

std::optional<RingElement> Ring::exact_div_p_power(const RingElement& a, unsigned p, unsigned k) const {
    check_owner(a, "exact_div_p_power");
    const Integer pk = ipow(Integer(p), k);
    Coeffs q = a.coeffs_;
    if (coef_mod_ == 0) {
        for (auto& c : q) {
            if (!divides(pk, c)) return std::nullopt;
            c = exact_quotient(c, pk);
        }
    } else {
        const Integer g = gcd(coef_mod_, pk);
        const Integer m = exact_quotient(coef_mod_, g);
        Integer inv = 0;
        if (m > 1) {
            const Integer u = mod_floor(exact_quotient(pk, g), m);
            mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
        }
        for (auto& c : q) {
            if (!divides(g, c)) return std::nullopt;
            c = m > 1 ? mod_floor(exact_quotient(c, g) * inv, m) : Integer(0);
        }
    }
    return make_element(std::move(q), a.level_);
}

std::optional<RingElement> Ring::pth_root_mod_p(const RingElement& a, unsigned p, std::uint64_t budget) const {
    check_owner(a, "pth_root_mod_p");
    const Integer prime = p;
    const bool p_unit = coef_mod_ != 0 && gcd(coef_mod_, prime) == 1;
    switch (shape_) {
        case Shape::Scalar: return a;
        case Shape::Polynomial: {
            if (p_unit) return a;
            Coeffs root;
            for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
                Integer c = mod_floor(a.coeffs_[i], prime);
                if (c == 0) continue;
                if (i % p != 0) return std::nullopt;
                if (root.size() <= i / p) root.resize(i / p + 1);
                root[i / p] = c;
            }
            return make_element(std::move(root), 0);
        }
        case Shape::Tower: {
            Coeffs root = a.coeffs_;
            for (auto& c : root) c = mod_floor(c, prime);
            const unsigned level = root.size() <= 1 ? a.level_ : a.level_ + 1;
            return make_element(std::move(root), level);
        }
        case Shape::Quotient:
        case Shape::Cyclotomic: {
            if (p_unit) return a;
            auto size = quotient_size(p, 1);
            if (!size || *size > budget)
                throw CapabilityError("p-th root search over " + spec() + "/p exceeds budget " + std::to_string(budget));
            const RingElement target = reduce_mod_prime_power(a, p, 1);
            std::optional<RingElement> found;
            for_each_residue(p, 1, [&](const RingElement& s) {
                if (reduce_mod_prime_power(pow(s, p), p, 1) == target) {
                    found = s;
                    return false;
                }
                return true;
            });
            return found;
        }
    }
    return std::nullopt;
}

Valuation Ring::cyclotomic_valuation(const Coeffs& c, unsigned level) const {
    if (c.empty()) return Valuation::infinite();
    const unsigned p = prime_;
    unsigned content = ~0U;
    for (const auto& x : c)
        if (x != 0) content = std::min(content, valuation_of(x, p));
    const Integer pe = ipow(Integer(p), content);
    // Reduce the primitive part mod p; the multiplicity of the root T = 1 over
    // F_p is the valuation at the prime (p, T - 1) above p.
    std::vector<long> residue(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) residue[i] = mod_floor(exact_quotient(c[i], pe), Integer(p)).get_si();
    while (!residue.empty() && residue.back() == 0) residue.pop_back();
    unsigned multiplicity = 0;
    while (true) {
        long at_one = 0;
        for (long v : residue) at_one = (at_one + v) % static_cast<long>(p);
        if (at_one != 0) break;
        // synthetic division by (T - 1) over F_p
        std::vector<long> q(residue.size() - 1);
        long carry = 0;
        for (std::size_t i = residue.size(); i-- > 1;) {
            carry = (carry + residue[i]) % static_cast<long>(p);
            q[i - 1] = carry;
        }
        residue = std::move(q);
        ++multiplicity;
    }
    Rational v(Integer(content) * Integer(static_cast<unsigned long>(cyclotomic_degree(p, level))) + multiplicity,
               Integer(static_cast<unsigned long>(cyclotomic_degree(p, level))));
    v.canonicalize();
    return Valuation{v};
}

Valuation Ring::valuation(const RingElement& a, unsigned p) const {
    check_owner(a, "valuation");
    if (shape_ == Shape::Scalar && coef_mod_ == 0) {
        if (a.is_zero()) return Valuation::infinite();
        return Valuation{Rational(valuation_of(a.coeffs_[0], p))};
    }
    if ((shape_ == Shape::Cyclotomic || shape_ == Shape::Tower) && p == prime_)
        return cyclotomic_valuation(a.coeffs_, shape_ == Shape::Tower ? a.level_ : level_);
    throw CapabilityError(spec() + " has no " + std::to_string(p) + "-adic valuation");
}

Integer Ring::norm(const RingElement& a) const {
    check_owner(a, "norm");
    if (shape_ != Shape::Cyclotomic && shape_ != Shape::Tower) throw CapabilityError("norm needs a cyclotomic ring");
    const unsigned level = shape_ == Shape::Tower ? a.level_ : level_;
    const std::size_t d = cyclotomic_degree(prime_, level);
    std::vector<std::vector<Integer>> m(d, std::vector<Integer>(d));
    Coeffs column = a.coeffs_;
    auto lower = cyclotomic_lower(prime_, level);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < column.size() && i < d; ++i) m[i][j] = column[i];
        column.insert(column.begin(), Integer(0));
        reduce_sparse(column, d, lower);
    }
    return bareiss_determinant(std::move(m));
}

RingElement Ring::reduce_mod_prime_power(const RingElement& a, unsigned p, unsigned k) const {
    check_owner(a, "reduce_mod_prime_power");
    const Integer pk = ipow(Integer(p), k);
    const Integer g = coef_mod_ == 0 ? pk : gcd(coef_mod_, pk);
    Coeffs c = a.coeffs_;
    for (auto& x : c) x = mod_floor(x, g);
    return make_element(std::move(c), a.level_);
}

std::optional<Integer> Ring::quotient_size(unsigned p, unsigned k) const {
    const Integer pk = ipow(Integer(p), k);
    const Integer g = coef_mod_ == 0 ? pk : gcd(coef_mod_, pk);
    if (g == 1) return Integer(1);
    if (shape_ == Shape::Polynomial || shape_ == Shape::Tower) return std::nullopt;
    return ipow(g, basis_size());
}

void Ring::for_each_vector(const Integer& g, std::size_t slots, unsigned level,
                           const std::function<bool(const RingElement&)>& visit) const {
    if (g == 1 || slots == 0) {
        visit(make_element({}, level));
        return;
    }
    Coeffs digits(slots, Integer(0));
    while (true) {
        if (!visit(make_element(digits, level))) return;
        std::size_t i = 0;
        while (i < slots) {
            digits[i] += 1;
            if (digits[i] < g) break;
            digits[i] = 0;
            ++i;
        }
        if (i == slots) return;
    }
}

void Ring::for_each_residue(unsigned p, unsigned k, const std::function<bool(const RingElement&)>& visit) const {
    const Integer pk = ipow(Integer(p), k);
    const Integer g = coef_mod_ == 0 ? pk : gcd(coef_mod_, pk);
    if (g != 1 && (shape_ == Shape::Polynomial || shape_ == Shape::Tower))
        throw CapabilityError(spec() + " has an infinite quotient by p^" + std::to_string(k));
    for_each_vector(g, g == 1 ? 0 : basis_size(), 1, visit);
}

std::vector<RingElement> Ring::enumerate_quotient(unsigned p, unsigned k) const {
    std::vector<RingElement> out;
    for_each_residue(p, k, [&](const RingElement& r) {
        out.push_back(r);
        return true;
    });
    return out;
}

std::optional<Integer> Ring::cardinality() const {
    if (coef_mod_ == 0 || shape_ == Shape::Polynomial || shape_ == Shape::Tower) return std::nullopt;
    return ipow(coef_mod_, basis_size());
}

void Ring::for_each_element(const std::function<bool(const RingElement&)>& visit) const {
    if (!cardinality()) throw CapabilityError(spec() + " is infinite");
    for_each_vector(coef_mod_, basis_size(), 1, visit);
}

std::vector<RingElement> Ring::p_torsion(unsigned p) const {
    if (!cardinality()) throw CapabilityError(spec() + " is infinite");
    const Integer g = gcd(coef_mod_, Integer(p));
    const Integer step = exact_quotient(coef_mod_, g);
    std::vector<RingElement> out;
    for_each_vector(g, basis_size(), 1, [&](const RingElement& digits) {
        Coeffs c = digits.coeffs_;
        for (auto& x : c) x *= step;
        out.push_back(make_element(std::move(c), 1));
        return true;
    });
    return out;
}

Ring::TowerRepresentation Ring::embed_tower(const RingElement& a, unsigned target_level) const {
    check_owner(a, "embed_tower");
    if (shape_ != Shape::Tower) throw UsageError("embed_tower needs a ZetaTower element");
    if (target_level < a.level_)
        throw UsageError("cannot embed level " + std::to_string(a.level_) + " into lower level " +
                         std::to_string(target_level));
    return {lift_to_level(a.coeffs_, a.level_, target_level), target_level};
}

RingElement Ring::sample(std::mt19937_64& rng, const SampleOptions& opts) const {
    auto coefficient = [&]() { return coef_mod_ == 0 ? random_signed(rng, opts.coeff_bound) : random_below(rng, coef_mod_); };
    switch (shape_) {
        case Shape::Scalar: return make_element({coefficient()}, 1);
        case Shape::Polynomial: {
            std::uniform_int_distribution<unsigned> deg(0, opts.max_degree);
            Coeffs c(deg(rng) + 1);
            for (auto& x : c) x = coefficient();
            return make_element(std::move(c), 0);
        }
        case Shape::Quotient:
        case Shape::Cyclotomic: {
            Coeffs c(basis_size());
            for (auto& x : c) x = coefficient();
            return make_element(std::move(c), 0);
        }
        case Shape::Tower: {
            std::uniform_int_distribution<unsigned> lv(1, std::max(1U, opts.max_tower_level));
            unsigned level = lv(rng);
            Coeffs c(cyclotomic_degree(prime_, level));
            for (auto& x : c) x = coefficient();
            return make_element(std::move(c), level);
        }
    }
    return zero();
}

}  // namespace witt
