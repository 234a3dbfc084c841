// SPDX-License-Identifier: Apache-2.0
#include "witt/universal.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "witt/error.hpp"

namespace witt {

namespace {

SparsePoly var(Series s, unsigned slot) { return SparsePoly::variable({s, slot}); }

void require_prime(unsigned p) {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw UsageError("p must be prime, got " + std::to_string(p));
}

/// Ghost inversion state that can be extended one level at a time.
struct SolveState {
    std::vector<SparsePoly> components;
    /// powers[j][k] = c_j^{p^k}
    std::vector<std::vector<SparsePoly>> powers;
};

const SparsePoly& power_of(SolveState& st, unsigned p, std::size_t j, std::size_t k) {
    auto& tower = st.powers[j];
    while (tower.size() <= k) tower.push_back(tower.back().pow(p));
    return tower[k];
}

void extend(SolveState& st, unsigned p, const SparsePoly& target) {
    const std::size_t i = st.components.size();
    SparsePoly rest = target;
    Integer pj = 1;
    for (std::size_t j = 0; j < i; ++j) {
        rest = rest - power_of(st, p, j, i - j).scaled(pj);
        pj *= p;
    }
    const Integer pi = ipow(Integer(p), i);
    auto quotient = rest.divide_exact(pi);
    if (!quotient) {
        Term bad = *rest.first_non_divisible(pi);
        throw VerificationError("ghost inversion: level " + std::to_string(i) + " is not divisible by " +
                                pi.get_str(10) + " (term " + bad.coeff.get_str(10) + "*" +
                                monomial_to_string(bad.monomial) + ")");
    }
    st.components.push_back(std::move(*quotient));
    st.powers.push_back({st.components.back()});
}

SparsePoly target_for(unsigned p, PolyKind kind, unsigned i) {
    switch (kind) {
        case PolyKind::Sum: return ghost_poly(p, i, Series::X) + ghost_poly(p, i, Series::Y);
        case PolyKind::Product: return ghost_poly(p, i, Series::X) * ghost_poly(p, i, Series::Y);
        case PolyKind::Neg: return -ghost_poly(p, i, Series::X);
        case PolyKind::Frobenius: return ghost_poly(p, i + 1, Series::X);
        case PolyKind::F: break;
    }
    throw InternalError("no ghost target for f");
}

struct Cache {
    std::shared_mutex mutex;
    std::map<std::pair<unsigned, PolyKind>, SolveState> solved;
    std::map<std::pair<unsigned, unsigned>, SparsePoly> f_polys;
    std::map<unsigned, unsigned> limits;
};

Cache& cache() {
    static Cache c;
    return c;
}

unsigned default_limit(unsigned p) {
    switch (p) {
        case 2: return 5;
        case 3: return 3;
        case 5: return 2;
        default: return p <= 31 ? 1 : 0;
    }
}

std::vector<SparsePoly> solved_prefix(unsigned p, PolyKind kind, unsigned count) {
    require_prime(p);
    Cache& c = cache();
    {
        std::shared_lock lock(c.mutex);
        auto it = c.solved.find({p, kind});
        if (it != c.solved.end() && it->second.components.size() >= count)
            return {it->second.components.begin(), it->second.components.begin() + count};
    }
    std::unique_lock lock(c.mutex);
    SolveState& st = c.solved[{p, kind}];
    while (st.components.size() < count) extend(st, p, target_for(p, kind, static_cast<unsigned>(st.components.size())));
    return {st.components.begin(), st.components.begin() + count};
}

void check_level(unsigned p, unsigned level) {
    if (level > level_limit(p))
        throw CapabilityError("universal polynomials for p=" + std::to_string(p) + " are limited to level " +
                              std::to_string(level_limit(p)) + " (requested " + std::to_string(level) + ")");
    if (level + 2 > kMaxSlots) throw CapabilityError("level exceeds the supported number of Witt slots");
}

}  // namespace

std::string to_string(PolyKind kind) {
    switch (kind) {
        case PolyKind::Sum: return "sum";
        case PolyKind::Product: return "product";
        case PolyKind::Neg: return "neg";
        case PolyKind::Frobenius: return "frobenius";
        case PolyKind::F: return "f";
    }
    return "?";
}

PolyKind parse_poly_kind(std::string_view name) {
    for (PolyKind k : {PolyKind::Sum, PolyKind::Product, PolyKind::Neg, PolyKind::Frobenius, PolyKind::F})
        if (to_string(k) == name) return k;
    throw UsageError("unknown polynomial kind '" + std::string(name) + "' (sum|product|neg|frobenius|f)");
}

SparsePoly ghost_poly(unsigned p, unsigned i, Series series) {
    if (i >= kMaxSlots) throw CapabilityError("ghost level exceeds the supported number of Witt slots");
    SparsePoly out;
    Integer pj = 1;
    for (unsigned j = 0; j <= i; ++j) {
        out = out + var(series, j).pow(upow(p, i - j)).scaled(pj);
        pj *= p;
    }
    return out;
}

SparsePoly ghost_of(unsigned p, unsigned i, const std::vector<SparsePoly>& components) {
    if (components.size() <= i) throw UsageError("ghost_of needs components 0.." + std::to_string(i));
    SparsePoly out;
    Integer pj = 1;
    for (unsigned j = 0; j <= i; ++j) {
        out = out + components[j].pow(upow(p, i - j)).scaled(pj);
        pj *= p;
    }
    return out;
}

std::vector<SparsePoly> ghost_solve(unsigned p, const std::vector<SparsePoly>& targets) {
    require_prime(p);
    SolveState st;
    for (const auto& g : targets) extend(st, p, g);
    return st.components;
}

unsigned level_limit(unsigned p) {
    Cache& c = cache();
    std::shared_lock lock(c.mutex);
    auto it = c.limits.find(p);
    return it == c.limits.end() ? default_limit(p) : it->second;
}

void set_level_limit(unsigned p, unsigned level) {
    Cache& c = cache();
    std::unique_lock lock(c.mutex);
    c.limits[p] = level;
}

std::vector<SparsePoly> sum_polys(unsigned p, unsigned n) {
    check_level(p, n);
    return solved_prefix(p, PolyKind::Sum, n + 1);
}

std::vector<SparsePoly> product_polys(unsigned p, unsigned n) {
    check_level(p, n);
    return solved_prefix(p, PolyKind::Product, n + 1);
}

std::vector<SparsePoly> neg_polys(unsigned p, unsigned n) {
    check_level(p, n);
    return solved_prefix(p, PolyKind::Neg, n + 1);
}

std::vector<SparsePoly> frobenius_polys(unsigned p, unsigned n) {
    if (n == 0) throw UsageError("frobenius_polys needs n >= 1");
    check_level(p, n - 1);
    return solved_prefix(p, PolyKind::Frobenius, n);
}

SparsePoly f_poly(unsigned p, unsigned i) {
    check_level(p, i);
    Cache& c = cache();
    {
        std::shared_lock lock(c.mutex);
        auto it = c.f_polys.find({p, i});
        if (it != c.f_polys.end()) return it->second;
    }
    const SparsePoly Fi = frobenius_polys(p, i + 1)[i];
    SparsePoly rest = Fi - var(Series::X, i).pow(p) - var(Series::X, i + 1).scaled(p);
    auto f = rest.divide_exact(p);
    if (!f) throw InternalError("F_" + std::to_string(i) + " - x_i^p - p x_{i+1} is not divisible by p");
    if (f->max_slot(Series::X) > static_cast<int>(i) || f->max_slot(Series::Y) >= 0)
        throw InternalError("f_{p^" + std::to_string(i) + "} depends on a slot beyond " + std::to_string(i));
    std::unique_lock lock(c.mutex);
    return c.f_polys.emplace(std::make_pair(p, i), std::move(*f)).first->second;
}

SparsePoly universal_poly(unsigned p, PolyKind kind, unsigned level) {
    switch (kind) {
        case PolyKind::Sum: return sum_polys(p, level)[level];
        case PolyKind::Product: return product_polys(p, level)[level];
        case PolyKind::Neg: return neg_polys(p, level)[level];
        case PolyKind::Frobenius: return frobenius_polys(p, level + 1)[level];
        case PolyKind::F: return f_poly(p, level);
    }
    throw InternalError("unknown polynomial kind");
}

void clear_universal_cache() {
    Cache& c = cache();
    std::unique_lock lock(c.mutex);
    c.solved.clear();
    c.f_polys.clear();
}

bool FPolyReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

SparsePoly reduce_for_ideal_check(const SparsePoly& f) {
    std::array<std::optional<SparsePoly>, 2 * kMaxSlots> images;
    images[index_of({Series::X, 0})] = SparsePoly{};
    images[index_of({Series::X, 2})] = var(Series::X, 1).pow(2);
    for (unsigned j = 3; j < kMaxSlots; ++j) images[index_of({Series::X, j})] = SparsePoly{};
    return f.mod_coefficients(2).substitute(images).mod_coefficients(2);
}

FPolyReport f_poly_report(unsigned p, unsigned max_level) {
    require_prime(p);
    if (max_level < 1) throw UsageError("f_poly_report needs max_level >= 1");
    FPolyReport report{p, max_level, {}};
    const Integer P = p;
    auto add = [&](char part, unsigned level, bool ok, std::string detail) {
        report.checks.push_back({part, level, ok, std::move(detail)});
    };
    for (unsigned i = 0; i <= max_level; ++i) {
        const SparsePoly f = f_poly(p, i);
        const SparsePoly Fi = frobenius_polys(p, i + 1)[i];
        const Integer weight = ipow(P, i + 1);
        bool homogeneous = f.weighted_degree_check(p, weight);
        bool slots_ok = f.max_slot(Series::X) <= static_cast<int>(i) && f.max_slot(Series::Y) < 0;
        bool congruent = (Fi - var(Series::X, i).pow(p)).divide_exact(P).has_value();
        add('a', i, homogeneous && slots_ok && congruent,
            std::to_string(f.size()) + " terms, weight " + weight.get_str(10) + (homogeneous ? "" : ", not homogeneous") +
                (slots_ok ? "" : ", depends on a later slot") + (congruent ? "" : ", F_i differs from x_i^p mod p"));
        if (i >= 1) {
            Integer c = f.coefficient_of(make_monomial({{{Series::X, 0}, static_cast<unsigned>(upow(p, i + 1))}}));
            add('b', i, c == 0, "coefficient of x0^" + std::to_string(upow(p, i + 1)) + " is " + c.get_str(10));
        }
        if (i >= 2) {
            Integer c = f.coefficient_of(make_monomial({{{Series::X, 1}, static_cast<unsigned>(upow(p, i))}}));
            add('c', i, divides(P, c), "coefficient of x1^" + std::to_string(upow(p, i)) + " is " + c.get_str(10));
        }
        if (i == 1) {
            Integer c = f.coefficient_of(make_monomial({{{Series::X, 1}, p}}));
            Integer expected = -ipow(P, p - 2);
            add('d', i, mod_floor(c - expected, P) == 0,
                "coefficient of x1^" + std::to_string(p) + " is " + c.get_str(10) + ", expected " +
                    mod_floor(expected, P).get_str(10) + " mod " + std::to_string(p));
        }
        if (p == 2 && i >= 2) {
            SparsePoly r = reduce_for_ideal_check(f);
            add('e', i, r.is_zero(), r.is_zero() ? "reduces to 0" : "reduces to " + r.to_string());
        }
    }
    return report;
}

}  // namespace witt
