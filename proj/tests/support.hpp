#pragma once

#include <random>

#include "witt/witt_vector.hpp"

namespace witt::testing {

inline WittVector random_witt(std::mt19937_64& rng, unsigned p, const RingPtr& R, std::size_t length,
                              const SampleOptions& opts = {}) {
    std::vector<RingElement> c;
    for (std::size_t i = 0; i < length; ++i) c.push_back(R->sample(rng, opts));
    return WittVector(p, R, std::move(c));
}

inline WittVector witt_of(unsigned p, const RingPtr& R, std::initializer_list<const char*> literals) {
    std::vector<RingElement> c;
    for (const char* l : literals) c.push_back(R->parse_element(l));
    return WittVector(p, R, std::move(c));
}

inline WittVector witt_sum(const std::vector<WittVector>& terms) {
    WittVector acc = WittVector::zero(terms.front().prime(), terms.front().ring(), terms.front().length());
    for (const auto& t : terms) acc = witt_add(acc, t);
    return acc;
}

}  // namespace witt::testing
