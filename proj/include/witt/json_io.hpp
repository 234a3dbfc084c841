// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "json.hpp"
#include "witt/sparse_poly.hpp"
#include "witt/universal.hpp"
#include "witt/witt_vector.hpp"

namespace witt {

using Json = nlohmann::ordered_json;

struct PolyRecord {
    unsigned p = 0;
    PolyKind kind = PolyKind::Sum;
    unsigned level = 0;
    SparsePoly poly;
};

/// {"p", "kind", "level", "terms": [{"coeff": "<decimal>", "monomial": [["X"|"Y", slot, exp], ...]}]}
/// with terms in the polynomial's canonical order.
Json poly_to_json(const PolyRecord& rec);
PolyRecord poly_from_json(const Json& j);

/// {"p", "ring": "<spec>", "components": ["<literal>", ...]}
Json witt_to_json(const WittVector& x);
/// Reads the ring from the "ring" field.
WittVector witt_from_json(const Json& j);
/// Reads components against a known ring and prime; "ring" and "p" are
/// checked when present.
WittVector witt_from_json(const Json& j, const RingPtr& ring, unsigned p);

/// Parses text as JSON, rethrowing syntax errors as ParseError.
Json parse_json(const std::string& text);

}  // namespace witt
