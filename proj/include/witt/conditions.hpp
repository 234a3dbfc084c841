// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "witt/json_io.hpp"
#include "witt/ring.hpp"

namespace witt {

enum class ConditionId {
    Surj,
    Finlev,
    FinlevPrime,
    TeichDense,
    TeichImage,
    TeichImageFin,
    TeichImageFinPrime,
    VImage,
    VImageAll,
    VImageFin2,
    VImageFin,
    Lev1,
    Lev1Prime,
    PInv,
    Spher,
    PthrootsIinf,
    PthrootsIn,
    PthrootsInPrime,
    PrModp2,
    Pmodp2,
    SomePower,
    PthrootsModp,
};

inline constexpr std::size_t kConditionCount = 22;

struct ConditionInfo {
    ConditionId id;
    const char* mnemonic;
    /// Roman numeral of the condition, with a trailing ' for the one-level variants.
    const char* label;
    const char* statement;
};

const std::array<ConditionInfo, kConditionCount>& condition_catalog();
const ConditionInfo& condition_info(ConditionId id);
/// Accepts the mnemonic (e.g. "PR-MODP2", "FINLEV'") or the label (e.g. "xv", "ii'").
std::optional<ConditionId> parse_condition(std::string_view name);

enum class Verdict { Holds, Fails, Unknown };
enum class Method { None, BruteForce, Witness, DerivedByImplication, FixtureAsserted };

std::string to_string(Verdict v);
std::string to_string(Method m);

struct ConditionStatus {
    Verdict verdict = Verdict::Unknown;
    Method method = Method::None;
    /// Witness (Holds), counterexample (Fails) or {"reason": ...} (Unknown).
    Json payload = Json::object();

    static ConditionStatus holds(Method m, Json witness);
    static ConditionStatus fails(Method m, Json counterexample);
    static ConditionStatus unknown(std::string reason);

    bool is_decided() const { return verdict != Verdict::Unknown; }
    friend bool operator==(const ConditionStatus& a, const ConditionStatus& b) {
        return a.verdict == b.verdict && a.method == b.method && a.payload == b.payload;
    }
};

enum class EdgeKind { Single, Bidirectional, Joint };

struct ImplicationEdge {
    std::vector<ConditionId> tails;
    ConditionId head;
    EdgeKind kind;
};

class ImplicationGraph {
public:
    /// The implications among all 22 conditions, including the four
    /// one-level equivalences.
    static const ImplicationGraph& standard();

    explicit ImplicationGraph(std::vector<ImplicationEdge> edges) : edges_(std::move(edges)) {}
    const std::vector<ImplicationEdge>& edges() const { return edges_; }

private:
    std::vector<ImplicationEdge> edges_;
};

struct CheckBudget {
    /// Maximum number of enumerated residues or pairs.
    std::uint64_t residues = kDefaultSearchBudget;
    /// Truncation length for checking V(1) witnesses.
    unsigned witness_depth = 3;
};

/// Decides one condition for (ring, p) where a finite search, a built-in
/// witness or a one-level equivalence settles it; Unknown otherwise.
ConditionStatus check(const RingPtr& ring, unsigned p, ConditionId id, const CheckBudget& budget = {});

/// Re-runs the certificate in a Holds or Fails payload; true for Unknown.
/// Brute-force results are re-checked by repeating the search.
bool recheck(const RingPtr& ring, unsigned p, ConditionId id, const ConditionStatus& status,
             const CheckBudget& budget = {});

using StatusMap = std::map<ConditionId, ConditionStatus>;

struct Contradiction {
    ConditionId condition;
    std::string detail;
};

struct ClosureResult {
    StatusMap statuses;
    std::vector<Contradiction> contradictions;
};

/// Holds flows forward (joint edges need every tail), Fails flows backward
/// along single and bidirectional edges. Conditions absent from the input
/// start as Unknown.
ClosureResult implication_closure(const StatusMap& statuses,
                                  const ImplicationGraph& graph = ImplicationGraph::standard());

struct ConditionReport {
    std::string ring;
    unsigned p = 0;
    StatusMap statuses;
    std::vector<Contradiction> contradictions;

    Json to_json() const;
    std::string to_text() const;
};

/// Runs every checker, overlays the asserted statuses and closes the result.
ConditionReport condition_matrix(const RingPtr& ring, unsigned p, const CheckBudget& budget = {},
                                 const StatusMap& asserted = {});

}  // namespace witt
