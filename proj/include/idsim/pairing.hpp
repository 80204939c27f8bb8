#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idsim/exec.hpp"
#include "idsim/record.hpp"
#include "idsim/type_registry.hpp"

namespace idsim {

// How close two identifiers sit in the source, from narrowest to widest.
enum class ScopeRel {
    SameMethod,
    SameClass,
    SameFile,
    CrossFile,
};

const char* to_string(ScopeRel rel);

struct PairConfig {
    // Same-enclosing-method blocks larger than this are truncated to the
    // first entries in canonical record order (with a warning).
    std::size_t max_method_identifiers = 200;
    // Same cap for same-declared-type-within-file blocks.
    std::size_t max_block_identifiers = 256;
};

// A candidate pair of identifiers plus the cheap features every detector
// reads. left/right are indices into the canonically sorted record vector,
// with left < right.
struct CandidatePair {
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    ScopeRel scope_relation = ScopeRel::CrossFile;
    double lexical_similarity = 0.0;
    TypeRel type_relation = TypeRel::Unknown;
    // Present when both names strip to the same numeric-suffix stem
    // (normalized) and both carry a numeric suffix.
    std::optional<std::string> shared_stem;

    bool operator==(const CandidatePair&) const = default;
};

struct PairingOutcome {
    std::vector<CandidatePair> pairs;  // sorted by (left, right), no duplicates
    std::vector<std::string> warnings;
};

// 1 - levenshtein(a, b) / max(len(a), len(b)) over normalized names;
// 1.0 when both are equal.
double lexical_similarity(const std::string& a_normalized, const std::string& b_normalized);

ScopeRel scope_relation(const IdentifierRecord& a, const IdentifierRecord& b);

// Blocked candidate generation: a pair is emitted when the two records share
// a normalized full name, share a first or final soft word, sit in the same
// enclosing method, or share a declared type (erased) within one file.
// Records must already be canonically sorted.
PairingOutcome generate_candidate_pairs(const std::vector<IdentifierRecord>& records,
                                        const TypeRegistry& registry,
                                        const PairConfig& config = {},
                                        const ExecutionPolicy& policy = {});

// Serial reference implementation; generate_candidate_pairs must produce an
// identical outcome.
PairingOutcome generate_candidate_pairs_serial(const std::vector<IdentifierRecord>& records,
                                               const TypeRegistry& registry,
                                               const PairConfig& config = {});

// One JSON object per line: left_id, right_id, left_name, right_name,
// scope_relation, lexical_similarity, type_relation, shared_stem (omitted
// when absent).
std::string pairs_to_jsonl(const std::vector<CandidatePair>& pairs,
                           const std::vector<IdentifierRecord>& records);

}  // namespace idsim
