#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "idsim/exec.hpp"
#include "idsim/lexicon.hpp"
#include "idsim/pairing.hpp"
#include "idsim/record.hpp"
#include "idsim/type_registry.hpp"

namespace idsim {

// The seven similarity categories with their subcategories flattened; the
// parent is derivable from each value. Reports iterate in this order.
enum class Category : std::uint8_t {
    StandardizedRepetitive = 0,
    InconsistentSemantic,
    Colliding,
    TypePolymorphic,
    TypeCardinality,
    DerivTransformation,
    DerivTypeDescriptive,
    DerivTemporary,
    NumericSequential,
    NumericValueEncoded,
    ConciseAbbreviated,
    ConciseAcronym,
    ConciseSingleChar,
};

inline constexpr int kCategoryCount = 13;

// Stable machine id, e.g. "type_polymorphic".
const char* category_id(Category category);
std::optional<Category> category_from_id(const std::string& id);
// Human-readable name, e.g. "Polymorphic".
const char* category_display(Category category);

enum class ParentCategory : std::uint8_t {
    StandardizedRepetitive = 0,
    InconsistentSemantic,
    Colliding,
    TypeBased,
    Derivational,
    NumericallyDistinguished,
    Concise,
};

ParentCategory parent_of(Category category);
const char* parent_display(ParentCategory parent);

enum class Confidence : std::uint8_t {
    High = 0,
    Medium,
    Low,
};

const char* to_string(Confidence confidence);

// One category assignment for a pair of records (indices into the canonical
// record vector, left < right). Low confidence always sets needs_review.
struct CategoryLabel {
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    Category category = Category::StandardizedRepetitive;
    Confidence confidence = Confidence::High;
    std::string rationale;
    bool needs_review = false;

    bool operator==(const CategoryLabel&) const = default;
};

struct ClassifyConfig {
    // Lexical gate shared by the colliding and polymorphic detectors.
    double colliding_threshold = 0.85;
    // Names below this similarity count as "different" for the
    // inconsistent-semantic detector.
    double inconsistent_threshold = 0.5;
    AbbrevConfig abbrev;
};

// Numbered series ("cust1", "cust2", ...) found by a pre-pass over the whole
// inventory: records in one scope sharing a numeric-suffix stem with at least
// two distinct numbers, one shared declared type (or none anywhere), and no
// member whose initializer literal matches its own suffix.
struct SequentialGroups {
    std::unordered_map<std::uint32_t, std::uint32_t> group_of;  // record index -> group id
    std::vector<Confidence> group_confidence;                   // indexed by group id
};

SequentialGroups find_sequential_groups(const std::vector<IdentifierRecord>& records);

// True iff the record's numeric name suffix equals its initializer literal
// parsed as an integer ("COUNT_2 = 2").
bool is_value_encoded(const IdentifierRecord& record);

// All matching labels for one pair, ordered by detector precedence; the
// first is the primary label. An empty result means "not similar". When both
// the colliding and standardized-repetitive detectors fire, colliding wins
// the tie (divergent usage contexts beat name reuse).
std::vector<CategoryLabel> classify_pair(const CandidatePair& pair,
                                         const std::vector<IdentifierRecord>& records,
                                         const SequentialGroups& groups,
                                         const TypeRegistry& registry,
                                         const AbbreviationDictionary& dict,
                                         const ClassifyConfig& config);

struct ClassifyOutcome {
    // Primary label per labeled pair, in pair order.
    std::vector<CategoryLabel> labels;
};

ClassifyOutcome classify_pairs(const std::vector<CandidatePair>& pairs,
                               const std::vector<IdentifierRecord>& records,
                               const TypeRegistry& registry, const AbbreviationDictionary& dict,
                               const ClassifyConfig& config, const ExecutionPolicy& policy = {});

// Serial reference implementation; classify_pairs must match it exactly.
ClassifyOutcome classify_pairs_serial(const std::vector<CandidatePair>& pairs,
                                      const std::vector<IdentifierRecord>& records,
                                      const TypeRegistry& registry,
                                      const AbbreviationDictionary& dict,
                                      const ClassifyConfig& config);

// One JSON object per label: left_id, right_id, category, confidence,
// rationale, needs_review.
std::string labels_to_jsonl(const std::vector<CategoryLabel>& labels,
                            const std::vector<IdentifierRecord>& records);

}  // namespace idsim
