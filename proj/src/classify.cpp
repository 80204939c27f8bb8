#include "idsim/classify.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "idsim/name_split.hpp"
#include "json.hpp"

namespace idsim {

namespace {

struct CategoryInfo {
    Category value;
    const char* id;
    const char* display;
    ParentCategory parent;
};

constexpr CategoryInfo kCategoryTable[] = {
    {Category::StandardizedRepetitive, "standardized_repetitive", "Standardized Repetitive Names",
     ParentCategory::StandardizedRepetitive},
    {Category::InconsistentSemantic, "inconsistent_semantic", "Inconsistent Semantic Names",
     ParentCategory::InconsistentSemantic},
    {Category::Colliding, "colliding", "Colliding Names", ParentCategory::Colliding},
    {Category::TypePolymorphic, "type_polymorphic", "Polymorphic", ParentCategory::TypeBased},
    {Category::TypeCardinality, "type_cardinality", "Cardinality", ParentCategory::TypeBased},
    {Category::DerivTransformation, "deriv_transformation", "Transformation",
     ParentCategory::Derivational},
    {Category::DerivTypeDescriptive, "deriv_type_descriptive", "Type-Descriptive",
     ParentCategory::Derivational},
    {Category::DerivTemporary, "deriv_temporary", "Temporary", ParentCategory::Derivational},
    {Category::NumericSequential, "numeric_sequential", "Sequential Numeric",
     ParentCategory::NumericallyDistinguished},
    {Category::NumericValueEncoded, "numeric_value_encoded", "Value-Encoded",
     ParentCategory::NumericallyDistinguished},
    {Category::ConciseAbbreviated, "concise_abbreviated", "Abbreviated", ParentCategory::Concise},
    {Category::ConciseAcronym, "concise_acronym", "Acronym", ParentCategory::Concise},
    {Category::ConciseSingleChar, "concise_single_char", "Single-Character",
     ParentCategory::Concise},
};

static_assert(sizeof(kCategoryTable) / sizeof(kCategoryTable[0]) == kCategoryCount);

const CategoryInfo& info_of(Category category) {
    return kCategoryTable[static_cast<std::size_t>(category)];
}

}  // namespace

const char* category_id(Category category) { return info_of(category).id; }

const char* category_display(Category category) { return info_of(category).display; }

ParentCategory parent_of(Category category) { return info_of(category).parent; }

std::optional<Category> category_from_id(const std::string& id) {
    for (const CategoryInfo& info : kCategoryTable) {
        if (id == info.id) return info.value;
    }
    return std::nullopt;
}

const char* parent_display(ParentCategory parent) {
    switch (parent) {
        case ParentCategory::StandardizedRepetitive:
            return "Standardized Repetitive Names";
        case ParentCategory::InconsistentSemantic:
            return "Inconsistent Semantic Names";
        case ParentCategory::Colliding:
            return "Colliding Names";
        case ParentCategory::TypeBased:
            return "Type-Based Variants";
        case ParentCategory::Derivational:
            return "Derivational Variants";
        case ParentCategory::NumericallyDistinguished:
            return "Numerically Distinguished Variants";
        case ParentCategory::Concise:
            return "Concise Variants";
    }
    return "";
}

const char* to_string(Confidence confidence) {
    switch (confidence) {
        case Confidence::High:
            return "high";
        case Confidence::Medium:
            return "medium";
        case Confidence::Low:
            return "low";
    }
    return "low";
}

namespace {

// Integer value of a Java integer literal token ("2", "0x10", "1_000", "2L");
// anything else (floats, strings, booleans) yields nothing.
std::optional<long long> parse_integer_literal(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text) {
        if (c != '_') s.push_back(c);
    }
    if (s.empty()) return std::nullopt;
    if (s.back() == 'l' || s.back() == 'L') s.pop_back();
    if (s.empty()) return std::nullopt;
    const bool hex = s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0;
    if (!hex && s.find_first_of(".eEfFdD") != std::string::npos) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    long long value = std::strtoll(s.c_str(), &end, 0);
    if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
    return value;
}

std::string scope_group_key(const IdentifierRecord& rec, const std::string& stem) {
    std::string key = rec.file_path;
    key += '\x1f';
    key += rec.enclosing_class.has_value() ? "C" + *rec.enclosing_class : "-";
    key += '\x1f';
    key += rec.enclosing_method.has_value() ? "M" + *rec.enclosing_method : "-";
    key += '\x1f';
    key += stem;
    return key;
}

}  // namespace

bool is_value_encoded(const IdentifierRecord& record) {
    if (!record.initializer_literal.has_value()) return false;
    NumericSuffix suffix = strip_numeric_suffix(record.name);
    if (!suffix.number.has_value()) return false;
    std::optional<long long> literal = parse_integer_literal(*record.initializer_literal);
    return literal.has_value() && *literal == *suffix.number;
}

SequentialGroups find_sequential_groups(const std::vector<IdentifierRecord>& records) {
    struct Accum {
        std::vector<std::uint32_t> members;
        std::set<long long> numbers;
        std::set<std::string> present_types;
        bool any_type_absent = false;
        bool any_value_encoded = false;
    };
    std::map<std::string, Accum> groups;

    for (std::size_t i = 0; i < records.size(); ++i) {
        const IdentifierRecord& rec = records[i];
        NumericSuffix suffix = strip_numeric_suffix(rec.name);
        if (!suffix.number.has_value()) continue;
        Accum& acc = groups[scope_group_key(rec, normalize_name(suffix.stem))];
        acc.members.push_back(static_cast<std::uint32_t>(i));
        acc.numbers.insert(*suffix.number);
        if (rec.declared_type.has_value()) {
            acc.present_types.insert(normalize_type(*rec.declared_type));
        } else {
            acc.any_type_absent = true;
        }
        if (is_value_encoded(rec)) acc.any_value_encoded = true;
    }

    SequentialGroups result;
    for (const auto& [key, acc] : groups) {
        (void)key;
        if (acc.members.size() < 2 || acc.numbers.size() < 2) continue;
        if (acc.any_value_encoded) continue;
        Confidence confidence;
        if (!acc.any_type_absent && acc.present_types.size() == 1) {
            confidence = Confidence::High;
        } else if (acc.any_type_absent && acc.present_types.empty()) {
            confidence = Confidence::Medium;
        } else {
            continue;  // mixed or conflicting declared types
        }
        const auto gid = static_cast<std::uint32_t>(result.group_confidence.size());
        result.group_confidence.push_back(confidence);
        for (std::uint32_t member : acc.members) {
            result.group_of.emplace(member, gid);
        }
    }
    return result;
}

namespace {

// Index of the one extra token in `longer` when it equals `shorter` with a
// single insertion; -1 otherwise.
int extra_token_index(const std::vector<std::string>& shorter,
                      const std::vector<std::string>& longer) {
    if (longer.size() != shorter.size() + 1) return -1;
    std::size_t i = 0;
    while (i < shorter.size() && shorter[i] == longer[i]) ++i;
    for (std::size_t j = i; j < shorter.size(); ++j) {
        if (shorter[j] != longer[j + 1]) return -1;
    }
    return static_cast<int>(i);
}

std::set<std::string> context_tokens(const IdentifierRecord& rec) {
    std::set<std::string> tokens;
    if (rec.enclosing_method.has_value()) {
        for (const std::string& tok : split_name(*rec.enclosing_method).tokens) {
            tokens.insert(tok);
        }
    }
    if (rec.context_expr.has_value()) {
        for (const std::string& tok : tokenize_text(*rec.context_expr)) {
            tokens.insert(tok);
        }
    }
    return tokens;
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            return false;
        }
    }
    return true;
}

bool integer_family(const std::optional<std::string>& declared) {
    if (!declared.has_value()) return false;
    static const std::set<std::string> names = {"int",  "long", "short",   "byte",
                                                "Integer", "Long", "Short", "Byte"};
    return names.count(erase_generics(*declared)) != 0;
}

CategoryLabel make_label(const CandidatePair& pair, Category category, Confidence confidence,
                         std::string rationale) {
    CategoryLabel label;
    label.left = pair.left;
    label.right = pair.right;
    label.category = category;
    label.confidence = confidence;
    label.rationale = std::move(rationale);
    label.needs_review = confidence == Confidence::Low;
    return label;
}

}  // namespace

std::vector<CategoryLabel> classify_pair(const CandidatePair& pair,
                                         const std::vector<IdentifierRecord>& records,
                                         const SequentialGroups& groups,
                                         const TypeRegistry& registry,
                                         const AbbreviationDictionary& dict,
                                         const ClassifyConfig& config) {
    const IdentifierRecord& left = records[pair.left];
    const IdentifierRecord& right = records[pair.right];
    const NameTokenization left_split = split_name(left.name);
    const NameTokenization right_split = split_name(right.name);
    const std::string left_norm = normalize_name(left.name);
    const std::string right_norm = normalize_name(right.name);

    std::vector<CategoryLabel> out;
    auto add = [&](Category category, Confidence confidence, std::string rationale) {
        out.push_back(make_label(pair, category, confidence, std::move(rationale)));
    };

    // Value-encoded: both names carry their initializer value as a suffix.
    if (pair.shared_stem.has_value() && is_value_encoded(left) && is_value_encoded(right)) {
        add(Category::NumericValueEncoded, Confidence::High,
            "numeric suffixes equal the initializer literals over stem '" + *pair.shared_stem +
                "'");
    }

    // Sequential: both members of one numbered series.
    {
        auto gl = groups.group_of.find(pair.left);
        auto gr = groups.group_of.find(pair.right);
        if (gl != groups.group_of.end() && gr != groups.group_of.end() &&
            gl->second == gr->second) {
            add(Category::NumericSequential, groups.group_confidence[gl->second],
                "numbered series over stem '" + pair.shared_stem.value_or("") +
                    "' in one scope");
        }
    }

    // Cardinality: singular/plural names, stronger with container types.
    if (is_plural_of(left.name, right.name) || is_plural_of(right.name, left.name)) {
        bool container_rel = pair.type_relation == TypeRel::CollectionOf ||
                             pair.type_relation == TypeRel::ElementOf;
        auto is_container_type = [&](const std::optional<std::string>& declared) {
            if (!declared.has_value()) return false;
            std::string norm = normalize_type(*declared);
            if (norm.size() >= 2 && norm.compare(norm.size() - 2, 2, "[]") == 0) return true;
            return registry.is_collection(erase_generics(norm));
        };
        if (container_rel || is_container_type(left.declared_type) ||
            is_container_type(right.declared_type)) {
            add(Category::TypeCardinality, Confidence::High,
                "singular/plural names with container type evidence");
        } else {
            add(Category::TypeCardinality, Confidence::Medium, "singular/plural names");
        }
    }

    // Polymorphic: same-ish name, subtype-related declared types, shared file
    // locality.
    if (pair.lexical_similarity >= config.colliding_threshold &&
        (pair.type_relation == TypeRel::Subtype || pair.type_relation == TypeRel::Supertype) &&
        pair.scope_relation != ScopeRel::CrossFile) {
        add(Category::TypePolymorphic, Confidence::High,
            "near-identical names with subtype-related declared types");
    }

    // Temporary: one name is the other plus a tmp/temp/temporary soft word.
    bool temporary_fired = false;
    {
        TemporaryAffix lt = has_temporary_affix(left.name);
        TemporaryAffix rt = has_temporary_affix(right.name);
        if (lt.is_temp != rt.is_temp) {
            const TemporaryAffix& affixed = lt.is_temp ? lt : rt;
            const std::string& other = lt.is_temp ? right_norm : left_norm;
            if (!affixed.stripped.empty() && affixed.stripped == other) {
                add(Category::DerivTemporary, Confidence::High,
                    "temporary affix strips to the other name");
                temporary_fired = true;
            }
        }
    }

    // Type-descriptive: the extra token names the longer record's type.
    bool type_descriptive_fired = false;
    int extra_index = -1;
    {
        const bool left_longer = left_split.tokens.size() > right_split.tokens.size();
        const NameTokenization& shorter = left_longer ? right_split : left_split;
        const NameTokenization& longer = left_longer ? left_split : right_split;
        const IdentifierRecord& longer_rec = left_longer ? left : right;
        extra_index = extra_token_index(shorter.tokens, longer.tokens);
        if (extra_index >= 0 && longer_rec.declared_type.has_value()) {
            const std::string& extra = longer.tokens[static_cast<std::size_t>(extra_index)];
            std::vector<std::string> type_tokens =
                split_name(erase_generics(*longer_rec.declared_type)).tokens;
            if (std::find(type_tokens.begin(), type_tokens.end(), extra) != type_tokens.end()) {
                add(Category::DerivTypeDescriptive, Confidence::High,
                    "extra token '" + extra + "' names the declared type");
                type_descriptive_fired = true;
            }
        }
    }

    // Transformation: one extra leading/trailing token within one method,
    // unless a more specific derivational detector already claimed the pair.
    if (!temporary_fired && !type_descriptive_fired && extra_index >= 0 &&
        pair.scope_relation == ScopeRel::SameMethod) {
        const NameTokenization& longer =
            left_split.tokens.size() > right_split.tokens.size() ? left_split : right_split;
        const bool leading = extra_index == 0;
        const bool trailing =
            static_cast<std::size_t>(extra_index) == longer.tokens.size() - 1;
        if (leading || trailing) {
            const std::string& extra = longer.tokens[static_cast<std::size_t>(extra_index)];
            add(Category::DerivTransformation, Confidence::Medium,
                std::string("extra ") + (leading ? "leading" : "trailing") + " token '" + extra +
                    "' within one method");
        }
    }

    // Acronym: initials of the other name or of a declared type.
    {
        bool fired = false;
        std::string rationale;
        if (is_acronym_of(left.name, right_split.tokens)) {
            fired = true;
            rationale = "'" + left.name + "' matches the initials of '" + right.name + "'";
        } else if (is_acronym_of(right.name, left_split.tokens)) {
            fired = true;
            rationale = "'" + right.name + "' matches the initials of '" + left.name + "'";
        } else {
            const IdentifierRecord* sides[2][2] = {{&left, &right}, {&right, &left}};
            for (auto& side : sides) {
                const IdentifierRecord& acro = *side[0];
                const IdentifierRecord& full = *side[1];
                for (const IdentifierRecord* type_source : {side[0], side[1]}) {
                    if (fired || !type_source->declared_type.has_value()) continue;
                    std::string erased = erase_generics(*type_source->declared_type);
                    if (normalize_name(full.name) != normalize_name(erased)) continue;
                    if (is_acronym_of(acro.name, split_name(erased).tokens)) {
                        fired = true;
                        rationale = "'" + acro.name + "' matches the initials of type '" + erased +
                                    "' which '" + full.name + "' names in full";
                    }
                }
            }
        }
        if (fired) add(Category::ConciseAcronym, Confidence::Medium, rationale);
    }

    // Abbreviated: dictionary/prefix/subsequence shortening of final tokens
    // or whole names, gated on compatible types.
    if (pair.type_relation == TypeRel::Identical || pair.type_relation == TypeRel::Subtype ||
        pair.type_relation == TypeRel::Supertype || pair.type_relation == TypeRel::Unknown) {
        const std::string& left_final = left_split.tokens.back();
        const std::string& right_final = right_split.tokens.back();
        std::string short_form;
        std::string long_form;
        if (is_abbreviation_of(left_final, right_final, dict, config.abbrev)) {
            short_form = left_final;
            long_form = right_final;
        } else if (is_abbreviation_of(right_final, left_final, dict, config.abbrev)) {
            short_form = right_final;
            long_form = left_final;
        } else if (is_abbreviation_of(left_norm, right_norm, dict, config.abbrev)) {
            short_form = left_norm;
            long_form = right_norm;
        } else if (is_abbreviation_of(right_norm, left_norm, dict, config.abbrev)) {
            short_form = right_norm;
            long_form = left_norm;
        }
        if (!short_form.empty()) {
            Confidence confidence = pair.type_relation == TypeRel::Identical ? Confidence::High
                                                                             : Confidence::Medium;
            add(Category::ConciseAbbreviated, confidence,
                "'" + short_form + "' abbreviates '" + long_form + "'");
        }
    }

    // Single-character reuse across different types.
    if (left.name.size() == 1 && left.name == right.name &&
        (pair.type_relation == TypeRel::Unrelated || pair.type_relation == TypeRel::Unknown)) {
        const bool loop_index =
            (left.name == "i" || left.name == "j" || left.name == "k") &&
            left.kind == IdentKind::LocalVariable && right.kind == IdentKind::LocalVariable &&
            integer_family(left.declared_type) && integer_family(right.declared_type);
        if (!loop_index) {
            add(Category::ConciseSingleChar, Confidence::Medium,
                "single-letter name '" + left.name + "' reused for different types");
        }
    }

    // Standardized-repetitive and colliding share a boundary: when both fire,
    // divergent usage contexts (colliding) win the tie.
    std::optional<CategoryLabel> standardized;
    if (left_norm == right_norm && pair.scope_relation != ScopeRel::SameMethod &&
        (pair.type_relation == TypeRel::Identical || pair.type_relation == TypeRel::Subtype ||
         pair.type_relation == TypeRel::Supertype)) {
        Confidence confidence =
            pair.type_relation == TypeRel::Identical ? Confidence::High : Confidence::Medium;
        standardized = make_label(pair, Category::StandardizedRepetitive, confidence,
                                  "identical names in separate scopes with matching types");
    }

    std::optional<CategoryLabel> colliding;
    if (pair.lexical_similarity >= config.colliding_threshold) {
        if (pair.type_relation == TypeRel::Unrelated) {
            colliding = make_label(pair, Category::Colliding, Confidence::High,
                                   "near-identical names with unrelated declared types");
        } else if (pair.type_relation == TypeRel::Identical ||
                   pair.type_relation == TypeRel::Unknown) {
            std::set<std::string> left_ctx = context_tokens(left);
            std::set<std::string> right_ctx = context_tokens(right);
            if (!left_ctx.empty() && !right_ctx.empty() && disjoint(left_ctx, right_ctx)) {
                colliding = make_label(pair, Category::Colliding, Confidence::Low,
                                       "near-identical names used in disjoint contexts");
            }
        }
    }

    if (colliding.has_value()) out.push_back(std::move(*colliding));
    if (standardized.has_value()) out.push_back(std::move(*standardized));

    // Inconsistent-semantic: different names, one declared type, near scope.
    if (pair.lexical_similarity < config.inconsistent_threshold &&
        pair.type_relation == TypeRel::Identical &&
        (pair.scope_relation == ScopeRel::SameClass ||
         pair.scope_relation == ScopeRel::SameFile) &&
        !abbreviation_related(left.name, right.name, dict, config.abbrev)) {
        add(Category::InconsistentSemantic, Confidence::Low,
            "different names share a declared type nearby; possible synonyms");
    }

    return out;
}

namespace {

ClassifyOutcome classify_impl(const std::vector<CandidatePair>& pairs,
                              const std::vector<IdentifierRecord>& records,
                              const TypeRegistry& registry, const AbbreviationDictionary& dict,
                              const ClassifyConfig& config, int threads) {
    const SequentialGroups groups = find_sequential_groups(records);
    std::vector<std::optional<CategoryLabel>> primaries(pairs.size());
    const auto total = static_cast<std::int64_t>(pairs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (std::int64_t k = 0; k < total; ++k) {
        std::vector<CategoryLabel> labels =
            classify_pair(pairs[static_cast<std::size_t>(k)], records, groups, registry, dict,
                          config);
        if (!labels.empty()) {
            primaries[static_cast<std::size_t>(k)] = std::move(labels.front());
        }
    }
    ClassifyOutcome outcome;
    for (auto& primary : primaries) {
        if (primary.has_value()) outcome.labels.push_back(std::move(*primary));
    }
    return outcome;
}

}  // namespace

ClassifyOutcome classify_pairs(const std::vector<CandidatePair>& pairs,
                               const std::vector<IdentifierRecord>& records,
                               const TypeRegistry& registry, const AbbreviationDictionary& dict,
                               const ClassifyConfig& config, const ExecutionPolicy& policy) {
    int threads = policy.threads;
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    threads = 1;
#endif
    return classify_impl(pairs, records, registry, dict, config, threads);
}

ClassifyOutcome classify_pairs_serial(const std::vector<CandidatePair>& pairs,
                                      const std::vector<IdentifierRecord>& records,
                                      const TypeRegistry& registry,
                                      const AbbreviationDictionary& dict,
                                      const ClassifyConfig& config) {
    return classify_impl(pairs, records, registry, dict, config, 1);
}

std::string labels_to_jsonl(const std::vector<CategoryLabel>& labels,
                            const std::vector<IdentifierRecord>& records) {
    std::string out;
    for (const CategoryLabel& label : labels) {
        nlohmann::ordered_json line;
        line["left_id"] = records[label.left].record_id;
        line["right_id"] = records[label.right].record_id;
        line["category"] = category_id(label.category);
        line["confidence"] = to_string(label.confidence);
        line["rationale"] = label.rationale;
        line["needs_review"] = label.needs_review;
        out += line.dump();
        out += '\n';
    }
    return out;
}

}  // namespace idsim
