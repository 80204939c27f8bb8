#include "idsim/pairing.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "idsim/lexicon.hpp"
#include "idsim/name_split.hpp"
#include "json.hpp"

namespace idsim {

const char* to_string(ScopeRel rel) {
    switch (rel) {
        case ScopeRel::SameMethod:
            return "same_method";
        case ScopeRel::SameClass:
            return "same_class";
        case ScopeRel::SameFile:
            return "same_file";
        case ScopeRel::CrossFile:
            return "cross_file";
    }
    return "cross_file";
}

double lexical_similarity(const std::string& a, const std::string& b) {
    if (a == b) return 1.0;
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n == 0 || m == 0) return 0.0;
    std::vector<std::size_t> prev(m + 1);
    std::vector<std::size_t> curr(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
        }
        std::swap(prev, curr);
    }
    const std::size_t dist = prev[m];
    const std::size_t max_len = std::max(n, m);
    return 1.0 - static_cast<double>(dist) / static_cast<double>(max_len);
}

ScopeRel scope_relation(const IdentifierRecord& a, const IdentifierRecord& b) {
    if (a.file_path != b.file_path) return ScopeRel::CrossFile;
    const bool same_class = a.enclosing_class.has_value() && b.enclosing_class.has_value() &&
                            *a.enclosing_class == *b.enclosing_class;
    if (same_class && a.enclosing_method.has_value() && b.enclosing_method.has_value() &&
        *a.enclosing_method == *b.enclosing_method) {
        return ScopeRel::SameMethod;
    }
    if (same_class) return ScopeRel::SameClass;
    return ScopeRel::SameFile;
}

namespace {

struct RecordFeatures {
    std::string normalized;
    std::string first_token;
    std::string final_token;
    std::string erased_type;  // empty when declared_type is absent
    std::string stem;         // normalized numeric-suffix stem
    bool has_number = false;
};

RecordFeatures compute_features(const IdentifierRecord& rec) {
    RecordFeatures f;
    NameTokenization split = split_name(rec.name);
    f.normalized = normalize_name(rec.name);
    if (!split.tokens.empty()) {
        f.first_token = split.tokens.front();
        f.final_token = split.tokens.back();
    }
    if (rec.declared_type.has_value()) {
        f.erased_type = erase_generics(*rec.declared_type);
    }
    NumericSuffix suffix = strip_numeric_suffix(rec.name);
    f.stem = normalize_name(suffix.stem);
    f.has_number = suffix.number.has_value();
    return f;
}

std::uint64_t pair_key(std::uint32_t l, std::uint32_t r) {
    return (static_cast<std::uint64_t>(l) << 32) | r;
}

void add_block_pairs(const std::vector<std::uint32_t>& members,
                     std::unordered_set<std::uint64_t>& seen,
                     std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            std::uint32_t l = members[i];
            std::uint32_t r = members[j];
            if (l > r) std::swap(l, r);
            if (seen.insert(pair_key(l, r)).second) {
                out.emplace_back(l, r);
            }
        }
    }
}

PairingOutcome generate_impl(const std::vector<IdentifierRecord>& records,
                             const TypeRegistry& registry, const PairConfig& config,
                             int threads) {
    PairingOutcome outcome;
    const std::size_t n = records.size();
    if (n < 2) return outcome;

    std::vector<RecordFeatures> features(n);
    for (std::size_t i = 0; i < n; ++i) {
        features[i] = compute_features(records[i]);
    }

    // Blocks keyed by name, soft word, enclosing method, and declared type.
    // std::map keeps block iteration order deterministic.
    std::map<std::string, std::vector<std::uint32_t>> name_blocks;
    std::map<std::string, std::vector<std::uint32_t>> token_blocks;
    std::map<std::string, std::vector<std::uint32_t>> method_blocks;
    std::map<std::string, std::vector<std::uint32_t>> type_blocks;
    constexpr char kSep = '\x1f';

    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::uint32_t>(i);
        const IdentifierRecord& rec = records[i];
        const RecordFeatures& f = features[i];
        name_blocks[f.normalized].push_back(idx);
        if (!f.first_token.empty()) {
            token_blocks[f.first_token].push_back(idx);
            if (f.final_token != f.first_token) {
                token_blocks[f.final_token].push_back(idx);
            }
        }
        if (rec.enclosing_method.has_value()) {
            std::string key = rec.file_path;
            key += kSep;
            key += rec.enclosing_class.value_or("");
            key += kSep;
            key += *rec.enclosing_method;
            method_blocks[key].push_back(idx);
        }
        if (!f.erased_type.empty()) {
            std::string key = rec.file_path;
            key += kSep;
            key += f.erased_type;
            type_blocks[key].push_back(idx);
        }
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_list;

    for (const auto& [key, members] : name_blocks) {
        (void)key;
        add_block_pairs(members, seen, pair_list);
    }
    for (const auto& [key, members] : token_blocks) {
        (void)key;
        add_block_pairs(members, seen, pair_list);
    }
    for (auto& [key, members] : method_blocks) {
        if (members.size() > config.max_method_identifiers) {
            std::ostringstream warn;
            std::string pretty = key;
            std::replace(pretty.begin(), pretty.end(), kSep, ':');
            warn << "method block " << pretty << " has " << members.size()
                 << " identifiers; keeping the first " << config.max_method_identifiers;
            outcome.warnings.push_back(warn.str());
            members.resize(config.max_method_identifiers);
        }
        add_block_pairs(members, seen, pair_list);
    }
    for (auto& [key, members] : type_blocks) {
        if (members.size() > config.max_block_identifiers) {
            std::ostringstream warn;
            std::string pretty = key;
            std::replace(pretty.begin(), pretty.end(), kSep, ':');
            warn << "type block " << pretty << " has " << members.size()
                 << " identifiers; keeping the first " << config.max_block_identifiers;
            outcome.warnings.push_back(warn.str());
            members.resize(config.max_block_identifiers);
        }
        add_block_pairs(members, seen, pair_list);
    }

    std::sort(pair_list.begin(), pair_list.end());

    outcome.pairs.resize(pair_list.size());
    const auto total = static_cast<std::int64_t>(pair_list.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (std::int64_t k = 0; k < total; ++k) {
        const auto [l, r] = pair_list[static_cast<std::size_t>(k)];
        const IdentifierRecord& left = records[l];
        const IdentifierRecord& right = records[r];
        const RecordFeatures& fl = features[l];
        const RecordFeatures& fr = features[r];
        CandidatePair pair;
        pair.left = l;
        pair.right = r;
        pair.scope_relation = scope_relation(left, right);
        pair.lexical_similarity = lexical_similarity(fl.normalized, fr.normalized);
        pair.type_relation = type_relation(left.declared_type, right.declared_type, registry);
        if (fl.has_number && fr.has_number && !fl.stem.empty() && fl.stem == fr.stem) {
            pair.shared_stem = fl.stem;
        }
        outcome.pairs[static_cast<std::size_t>(k)] = std::move(pair);
    }
    return outcome;
}

}  // namespace

PairingOutcome generate_candidate_pairs(const std::vector<IdentifierRecord>& records,
                                        const TypeRegistry& registry, const PairConfig& config,
                                        const ExecutionPolicy& policy) {
    int threads = policy.threads;
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    threads = 1;
#endif
    return generate_impl(records, registry, config, threads);
}

PairingOutcome generate_candidate_pairs_serial(const std::vector<IdentifierRecord>& records,
                                               const TypeRegistry& registry,
                                               const PairConfig& config) {
    return generate_impl(records, registry, config, 1);
}

std::string pairs_to_jsonl(const std::vector<CandidatePair>& pairs,
                           const std::vector<IdentifierRecord>& records) {
    std::string out;
    for (const CandidatePair& pair : pairs) {
        nlohmann::ordered_json line;
        line["left_id"] = records[pair.left].record_id;
        line["right_id"] = records[pair.right].record_id;
        line["left_name"] = records[pair.left].name;
        line["right_name"] = records[pair.right].name;
        line["scope_relation"] = to_string(pair.scope_relation);
        line["lexical_similarity"] = pair.lexical_similarity;
        line["type_relation"] = to_string(pair.type_relation);
        if (pair.shared_stem.has_value()) {
            line["shared_stem"] = *pair.shared_stem;
        }
        out += line.dump();
        out += '\n';
    }
    return out;
}

}  // namespace idsim
