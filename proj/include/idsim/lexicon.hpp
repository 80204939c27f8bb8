#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace idsim {

// Short form -> known long forms, all lowercase. Every short form is
// strictly shorter than each of its long forms; add() enforces this.
class AbbreviationDictionary {
public:
    // ~55 common source-code short forms (log/logger, conn/connection, ...).
    static AbbreviationDictionary builtin();

    // Loads a JSON object {short: [long, ...]}. Throws std::runtime_error on
    // malformed JSON or an entry violating the length invariant.
    static AbbreviationDictionary load_file(const std::string& path);

    void add(const std::string& short_form, const std::string& long_form);
    void merge(const AbbreviationDictionary& other);

    bool maps(const std::string& short_form, const std::string& long_form) const;
    std::size_t size() const;

private:
    std::map<std::string, std::set<std::string>> entries_;
};

struct AbbrevConfig {
    double prefix_ratio = 0.75;  // max short/long length ratio for the prefix rule
    double subseq_ratio = 0.60;  // max ratio for the first-letter subsequence rule
};

// True iff the dictionary maps short->long, or short is a strict prefix of
// long within the prefix ratio, or short is a subsequence of long sharing its
// first letter within the subsequence ratio. Case-insensitive.
bool is_abbreviation_of(const std::string& short_name, const std::string& long_name,
                        const AbbreviationDictionary& dict, const AbbrevConfig& cfg = {});

// Symmetric pair-level wrapper: tests both directions.
bool abbreviation_related(const std::string& a, const std::string& b,
                          const AbbreviationDictionary& dict, const AbbrevConfig& cfg = {});

// True iff name equals the concatenated initials of phrase_tokens and the
// phrase has at least two tokens.
bool is_acronym_of(const std::string& name, const std::vector<std::string>& phrase_tokens);

struct NumericSuffix {
    std::string stem;
    std::optional<long long> number;
};

// Splits a maximal trailing run of decimal digits (optionally preceded by
// '_'); the stem is never left empty.
NumericSuffix strip_numeric_suffix(const std::string& name);

// True iff plural's final token is singular's final token plus "s"/"es" or
// with "y" -> "ies", and all preceding tokens are equal (case-insensitive).
bool is_plural_of(const std::string& singular, const std::string& plural);

struct TemporaryAffix {
    bool is_temp = false;
    std::string stripped;  // lowercase concatenation of the remaining tokens
};

// True iff any soft word of the name is tmp/temp/temporary.
TemporaryAffix has_temporary_affix(const std::string& name);

}  // namespace idsim
