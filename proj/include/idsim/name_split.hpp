#pragma once

#include <string>
#include <vector>

namespace idsim {

// Soft-word decomposition of an identifier name.
struct NameTokenization {
    std::string original;
    std::vector<std::string> tokens;  // lowercase soft words, in order
    bool had_separators = false;      // '_' or '$' present in the original
};

// Splits an identifier into soft words: on '_' and '$', on lower-to-upper
// camel boundaries, on upper-run-to-lower boundaries ("HTTPServer" ->
// ["http","server"]) and on letter/digit boundaries. Tokens are lowercased.
// A name consisting only of separators yields the raw name as its one token.
NameTokenization split_name(const std::string& name);

// Soft words of arbitrary source text (type strings, expressions): every
// maximal alphanumeric run is split with the same rules as split_name.
std::vector<std::string> tokenize_text(const std::string& text);

// Lowercased name with '_' and '$' removed.
std::string normalize_name(const std::string& name);

std::string to_lower(std::string s);

}  // namespace idsim
