#include "idsim/name_split.hpp"

#include <cctype>

namespace idsim {

namespace {

inline bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
inline bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
inline char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Camel/digit split of one alphanumeric run, appending lowercase tokens.
void split_run(const std::string& run, std::vector<std::string>& out) {
    const std::size_t n = run.size();
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const char prev = run[i - 1];
        const char cur = run[i];
        bool boundary = false;
        if (is_lower(prev) && is_upper(cur)) {
            boundary = true;
        } else if (is_digit(prev) != is_digit(cur)) {
            boundary = true;
        } else if (is_upper(prev) && is_upper(cur) && i + 1 < n && is_lower(run[i + 1])) {
            // end of an uppercase run: the last upper starts the next word
            boundary = true;
        }
        if (boundary) {
            std::string tok = run.substr(start, i - start);
            for (char& c : tok) c = lower(c);
            out.push_back(std::move(tok));
            start = i;
        }
    }
    std::string tok = run.substr(start);
    for (char& c : tok) c = lower(c);
    out.push_back(std::move(tok));
}

}  // namespace

NameTokenization split_name(const std::string& name) {
    NameTokenization result;
    result.original = name;
    std::string run;
    for (char c : name) {
        if (c == '_' || c == '$') {
            result.had_separators = true;
            if (!run.empty()) {
                split_run(run, result.tokens);
                run.clear();
            }
        } else {
            run.push_back(c);
        }
    }
    if (!run.empty()) split_run(run, result.tokens);
    if (result.tokens.empty() && !name.empty()) {
        // degenerate all-separator name; keep a non-empty token list
        result.tokens.push_back(to_lower(name));
    }
    return result;
}

std::vector<std::string> tokenize_text(const std::string& text) {
    std::vector<std::string> tokens;
    std::string run;
    for (char c : text) {
        if (is_alnum(c)) {
            run.push_back(c);
        } else if (!run.empty()) {
            split_run(run, tokens);
            run.clear();
        }
    }
    if (!run.empty()) split_run(run, tokens);
    return tokens;
}

std::string normalize_name(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        if (c == '_' || c == '$') continue;
        out.push_back(lower(c));
    }
    return out;
}

std::string to_lower(std::string s) {
    for (char& c : s) c = lower(c);
    return s;
}

}  // namespace idsim
