#include "idsim/lexicon.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "idsim/name_split.hpp"
#include "json.hpp"

namespace idsim {

namespace {

const char* const kBuiltinEntries[][2] = {
    {"abbr", "abbreviation"}, {"addr", "address"},       {"arg", "argument"},
    {"attr", "attribute"},    {"auth", "authentication"},{"buf", "buffer"},
    {"calc", "calculation"},  {"cfg", "config"},         {"cfg", "configuration"},
    {"clz", "class"},         {"clz", "clazz"},          {"cmd", "command"},
    {"cnt", "count"},         {"col", "column"},         {"config", "configuration"},
    {"conn", "connection"},   {"coord", "coordinate"},   {"ctor", "constructor"},
    {"ctx", "context"},       {"cur", "current"},        {"curr", "current"},
    {"cust", "customer"},     {"db", "database"},        {"def", "default"},
    {"del", "delete"},        {"desc", "description"},   {"dest", "destination"},
    {"dir", "directory"},     {"doc", "document"},       {"dst", "destination"},
    {"elem", "element"},      {"env", "environment"},    {"err", "error"},
    {"ex", "exception"},      {"exc", "exception"},      {"expr", "expression"},
    {"fmt", "format"},        {"fn", "function"},        {"func", "function"},
    {"gen", "generator"},     {"hdr", "header"},         {"idx", "index"},
    {"img", "image"},         {"impl", "implementation"},{"info", "information"},
    {"init", "initialize"},   {"len", "length"},         {"lib", "library"},
    {"loc", "location"},      {"log", "logger"},         {"max", "maximum"},
    {"mgr", "manager"},       {"min", "minimum"},        {"mod", "module"},
    {"msg", "message"},       {"num", "number"},         {"obj", "object"},
    {"op", "operation"},      {"opt", "option"},         {"param", "parameter"},
    {"pkg", "package"},       {"pos", "position"},       {"pref", "preference"},
    {"prev", "previous"},     {"proc", "process"},       {"prop", "property"},
    {"pwd", "password"},      {"qty", "quantity"},       {"recv", "receive"},
    {"ref", "reference"},     {"repo", "repository"},    {"req", "request"},
    {"res", "resource"},      {"res", "result"},         {"resp", "response"},
    {"seq", "sequence"},      {"sess", "session"},       {"spec", "specification"},
    {"src", "source"},        {"stmt", "statement"},     {"str", "string"},
    {"sync", "synchronize"},  {"sys", "system"},         {"tbl", "table"},
    {"temp", "temporary"},    {"tmp", "temporary"},      {"tx", "transaction"},
    {"txn", "transaction"},   {"util", "utility"},       {"val", "value"},
    {"var", "variable"},      {"vec", "vector"},         {"win", "window"},
};

bool is_subsequence(const std::string& needle, const std::string& hay) {
    std::size_t i = 0;
    for (char c : hay) {
        if (i < needle.size() && needle[i] == c) ++i;
    }
    return i == needle.size();
}

}  // namespace

AbbreviationDictionary AbbreviationDictionary::builtin() {
    AbbreviationDictionary dict;
    for (const auto& entry : kBuiltinEntries) dict.add(entry[0], entry[1]);
    return dict;
}

AbbreviationDictionary AbbreviationDictionary::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open abbreviation dictionary: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed abbreviation dictionary " + path + ": " + e.what());
    }
    if (!doc.is_object())
        throw std::runtime_error("abbreviation dictionary " + path + ": top level must be an object");
    AbbreviationDictionary dict;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_array())
            throw std::runtime_error("abbreviation dictionary " + path + ": entry \"" + key +
                                     "\" must map to an array of long forms");
        for (const auto& lf : value) {
            if (!lf.is_string())
                throw std::runtime_error("abbreviation dictionary " + path + ": entry \"" + key +
                                         "\" has a non-string long form");
            dict.add(key, lf.get<std::string>());
        }
    }
    return dict;
}

void AbbreviationDictionary::add(const std::string& short_form, const std::string& long_form) {
    const std::string s = to_lower(short_form);
    const std::string l = to_lower(long_form);
    if (s.empty() || l.empty() || s.size() >= l.size())
        throw std::runtime_error("abbreviation entry \"" + short_form + "\" -> \"" + long_form +
                                 "\": short form must be non-empty and strictly shorter");
    entries_[s].insert(l);
}

void AbbreviationDictionary::merge(const AbbreviationDictionary& other) {
    for (const auto& [s, longs] : other.entries_) entries_[s].insert(longs.begin(), longs.end());
}

bool AbbreviationDictionary::maps(const std::string& short_form, const std::string& long_form) const {
    auto it = entries_.find(to_lower(short_form));
    return it != entries_.end() && it->second.count(to_lower(long_form)) > 0;
}

std::size_t AbbreviationDictionary::size() const {
    std::size_t n = 0;
    for (const auto& [s, longs] : entries_) n += longs.size();
    return n;
}

bool is_abbreviation_of(const std::string& short_name, const std::string& long_name,
                        const AbbreviationDictionary& dict, const AbbrevConfig& cfg) {
    if (short_name.empty() || long_name.empty()) return false;
    const std::string s = to_lower(short_name);
    const std::string l = to_lower(long_name);
    if (s.size() >= l.size()) return false;
    if (dict.maps(s, l)) return true;
    const double ratio = static_cast<double>(s.size()) / static_cast<double>(l.size());
    if (l.compare(0, s.size(), s) == 0 && ratio <= cfg.prefix_ratio) return true;
    if (s[0] == l[0] && ratio <= cfg.subseq_ratio && is_subsequence(s, l)) return true;
    return false;
}

bool abbreviation_related(const std::string& a, const std::string& b,
                          const AbbreviationDictionary& dict, const AbbrevConfig& cfg) {
    return is_abbreviation_of(a, b, dict, cfg) || is_abbreviation_of(b, a, dict, cfg);
}

bool is_acronym_of(const std::string& name, const std::vector<std::string>& phrase_tokens) {
    if (phrase_tokens.size() < 2) return false;
    std::string initials;
    initials.reserve(phrase_tokens.size());
    for (const auto& tok : phrase_tokens) {
        if (tok.empty()) return false;
        initials.push_back(tok[0]);
    }
    return to_lower(name) == initials;
}

NumericSuffix strip_numeric_suffix(const std::string& name) {
    std::size_t end = name.size();
    std::size_t begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(name[begin - 1]))) --begin;
    if (begin == end || begin == 0) return {name, std::nullopt};  // no digits, or all digits

    const std::string digits = name.substr(begin);
    std::size_t stem_end = begin;
    if (stem_end > 1 && name[stem_end - 1] == '_') --stem_end;  // optional '_' before the run
    if (stem_end == 0) return {name, std::nullopt};

    errno = 0;
    char* parse_end = nullptr;
    const long long value = std::strtoll(digits.c_str(), &parse_end, 10);
    if (errno == ERANGE || parse_end == digits.c_str() || *parse_end != '\0')
        return {name, std::nullopt};
    return {name.substr(0, stem_end), value};
}

bool is_plural_of(const std::string& singular, const std::string& plural) {
    const auto st = split_name(singular).tokens;
    const auto pt = split_name(plural).tokens;
    if (st.empty() || pt.empty() || st.size() != pt.size()) return false;
    for (std::size_t i = 0; i + 1 < st.size(); ++i)
        if (st[i] != pt[i]) return false;
    const std::string& s = st.back();
    const std::string& p = pt.back();
    if (p == s + "s" || p == s + "es") return true;
    if (s.size() > 1 && s.back() == 'y' && p == s.substr(0, s.size() - 1) + "ies") return true;
    return false;
}

TemporaryAffix has_temporary_affix(const std::string& name) {
    const auto tokens = split_name(name).tokens;
    std::string stripped;
    bool found = false;
    for (const auto& tok : tokens) {
        if (!found && (tok == "tmp" || tok == "temp" || tok == "temporary")) {
            found = true;
            continue;
        }
        stripped += tok;
    }
    if (!found) return {false, normalize_name(name)};
    return {true, stripped};
}

}  // namespace idsim
