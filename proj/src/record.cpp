#include "idsim/record.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

namespace idsim {

const char* to_string(IdentKind kind) {
    switch (kind) {
        case IdentKind::Class: return "class";
        case IdentKind::Enum: return "enum";
        case IdentKind::EnumConstant: return "enum_constant";
        case IdentKind::Method: return "method";
        case IdentKind::Parameter: return "parameter";
        case IdentKind::Field: return "field";
        case IdentKind::LocalVariable: return "local_variable";
    }
    return "unknown";
}

std::optional<IdentKind> ident_kind_from_string(std::string_view s) {
    if (s == "class") return IdentKind::Class;
    if (s == "enum") return IdentKind::Enum;
    if (s == "enum_constant") return IdentKind::EnumConstant;
    if (s == "method") return IdentKind::Method;
    if (s == "parameter") return IdentKind::Parameter;
    if (s == "field") return IdentKind::Field;
    if (s == "local_variable") return IdentKind::LocalVariable;
    return std::nullopt;
}

bool record_order_less(const IdentifierRecord& a, const IdentifierRecord& b) {
    return std::tie(a.file_path, a.line, a.column, a.name) <
           std::tie(b.file_path, b.line, b.column, b.name);
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::string_view data) {
    for (unsigned char c : data) {
        h ^= c;
        h *= kFnvPrime;
    }
    h ^= 0x1f;  // field separator
    h *= kFnvPrime;
}

}  // namespace

std::string compute_record_id(const std::string& project, const std::string& file_path,
                              std::uint32_t line, std::uint32_t column, const std::string& name) {
    std::uint64_t h = kFnvOffset;
    fnv_mix(h, project);
    fnv_mix(h, file_path);
    fnv_mix(h, std::to_string(line));
    fnv_mix(h, std::to_string(column));
    fnv_mix(h, name);
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

bool canonicalize_records(std::vector<IdentifierRecord>& records, std::string* duplicate_id) {
    std::sort(records.begin(), records.end(), record_order_less);
    std::unordered_set<std::string> seen;
    seen.reserve(records.size());
    for (const auto& rec : records) {
        if (!seen.insert(rec.record_id).second) {
            if (duplicate_id) *duplicate_id = rec.record_id;
            return false;
        }
    }
    return true;
}

}  // namespace idsim
