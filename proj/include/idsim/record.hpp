#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idsim {

enum class IdentKind {
    Class,
    Enum,
    EnumConstant,
    Method,
    Parameter,
    Field,
    LocalVariable,
};

const char* to_string(IdentKind kind);
std::optional<IdentKind> ident_kind_from_string(std::string_view s);

// One declared identifier with its extraction metadata.
struct IdentifierRecord {
    std::string record_id;  // content hash of project+file_path+line+column+name
    std::string project;
    std::string file_path;  // relative to the scan root, forward slashes
    std::string name;
    IdentKind kind = IdentKind::LocalVariable;
    std::optional<std::string> declared_type;     // raw source text
    std::optional<std::string> enclosing_class;   // innermost lexical enclosure
    std::optional<std::string> enclosing_method;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::optional<std::string> initializer_literal;  // raw text of a single-literal initializer
    std::optional<std::string> context_expr;  // raw initializer / iterable expression text

    bool operator==(const IdentifierRecord&) const = default;
};

// Canonical record order: (file_path, line, column, name).
bool record_order_less(const IdentifierRecord& a, const IdentifierRecord& b);

std::string compute_record_id(const std::string& project, const std::string& file_path,
                              std::uint32_t line, std::uint32_t column, const std::string& name);

struct IdentifierInventory {
    std::string project;
    std::vector<IdentifierRecord> records;  // canonical order
    std::uint64_t files_scanned = 0;
    std::uint64_t files_failed = 0;
};

// Sorts into canonical order and verifies record_id uniqueness; returns false
// (and names the duplicate) when two records collide.
bool canonicalize_records(std::vector<IdentifierRecord>& records, std::string* duplicate_id);

}  // namespace idsim
