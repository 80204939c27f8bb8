#include "idsim/jsonl.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace idsim {

namespace {

using ordered_json = nlohmann::ordered_json;

void put_optional(ordered_json& row, const char* key, const std::optional<std::string>& value) {
    if (value) row[key] = *value;
}

std::optional<std::string> get_optional(const ordered_json& row, const char* key) {
    if (!row.contains(key)) return std::nullopt;
    return row.at(key).get<std::string>();
}

ordered_json parse_line(const std::string& line, std::size_t line_number) {
    ordered_json value;
    try {
        value = ordered_json::parse(line);
    } catch (const std::exception& e) {
        throw JsonlError(line_number, std::string("invalid json: ") + e.what());
    }
    if (!value.is_object()) throw JsonlError(line_number, "expected a json object");
    return value;
}

// Visits every non-empty line with its 1-based number.
template <typename Fn>
void for_each_line(const std::string& text, Fn&& fn) {
    std::size_t start = 0;
    std::size_t line_number = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        ++line_number;
        if (end > start) fn(text.substr(start, end - start), line_number);
        if (end == text.size()) break;
        start = end + 1;
    }
}

std::optional<Confidence> confidence_from_string(const std::string& s) {
    if (s == "high") return Confidence::High;
    if (s == "medium") return Confidence::Medium;
    if (s == "low") return Confidence::Low;
    return std::nullopt;
}

}  // namespace

std::string inventory_to_jsonl(const IdentifierInventory& inventory) {
    std::string out;
    {
        ordered_json header;
        header["project"] = inventory.project;
        header["files_scanned"] = inventory.files_scanned;
        header["files_failed"] = inventory.files_failed;
        out += header.dump();
        out += '\n';
    }
    for (const auto& record : inventory.records) {
        ordered_json row;
        row["record_id"] = record.record_id;
        row["project"] = record.project;
        row["file_path"] = record.file_path;
        row["name"] = record.name;
        row["kind"] = to_string(record.kind);
        row["line"] = record.line;
        row["column"] = record.column;
        put_optional(row, "declared_type", record.declared_type);
        put_optional(row, "enclosing_class", record.enclosing_class);
        put_optional(row, "enclosing_method", record.enclosing_method);
        put_optional(row, "initializer_literal", record.initializer_literal);
        put_optional(row, "context_expr", record.context_expr);
        out += row.dump();
        out += '\n';
    }
    return out;
}

IdentifierInventory inventory_from_jsonl(const std::string& text) {
    IdentifierInventory inventory;
    bool saw_header = false;
    for_each_line(text, [&](const std::string& line, std::size_t line_number) {
        const auto row = parse_line(line, line_number);
        if (!saw_header) {
            saw_header = true;
            try {
                inventory.project = row.at("project").get<std::string>();
                inventory.files_scanned = row.at("files_scanned").get<std::uint64_t>();
                inventory.files_failed = row.at("files_failed").get<std::uint64_t>();
            } catch (const ordered_json::exception& e) {
                throw JsonlError(line_number, std::string("bad inventory header: ") + e.what());
            }
            return;
        }
        IdentifierRecord record;
        try {
            record.record_id = row.at("record_id").get<std::string>();
            record.project = row.at("project").get<std::string>();
            record.file_path = row.at("file_path").get<std::string>();
            record.name = row.at("name").get<std::string>();
            const auto kind_text = row.at("kind").get<std::string>();
            const auto kind = ident_kind_from_string(kind_text);
            if (!kind) throw JsonlError(line_number, "unknown identifier kind '" + kind_text + "'");
            record.kind = *kind;
            record.line = row.at("line").get<std::uint32_t>();
            record.column = row.at("column").get<std::uint32_t>();
            record.declared_type = get_optional(row, "declared_type");
            record.enclosing_class = get_optional(row, "enclosing_class");
            record.enclosing_method = get_optional(row, "enclosing_method");
            record.initializer_literal = get_optional(row, "initializer_literal");
            record.context_expr = get_optional(row, "context_expr");
        } catch (const ordered_json::exception& e) {
            throw JsonlError(line_number, std::string("bad identifier record: ") + e.what());
        }
        inventory.records.push_back(std::move(record));
    });
    if (!saw_header) throw JsonlError(1, "missing inventory header line");
    return inventory;
}

std::vector<CategoryLabel> labels_from_jsonl(const std::string& text,
                                             const std::vector<IdentifierRecord>& records) {
    std::unordered_map<std::string, std::uint32_t> index_of;
    index_of.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        index_of.emplace(records[i].record_id, static_cast<std::uint32_t>(i));
    }

    std::vector<CategoryLabel> labels;
    for_each_line(text, [&](const std::string& line, std::size_t line_number) {
        const auto row = parse_line(line, line_number);
        CategoryLabel label;
        try {
            const auto left_id = row.at("left_id").get<std::string>();
            const auto right_id = row.at("right_id").get<std::string>();
            const auto left = index_of.find(left_id);
            if (left == index_of.end()) {
                throw JsonlError(line_number,
                                 "label references unknown identifier '" + left_id + "'");
            }
            const auto right = index_of.find(right_id);
            if (right == index_of.end()) {
                throw JsonlError(line_number,
                                 "label references unknown identifier '" + right_id + "'");
            }
            label.left = left->second;
            label.right = right->second;
            const auto category_text = row.at("category").get<std::string>();
            const auto category = category_from_id(category_text);
            if (!category) {
                throw JsonlError(line_number, "unknown category '" + category_text + "'");
            }
            label.category = *category;
            const auto confidence_text = row.at("confidence").get<std::string>();
            const auto confidence = confidence_from_string(confidence_text);
            if (!confidence) {
                throw JsonlError(line_number, "unknown confidence '" + confidence_text + "'");
            }
            label.confidence = *confidence;
            label.rationale = row.at("rationale").get<std::string>();
            label.needs_review = row.at("needs_review").get<bool>();
        } catch (const ordered_json::exception& e) {
            throw JsonlError(line_number, std::string("bad label: ") + e.what());
        }
        labels.push_back(std::move(label));
    });
    return labels;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("error while reading '" + path + "'");
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

}  // namespace idsim
