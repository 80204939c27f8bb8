#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "idsim/classify.hpp"
#include "idsim/record.hpp"

namespace idsim {

// Parse failure in a JSON Lines stream; the message names the 1-based line.
class JsonlError : public std::runtime_error {
public:
    JsonlError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_number(line) {}

    std::size_t line_number;
};

// First line is an inventory header (project, files_scanned, files_failed);
// each following line is one identifier record. Optional record fields are
// omitted when absent.
std::string inventory_to_jsonl(const IdentifierInventory& inventory);

// Inverse of inventory_to_jsonl; throws JsonlError on malformed lines.
IdentifierInventory inventory_from_jsonl(const std::string& text);

// Parses labels_to_jsonl output back into labels, resolving record ids
// against the inventory. Unknown ids and malformed lines throw JsonlError.
std::vector<CategoryLabel> labels_from_jsonl(const std::string& text,
                                             const std::vector<IdentifierRecord>& records);

// Whole-file helpers shared by the subcommands; both throw std::runtime_error
// with the path in the message.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace idsim
