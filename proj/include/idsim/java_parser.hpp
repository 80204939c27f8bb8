#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "idsim/record.hpp"

namespace idsim {

struct ParseOutcome {
    std::vector<IdentifierRecord> records;  // in declaration order
    bool ok = true;
    std::string error;  // set when ok == false
};

// Parses one Java compilation unit and extracts every declaration of the
// seven identifier kinds. The parser is declaration-level: it recognizes
// type/member/statement structure precisely enough to find declarations
// (including locals in nested blocks, lambda parameters, catch parameters,
// for/try-resource declarations and anonymous-class members) but does not
// build expression trees. Malformed input yields ok == false; the caller
// counts the file as failed and moves on.
//
// file_path is stored verbatim on each record (the caller passes a
// root-relative, forward-slash path). record_id is computed here.
ParseOutcome parse_file(const std::string& file_path, std::string_view source,
                        const std::string& project_label);

}  // namespace idsim
