#pragma once

#include <string>
#include <vector>

#include "idsim/config.hpp"
#include "idsim/lexicon.hpp"
#include "idsim/type_registry.hpp"

namespace idsim {

struct AnalyzeOutcome {
    bool ok = true;
    std::string error;  // set when ok == false
    IdentifierInventory inventory;
    std::vector<CandidatePair> pairs;
    std::vector<CategoryLabel> labels;
    ProjectSummary summary;
    std::vector<std::string> warnings;
};

// Builtin abbreviation dictionary plus the configured extension file, if any;
// throws std::runtime_error when the file is malformed.
AbbreviationDictionary build_dictionary(const ToolConfig& config);

// Builtin type hierarchy plus the configured extension file, if any; throws
// std::runtime_error when the file is malformed or introduces a cycle.
TypeRegistry build_registry(const ToolConfig& config);

// scan -> pair -> classify -> summarize over a source tree. Scan failures
// surface as ok == false; an empty tree yields an empty report plus a
// warning.
AnalyzeOutcome run_analyze(const std::string& root, const std::string& project,
                           const ToolConfig& config);

}  // namespace idsim
