#pragma once

#include <optional>
#include <string>

#include "idsim/classify.hpp"
#include "idsim/exec.hpp"
#include "idsim/pairing.hpp"
#include "idsim/report.hpp"
#include "idsim/scan.hpp"

namespace idsim {

enum class ReportFormat { Json, Csv, Markdown };

const char* to_string(ReportFormat format);
std::optional<ReportFormat> report_format_from_string(const std::string& text);

// Everything the subcommands can tune, with the shipped defaults.
struct ToolConfig {
    ScanConfig scan;
    PairConfig pair;
    ClassifyConfig classify;
    std::optional<std::string> dictionary_path;  // extra abbreviation entries
    std::optional<std::string> registry_path;    // extra type hierarchy entries
    SampleSpec sample;
    ReportFormat format = ReportFormat::Json;
    ExecutionPolicy exec;
};

// Throws std::runtime_error naming the first violated invariant: similarity
// thresholds and abbreviation ratios in (0, 1], parse-failure threshold in
// [0, 1], block caps >= 1, threads >= 0.
void validate_config(const ToolConfig& config);

// Reads a JSON object of optional keys over `base` (typically the defaults).
// Unknown keys, wrong types, and invariant violations all throw
// std::runtime_error. Callers apply command-line flags afterwards, so flags
// win over the file.
ToolConfig load_tool_config(const std::string& path, ToolConfig base = {});

}  // namespace idsim
