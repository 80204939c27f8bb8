#pragma once

#include <string>
#include <vector>

#include "idsim/exec.hpp"
#include "idsim/record.hpp"

namespace idsim {

struct ScanConfig {
    std::vector<std::string> exclude_globs;  // matched against root-relative paths
    bool include_tests = false;              // when true, the test heuristics are skipped
    double fail_threshold = 0.10;            // abort when failed/total exceeds this
};

// Glob match over forward-slash paths: '*' matches within a segment,
// '**' matches across segments, '?' matches one non-slash character.
bool glob_match(const std::string& pattern, const std::string& path);

// True iff any path segment equals "test"/"tests" (case-insensitive), the
// file stem ends with "Test"/"Tests"/"IT" (case-sensitive), or an exclusion
// glob matches. Paths are root-relative with forward slashes.
bool is_test_file(const std::string& rel_path, const ScanConfig& config);

struct ScanOutcome {
    IdentifierInventory inventory;
    bool ok = true;
    std::string error;  // set when ok == false
    std::vector<std::string> warnings;
};

// Walks root_path for ".java" files, parses each (in parallel), merges and
// canonically sorts the records. Per-file parse failures are counted and
// skipped; the scan only fails afterwards, when the failed fraction exceeds
// config.fail_threshold, or up front when root_path is missing.
ScanOutcome scan_project(const std::string& root_path, const std::string& project_label,
                         const ScanConfig& config, const ExecutionPolicy& policy = {});

// Serial reference implementation: one file at a time, no thread pool.
// scan_project must produce byte-identical inventories to this.
ScanOutcome scan_project_serial(const std::string& root_path, const std::string& project_label,
                                const ScanConfig& config);

// Lists the root-relative forward-slash paths scan_project would parse,
// sorted; shared by both implementations.
std::vector<std::string> list_scan_files(const std::string& root_path, const ScanConfig& config,
                                         std::string* error);

}  // namespace idsim
