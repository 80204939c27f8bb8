#include "idsim/scan.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "idsim/java_parser.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;

namespace idsim {

namespace {

bool glob_match_impl(const char* p, const char* s) {
    while (*p) {
        if (p[0] == '*' && p[1] == '*') {
            const char* rest = p + 2;
            if (*rest == '/') ++rest;  // "**/" also matches zero segments
            for (const char* t = s;; ++t) {
                if (glob_match_impl(rest, t)) return true;
                if (!*t) break;
            }
            return false;
        }
        if (*p == '*') {
            for (const char* t = s;; ++t) {
                if (glob_match_impl(p + 1, t)) return true;
                if (!*t || *t == '/') break;
            }
            return false;
        }
        if (*p == '?') {
            if (!*s || *s == '/') return false;
            ++p;
            ++s;
            continue;
        }
        if (*p != *s) return false;
        ++p;
        ++s;
    }
    return *s == '\0';
}

std::string lower_ascii(std::string v) {
    for (char& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return v;
}

bool read_file(const fs::path& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    if (in.bad()) return false;
    // strip a UTF-8 byte-order mark so it never reaches the lexer
    if (out.size() >= 3 && static_cast<unsigned char>(out[0]) == 0xEF &&
        static_cast<unsigned char>(out[1]) == 0xBB && static_cast<unsigned char>(out[2]) == 0xBF) {
        out.erase(0, 3);
    }
    return true;
}

struct FileResult {
    bool failed = false;
    std::string warning;
    std::vector<IdentifierRecord> records;
};

FileResult process_file(const fs::path& root, const std::string& rel_path,
                        const std::string& project_label) {
    FileResult result;
    std::string source;
    if (!read_file(root / fs::path(rel_path), source)) {
        result.failed = true;
        result.warning = "could not read " + rel_path;
        return result;
    }
    ParseOutcome parsed = parse_file(rel_path, source, project_label);
    if (!parsed.ok) {
        result.failed = true;
        result.warning = "failed to parse " + rel_path + ": " + parsed.error;
        return result;
    }
    result.records = std::move(parsed.records);
    return result;
}

ScanOutcome assemble(const std::string& project_label, std::vector<FileResult>& results,
                     std::size_t total_files, double fail_threshold) {
    ScanOutcome outcome;
    outcome.inventory.project = project_label;
    std::size_t failed = 0;
    std::size_t record_count = 0;
    for (const FileResult& r : results) record_count += r.records.size();
    outcome.inventory.records.reserve(record_count);
    for (FileResult& r : results) {
        if (r.failed) {
            ++failed;
            outcome.warnings.push_back(r.warning);
        } else {
            for (IdentifierRecord& rec : r.records) {
                outcome.inventory.records.push_back(std::move(rec));
            }
        }
    }
    outcome.inventory.files_scanned = total_files - failed;
    outcome.inventory.files_failed = failed;

    std::string duplicate;
    if (!canonicalize_records(outcome.inventory.records, &duplicate)) {
        outcome.ok = false;
        outcome.error = "duplicate record id " + duplicate;
        return outcome;
    }
    if (total_files == 0) {
        outcome.warnings.push_back("no Java files found under the scan root");
    } else if (static_cast<double>(failed) >
               fail_threshold * static_cast<double>(total_files)) {
        outcome.ok = false;
        outcome.error = "parse failures exceed the threshold: " + std::to_string(failed) + " of " +
                        std::to_string(total_files) + " files failed";
    }
    return outcome;
}

}  // namespace

bool glob_match(const std::string& pattern, const std::string& path) {
    return glob_match_impl(pattern.c_str(), path.c_str());
}

bool is_test_file(const std::string& rel_path, const ScanConfig& config) {
    std::vector<std::string> segments;
    std::string cur;
    for (char c : rel_path) {
        if (c == '/') {
            segments.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    segments.push_back(cur);
    for (const std::string& seg : segments) {
        std::string low = lower_ascii(seg);
        if (low == "test" || low == "tests") return true;
    }
    const std::string& filename = segments.back();
    std::string stem = filename;
    std::size_t dot = stem.rfind('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    auto ends_with = [&](const char* suffix) {
        std::size_t n = std::string_view(suffix).size();
        return stem.size() >= n && stem.compare(stem.size() - n, n, suffix) == 0;
    };
    if (ends_with("Test") || ends_with("Tests") || ends_with("IT")) return true;
    for (const std::string& glob : config.exclude_globs) {
        if (glob_match(glob, rel_path)) return true;
    }
    return false;
}

std::vector<std::string> list_scan_files(const std::string& root_path, const ScanConfig& config,
                                         std::string* error) {
    std::vector<std::string> files;
    fs::path root(root_path);
    std::error_code ec;
    if (!fs::exists(root, ec) || !fs::is_directory(root, ec)) {
        if (error) *error = "scan root does not exist or is not a directory: " + root_path;
        return files;
    }
    for (fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied,
                                             ec),
         end;
         it != end; it.increment(ec)) {
        if (ec) break;
        if (!it->is_regular_file(ec)) continue;
        if (it->path().extension() != ".java") continue;
        std::string rel = fs::relative(it->path(), root, ec).generic_string();
        if (ec || rel.empty()) continue;
        bool excluded_by_glob = false;
        for (const std::string& glob : config.exclude_globs) {
            if (glob_match(glob, rel)) {
                excluded_by_glob = true;
                break;
            }
        }
        if (excluded_by_glob) continue;
        if (!config.include_tests && is_test_file(rel, config)) continue;
        files.push_back(std::move(rel));
    }
    std::sort(files.begin(), files.end());
    return files;
}

ScanOutcome scan_project(const std::string& root_path, const std::string& project_label,
                         const ScanConfig& config, const ExecutionPolicy& policy) {
    ScanOutcome outcome;
    std::string error;
    std::vector<std::string> files = list_scan_files(root_path, config, &error);
    if (!error.empty()) {
        outcome.ok = false;
        outcome.error = error;
        return outcome;
    }
    fs::path root(root_path);
    std::vector<FileResult> results(files.size());
#ifdef _OPENMP
    int threads = policy.threads > 0 ? policy.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long idx = 0; idx < static_cast<long long>(files.size()); ++idx) {
        results[idx] = process_file(root, files[idx], project_label);
    }
#else
    (void)policy;
    for (std::size_t idx = 0; idx < files.size(); ++idx) {
        results[idx] = process_file(root, files[idx], project_label);
    }
#endif
    return assemble(project_label, results, files.size(), config.fail_threshold);
}

ScanOutcome scan_project_serial(const std::string& root_path, const std::string& project_label,
                                const ScanConfig& config) {
    ScanOutcome outcome;
    std::string error;
    std::vector<std::string> files = list_scan_files(root_path, config, &error);
    if (!error.empty()) {
        outcome.ok = false;
        outcome.error = error;
        return outcome;
    }
    fs::path root(root_path);
    std::vector<FileResult> results;
    results.reserve(files.size());
    for (const std::string& rel : files) {
        results.push_back(process_file(root, rel, project_label));
    }
    return assemble(project_label, results, files.size(), config.fail_threshold);
}

}  // namespace idsim
