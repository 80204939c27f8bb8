#include "idsim/config.hpp"

#include <stdexcept>

#include "idsim/jsonl.hpp"
#include "json.hpp"

namespace idsim {

namespace {

using ordered_json = nlohmann::ordered_json;

void check_unit_interval(const char* key, double value) {
    if (!(value > 0.0) || value > 1.0) {
        throw std::runtime_error(std::string(key) + " must be in (0, 1], got " +
                                 std::to_string(value));
    }
}

template <typename T>
T require_type(const ordered_json& value, const char* key) {
    try {
        return value.get<T>();
    } catch (const ordered_json::exception&) {
        throw std::runtime_error(std::string("config key '") + key + "' has the wrong type");
    }
}

}  // namespace

const char* to_string(ReportFormat format) {
    switch (format) {
        case ReportFormat::Json:
            return "json";
        case ReportFormat::Csv:
            return "csv";
        case ReportFormat::Markdown:
            return "markdown";
    }
    return "json";
}

std::optional<ReportFormat> report_format_from_string(const std::string& text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "markdown" || text == "md") return ReportFormat::Markdown;
    return std::nullopt;
}

void validate_config(const ToolConfig& config) {
    check_unit_interval("colliding_threshold", config.classify.colliding_threshold);
    check_unit_interval("inconsistent_threshold", config.classify.inconsistent_threshold);
    check_unit_interval("abbrev_prefix_ratio", config.classify.abbrev.prefix_ratio);
    check_unit_interval("abbrev_subseq_ratio", config.classify.abbrev.subseq_ratio);
    if (config.scan.fail_threshold < 0.0 || config.scan.fail_threshold > 1.0) {
        throw std::runtime_error("fail_threshold must be in [0, 1], got " +
                                 std::to_string(config.scan.fail_threshold));
    }
    if (config.pair.max_method_identifiers < 1) {
        throw std::runtime_error("max_method_identifiers must be >= 1");
    }
    if (config.pair.max_block_identifiers < 1) {
        throw std::runtime_error("max_block_identifiers must be >= 1");
    }
    if (config.exec.threads < 0) {
        throw std::runtime_error("threads must be >= 0 (0 = all cores)");
    }
}

ToolConfig load_tool_config(const std::string& path, ToolConfig base) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_text_file(path));
    } catch (const std::exception& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("config '" + path + "': expected a json object");
    }

    for (const auto& [key, value] : doc.items()) {
        if (key == "exclude") {
            base.scan.exclude_globs.clear();
            if (!value.is_array()) {
                throw std::runtime_error("config key 'exclude' must be an array of globs");
            }
            for (const auto& entry : value) {
                base.scan.exclude_globs.push_back(require_type<std::string>(entry, "exclude"));
            }
        } else if (key == "include_tests") {
            base.scan.include_tests = require_type<bool>(value, "include_tests");
        } else if (key == "fail_threshold") {
            base.scan.fail_threshold = require_type<double>(value, "fail_threshold");
        } else if (key == "max_method_identifiers") {
            const auto cap = require_type<std::int64_t>(value, "max_method_identifiers");
            if (cap < 1) throw std::runtime_error("max_method_identifiers must be >= 1");
            base.pair.max_method_identifiers = static_cast<std::size_t>(cap);
        } else if (key == "max_block_identifiers") {
            const auto cap = require_type<std::int64_t>(value, "max_block_identifiers");
            if (cap < 1) throw std::runtime_error("max_block_identifiers must be >= 1");
            base.pair.max_block_identifiers = static_cast<std::size_t>(cap);
        } else if (key == "colliding_threshold") {
            base.classify.colliding_threshold = require_type<double>(value, "colliding_threshold");
        } else if (key == "inconsistent_threshold") {
            base.classify.inconsistent_threshold =
                require_type<double>(value, "inconsistent_threshold");
        } else if (key == "abbrev_prefix_ratio") {
            base.classify.abbrev.prefix_ratio = require_type<double>(value, "abbrev_prefix_ratio");
        } else if (key == "abbrev_subseq_ratio") {
            base.classify.abbrev.subseq_ratio = require_type<double>(value, "abbrev_subseq_ratio");
        } else if (key == "dictionary") {
            base.dictionary_path = require_type<std::string>(value, "dictionary");
        } else if (key == "registry") {
            base.registry_path = require_type<std::string>(value, "registry");
        } else if (key == "sample") {
            base.sample.enabled = require_type<bool>(value, "sample");
        } else if (key == "seed") {
            base.sample.seed = require_type<std::uint64_t>(value, "seed");
        } else if (key == "format") {
            const auto text = require_type<std::string>(value, "format");
            const auto format = report_format_from_string(text);
            if (!format) {
                throw std::runtime_error("config key 'format' must be json, csv, or markdown");
            }
            base.format = *format;
        } else if (key == "threads") {
            base.exec.threads = static_cast<int>(require_type<std::int64_t>(value, "threads"));
        } else {
            throw std::runtime_error("config '" + path + "': unknown key '" + key + "'");
        }
    }

    validate_config(base);
    return base;
}

}  // namespace idsim
