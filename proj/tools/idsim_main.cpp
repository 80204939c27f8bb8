#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "idsim/jsonl.hpp"
#include "idsim/pipeline.hpp"

using namespace idsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

// All user-selectable knobs, each unset unless given on the command line so
// that flags override the config file.
struct CliOverrides {
    std::optional<std::string> config_path;
    std::vector<std::string> exclude;
    std::optional<bool> include_tests;
    std::optional<double> fail_threshold;
    std::optional<std::size_t> max_method_identifiers;
    std::optional<std::size_t> max_block_identifiers;
    std::optional<double> colliding_threshold;
    std::optional<double> inconsistent_threshold;
    std::optional<std::string> dictionary;
    std::optional<std::string> registry;
    std::optional<bool> sample;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<int> threads;
};

void add_common_options(CLI::App* cmd, CliOverrides* opts) {
    cmd->add_option("--config", opts->config_path,
                    "JSON config file (defaults to $IDSIM_CONFIG when set)");
    cmd->add_option("--threads", opts->threads, "worker threads (0 = all cores)");
}

void add_scan_options(CLI::App* cmd, CliOverrides* opts) {
    cmd->add_option("--exclude", opts->exclude, "glob of files to skip (repeatable)");
    cmd->add_flag_callback(
        "--include-tests", [opts] { opts->include_tests = true; }, "also scan test sources");
    cmd->add_option("--fail-threshold", opts->fail_threshold,
                    "max tolerated fraction of unparseable files");
}

void add_classify_options(CLI::App* cmd, CliOverrides* opts) {
    cmd->add_option("--dict", opts->dictionary, "extra abbreviation dictionary (JSON)");
    cmd->add_option("--registry", opts->registry, "extra type hierarchy (JSON)");
    cmd->add_option("--colliding-threshold", opts->colliding_threshold,
                    "lexical similarity gate for collisions");
    cmd->add_option("--inconsistent-threshold", opts->inconsistent_threshold,
                    "lexical dissimilarity gate for inconsistent names");
    cmd->add_option("--max-method-identifiers", opts->max_method_identifiers,
                    "cap per same-method candidate block");
    cmd->add_option("--max-block-identifiers", opts->max_block_identifiers,
                    "cap per same-type candidate block");
}

void add_report_options(CLI::App* cmd, CliOverrides* opts) {
    cmd->add_option("--format", opts->format, "report format: json, csv, or markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown", "md"}));
    cmd->add_flag_callback(
        "--sample", [opts] { opts->sample = true; },
        "summarize a statistically sized random sample instead of everything");
    cmd->add_option("--seed", opts->seed, "sampling seed (default 1)");
}

// Config file first (flag, else $IDSIM_CONFIG), then the flags on top.
ToolConfig resolve_config(const CliOverrides& opts) {
    ToolConfig config;
    std::optional<std::string> config_path = opts.config_path;
    if (!config_path) {
        if (const char* env = std::getenv("IDSIM_CONFIG")) {
            if (*env != '\0') config_path = env;
        }
    }
    if (config_path) config = load_tool_config(*config_path);

    if (!opts.exclude.empty()) config.scan.exclude_globs = opts.exclude;
    if (opts.include_tests) config.scan.include_tests = *opts.include_tests;
    if (opts.fail_threshold) config.scan.fail_threshold = *opts.fail_threshold;
    if (opts.max_method_identifiers) {
        config.pair.max_method_identifiers = *opts.max_method_identifiers;
    }
    if (opts.max_block_identifiers) {
        config.pair.max_block_identifiers = *opts.max_block_identifiers;
    }
    if (opts.colliding_threshold) config.classify.colliding_threshold = *opts.colliding_threshold;
    if (opts.inconsistent_threshold) {
        config.classify.inconsistent_threshold = *opts.inconsistent_threshold;
    }
    if (opts.dictionary) config.dictionary_path = *opts.dictionary;
    if (opts.registry) config.registry_path = *opts.registry;
    if (opts.sample) config.sample.enabled = *opts.sample;
    if (opts.seed) config.sample.seed = *opts.seed;
    if (opts.format) config.format = *report_format_from_string(*opts.format);
    if (opts.threads) config.exec.threads = *opts.threads;

    validate_config(config);
    return config;
}

std::string default_project(const std::string& root) {
    const auto name = std::filesystem::path(root).filename().string();
    return name.empty() ? std::filesystem::path(root).parent_path().filename().string() : name;
}

// "-" means stdout; everything else is a file path.
void write_output(const std::string& out, const std::string& text) {
    if (out == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    write_text_file(out, text);
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& warning : warnings) std::cerr << "warning: " << warning << "\n";
}

const char* format_extension(ReportFormat format) {
    switch (format) {
        case ReportFormat::Json:
            return "json";
        case ReportFormat::Csv:
            return "csv";
        case ReportFormat::Markdown:
            return "md";
    }
    return "json";
}

// Renders and writes the chosen format; csv gets a sibling .labels.csv file
// when writing to a real path.
void emit_report_files(const ProjectSummary& summary, const std::vector<CategoryLabel>& labels,
                       const std::vector<IdentifierRecord>& records, ReportFormat format,
                       const std::string& out) {
    std::string text;
    switch (format) {
        case ReportFormat::Json:
            text = render_report_json(summary, labels, records);
            break;
        case ReportFormat::Csv:
            text = render_summary_csv({summary});
            break;
        case ReportFormat::Markdown:
            text = render_markdown({summary});
            break;
    }
    write_output(out, text);
    if (format == ReportFormat::Csv) {
        if (out == "-") {
            std::cerr << "warning: labels csv is only written alongside a file output\n";
        } else {
            write_text_file(out + ".labels.csv", render_labels_csv(labels, records));
        }
    }
}

int run_scan(const std::string& root, const std::string& project, const std::string& out,
             const ToolConfig& config) {
    const auto outcome = scan_project(root, project.empty() ? default_project(root) : project,
                                      config.scan, config.exec);
    print_warnings(outcome.warnings);
    if (!outcome.ok) {
        std::cerr << "error: " << outcome.error << "\n";
        return kExitData;
    }
    std::cerr << "files_scanned=" << outcome.inventory.files_scanned
              << " files_failed=" << outcome.inventory.files_failed
              << " identifiers=" << outcome.inventory.records.size() << "\n";
    write_output(out, inventory_to_jsonl(outcome.inventory));
    return kExitOk;
}

int run_classify(const std::string& inventory_path, const std::string& out,
                 const ToolConfig& config) {
    const auto inventory = inventory_from_jsonl(read_text_file(inventory_path));
    const auto dictionary = build_dictionary(config);
    const auto registry = build_registry(config);
    auto paired =
        generate_candidate_pairs(inventory.records, registry, config.pair, config.exec);
    print_warnings(paired.warnings);
    const auto classified = classify_pairs(paired.pairs, inventory.records, registry, dictionary,
                                           config.classify, config.exec);
    std::cerr << "identifiers=" << inventory.records.size() << " pairs=" << paired.pairs.size()
              << " labels=" << classified.labels.size() << "\n";
    write_output(out, labels_to_jsonl(classified.labels, inventory.records));
    return kExitOk;
}

int run_report(const std::string& labels_path, const std::string& inventory_path,
               const std::string& out, const ToolConfig& config) {
    const auto inventory = inventory_from_jsonl(read_text_file(inventory_path));
    const auto labels = labels_from_jsonl(read_text_file(labels_path), inventory.records);
    const auto summary = summarize(inventory, labels, config.sample);
    emit_report_files(summary, labels, inventory.records, config.format, out);
    return kExitOk;
}

int run_analyze_cmd(const std::string& root, const std::string& project, const std::string& out,
                    bool keep_intermediate, const ToolConfig& config) {
    const auto label = project.empty() ? default_project(root) : project;
    const auto outcome = run_analyze(root, label, config);
    print_warnings(outcome.warnings);
    if (!outcome.ok) {
        std::cerr << "error: " << outcome.error << "\n";
        return kExitData;
    }
    std::cerr << "files_scanned=" << outcome.inventory.files_scanned
              << " files_failed=" << outcome.inventory.files_failed
              << " identifiers=" << outcome.inventory.records.size()
              << " pairs=" << outcome.pairs.size() << " labels=" << outcome.labels.size()
              << "\n";
    if (keep_intermediate) {
        const std::string base = out == "-" ? label : out;
        write_text_file(base + ".inventory.jsonl", inventory_to_jsonl(outcome.inventory));
        write_text_file(base + ".labels.jsonl",
                        labels_to_jsonl(outcome.labels, outcome.inventory.records));
    }
    emit_report_files(outcome.summary, outcome.labels, outcome.inventory.records, config.format,
                      out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"idsim — finds and classifies similar identifier names in Java projects"};
    app.require_subcommand(1);

    CliOverrides opts;

    std::string scan_root;
    std::string scan_project_name;
    std::string scan_out = "inventory.jsonl";
    auto* scan_cmd = app.add_subcommand("scan", "extract an identifier inventory");
    scan_cmd->add_option("root", scan_root, "source tree to scan")
        ->required()
        ->check(CLI::ExistingDirectory);
    scan_cmd->add_option("--project", scan_project_name, "project label (default: root name)");
    scan_cmd->add_option("--out", scan_out, "output path, '-' for stdout");
    add_common_options(scan_cmd, &opts);
    add_scan_options(scan_cmd, &opts);

    std::string classify_inventory;
    std::string classify_out = "labels.jsonl";
    auto* classify_cmd = app.add_subcommand("classify", "label candidate identifier pairs");
    classify_cmd->add_option("inventory", classify_inventory, "inventory JSONL from scan")
        ->required()
        ->check(CLI::ExistingFile);
    classify_cmd->add_option("--out", classify_out, "output path, '-' for stdout");
    add_common_options(classify_cmd, &opts);
    add_classify_options(classify_cmd, &opts);

    std::string report_labels;
    std::string report_inventory;
    std::string report_out;
    auto* report_cmd = app.add_subcommand("report", "summarize labels into a project report");
    report_cmd->add_option("labels", report_labels, "labels JSONL from classify")
        ->required()
        ->check(CLI::ExistingFile);
    report_cmd->add_option("inventory", report_inventory, "inventory JSONL from scan")
        ->required()
        ->check(CLI::ExistingFile);
    report_cmd->add_option("--out", report_out, "output path, '-' for stdout");
    add_common_options(report_cmd, &opts);
    add_report_options(report_cmd, &opts);

    std::string analyze_root;
    std::string analyze_project;
    std::string analyze_out;
    bool keep_intermediate = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "scan, classify, and report in one go");
    analyze_cmd->add_option("root", analyze_root, "source tree to analyze")
        ->required()
        ->check(CLI::ExistingDirectory);
    analyze_cmd->add_option("--project", analyze_project, "project label (default: root name)");
    analyze_cmd->add_option("--out", analyze_out, "output path, '-' for stdout");
    analyze_cmd->add_flag("--keep-intermediate", keep_intermediate,
                          "also write the inventory and labels JSONL files");
    add_common_options(analyze_cmd, &opts);
    add_scan_options(analyze_cmd, &opts);
    add_classify_options(analyze_cmd, &opts);
    add_report_options(analyze_cmd, &opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    ToolConfig config;
    try {
        config = resolve_config(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (scan_cmd->parsed()) {
            return run_scan(scan_root, scan_project_name, scan_out, config);
        }
        if (classify_cmd->parsed()) {
            return run_classify(classify_inventory, classify_out, config);
        }
        if (report_cmd->parsed()) {
            if (report_out.empty()) {
                report_out = std::string("report.") + format_extension(config.format);
            }
            return run_report(report_labels, report_inventory, report_out, config);
        }
        if (analyze_cmd->parsed()) {
            if (analyze_out.empty()) {
                analyze_out = std::string("report.") + format_extension(config.format);
            }
            return run_analyze_cmd(analyze_root, analyze_project, analyze_out, keep_intermediate,
                                   config);
        }
    } catch (const JsonlError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
