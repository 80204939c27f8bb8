#include "idsim/pipeline.hpp"

namespace idsim {

AbbreviationDictionary build_dictionary(const ToolConfig& config) {
    auto dictionary = AbbreviationDictionary::builtin();
    if (config.dictionary_path) {
        dictionary.merge(AbbreviationDictionary::load_file(*config.dictionary_path));
    }
    return dictionary;
}

TypeRegistry build_registry(const ToolConfig& config) {
    auto registry = TypeRegistry::builtin();
    if (config.registry_path) {
        registry.merge(TypeRegistry::load_file(*config.registry_path));
    }
    return registry;
}

AnalyzeOutcome run_analyze(const std::string& root, const std::string& project,
                           const ToolConfig& config) {
    AnalyzeOutcome outcome;
    const auto dictionary = build_dictionary(config);
    const auto registry = build_registry(config);

    auto scanned = scan_project(root, project, config.scan, config.exec);
    outcome.warnings = std::move(scanned.warnings);
    if (!scanned.ok) {
        outcome.ok = false;
        outcome.error = scanned.error;
        return outcome;
    }
    outcome.inventory = std::move(scanned.inventory);
    if (outcome.inventory.records.empty()) {
        outcome.warnings.push_back("no identifiers found under '" + root + "'");
    }

    auto paired =
        generate_candidate_pairs(outcome.inventory.records, registry, config.pair, config.exec);
    outcome.warnings.insert(outcome.warnings.end(), paired.warnings.begin(),
                            paired.warnings.end());
    outcome.pairs = std::move(paired.pairs);

    auto classified = classify_pairs(outcome.pairs, outcome.inventory.records, registry,
                                     dictionary, config.classify, config.exec);
    outcome.labels = std::move(classified.labels);

    outcome.summary = summarize(outcome.inventory, outcome.labels, config.sample);
    return outcome;
}

}  // namespace idsim
