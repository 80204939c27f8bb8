#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "idsim/classify.hpp"
#include "idsim/record.hpp"

namespace idsim {

// Exact integer rendering of numerator/denominator as a percentage with
// half-up rounding to `decimals` places ("90.51"); a zero denominator
// renders as zero.
std::string render_percent(std::uint64_t numerator, std::uint64_t denominator, int decimals);

// Cochran sample size with finite-population correction at p = 0.5, rounded
// up. Supported confidence levels: 0.90, 0.95, 0.99 (z from a fixed table);
// anything else throws std::runtime_error.
std::size_t required_sample_size(std::size_t population, double confidence = 0.95,
                                 double margin = 0.05);

struct SampleSpec {
    bool enabled = false;
    std::uint64_t seed = 1;
};

// Sorted distinct indices drawn uniformly from [0, population); deterministic
// for a given seed across platforms.
std::vector<std::uint32_t> sample_indices(std::size_t population, std::size_t count,
                                          std::uint64_t seed);

struct ProjectSummary {
    std::string project;
    std::uint64_t total_identifiers = 0;
    std::uint64_t analyzed_identifiers = 0;
    // Distinct identifiers participating in at least one label (restricted
    // to the sample when sampling).
    std::uint64_t similar_identifier_count = 0;
    std::array<std::uint64_t, kCategoryCount> category_counts{};
    std::uint64_t label_count = 0;
    std::uint64_t needs_review_count = 0;
    std::vector<Category> top_categories;  // up to 3, by count desc then enum order
    bool sampled = false;
    std::uint64_t sample_seed = 1;

    bool operator==(const ProjectSummary&) const = default;
};

// "90.51"-style share of similar identifiers among analyzed ones.
std::string similar_pct(const ProjectSummary& summary, int decimals = 2);

// Pure fold over the labels; throws std::runtime_error when a label points
// outside the inventory. With sampling enabled, analyzed_identifiers becomes
// the computed sample size and only labels touching a sampled identifier
// count.
ProjectSummary summarize(const IdentifierInventory& inventory,
                         const std::vector<CategoryLabel>& labels, const SampleSpec& sample = {});

// Category name the way the summary table prints it: the parent name, plus
// the subcategory for parents with several ("Type-Based Variants -
// Cardinality").
std::string table_category_name(Category category);

// Single JSON object with stable key order: the summary plus the labels.
std::string render_report_json(const ProjectSummary& summary,
                               const std::vector<CategoryLabel>& labels,
                               const std::vector<IdentifierRecord>& records);

// Parses the summary part of render_report_json output; throws
// std::runtime_error on malformed input.
ProjectSummary summary_from_json(const std::string& json_text);

// Header plus one row per summary: project, total_identifiers,
// analyzed_identifiers, similar_count, similar_pct, then one count column
// per category in enum order.
std::string render_summary_csv(const std::vector<ProjectSummary>& summaries);

// Companion label table: ids, names, category, confidence, rationale,
// needs_review.
std::string render_labels_csv(const std::vector<CategoryLabel>& labels,
                              const std::vector<IdentifierRecord>& records);

// GitHub-style table: Project | Identifier Similarities Count | Top Category
// | 2nd Category | 3rd Category.
std::string render_markdown(const std::vector<ProjectSummary>& summaries);

}  // namespace idsim
