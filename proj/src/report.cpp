#include "idsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace idsim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_fixed(std::uint64_t integral, std::uint64_t fraction, int decimals) {
    std::string out = std::to_string(integral);
    if (decimals > 0) {
        std::string frac = std::to_string(fraction);
        out += '.';
        out.append(static_cast<std::size_t>(decimals) - frac.size(), '0');
        out += frac;
    }
    return out;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// Uniform value in [0, bound) from raw 64-bit draws; rejection keeps the
// result independent of the standard library's distribution internals.
std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % bound;
}

}  // namespace

std::string render_percent(std::uint64_t numerator, std::uint64_t denominator, int decimals) {
    if (decimals < 0) decimals = 0;
    if (decimals > 9) decimals = 9;
    std::uint64_t pow10 = 1;
    for (int i = 0; i < decimals; ++i) pow10 *= 10;
    if (denominator == 0) return format_fixed(0, 0, decimals);
    unsigned __int128 scaled =
        static_cast<unsigned __int128>(numerator) * 100u * pow10;
    unsigned __int128 quotient = scaled / denominator;
    unsigned __int128 remainder = scaled % denominator;
    if (2 * remainder >= denominator) ++quotient;
    auto integral = static_cast<std::uint64_t>(quotient / pow10);
    auto fraction = static_cast<std::uint64_t>(quotient % pow10);
    return format_fixed(integral, fraction, decimals);
}

std::size_t required_sample_size(std::size_t population, double confidence, double margin) {
    if (population == 0) return 0;
    double z = 0.0;
    if (std::abs(confidence - 0.90) < 1e-9) z = 1.645;
    else if (std::abs(confidence - 0.95) < 1e-9) z = 1.96;
    else if (std::abs(confidence - 0.99) < 1e-9) z = 2.576;
    else throw std::runtime_error("unsupported confidence level " + std::to_string(confidence) +
                                  " (supported: 0.90, 0.95, 0.99)");
    if (!(margin > 0.0) || margin > 1.0) {
        throw std::runtime_error("margin of error must be in (0, 1]");
    }
    const double n0 = z * z * 0.25 / (margin * margin);
    const double population_d = static_cast<double>(population);
    double n = n0 / (1.0 + (n0 - 1.0) / population_d);
    // A result that is an integer up to floating-point noise stays that
    // integer instead of being bumped up by ceil.
    const double snapped = std::round(n);
    if (std::abs(n - snapped) < 1e-9) n = snapped;
    auto size = static_cast<std::size_t>(std::ceil(n));
    return std::min(size, population);
}

std::vector<std::uint32_t> sample_indices(std::size_t population, std::size_t count,
                                          std::uint64_t seed) {
    count = std::min(count, population);
    std::vector<std::uint32_t> pool(population);
    for (std::size_t i = 0; i < population; ++i) pool[i] = static_cast<std::uint32_t>(i);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t j = i + bounded_random(rng, population - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::string similar_pct(const ProjectSummary& summary, int decimals) {
    return render_percent(summary.similar_identifier_count, summary.analyzed_identifiers,
                          decimals);
}

ProjectSummary summarize(const IdentifierInventory& inventory,
                         const std::vector<CategoryLabel>& labels, const SampleSpec& sample) {
    const auto total = inventory.records.size();
    for (const auto& label : labels) {
        if (label.left >= total || label.right >= total) {
            throw std::runtime_error("label references identifier " +
                                     std::to_string(std::max(label.left, label.right)) +
                                     " outside the inventory of " + std::to_string(total));
        }
    }

    ProjectSummary summary;
    summary.project = inventory.project;
    summary.total_identifiers = total;
    summary.sampled = sample.enabled;
    summary.sample_seed = sample.seed;

    std::unordered_set<std::uint32_t> analyzed_set;
    if (sample.enabled) {
        const auto wanted = required_sample_size(total);
        const auto picks = sample_indices(total, wanted, sample.seed);
        analyzed_set.insert(picks.begin(), picks.end());
        summary.analyzed_identifiers = picks.size();
    } else {
        summary.analyzed_identifiers = total;
    }

    const auto in_scope = [&](std::uint32_t index) {
        return !sample.enabled || analyzed_set.count(index) > 0;
    };

    std::set<std::uint32_t> similar;
    for (const auto& label : labels) {
        const bool left_in = in_scope(label.left);
        const bool right_in = in_scope(label.right);
        if (!left_in && !right_in) continue;
        if (left_in) similar.insert(label.left);
        if (right_in) similar.insert(label.right);
        summary.category_counts[static_cast<std::size_t>(label.category)] += 1;
        summary.label_count += 1;
        if (label.needs_review) summary.needs_review_count += 1;
    }
    summary.similar_identifier_count = similar.size();

    std::vector<Category> ranked;
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        if (summary.category_counts[i] > 0) ranked.push_back(static_cast<Category>(i));
    }
    std::stable_sort(ranked.begin(), ranked.end(), [&](Category a, Category b) {
        return summary.category_counts[static_cast<std::size_t>(a)] >
               summary.category_counts[static_cast<std::size_t>(b)];
    });
    if (ranked.size() > 3) ranked.resize(3);
    summary.top_categories = std::move(ranked);
    return summary;
}

std::string table_category_name(Category category) {
    const ParentCategory parent = parent_of(category);
    switch (parent) {
        case ParentCategory::StandardizedRepetitive:
        case ParentCategory::InconsistentSemantic:
        case ParentCategory::Colliding:
            return parent_display(parent);
        default:
            return std::string(parent_display(parent)) + " - " + category_display(category);
    }
}

std::string render_report_json(const ProjectSummary& summary,
                               const std::vector<CategoryLabel>& labels,
                               const std::vector<IdentifierRecord>& records) {
    ordered_json doc;
    doc["project"] = summary.project;
    doc["total_identifiers"] = summary.total_identifiers;
    doc["analyzed_identifiers"] = summary.analyzed_identifiers;
    doc["similar_identifier_count"] = summary.similar_identifier_count;
    doc["similar_pct"] = similar_pct(summary);
    doc["label_count"] = summary.label_count;
    doc["needs_review_count"] = summary.needs_review_count;
    doc["sampled"] = summary.sampled;
    if (summary.sampled) doc["sample_seed"] = summary.sample_seed;

    ordered_json counts = ordered_json::object();
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        const auto category = static_cast<Category>(i);
        ordered_json entry;
        entry["count"] = summary.category_counts[i];
        entry["share_pct"] = render_percent(summary.category_counts[i], summary.label_count, 2);
        counts[std::string(category_id(category))] = std::move(entry);
    }
    doc["category_counts"] = std::move(counts);

    ordered_json tops = ordered_json::array();
    for (Category category : summary.top_categories) {
        tops.push_back(std::string(category_id(category)));
    }
    doc["top_categories"] = std::move(tops);

    ordered_json label_rows = ordered_json::array();
    for (const auto& label : labels) {
        ordered_json row;
        row["left_id"] = records[label.left].record_id;
        row["right_id"] = records[label.right].record_id;
        row["left_name"] = records[label.left].name;
        row["right_name"] = records[label.right].name;
        row["category"] = std::string(category_id(label.category));
        row["confidence"] = std::string(to_string(label.confidence));
        row["rationale"] = label.rationale;
        row["needs_review"] = label.needs_review;
        label_rows.push_back(std::move(row));
    }
    doc["labels"] = std::move(label_rows);
    return doc.dump(2) + "\n";
}

ProjectSummary summary_from_json(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("malformed report json: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("malformed report json: not an object");
    ProjectSummary summary;
    try {
        summary.project = doc.at("project").get<std::string>();
        summary.total_identifiers = doc.at("total_identifiers").get<std::uint64_t>();
        summary.analyzed_identifiers = doc.at("analyzed_identifiers").get<std::uint64_t>();
        summary.similar_identifier_count = doc.at("similar_identifier_count").get<std::uint64_t>();
        summary.label_count = doc.at("label_count").get<std::uint64_t>();
        summary.needs_review_count = doc.at("needs_review_count").get<std::uint64_t>();
        summary.sampled = doc.at("sampled").get<bool>();
        if (doc.contains("sample_seed")) {
            summary.sample_seed = doc.at("sample_seed").get<std::uint64_t>();
        }
        const auto& counts = doc.at("category_counts");
        for (std::size_t i = 0; i < kCategoryCount; ++i) {
            const auto category = static_cast<Category>(i);
            const std::string key(category_id(category));
            if (counts.contains(key)) {
                summary.category_counts[i] = counts.at(key).at("count").get<std::uint64_t>();
            }
        }
        for (const auto& entry : doc.at("top_categories")) {
            const auto category = category_from_id(entry.get<std::string>());
            if (!category) throw std::runtime_error("unknown category id in top_categories");
            summary.top_categories.push_back(*category);
        }
    } catch (const ordered_json::exception& e) {
        throw std::runtime_error(std::string("malformed report json: ") + e.what());
    }
    return summary;
}

std::string render_summary_csv(const std::vector<ProjectSummary>& summaries) {
    std::string out = "project,total_identifiers,analyzed_identifiers,similar_count,similar_pct";
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        out += ',';
        out += category_id(static_cast<Category>(i));
    }
    out += '\n';
    for (const auto& summary : summaries) {
        out += csv_quote(summary.project);
        out += ',' + std::to_string(summary.total_identifiers);
        out += ',' + std::to_string(summary.analyzed_identifiers);
        out += ',' + std::to_string(summary.similar_identifier_count);
        out += ',' + similar_pct(summary);
        for (std::size_t i = 0; i < kCategoryCount; ++i) {
            out += ',' + std::to_string(summary.category_counts[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_labels_csv(const std::vector<CategoryLabel>& labels,
                              const std::vector<IdentifierRecord>& records) {
    std::string out =
        "left_id,right_id,left_name,right_name,category,confidence,rationale,needs_review\n";
    for (const auto& label : labels) {
        out += csv_quote(records[label.left].record_id);
        out += ',' + csv_quote(records[label.right].record_id);
        out += ',' + csv_quote(records[label.left].name);
        out += ',' + csv_quote(records[label.right].name);
        out += ',';
        out += category_id(label.category);
        out += ',';
        out += to_string(label.confidence);
        out += ',' + csv_quote(label.rationale);
        out += ',';
        out += label.needs_review ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string render_markdown(const std::vector<ProjectSummary>& summaries) {
    std::string out =
        "| Project | Identifier Similarities Count | Top Category | 2nd Category | 3rd Category "
        "|\n| --- | --- | --- | --- | --- |\n";
    for (const auto& summary : summaries) {
        out += "| " + summary.project + " | ";
        out += std::to_string(summary.similar_identifier_count);
        out += " (" + similar_pct(summary) + "%)";
        for (std::size_t slot = 0; slot < 3; ++slot) {
            out += " | ";
            if (slot < summary.top_categories.size()) {
                const Category category = summary.top_categories[slot];
                const auto count = summary.category_counts[static_cast<std::size_t>(category)];
                out += table_category_name(category);
                out += " (" + render_percent(count, summary.label_count, 2) + "%)";
            }
        }
        out += " |\n";
    }
    return out;
}

}  // namespace idsim
