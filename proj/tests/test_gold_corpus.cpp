#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "idsim/pipeline.hpp"

using namespace idsim;

namespace {

std::string fixture(const std::string& name) {
    return std::string(IDSIM_FIXTURE_DIR) + "/" + name;
}

AnalyzeOutcome analyze_fixture(const std::string& dir) {
    ToolConfig config;
    auto outcome = run_analyze(fixture(dir), "gold", config);
    REQUIRE_MESSAGE(outcome.ok, dir << ": " << outcome.error);
    return outcome;
}

// The primary label on the pair with these endpoint names, order-free.
std::optional<CategoryLabel> label_between(const AnalyzeOutcome& outcome, const std::string& a,
                                           const std::string& b) {
    for (const auto& label : outcome.labels) {
        const auto& left = outcome.inventory.records[label.left].name;
        const auto& right = outcome.inventory.records[label.right].name;
        if ((left == a && right == b) || (left == b && right == a)) return label;
    }
    return std::nullopt;
}

void check_gold(const std::string& dir, const std::string& a, const std::string& b,
                Category category, Confidence confidence) {
    const auto outcome = analyze_fixture(dir);
    const auto label = label_between(outcome, a, b);
    REQUIRE_MESSAGE(label.has_value(), dir << ": no label between '" << a << "' and '" << b
                                           << "' (labels: " << outcome.labels.size() << ")");
    CHECK_MESSAGE(label->category == category,
                  dir << ": got " << category_id(label->category) << " — " << label->rationale);
    CHECK_MESSAGE(label->confidence == confidence, dir << ": rationale " << label->rationale);
    CHECK(label->needs_review == (confidence == Confidence::Low));
}

}  // namespace

TEST_CASE("colliding names across files") {
    check_gold("listing01", "writer", "writer", Category::Colliding, Confidence::High);
}

TEST_CASE("standardized repetitive field names") {
    check_gold("listing02", "viewClass", "viewClass", Category::StandardizedRepetitive,
               Confidence::Medium);
}

TEST_CASE("inconsistent names for the same concept") {
    check_gold("listing03", "conn", "db", Category::InconsistentSemantic, Confidence::Low);
}

TEST_CASE("colliding loop variables flagged for review") {
    check_gold("listing04", "child", "child", Category::Colliding, Confidence::Low);
}

TEST_CASE("polymorphic parameter names") {
    check_gold("listing05", "request", "request", Category::TypePolymorphic, Confidence::High);
}

TEST_CASE("cardinality variants") {
    check_gold("listing06", "agentName", "agentNames", Category::TypeCardinality,
               Confidence::High);
}

TEST_CASE("transformation variants") {
    check_gold("listing07", "input", "scannedInput", Category::DerivTransformation,
               Confidence::Medium);
}

TEST_CASE("type-descriptive variants") {
    check_gold("listing08", "target", "targetObject", Category::DerivTypeDescriptive,
               Confidence::High);
}

TEST_CASE("temporary variants") {
    check_gold("listing09", "rolesTmp", "roles", Category::DerivTemporary, Confidence::High);
}

TEST_CASE("sequential numeric variants") {
    const auto outcome = analyze_fixture("listing10");
    for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
             {"cust1", "cust2"}, {"cust1", "cust3"}, {"cust2", "cust3"}}) {
        const auto label = label_between(outcome, a, b);
        REQUIRE_MESSAGE(label.has_value(), a << "/" << b << " missing");
        CHECK(label->category == Category::NumericSequential);
        CHECK(label->confidence == Confidence::High);
    }
}

TEST_CASE("value-encoded constants") {
    check_gold("listing11", "COUNT_2", "COUNT_3", Category::NumericValueEncoded,
               Confidence::High);
}

TEST_CASE("abbreviated logger fields") {
    check_gold("listing12", "log", "logger", Category::ConciseAbbreviated, Confidence::High);
}

TEST_CASE("acronym of a type name") {
    check_gold("listing13", "sb", "stringBuilder", Category::ConciseAcronym, Confidence::Medium);
}

TEST_CASE("single-character names for complex objects") {
    check_gold("listing14", "b", "b", Category::ConciseSingleChar, Confidence::Medium);
}

TEST_CASE("the gold corpus as one project keeps every primary disjoint per pair") {
    // One label per pair even when several rules could fire.
    for (int i = 1; i <= 14; ++i) {
        char dir[16];
        std::snprintf(dir, sizeof(dir), "listing%02d", i);
        const auto outcome = analyze_fixture(dir);
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const auto& label : outcome.labels) {
            CHECK(seen.emplace(label.left, label.right).second);
        }
    }
}

TEST_CASE("analyzing an empty tree warns but succeeds") {
    const auto empty_dir = fixture("misc") + "/../empty_tree";
    std::filesystem::create_directories(empty_dir);
    ToolConfig config;
    const auto outcome = run_analyze(empty_dir, "empty", config);
    REQUIRE(outcome.ok);
    CHECK(outcome.inventory.records.empty());
    CHECK(outcome.labels.empty());
    CHECK(outcome.summary.total_identifiers == 0);
    bool warned = false;
    for (const auto& warning : outcome.warnings) {
        if (warning.find("no identifiers") != std::string::npos) warned = true;
    }
    CHECK(warned);
}
