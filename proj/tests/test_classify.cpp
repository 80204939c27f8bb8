#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "idsim/classify.hpp"
#include "idsim/lexicon.hpp"
#include "idsim/name_split.hpp"
#include "idsim/pairing.hpp"
#include "idsim/record.hpp"
#include "idsim/type_registry.hpp"
#include "json.hpp"

using namespace idsim;

namespace {

struct RecordSpec {
    std::string file;
    std::string name;
    IdentKind kind = IdentKind::LocalVariable;
    std::optional<std::string> type;
    std::optional<std::string> cls;
    std::optional<std::string> method;
    std::optional<std::string> initializer;
    std::optional<std::string> context;
};

std::vector<IdentifierRecord> build(std::vector<RecordSpec> specs) {
    std::vector<IdentifierRecord> recs;
    std::uint32_t line = 1;
    for (RecordSpec& spec : specs) {
        IdentifierRecord rec;
        rec.project = "demo";
        rec.file_path = spec.file;
        rec.name = spec.name;
        rec.kind = spec.kind;
        rec.declared_type = std::move(spec.type);
        rec.enclosing_class = std::move(spec.cls);
        rec.enclosing_method = std::move(spec.method);
        rec.initializer_literal = std::move(spec.initializer);
        rec.context_expr = std::move(spec.context);
        rec.line = line++;
        rec.column = 1;
        rec.record_id =
            compute_record_id(rec.project, rec.file_path, rec.line, rec.column, rec.name);
        recs.push_back(std::move(rec));
    }
    std::string dup;
    REQUIRE(canonicalize_records(recs, &dup));
    return recs;
}

CandidatePair make_pair(const std::vector<IdentifierRecord>& recs, std::uint32_t l,
                        std::uint32_t r, const TypeRegistry& reg) {
    CandidatePair pair;
    pair.left = l;
    pair.right = r;
    pair.scope_relation = scope_relation(recs[l], recs[r]);
    pair.lexical_similarity =
        lexical_similarity(normalize_name(recs[l].name), normalize_name(recs[r].name));
    pair.type_relation = type_relation(recs[l].declared_type, recs[r].declared_type, reg);
    NumericSuffix sl = strip_numeric_suffix(recs[l].name);
    NumericSuffix sr = strip_numeric_suffix(recs[r].name);
    if (sl.number.has_value() && sr.number.has_value() &&
        normalize_name(sl.stem) == normalize_name(sr.stem)) {
        pair.shared_stem = normalize_name(sl.stem);
    }
    return pair;
}

struct Harness {
    TypeRegistry reg = TypeRegistry::builtin();
    AbbreviationDictionary dict = AbbreviationDictionary::builtin();
    ClassifyConfig config;

    std::vector<CategoryLabel> run(const std::vector<IdentifierRecord>& recs, std::uint32_t l,
                                   std::uint32_t r) const {
        SequentialGroups groups = find_sequential_groups(recs);
        return classify_pair(make_pair(recs, l, r, reg), recs, groups, reg, dict, config);
    }
};

bool has_category(const std::vector<CategoryLabel>& labels, Category category) {
    return std::any_of(labels.begin(), labels.end(),
                       [&](const CategoryLabel& label) { return label.category == category; });
}

}  // namespace

TEST_CASE("category ids, display names, and parents round-trip") {
    CHECK(kCategoryCount == 13);
    for (int i = 0; i < kCategoryCount; ++i) {
        auto category = static_cast<Category>(i);
        auto parsed = category_from_id(category_id(category));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == category);
        CHECK(std::string(category_display(category)) != "");
    }
    CHECK_FALSE(category_from_id("nonsense").has_value());

    CHECK(parent_of(Category::StandardizedRepetitive) == ParentCategory::StandardizedRepetitive);
    CHECK(parent_of(Category::InconsistentSemantic) == ParentCategory::InconsistentSemantic);
    CHECK(parent_of(Category::Colliding) == ParentCategory::Colliding);
    CHECK(parent_of(Category::TypePolymorphic) == ParentCategory::TypeBased);
    CHECK(parent_of(Category::TypeCardinality) == ParentCategory::TypeBased);
    CHECK(parent_of(Category::DerivTransformation) == ParentCategory::Derivational);
    CHECK(parent_of(Category::DerivTypeDescriptive) == ParentCategory::Derivational);
    CHECK(parent_of(Category::DerivTemporary) == ParentCategory::Derivational);
    CHECK(parent_of(Category::NumericSequential) == ParentCategory::NumericallyDistinguished);
    CHECK(parent_of(Category::NumericValueEncoded) == ParentCategory::NumericallyDistinguished);
    CHECK(parent_of(Category::ConciseAbbreviated) == ParentCategory::Concise);
    CHECK(parent_of(Category::ConciseAcronym) == ParentCategory::Concise);
    CHECK(parent_of(Category::ConciseSingleChar) == ParentCategory::Concise);
    CHECK(std::string(parent_display(ParentCategory::NumericallyDistinguished)) ==
          "Numerically Distinguished Variants");
    CHECK(std::string(category_id(Category::TypePolymorphic)) == "type_polymorphic");
}

TEST_CASE("value-encoded records need a suffix matching the literal") {
    auto recs = build({
        {"A.java", "COUNT_2", IdentKind::Field, "int", "A", std::nullopt, "2", "2"},
        {"A.java", "COUNT_3", IdentKind::Field, "int", "A", std::nullopt, "5", "5"},
        {"A.java", "total", IdentKind::Field, "int", "A", std::nullopt, "2", "2"},
        {"A.java", "HEX_16", IdentKind::Field, "int", "A", std::nullopt, "0x10", "0x10"},
        {"A.java", "BIG_2", IdentKind::Field, "long", "A", std::nullopt, "2L", "2L"},
        {"A.java", "RATE_2", IdentKind::Field, "double", "A", std::nullopt, "2.0", "2.0"},
    });
    CHECK(is_value_encoded(recs[0]));       // 2 == 2
    CHECK_FALSE(is_value_encoded(recs[1])); // suffix 3, literal 5
    CHECK_FALSE(is_value_encoded(recs[2])); // no numeric suffix
    CHECK(is_value_encoded(recs[3]));       // 0x10 == 16
    CHECK(is_value_encoded(recs[4]));       // 2L == 2
    CHECK_FALSE(is_value_encoded(recs[5])); // float literal
}

TEST_CASE("sequential groups require one scope, one type, distinct numbers") {
    SUBCASE("a numbered series in one method forms one group") {
        auto recs = build({
            {"A.java", "cust1", IdentKind::LocalVariable, "Customer", "A", "load", std::nullopt,
             "new Customer()"},
            {"A.java", "cust2", IdentKind::LocalVariable, "Customer", "A", "load", std::nullopt,
             "new Customer()"},
            {"A.java", "cust3", IdentKind::LocalVariable, "Customer", "A", "load", std::nullopt,
             "new Customer()"},
        });
        SequentialGroups groups = find_sequential_groups(recs);
        REQUIRE(groups.group_of.size() == 3);
        CHECK(groups.group_of.at(0) == groups.group_of.at(1));
        CHECK(groups.group_of.at(1) == groups.group_of.at(2));
        CHECK(groups.group_confidence[groups.group_of.at(0)] == Confidence::High);
    }
    SUBCASE("a value-encoded member disqualifies the whole group") {
        auto recs = build({
            {"A.java", "COUNT_2", IdentKind::Field, "int", "A", std::nullopt, "2", "2"},
            {"A.java", "COUNT_3", IdentKind::Field, "int", "A", std::nullopt, "3", "3"},
        });
        CHECK(find_sequential_groups(recs).group_of.empty());
    }
    SUBCASE("mixed declared types disqualify the group") {
        auto recs = build({
            {"A.java", "buf1", IdentKind::LocalVariable, "byte[]", "A", "m", std::nullopt,
             std::nullopt},
            {"A.java", "buf2", IdentKind::LocalVariable, "StringBuilder", "A", "m", std::nullopt,
             std::nullopt},
        });
        CHECK(find_sequential_groups(recs).group_of.empty());
    }
    SUBCASE("all-absent declared types form a medium-confidence group") {
        auto recs = build({
            {"A.java", "step1", IdentKind::Method, std::nullopt, "A", std::nullopt, std::nullopt,
             std::nullopt},
            {"A.java", "step2", IdentKind::Method, std::nullopt, "A", std::nullopt, std::nullopt,
             std::nullopt},
        });
        SequentialGroups groups = find_sequential_groups(recs);
        REQUIRE(groups.group_of.size() == 2);
        CHECK(groups.group_confidence[groups.group_of.at(0)] == Confidence::Medium);
    }
    SUBCASE("same stem in different scopes stays separate") {
        auto recs = build({
            {"A.java", "cust1", IdentKind::LocalVariable, "Customer", "A", "load", std::nullopt,
             std::nullopt},
            {"A.java", "cust2", IdentKind::LocalVariable, "Customer", "A", "save", std::nullopt,
             std::nullopt},
        });
        CHECK(find_sequential_groups(recs).group_of.empty());
    }
    SUBCASE("duplicate numbers alone do not form a series") {
        auto recs = build({
            {"A.java", "cust1", IdentKind::LocalVariable, "Customer", "A", "load", std::nullopt,
             std::nullopt},
            {"A.java", "cust_1", IdentKind::LocalVariable, "Customer", "A", "load", std::nullopt,
             std::nullopt},
        });
        CHECK(find_sequential_groups(recs).group_of.empty());
    }
}

TEST_CASE("standardized repetitive: identical names, separate scopes, related types") {
    Harness h;
    SUBCASE("cross-file fields with subtype-related generic types") {
        auto recs = build({
            {"a/V1.java", "viewClass", IdentKind::Field, "Class<? extends AbstractThymeleafView>",
             "V1", std::nullopt, std::nullopt, "ThymeleafView.class"},
            {"b/V2.java", "viewClass", IdentKind::Field, "Class<? extends ThymeleafReactiveView>",
             "V2", std::nullopt, std::nullopt, "ThymeleafReactiveView.class"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::StandardizedRepetitive);
        CHECK(labels[0].confidence == Confidence::Medium);
        // The subtype gate keeps the polymorphic detector quiet across files.
        CHECK_FALSE(has_category(labels, Category::TypePolymorphic));
        CHECK_FALSE(has_category(labels, Category::Colliding));
    }
    SUBCASE("identical names inside one method do not fire") {
        auto recs = build({
            {"A.java", "index", IdentKind::LocalVariable, "int", "A", "m", std::nullopt,
             std::nullopt},
            {"A.java", "index", IdentKind::LocalVariable, "int", "A", "m", std::nullopt,
             std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::StandardizedRepetitive));
    }
}

TEST_CASE("colliding: unrelated types fire high, disjoint contexts fire low") {
    Harness h;
    SUBCASE("same name, unrelated registered types") {
        auto recs = build({
            {"a/X.java", "writer", IdentKind::LocalVariable, "OutputStreamWriter", "X", "flush",
             std::nullopt, "new OutputStreamWriter(out)"},
            {"b/Y.java", "writer", IdentKind::LocalVariable, "FastString", "Y", "render",
             std::nullopt, "new FastStringWriter(200)"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::Colliding);
        CHECK(labels[0].confidence == Confidence::High);
        CHECK_FALSE(labels[0].needs_review);
    }
    SUBCASE("identical types with disjoint contexts outrank standardized reuse") {
        auto recs = build({
            {"A.java", "child", IdentKind::LocalVariable, "File", "A", "scanClasses", std::nullopt,
             "classes"},
            {"A.java", "child", IdentKind::LocalVariable, "File", "A", "walkDirs", std::nullopt,
             "dirs"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE(labels.size() >= 2);
        CHECK(labels[0].category == Category::Colliding);
        CHECK(labels[0].confidence == Confidence::Low);
        CHECK(labels[0].needs_review);
        CHECK(labels[1].category == Category::StandardizedRepetitive);
    }
    SUBCASE("overlapping contexts keep standardized reuse primary") {
        auto recs = build({
            {"A.java", "agentName", IdentKind::LocalVariable, "String", "A", "readAgentName",
             std::nullopt, "conf.get(\"http.agent.name\")"},
            {"A.java", "agentName", IdentKind::LocalVariable, "String", "A", "checkAgentName",
             std::nullopt, "conf.get(\"http.agent.name\")"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::StandardizedRepetitive);
        CHECK_FALSE(has_category(labels, Category::Colliding));
    }
    SUBCASE("related types never collide") {
        auto recs = build({
            {"A.java", "view", IdentKind::LocalVariable, "ThymeleafView", "A", "makeView",
             std::nullopt, "alpha"},
            {"A.java", "view", IdentKind::LocalVariable, "AbstractThymeleafView", "A", "wrapView",
             std::nullopt, "beta"},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::Colliding));
    }
    SUBCASE("empty context sets never count as disjoint") {
        auto recs = build({
            {"A.java", "child", IdentKind::Field, "File", "A", std::nullopt, std::nullopt,
             std::nullopt},
            {"A.java", "child", IdentKind::Field, "File", "B", std::nullopt, std::nullopt,
             std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::Colliding));
    }
}

TEST_CASE("inconsistent semantic: different names, one type, near scope, low confidence") {
    Harness h;
    SUBCASE("db and conn with one declared type in one class") {
        auto recs = build({
            {"Pool.java", "conn", IdentKind::LocalVariable, "DBConnection", "Pool",
             "getFreeDBConnectionNumber", std::nullopt, std::nullopt},
            {"Pool.java", "db", IdentKind::LocalVariable, "DBConnection", "Pool",
             "shrinkConnectionPoolSize", std::nullopt, std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE(labels.size() == 1);
        CHECK(labels[0].category == Category::InconsistentSemantic);
        CHECK(labels[0].confidence == Confidence::Low);
        CHECK(labels[0].needs_review);
    }
    SUBCASE("cross-file pairs are out of scope") {
        auto recs = build({
            {"a/P.java", "db", IdentKind::LocalVariable, "DBConnection", "P", "open", std::nullopt,
             std::nullopt},
            {"b/Q.java", "conn", IdentKind::LocalVariable, "DBConnection", "Q", "close",
             std::nullopt, std::nullopt},
        });
        CHECK(h.run(recs, 0, 1).empty());
    }
    SUBCASE("abbreviation-related names belong to the abbreviated category") {
        auto recs = build({
            {"A.java", "msg", IdentKind::LocalVariable, "String", "A", "send", std::nullopt,
             std::nullopt},
            {"A.java", "message", IdentKind::LocalVariable, "String", "A", "receive", std::nullopt,
             std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::ConciseAbbreviated);
        CHECK(labels[0].confidence == Confidence::High);
        CHECK_FALSE(has_category(labels, Category::InconsistentSemantic));
    }
}

TEST_CASE("polymorphic: same name with subtype-related types in one file") {
    Harness h;
    auto recs = build({
        {"F.java", "request", IdentKind::Parameter, "HttpServletRequest", "F", "addUserToSession",
         std::nullopt, std::nullopt},
        {"F.java", "request", IdentKind::Parameter, "ServletRequest", "F", "doFilter",
         std::nullopt, std::nullopt},
    });
    auto labels = h.run(recs, 0, 1);
    REQUIRE_FALSE(labels.empty());
    CHECK(labels[0].category == Category::TypePolymorphic);
    CHECK(labels[0].confidence == Confidence::High);
    CHECK(has_category(labels, Category::StandardizedRepetitive));  // secondary
}

TEST_CASE("cardinality: plural names, container evidence upgrades confidence") {
    Harness h;
    SUBCASE("singular String against a plural LinkedHashSet") {
        auto recs = build({
            {"U.java", "agentNames", IdentKind::Field, "LinkedHashSet<String>", "U", std::nullopt,
             std::nullopt, "new LinkedHashSet<>()"},
            {"U.java", "agentName", IdentKind::LocalVariable, "String", "U", "configure",
             std::nullopt, "conf.get(\"http.agent.name\")"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::TypeCardinality);
        CHECK(labels[0].confidence == Confidence::High);
    }
    SUBCASE("plural rule alone fires medium") {
        auto recs = build({
            {"U.java", "name", IdentKind::LocalVariable, "String", "U", "a", std::nullopt,
             std::nullopt},
            {"U.java", "names", IdentKind::LocalVariable, "String", "U", "b", std::nullopt,
             std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::TypeCardinality);
        CHECK(labels[0].confidence == Confidence::Medium);
    }
    SUBCASE("equal names are not a singular/plural pair") {
        auto recs = build({
            {"U.java", "names", IdentKind::LocalVariable, "String", "U", "a", std::nullopt,
             std::nullopt},
            {"U.java", "names", IdentKind::LocalVariable, "String", "U", "b", std::nullopt,
             std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::TypeCardinality));
    }
    SUBCASE("array types count as containers") {
        auto recs = build({
            {"U.java", "value", IdentKind::LocalVariable, "String", "U", "m", std::nullopt,
             std::nullopt},
            {"U.java", "values", IdentKind::LocalVariable, "String[]", "U", "m", std::nullopt,
             std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::TypeCardinality);
        CHECK(labels[0].confidence == Confidence::High);
    }
}

TEST_CASE("transformation: one extra edge token within one method") {
    Harness h;
    SUBCASE("leading token marks the transformed copy") {
        auto recs = build({
            {"S.java", "input", IdentKind::LocalVariable, "String", "S", "scan", std::nullopt,
             "state.get(nodeIndex).getInput()"},
            {"S.java", "scannedInput", IdentKind::LocalVariable, "String", "S", "scan",
             std::nullopt, "input.toLowerCase()"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::DerivTransformation);
        CHECK(labels[0].confidence == Confidence::Medium);
    }
    SUBCASE("different methods do not fire") {
        auto recs = build({
            {"S.java", "input", IdentKind::LocalVariable, "String", "S", "scan", std::nullopt,
             std::nullopt},
            {"S.java", "scannedInput", IdentKind::LocalVariable, "String", "S", "rescan",
             std::nullopt, std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::DerivTransformation));
    }
    SUBCASE("a middle extra token does not fire") {
        auto recs = build({
            {"S.java", "fooBar", IdentKind::LocalVariable, "String", "S", "m", std::nullopt,
             std::nullopt},
            {"S.java", "fooBazBar", IdentKind::LocalVariable, "String", "S", "m", std::nullopt,
             std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::DerivTransformation));
    }
}

TEST_CASE("type-descriptive: the extra token names the declared type") {
    Harness h;
    SUBCASE("target and targetObject declared Object") {
        auto recs = build({
            {"R.java", "target", IdentKind::Parameter, "Object", "Reader", "canRead", std::nullopt,
             std::nullopt},
            {"R.java", "targetObject", IdentKind::Parameter, "Object", "Writer", "canRead",
             std::nullopt, std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::DerivTypeDescriptive);
        CHECK(labels[0].confidence == Confidence::High);
        CHECK_FALSE(has_category(labels, Category::DerivTransformation));
    }
    SUBCASE("the same shape inside one method still suppresses transformation") {
        auto recs = build({
            {"R.java", "target", IdentKind::LocalVariable, "Object", "R", "m", std::nullopt,
             std::nullopt},
            {"R.java", "targetObject", IdentKind::LocalVariable, "Object", "R", "m", std::nullopt,
             std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::DerivTypeDescriptive);
        CHECK_FALSE(has_category(labels, Category::DerivTransformation));
    }
    SUBCASE("an extra token outside the type tokens falls back to transformation") {
        auto recs = build({
            {"R.java", "target", IdentKind::LocalVariable, "Object", "R", "m", std::nullopt,
             std::nullopt},
            {"R.java", "targetValue", IdentKind::LocalVariable, "Object", "R", "m", std::nullopt,
             std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK_FALSE(has_category(labels, Category::DerivTypeDescriptive));
        CHECK(labels[0].category == Category::DerivTransformation);
    }
}

TEST_CASE("temporary: the affixed name strips to the other") {
    Harness h;
    SUBCASE("rolesTmp strips to roles") {
        auto recs = build({
            {"T.java", "rolesTmp", IdentKind::LocalVariable, "Object", "T", "checkRole",
             std::nullopt, "httpSession.getAttribute(SurenessConstant.ROLES)"},
            {"T.java", "roles", IdentKind::LocalVariable, "List<String>", "T", "checkRole",
             std::nullopt, std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::DerivTemporary);
        CHECK(labels[0].confidence == Confidence::High);
    }
    SUBCASE("tempFile strips to file") {
        auto recs = build({
            {"T.java", "tempFile", IdentKind::LocalVariable, "File", "T", "copy", std::nullopt,
             std::nullopt},
            {"T.java", "file", IdentKind::LocalVariable, "File", "T", "copy", std::nullopt,
             std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::DerivTemporary);
    }
    SUBCASE("two affixed names do not fire") {
        auto recs = build({
            {"T.java", "tmpA", IdentKind::LocalVariable, std::nullopt, "T", "m", std::nullopt,
             std::nullopt},
            {"T.java", "tmpB", IdentKind::LocalVariable, std::nullopt, "T", "m", std::nullopt,
             std::nullopt},
        });
        CHECK(h.run(recs, 0, 1).empty());
    }
}

TEST_CASE("sequential and value-encoded pairs are mutually exclusive") {
    Harness h;
    SUBCASE("a plain numbered series is sequential") {
        auto recs = build({
            {"C.java", "cust1", IdentKind::LocalVariable, "Customer", "C", "fill", std::nullopt,
             "new Customer()"},
            {"C.java", "cust2", IdentKind::LocalVariable, "Customer", "C", "fill", std::nullopt,
             "new Customer()"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::NumericSequential);
        CHECK(labels[0].confidence == Confidence::High);
        CHECK_FALSE(has_category(labels, Category::NumericValueEncoded));
    }
    SUBCASE("matching literals make the pair value-encoded instead") {
        auto recs = build({
            {"C.java", "COUNT_2", IdentKind::Field, "int", "C", std::nullopt, "2", "2"},
            {"C.java", "COUNT_3", IdentKind::Field, "int", "C", std::nullopt, "3", "3"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::NumericValueEncoded);
        CHECK(labels[0].confidence == Confidence::High);
        CHECK_FALSE(has_category(labels, Category::NumericSequential));
    }
}

TEST_CASE("acronym: initials of the other name or its declared type") {
    Harness h;
    SUBCASE("sb against stringBuilder") {
        auto recs = build({
            {"D.java", "stringBuilder", IdentKind::LocalVariable, "StringBuilder", "D",
             "calcDigest", std::nullopt, "new StringBuilder(first)"},
            {"D.java", "sb", IdentKind::LocalVariable, "StringBuilder", "D", "bytesToHexString",
             std::nullopt, "new StringBuilder()"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::ConciseAcronym);
        CHECK(labels[0].confidence == Confidence::Medium);
        CHECK(has_category(labels, Category::ConciseAbbreviated));  // secondary
    }
    SUBCASE("single-token full name matches through the declared type") {
        auto recs = build({
            {"D.java", "stringbuilder", IdentKind::LocalVariable, "StringBuilder", "D", "a",
             std::nullopt, std::nullopt},
            {"D.java", "sb", IdentKind::LocalVariable, "StringBuilder", "D", "b", std::nullopt,
             std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::ConciseAcronym);
    }
    SUBCASE("initials that do not line up stay quiet") {
        auto recs = build({
            {"D.java", "sx", IdentKind::LocalVariable, "StringBuilder", "D", "a", std::nullopt,
             std::nullopt},
            {"D.java", "stringBuilder", IdentKind::LocalVariable, "StringBuilder", "D", "b",
             std::nullopt, std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::ConciseAcronym));
    }
}

TEST_CASE("abbreviated: dictionary or shape rule under compatible types") {
    Harness h;
    SUBCASE("log and logger with one declared type") {
        auto recs = build({
            {"L.java", "log", IdentKind::Field, "Logger", "L", std::nullopt, std::nullopt,
             "LoggerFactory.getLogger(HandlerManager.class)"},
            {"L.java", "logger", IdentKind::Field, "Logger", "L", std::nullopt, std::nullopt,
             "LoggerFactory.getLogger(HandlerManager.class)"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::ConciseAbbreviated);
        CHECK(labels[0].confidence == Confidence::High);
    }
    SUBCASE("unknown types downgrade to medium") {
        auto recs = build({
            {"L.java", "cfg", IdentKind::LocalVariable, std::nullopt, "L", "m", std::nullopt,
             std::nullopt},
            {"L.java", "config", IdentKind::LocalVariable, std::nullopt, "L", "n", std::nullopt,
             std::nullopt},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::ConciseAbbreviated);
        CHECK(labels[0].confidence == Confidence::Medium);
    }
    SUBCASE("unrelated types block the category") {
        auto recs = build({
            {"L.java", "log", IdentKind::Field, "Logger", "L", std::nullopt, std::nullopt,
             std::nullopt},
            {"L.java", "logarithm", IdentKind::Field, "double", "L", std::nullopt, std::nullopt,
             std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::ConciseAbbreviated));
    }
}

TEST_CASE("single-character reuse across different types") {
    Harness h;
    SUBCASE("b as a byte array and as a StringBuffer") {
        auto recs = build({
            {"B.java", "b", IdentKind::LocalVariable, "byte[]", "B", "readFully", std::nullopt,
             "new byte[1024]"},
            {"B.java", "b", IdentKind::LocalVariable, "StringBuffer", "B", "format", std::nullopt,
             "new StringBuffer()"},
        });
        auto labels = h.run(recs, 0, 1);
        REQUIRE_FALSE(labels.empty());
        CHECK(labels[0].category == Category::ConciseSingleChar);
        CHECK(labels[0].confidence == Confidence::Medium);
    }
    SUBCASE("integer loop counters are suppressed") {
        auto recs = build({
            {"B.java", "i", IdentKind::LocalVariable, "int", "B", "loopOuter", std::nullopt,
             std::nullopt},
            {"B.java", "i", IdentKind::LocalVariable, "Integer", "B", "loopInner", std::nullopt,
             std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::ConciseSingleChar));
    }
    SUBCASE("non-index letters still fire") {
        auto recs = build({
            {"B.java", "q", IdentKind::LocalVariable, "int", "B", "loopOuter", std::nullopt,
             std::nullopt},
            {"B.java", "q", IdentKind::LocalVariable, "Integer", "B", "loopInner", std::nullopt,
             std::nullopt},
        });
        CHECK(has_category(h.run(recs, 0, 1), Category::ConciseSingleChar));
    }
    SUBCASE("different letters never pair up as single-char reuse") {
        auto recs = build({
            {"B.java", "b", IdentKind::LocalVariable, "byte[]", "B", "m", std::nullopt,
             std::nullopt},
            {"B.java", "c", IdentKind::LocalVariable, "StringBuffer", "B", "m", std::nullopt,
             std::nullopt},
        });
        CHECK_FALSE(has_category(h.run(recs, 0, 1), Category::ConciseSingleChar));
    }
}

TEST_CASE("a fully unrelated pair yields no labels") {
    Harness h;
    auto recs = build({
        {"a/A.java", "parser", IdentKind::LocalVariable, "int", "A", "m", std::nullopt,
         std::nullopt},
        {"b/B.java", "widget", IdentKind::LocalVariable, "File", "B", "n", std::nullopt,
         std::nullopt},
    });
    CHECK(h.run(recs, 0, 1).empty());
}

TEST_CASE("classify_pairs keeps one primary label per labeled pair") {
    auto recs = build({
        {"a/X.java", "writer", IdentKind::LocalVariable, "OutputStreamWriter", "X", "flush",
         std::nullopt, "new OutputStreamWriter(out)"},
        {"a/X.java", "cust1", IdentKind::LocalVariable, "Customer", "X", "fill", std::nullopt,
         "new Customer()"},
        {"a/X.java", "cust2", IdentKind::LocalVariable, "Customer", "X", "fill", std::nullopt,
         "new Customer()"},
        {"b/Y.java", "writer", IdentKind::LocalVariable, "FastString", "Y", "render", std::nullopt,
         "new FastStringWriter(200)"},
        {"b/Y.java", "unrelatedThing", IdentKind::LocalVariable, "int", "Y", "render",
         std::nullopt, std::nullopt},
    });
    TypeRegistry reg = TypeRegistry::builtin();
    AbbreviationDictionary dict = AbbreviationDictionary::builtin();
    ClassifyConfig config;

    PairingOutcome pairs = generate_candidate_pairs_serial(recs, reg);
    ClassifyOutcome serial = classify_pairs_serial(pairs.pairs, recs, reg, dict, config);
    ExecutionPolicy policy;
    policy.threads = 4;
    ClassifyOutcome parallel = classify_pairs(pairs.pairs, recs, reg, dict, config, policy);

    CHECK(serial.labels == parallel.labels);

    // Exactly the writer collision and the cust series get labels, in pair
    // order: the writer pair (indices 0 and 3) sorts before the cust pair.
    REQUIRE(serial.labels.size() == 2);
    CHECK(serial.labels[0].category == Category::Colliding);
    CHECK(serial.labels[1].category == Category::NumericSequential);

    std::string jsonl = labels_to_jsonl(serial.labels, recs);
    CHECK(labels_to_jsonl(parallel.labels, recs) == jsonl);

    std::size_t newline_count = 0;
    for (char c : jsonl) {
        if (c == '\n') ++newline_count;
    }
    CHECK(newline_count == 2);

    auto first = nlohmann::ordered_json::parse(jsonl.substr(0, jsonl.find('\n')));
    std::vector<std::string> keys;
    for (const auto& item : first.items()) keys.push_back(item.key());
    REQUIRE(keys.size() == 6);
    CHECK(keys[0] == "left_id");
    CHECK(keys[1] == "right_id");
    CHECK(keys[2] == "category");
    CHECK(keys[3] == "confidence");
    CHECK(keys[4] == "rationale");
    CHECK(keys[5] == "needs_review");
    CHECK(first["category"] == "colliding");
    CHECK(first["needs_review"] == false);
}

TEST_CASE("low confidence always flags review; higher never does") {
    Harness h;
    auto recs = build({
        {"Pool.java", "conn", IdentKind::LocalVariable, "DBConnection", "Pool", "a", std::nullopt,
         std::nullopt},
        {"Pool.java", "db", IdentKind::LocalVariable, "DBConnection", "Pool", "b", std::nullopt,
         std::nullopt},
        {"Pool.java", "log", IdentKind::Field, "Logger", "Pool", std::nullopt, std::nullopt,
         std::nullopt},
        {"Pool.java", "logger", IdentKind::Field, "Logger", "Pool", std::nullopt, std::nullopt,
         std::nullopt},
    });
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs = {{0, 1}, {2, 3}};
    for (const auto& [l, r] : pairs) {
        for (const CategoryLabel& label : h.run(recs, l, r)) {
            CHECK(label.needs_review == (label.confidence == Confidence::Low));
        }
    }
}
