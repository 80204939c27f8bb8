#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

namespace idsim {

// Relation between two declared types, from the left argument's viewpoint:
// Subtype means "left is a subtype of right"; CollectionOf means "left is a
// container whose elements are right".
enum class TypeRel {
    Identical,
    Subtype,
    Supertype,
    CollectionOf,
    ElementOf,
    Unrelated,
    Unknown,
};

const char* to_string(TypeRel rel);
std::optional<TypeRel> type_rel_from_string(const std::string& s);
TypeRel invert(TypeRel rel);

// Curated nominal-subtyping facts over erased simple type names. No
// classpath is available, so only registered names can be related; anything
// else compares as Unknown (unless the raw strings already match).
class TypeRegistry {
public:
    // Standard-library slice: servlet request/response types, IO
    // writer/reader/stream hierarchies, collections, CharSequence family,
    // boxed numbers, common exceptions.
    static TypeRegistry builtin();

    // JSON file {"supertypes": {type: [direct supertypes...]},
    //            "collections": [name...], "known": [name...]}.
    // Throws std::runtime_error on malformed JSON or a supertype cycle
    // (the message names the cycle).
    static TypeRegistry load_file(const std::string& path);

    void add_supertype(const std::string& type, const std::string& direct_super);
    void add_known(const std::string& type);
    void add_collection(const std::string& type);
    void merge(const TypeRegistry& other);

    // Recomputes the transitive closure. Throws std::runtime_error naming
    // the cycle if the supertype relation is not acyclic.
    void finalize();

    bool knows(const std::string& erased_name) const;
    bool is_collection(const std::string& erased_name) const;
    // Strict transitive supertype test over erased simple names.
    bool is_supertype_of(const std::string& super_name, const std::string& sub_name) const;

private:
    std::map<std::string, std::set<std::string>> direct_;
    std::set<std::string> known_;
    std::set<std::string> collections_;
    std::map<std::string, std::set<std::string>> closure_;
};

// Lowers a raw declared-type string to a comparable form: strips all
// whitespace and rewrites a trailing vararg "..." to "[]".
std::string normalize_type(const std::string& raw);

// Drops generic arguments, resolves to the last dotted segment, keeps any
// array suffix: "java.util.List<String>[]" -> "List[]".
std::string erase_generics(const std::string& type_text);

// First top-level generic argument of a normalized type, with "? extends X"
// / "? super X" reduced to "X"; empty when there are no usable arguments.
std::string first_type_argument(const std::string& normalized);

// Relation between two optional declared types per the rules above; absent
// or unregistered types yield Unknown unless the strings already match.
TypeRel type_relation(const std::optional<std::string>& left,
                      const std::optional<std::string>& right, const TypeRegistry& registry);

}  // namespace idsim
