#include "idsim/type_registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace idsim {

namespace {

const std::set<std::string>& primitive_names() {
    static const std::set<std::string> prims = {
        "boolean", "byte", "short", "int", "long", "char", "float", "double", "void",
    };
    return prims;
}

}  // namespace

const char* to_string(TypeRel rel) {
    switch (rel) {
        case TypeRel::Identical:
            return "identical";
        case TypeRel::Subtype:
            return "subtype";
        case TypeRel::Supertype:
            return "supertype";
        case TypeRel::CollectionOf:
            return "collection_of";
        case TypeRel::ElementOf:
            return "element_of";
        case TypeRel::Unrelated:
            return "unrelated";
        case TypeRel::Unknown:
            return "unknown";
    }
    return "unknown";
}

std::optional<TypeRel> type_rel_from_string(const std::string& s) {
    if (s == "identical") return TypeRel::Identical;
    if (s == "subtype") return TypeRel::Subtype;
    if (s == "supertype") return TypeRel::Supertype;
    if (s == "collection_of") return TypeRel::CollectionOf;
    if (s == "element_of") return TypeRel::ElementOf;
    if (s == "unrelated") return TypeRel::Unrelated;
    if (s == "unknown") return TypeRel::Unknown;
    return std::nullopt;
}

TypeRel invert(TypeRel rel) {
    switch (rel) {
        case TypeRel::Subtype:
            return TypeRel::Supertype;
        case TypeRel::Supertype:
            return TypeRel::Subtype;
        case TypeRel::CollectionOf:
            return TypeRel::ElementOf;
        case TypeRel::ElementOf:
            return TypeRel::CollectionOf;
        default:
            return rel;
    }
}

void TypeRegistry::add_supertype(const std::string& type, const std::string& direct_super) {
    if (type.empty() || direct_super.empty()) {
        throw std::runtime_error("type registry: empty type name");
    }
    if (type == direct_super) {
        throw std::runtime_error("type registry: " + type + " cannot be its own supertype");
    }
    direct_[type].insert(direct_super);
    known_.insert(type);
    known_.insert(direct_super);
}

void TypeRegistry::add_known(const std::string& type) {
    if (type.empty()) {
        throw std::runtime_error("type registry: empty type name");
    }
    known_.insert(type);
}

void TypeRegistry::add_collection(const std::string& type) {
    if (type.empty()) {
        throw std::runtime_error("type registry: empty type name");
    }
    collections_.insert(type);
    known_.insert(type);
}

void TypeRegistry::merge(const TypeRegistry& other) {
    for (const auto& [type, supers] : other.direct_) {
        direct_[type].insert(supers.begin(), supers.end());
    }
    known_.insert(other.known_.begin(), other.known_.end());
    collections_.insert(other.collections_.begin(), other.collections_.end());
    finalize();
}

void TypeRegistry::finalize() {
    closure_.clear();
    // Iterative DFS with an explicit path so a cycle can be reported as
    // "A -> B -> A". state: 0 unvisited, 1 on stack, 2 done.
    std::map<std::string, int> state;
    std::vector<std::string> path;

    // Recursive lambda via explicit stack of (node, next-super iterator)
    // would be noisy; the registry is small, so plain recursion is fine.
    struct Walker {
        TypeRegistry& reg;
        std::map<std::string, int>& state;
        std::vector<std::string>& path;

        void visit(const std::string& node) {
            state[node] = 1;
            path.push_back(node);
            auto it = reg.direct_.find(node);
            if (it != reg.direct_.end()) {
                for (const std::string& super : it->second) {
                    int s = 0;
                    auto st = state.find(super);
                    if (st != state.end()) s = st->second;
                    if (s == 1) {
                        std::ostringstream msg;
                        msg << "type registry: supertype cycle ";
                        auto begin = std::find(path.begin(), path.end(), super);
                        for (auto p = begin; p != path.end(); ++p) {
                            msg << *p << " -> ";
                        }
                        msg << super;
                        throw std::runtime_error(msg.str());
                    }
                    if (s == 0) visit(super);
                    auto& out = reg.closure_[node];
                    out.insert(super);
                    auto cl = reg.closure_.find(super);
                    if (cl != reg.closure_.end()) {
                        out.insert(cl->second.begin(), cl->second.end());
                    }
                }
            }
            path.pop_back();
            state[node] = 2;
        }
    };

    Walker walker{*this, state, path};
    for (const auto& [type, supers] : direct_) {
        (void)supers;
        if (state[type] == 0) walker.visit(type);
    }
}

bool TypeRegistry::knows(const std::string& erased_name) const {
    if (primitive_names().count(erased_name) != 0) return true;
    return known_.count(erased_name) != 0;
}

bool TypeRegistry::is_collection(const std::string& erased_name) const {
    return collections_.count(erased_name) != 0;
}

bool TypeRegistry::is_supertype_of(const std::string& super_name, const std::string& sub_name) const {
    auto it = closure_.find(sub_name);
    if (it == closure_.end()) return false;
    return it->second.count(super_name) != 0;
}

TypeRegistry TypeRegistry::builtin() {
    TypeRegistry reg;

    // Servlet API.
    reg.add_supertype("HttpServletRequest", "ServletRequest");
    reg.add_supertype("HttpServletResponse", "ServletResponse");
    reg.add_known("FilterChain");
    reg.add_known("HttpSession");

    // Writers.
    reg.add_supertype("OutputStreamWriter", "Writer");
    reg.add_supertype("FileWriter", "OutputStreamWriter");
    reg.add_supertype("BufferedWriter", "Writer");
    reg.add_supertype("PrintWriter", "Writer");
    reg.add_supertype("StringWriter", "Writer");
    reg.add_supertype("CharArrayWriter", "Writer");
    reg.add_supertype("FastStringWriter", "Writer");
    reg.add_known("FastString");

    // Readers.
    reg.add_supertype("InputStreamReader", "Reader");
    reg.add_supertype("FileReader", "InputStreamReader");
    reg.add_supertype("BufferedReader", "Reader");
    reg.add_supertype("StringReader", "Reader");
    reg.add_supertype("CharArrayReader", "Reader");
    reg.add_supertype("LineNumberReader", "BufferedReader");

    // Streams.
    reg.add_supertype("FileInputStream", "InputStream");
    reg.add_supertype("ByteArrayInputStream", "InputStream");
    reg.add_supertype("FilterInputStream", "InputStream");
    reg.add_supertype("BufferedInputStream", "FilterInputStream");
    reg.add_supertype("DataInputStream", "FilterInputStream");
    reg.add_supertype("ObjectInputStream", "InputStream");
    reg.add_supertype("FileOutputStream", "OutputStream");
    reg.add_supertype("ByteArrayOutputStream", "OutputStream");
    reg.add_supertype("FilterOutputStream", "OutputStream");
    reg.add_supertype("BufferedOutputStream", "FilterOutputStream");
    reg.add_supertype("DataOutputStream", "FilterOutputStream");
    reg.add_supertype("PrintStream", "FilterOutputStream");
    reg.add_supertype("ObjectOutputStream", "OutputStream");

    // Collections and iteration.
    reg.add_supertype("Collection", "Iterable");
    reg.add_supertype("List", "Collection");
    reg.add_supertype("ArrayList", "List");
    reg.add_supertype("LinkedList", "List");
    reg.add_supertype("Vector", "List");
    reg.add_supertype("Stack", "Vector");
    reg.add_supertype("CopyOnWriteArrayList", "List");
    reg.add_supertype("Set", "Collection");
    reg.add_supertype("HashSet", "Set");
    reg.add_supertype("LinkedHashSet", "HashSet");
    reg.add_supertype("SortedSet", "Set");
    reg.add_supertype("NavigableSet", "SortedSet");
    reg.add_supertype("TreeSet", "NavigableSet");
    reg.add_supertype("EnumSet", "Set");
    reg.add_supertype("Queue", "Collection");
    reg.add_supertype("Deque", "Queue");
    reg.add_supertype("ArrayDeque", "Deque");
    reg.add_supertype("PriorityQueue", "Queue");
    reg.add_supertype("LinkedList", "Deque");
    reg.add_known("Iterator");
    reg.add_known("Stream");

    for (const char* name :
         {"Iterable", "Collection", "List", "ArrayList", "LinkedList", "Vector", "Stack",
          "CopyOnWriteArrayList", "Set", "HashSet", "LinkedHashSet", "SortedSet", "NavigableSet",
          "TreeSet", "EnumSet", "Queue", "Deque", "ArrayDeque", "PriorityQueue", "Iterator",
          "Stream"}) {
        reg.add_collection(name);
    }

    // Maps are deliberately not in the collections set: their first type
    // argument is the key, not the element.
    reg.add_supertype("HashMap", "Map");
    reg.add_supertype("LinkedHashMap", "HashMap");
    reg.add_supertype("SortedMap", "Map");
    reg.add_supertype("NavigableMap", "SortedMap");
    reg.add_supertype("TreeMap", "NavigableMap");
    reg.add_supertype("Hashtable", "Map");
    reg.add_supertype("ConcurrentHashMap", "Map");
    reg.add_supertype("EnumMap", "Map");

    // Character sequences.
    reg.add_supertype("String", "CharSequence");
    reg.add_supertype("StringBuilder", "CharSequence");
    reg.add_supertype("StringBuffer", "CharSequence");

    // Boxed numbers.
    reg.add_supertype("Integer", "Number");
    reg.add_supertype("Long", "Number");
    reg.add_supertype("Short", "Number");
    reg.add_supertype("Byte", "Number");
    reg.add_supertype("Float", "Number");
    reg.add_supertype("Double", "Number");
    reg.add_supertype("BigInteger", "Number");
    reg.add_supertype("BigDecimal", "Number");
    reg.add_known("Boolean");
    reg.add_known("Character");

    // Throwables.
    reg.add_supertype("Exception", "Throwable");
    reg.add_supertype("Error", "Throwable");
    reg.add_supertype("RuntimeException", "Exception");
    reg.add_supertype("IOException", "Exception");
    reg.add_supertype("FileNotFoundException", "IOException");
    reg.add_supertype("UncheckedIOException", "RuntimeException");
    reg.add_supertype("IllegalArgumentException", "RuntimeException");
    reg.add_supertype("IllegalStateException", "RuntimeException");
    reg.add_supertype("NullPointerException", "RuntimeException");
    reg.add_supertype("IndexOutOfBoundsException", "RuntimeException");
    reg.add_supertype("ArrayIndexOutOfBoundsException", "IndexOutOfBoundsException");
    reg.add_supertype("UnsupportedOperationException", "RuntimeException");
    reg.add_supertype("NumberFormatException", "IllegalArgumentException");

    // View hierarchies seen in template-engine code.
    reg.add_supertype("ThymeleafView", "AbstractThymeleafView");
    reg.add_supertype("ThymeleafReactiveView", "AbstractThymeleafView");

    // Common standalone roots.
    reg.add_known("Object");
    reg.add_known("Class");
    reg.add_known("File");
    reg.add_known("Path");
    reg.add_known("Logger");
    reg.add_known("Thread");
    reg.add_known("Runnable");

    reg.finalize();
    return reg;
}

TypeRegistry TypeRegistry::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("type registry: cannot open " + path);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("type registry: " + path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("type registry: " + path + ": top level must be an object");
    }

    TypeRegistry reg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "supertypes") {
            if (!value.is_object()) {
                throw std::runtime_error("type registry: " + path +
                                         ": \"supertypes\" must be an object");
            }
            for (const auto& [type, supers] : value.items()) {
                if (!supers.is_array()) {
                    throw std::runtime_error("type registry: " + path + ": supertypes of \"" +
                                             type + "\" must be an array");
                }
                for (const auto& super : supers) {
                    if (!super.is_string() || super.get<std::string>().empty()) {
                        throw std::runtime_error("type registry: " + path + ": supertypes of \"" +
                                                 type + "\" must be non-empty strings");
                    }
                    reg.add_supertype(type, super.get<std::string>());
                }
            }
        } else if (key == "collections" || key == "known") {
            if (!value.is_array()) {
                throw std::runtime_error("type registry: " + path + ": \"" + key +
                                         "\" must be an array");
            }
            for (const auto& name : value) {
                if (!name.is_string() || name.get<std::string>().empty()) {
                    throw std::runtime_error("type registry: " + path + ": \"" + key +
                                             "\" entries must be non-empty strings");
                }
                if (key == "collections") {
                    reg.add_collection(name.get<std::string>());
                } else {
                    reg.add_known(name.get<std::string>());
                }
            }
        } else {
            throw std::runtime_error("type registry: " + path + ": unknown key \"" + key + "\"");
        }
    }
    reg.finalize();
    return reg;
}

std::string normalize_type(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') continue;
        out.push_back(c);
    }
    // Vararg declarations are array-typed.
    while (out.size() >= 3 && out.compare(out.size() - 3, 3, "...") == 0) {
        out.replace(out.size() - 3, 3, "[]");
    }
    return out;
}

std::string erase_generics(const std::string& type_text) {
    std::string norm = normalize_type(type_text);
    std::string flat;
    flat.reserve(norm.size());
    int depth = 0;
    for (char c : norm) {
        if (c == '<') {
            ++depth;
        } else if (c == '>') {
            if (depth > 0) --depth;
        } else if (depth == 0) {
            flat.push_back(c);
        }
    }
    // Split any array suffix off before taking the last dotted segment.
    size_t suffix_at = flat.size();
    while (suffix_at >= 2 && flat.compare(suffix_at - 2, 2, "[]") == 0) {
        suffix_at -= 2;
    }
    std::string base = flat.substr(0, suffix_at);
    std::string suffix = flat.substr(suffix_at);
    size_t dot = base.rfind('.');
    if (dot != std::string::npos) {
        base = base.substr(dot + 1);
    }
    return base + suffix;
}

std::string first_type_argument(const std::string& normalized) {
    size_t open = normalized.find('<');
    if (open == std::string::npos) return "";
    int depth = 0;
    size_t start = open + 1;
    size_t end = std::string::npos;
    for (size_t i = open; i < normalized.size(); ++i) {
        char c = normalized[i];
        if (c == '<') {
            ++depth;
        } else if (c == '>') {
            --depth;
            if (depth == 0) {
                end = i;
                break;
            }
        } else if (c == ',' && depth == 1 && end == std::string::npos) {
            end = i;
            break;
        }
    }
    if (end == std::string::npos || end <= start) return "";
    std::string arg = normalized.substr(start, end - start);
    if (arg == "?") return "";
    if (arg.rfind("?extends", 0) == 0) {
        arg = arg.substr(8);
    } else if (arg.rfind("?super", 0) == 0) {
        arg = arg.substr(6);
    }
    return arg;
}

namespace {

// Relation over normalized, non-empty type strings.
TypeRel relate_normalized(const std::string& a, const std::string& b, const TypeRegistry& registry,
                          int depth) {
    if (a == b) return TypeRel::Identical;
    if (depth > 16) return TypeRel::Unknown;

    const std::string erased_a = erase_generics(a);
    const std::string erased_b = erase_generics(b);

    // Containment: arrays first, then registered container types whose first
    // type argument matches the other side.
    if (a.size() >= 2 && a.compare(a.size() - 2, 2, "[]") == 0 &&
        a.substr(0, a.size() - 2) == b) {
        return TypeRel::CollectionOf;
    }
    if (b.size() >= 2 && b.compare(b.size() - 2, 2, "[]") == 0 &&
        b.substr(0, b.size() - 2) == a) {
        return TypeRel::ElementOf;
    }
    if (registry.is_collection(erased_a)) {
        std::string elem = first_type_argument(a);
        if (!elem.empty() && elem == b) return TypeRel::CollectionOf;
    }
    if (registry.is_collection(erased_b)) {
        std::string elem = first_type_argument(b);
        if (!elem.empty() && elem == a) return TypeRel::ElementOf;
    }

    if (erased_a == erased_b) {
        // Same base type with differing generic arguments: the arguments
        // decide. Raw-vs-parameterized stays Unknown.
        std::string arg_a = first_type_argument(a);
        std::string arg_b = first_type_argument(b);
        if (arg_a.empty() || arg_b.empty()) return TypeRel::Unknown;
        TypeRel inner = relate_normalized(arg_a, arg_b, registry, depth + 1);
        switch (inner) {
            case TypeRel::Identical:
            case TypeRel::Subtype:
            case TypeRel::Supertype:
            case TypeRel::Unrelated:
            case TypeRel::Unknown:
                return inner;
            case TypeRel::CollectionOf:
            case TypeRel::ElementOf:
                return TypeRel::Unrelated;
        }
        return TypeRel::Unknown;
    }

    if (registry.knows(erased_a) && registry.knows(erased_b)) {
        if (registry.is_supertype_of(erased_b, erased_a)) return TypeRel::Subtype;
        if (registry.is_supertype_of(erased_a, erased_b)) return TypeRel::Supertype;
        return TypeRel::Unrelated;
    }
    return TypeRel::Unknown;
}

}  // namespace

TypeRel type_relation(const std::optional<std::string>& left,
                      const std::optional<std::string>& right, const TypeRegistry& registry) {
    if (!left.has_value() || !right.has_value()) return TypeRel::Unknown;
    std::string a = normalize_type(*left);
    std::string b = normalize_type(*right);
    if (a.empty() || b.empty()) return TypeRel::Unknown;
    return relate_normalized(a, b, registry, 0);
}

}  // namespace idsim
