#include "idsim/java_parser.hpp"

#include <optional>

#include "idsim/java_lexer.hpp"

namespace idsim {

namespace {

bool is_primitive_kw(std::string_view t) {
    return t == "boolean" || t == "byte" || t == "short" || t == "int" || t == "long" ||
           t == "char" || t == "float" || t == "double" || t == "void";
}

bool is_modifier_kw(std::string_view t) {
    return t == "public" || t == "private" || t == "protected" || t == "static" ||
           t == "final" || t == "abstract" || t == "native" || t == "synchronized" ||
           t == "transient" || t == "volatile" || t == "strictfp" || t == "default";
}

struct Parser {
    std::string_view src;
    const std::vector<Token>& toks;
    std::size_t i = 0;
    std::string project;
    std::string file_path;

    std::vector<IdentifierRecord> out;
    std::vector<std::string> class_stack;
    std::string current_method;  // empty when outside any method-like body
    bool malformed = false;
    std::string error;

    Parser(std::string_view source, const std::vector<Token>& tokens, std::string proj,
           std::string path)
        : src(source), toks(tokens), project(std::move(proj)), file_path(std::move(path)) {}

    const Token& cur() const { return toks[i]; }
    const Token& peek(std::size_t ahead) const {
        std::size_t j = i + ahead;
        return j < toks.size() ? toks[j] : toks.back();
    }
    bool at_end() const { return cur().kind == Tok::End; }
    void advance() {
        if (i + 1 < toks.size()) ++i;
    }
    bool is_punct(const Token& t, char c) const {
        return t.kind == Tok::Punct && t.text.size() == 1 && t.text[0] == c;
    }
    bool is_punct(const Token& t, std::string_view s) const {
        return t.kind == Tok::Punct && t.text == s;
    }
    bool is_kw(const Token& t, std::string_view w) const {
        return t.kind == Tok::Keyword && t.text == w;
    }
    bool is_ident(const Token& t) const { return t.kind == Tok::Identifier; }
    bool is_ident(const Token& t, std::string_view w) const {
        return t.kind == Tok::Identifier && t.text == w;
    }

    void fail(const std::string& msg, std::uint32_t line) {
        if (!malformed) {
            malformed = true;
            error = msg + " (line " + std::to_string(line) + ")";
        }
    }

    std::string slice(std::size_t first_tok, std::size_t count) const {
        if (count == 0 || first_tok >= toks.size()) return {};
        std::size_t last_tok = first_tok + count - 1;
        if (last_tok >= toks.size()) last_tok = toks.size() - 1;
        std::size_t b = toks[first_tok].begin;
        std::size_t e = toks[last_tok].end;
        if (e <= b) return {};
        return std::string(src.substr(b, e - b));
    }

    void emit(IdentKind kind, const Token& name_tok, std::optional<std::string> declared_type,
              std::optional<std::string> enclosing_method_override = std::nullopt,
              std::optional<std::string> initializer_literal = std::nullopt,
              std::optional<std::string> context_expr = std::nullopt) {
        IdentifierRecord r;
        r.project = project;
        r.file_path = file_path;
        r.name = std::string(name_tok.text);
        r.kind = kind;
        r.declared_type = std::move(declared_type);
        if (kind == IdentKind::Class || kind == IdentKind::Enum) {
            // a type declaration pushes itself before emitting, so its
            // enclosure is the element underneath
            if (class_stack.size() >= 2) {
                r.enclosing_class = class_stack[class_stack.size() - 2];
            }
            if (!current_method.empty()) r.enclosing_method = current_method;  // local class
        } else {
            if (!class_stack.empty()) r.enclosing_class = class_stack.back();
            if (enclosing_method_override) {
                r.enclosing_method = std::move(enclosing_method_override);
            } else if (!current_method.empty() &&
                       (kind == IdentKind::Parameter || kind == IdentKind::LocalVariable)) {
                r.enclosing_method = current_method;
            }
        }
        r.line = name_tok.line;
        r.column = name_tok.col;
        r.initializer_literal = std::move(initializer_literal);
        r.context_expr = std::move(context_expr);
        r.record_id = compute_record_id(r.project, r.file_path, r.line, r.column, r.name);
        out.push_back(std::move(r));
    }

    // ---- small skippers ---------------------------------------------------

    void skip_annotation() {
        // cur == '@'
        advance();
        if (is_ident(cur())) {
            advance();
            while (is_punct(cur(), '.') && is_ident(peek(1))) {
                advance();
                advance();
            }
        }
        if (is_punct(cur(), '(')) skip_balanced('(', ')');
    }

    void skip_balanced(char open, char close) {
        // cur == open
        int depth = 0;
        while (!at_end()) {
            if (is_punct(cur(), open)) {
                ++depth;
            } else if (is_punct(cur(), close)) {
                --depth;
                if (depth == 0) {
                    advance();
                    return;
                }
            }
            advance();
        }
        fail("unexpected end of file", toks.back().line);
    }

    // Lenient angle skipping for generics in headers and expressions.
    bool skip_angles_lenient() {
        // cur == '<'
        int depth = 0;
        std::size_t save = i;
        while (!at_end()) {
            if (is_punct(cur(), '<')) {
                ++depth;
            } else if (is_punct(cur(), '>')) {
                --depth;
                if (depth == 0) {
                    advance();
                    return true;
                }
            } else if (is_punct(cur(), '{') || is_punct(cur(), '}') || is_punct(cur(), ';')) {
                i = save;
                return false;  // cannot be a generic argument list
            }
            advance();
        }
        i = save;
        return false;
    }

    // Strict generic-argument skipping used while trying a type parse: only
    // tokens that can appear inside type arguments are accepted, so an
    // expression like "a < b && c > d" is rejected rather than misread.
    bool skip_generic_args_strict() {
        // cur == '<'
        int depth = 0;
        bool prev_amp = false;
        while (!at_end()) {
            const Token& t = cur();
            bool amp = false;
            if (is_punct(t, '<')) {
                ++depth;
            } else if (is_punct(t, '>')) {
                --depth;
                if (depth == 0) {
                    advance();
                    return true;
                }
            } else if (is_ident(t) || is_punct(t, '?') || is_punct(t, ',') ||
                       is_punct(t, '.') || is_punct(t, '[') || is_punct(t, ']') ||
                       is_kw(t, "extends") || is_kw(t, "super") ||
                       (t.kind == Tok::Keyword && is_primitive_kw(t.text))) {
                // acceptable type-argument token
            } else if (is_punct(t, '&')) {
                if (prev_amp) return false;  // '&&' cannot appear in a type
                amp = true;
            } else {
                return false;
            }
            prev_amp = amp;
            advance();
        }
        return false;
    }

    struct ModifierInfo {
        bool saw_static = false;
    };

    ModifierInfo skip_modifiers_and_annotations() {
        ModifierInfo m;
        while (!at_end()) {
            if (is_punct(cur(), '@') && !is_kw(peek(1), "interface")) {
                skip_annotation();
            } else if (cur().kind == Tok::Keyword && is_modifier_kw(cur().text)) {
                if (cur().text == "static") m.saw_static = true;
                advance();
            } else if (is_ident(cur(), "sealed")) {
                advance();
            } else if (is_ident(cur(), "non") && is_punct(peek(1), '-') &&
                       is_ident(peek(2), "sealed")) {
                advance();
                advance();
                advance();
            } else {
                break;
            }
        }
        return m;
    }

    // ---- type parsing -------------------------------------------------------

    // Attempts to parse a type at the current position. Returns the raw
    // source text, or nullopt (position restored) when the tokens cannot
    // form a type. allow_void permits "void" (method return types).
    std::optional<std::string> try_parse_type(bool allow_void) {
        std::size_t save = i;
        std::size_t first = i;
        if (cur().kind == Tok::Keyword && is_primitive_kw(cur().text)) {
            if (cur().text == "void" && !allow_void) return std::nullopt;
            advance();
        } else if (is_ident(cur())) {
            advance();
            while (true) {
                if (is_punct(cur(), '<')) {
                    if (!skip_generic_args_strict()) {
                        i = save;
                        return std::nullopt;
                    }
                }
                if (is_punct(cur(), '.') && is_ident(peek(1))) {
                    advance();
                    advance();
                    continue;
                }
                break;
            }
        } else {
            return std::nullopt;
        }
        while (is_punct(cur(), '[') && is_punct(peek(1), ']')) {
            advance();
            advance();
        }
        return slice(first, i - first);
    }

    // ---- expression scanning --------------------------------------------------

    struct ExprStop {
        bool semicolon = false;
        bool comma = false;
        bool close_paren = false;
    };

    struct ExprSpan {
        std::size_t first = 0;
        std::size_t count = 0;
        bool empty() const { return count == 0; }
    };

    // Scans an expression, stopping (without consuming) at any requested
    // terminator at nesting depth zero, or at an unbalanced closer. Extracts
    // the declarations expressions can hide: lambda parameters, lambda-body
    // locals, switch-expression bodies and anonymous-class members.
    ExprSpan scan_expression(ExprStop stop) {
        ExprSpan span;
        span.first = i;
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0) {
                if ((stop.semicolon && is_punct(t, ';')) || (stop.comma && is_punct(t, ',')) ||
                    (stop.close_paren && is_punct(t, ')'))) {
                    break;
                }
            }
            if (is_punct(t, '(')) {
                if (paren_starts_lambda()) {
                    parse_lambda();
                    continue;
                }
                ++depth;
                advance();
            } else if (is_punct(t, '[') || is_punct(t, '{')) {
                ++depth;
                advance();
            } else if (is_punct(t, ')') || is_punct(t, ']') || is_punct(t, '}')) {
                if (depth == 0) break;  // the caller's closer
                --depth;
                advance();
            } else if (is_ident(t) && is_punct(peek(1), "->")) {
                // single bare lambda parameter
                emit(IdentKind::LocalVariable, t, std::nullopt);
                advance();
                advance();
                if (is_punct(cur(), '{')) parse_block(current_method);
            } else if (is_kw(t, "new")) {
                scan_new_expression();
            } else if (is_kw(t, "switch")) {
                advance();
                if (is_punct(cur(), '(')) {
                    advance();
                    scan_expression({.close_paren = true});
                    if (is_punct(cur(), ')')) advance();
                }
                if (is_punct(cur(), '{')) parse_switch_block();
            } else {
                advance();
            }
        }
        span.count = i - span.first;
        return span;
    }

    // cur == '(': does the balanced group end with "->"?
    bool paren_starts_lambda() const {
        int depth = 0;
        std::size_t j = i;
        while (j < toks.size() && toks[j].kind != Tok::End) {
            const Token& t = toks[j];
            if (is_punct(t, '(')) {
                ++depth;
            } else if (is_punct(t, ')')) {
                --depth;
                if (depth == 0) {
                    return j + 1 < toks.size() && is_punct(toks[j + 1], "->");
                }
            }
            ++j;
        }
        return false;
    }

    void parse_lambda() {
        // cur == '(' opening a lambda parameter list
        advance();
        while (!at_end() && !is_punct(cur(), ')')) {
            skip_modifiers_and_annotations();
            if (is_punct(cur(), ')')) break;
            if (is_ident(cur()) && (is_punct(peek(1), ',') || is_punct(peek(1), ')'))) {
                emit(IdentKind::LocalVariable, cur(), std::nullopt);
                advance();
            } else {
                std::optional<std::string> type = try_parse_type(false);
                if (type && is_ident(cur())) {
                    std::optional<std::string> declared;
                    if (*type != "var") declared = *type;
                    emit(IdentKind::LocalVariable, cur(), std::move(declared));
                    advance();
                } else {
                    advance();  // robustness
                }
            }
            if (is_punct(cur(), ',')) advance();
        }
        if (is_punct(cur(), ')')) advance();
        if (is_punct(cur(), "->")) advance();
        if (is_punct(cur(), '{')) parse_block(current_method);
    }

    void scan_new_expression() {
        // cur == "new"
        advance();
        // type part: qualified name or primitive, generic arguments allowed
        while (!at_end()) {
            if (is_ident(cur()) || (cur().kind == Tok::Keyword && is_primitive_kw(cur().text))) {
                advance();
            } else if (is_punct(cur(), '.') && is_ident(peek(1))) {
                advance();
                advance();
            } else if (is_punct(cur(), '<')) {
                if (!skip_angles_lenient()) break;
            } else {
                break;
            }
        }
        if (is_punct(cur(), '[')) {
            return;  // array creation: dims and '{...}' initializer are plain nesting
        }
        if (is_punct(cur(), '(')) {
            advance();
            scan_expression({.close_paren = true});
            if (is_punct(cur(), ')')) advance();
            if (is_punct(cur(), '{')) {
                // anonymous class: members belong to the enclosing named class
                parse_class_body(false);
            }
        }
    }

    // ---- declarations -----------------------------------------------------------

    void parse_compilation_unit() {
        while (!at_end() && !malformed) {
            skip_modifiers_and_annotations();
            if (at_end()) break;
            if (is_kw(cur(), "package") || is_kw(cur(), "import")) {
                while (!at_end() && !is_punct(cur(), ';')) advance();
                if (is_punct(cur(), ';')) advance();
            } else if (starts_type_declaration()) {
                parse_type_declaration();
            } else {
                advance();  // module-info directives and stray tokens
            }
        }
    }

    bool starts_type_declaration() const {
        if (is_kw(cur(), "class") || is_kw(cur(), "interface") || is_kw(cur(), "enum")) {
            return true;
        }
        if (is_punct(cur(), '@') && is_kw(peek(1), "interface")) return true;
        if (is_ident(cur(), "record") && is_ident(peek(1)) &&
            (is_punct(peek(2), '(') || is_punct(peek(2), '<'))) {
            return true;
        }
        return false;
    }

    void parse_type_declaration() {
        bool is_enum = false;
        bool is_record = false;
        if (is_punct(cur(), '@')) {
            advance();  // '@interface'
            advance();
        } else if (is_kw(cur(), "enum")) {
            is_enum = true;
            advance();
        } else if (is_ident(cur(), "record")) {
            is_record = true;
            advance();
        } else {
            advance();  // class / interface
        }
        if (!is_ident(cur())) {
            fail("type declaration without a name", cur().line);
            return;
        }
        Token name_tok = cur();
        advance();

        class_stack.push_back(std::string(name_tok.text));
        emit(is_enum ? IdentKind::Enum : IdentKind::Class, name_tok, std::nullopt);

        if (is_punct(cur(), '<')) skip_angles_lenient();  // type parameters: names excluded

        if (is_record && is_punct(cur(), '(')) {
            // record components are state declarations: captured as fields
            advance();
            while (!at_end() && !is_punct(cur(), ')')) {
                skip_modifiers_and_annotations();
                std::optional<std::string> type = try_parse_type(false);
                if (type && is_ident(cur())) {
                    emit(IdentKind::Field, cur(), std::move(type));
                    advance();
                } else {
                    advance();
                }
                if (is_punct(cur(), ',')) advance();
            }
            if (is_punct(cur(), ')')) advance();
        }

        // extends / implements / permits: no declarations, skip to the body
        while (!at_end() && !is_punct(cur(), '{')) advance();
        if (at_end()) {
            fail("type declaration without a body", name_tok.line);
            class_stack.pop_back();
            return;
        }
        parse_class_body(is_enum);
        class_stack.pop_back();
    }

    void parse_class_body(bool enum_constants_first) {
        // cur == '{'
        std::uint32_t open_line = cur().line;
        advance();

        if (enum_constants_first) {
            while (!at_end() && !malformed) {
                while (is_punct(cur(), '@') && !is_kw(peek(1), "interface")) skip_annotation();
                if (is_ident(cur())) {
                    std::optional<std::string> enum_type;
                    if (!class_stack.empty()) enum_type = class_stack.back();
                    emit(IdentKind::EnumConstant, cur(), std::move(enum_type));
                    advance();
                    if (is_punct(cur(), '(')) skip_balanced('(', ')');
                    if (is_punct(cur(), '{')) parse_class_body(false);
                }
                if (is_punct(cur(), ',')) {
                    advance();
                    continue;
                }
                break;
            }
            if (is_punct(cur(), ';')) advance();
        }

        while (!at_end() && !malformed) {
            if (is_punct(cur(), '}')) {
                advance();
                return;
            }
            if (is_punct(cur(), ';')) {
                advance();
                continue;
            }
            ModifierInfo mods = skip_modifiers_and_annotations();
            if (is_punct(cur(), '}')) {
                advance();
                return;
            }
            if (starts_type_declaration()) {
                parse_type_declaration();
            } else if (is_punct(cur(), '{')) {
                // instance / static initializer block
                parse_block(mods.saw_static ? "<clinit>" : "<init>");
            } else {
                parse_member(mods);
            }
        }
        if (!malformed) fail("unexpected end of file inside a type body", open_line);
    }

    void parse_member(const ModifierInfo& mods) {
        if (is_punct(cur(), '<')) {
            if (!skip_angles_lenient()) {  // generic method type parameters
                advance();
                return;
            }
        }
        // constructor: the innermost class name followed directly by '('
        if (is_ident(cur()) && !class_stack.empty() && cur().text == class_stack.back() &&
            is_punct(peek(1), '(')) {
            Token name_tok = cur();
            advance();
            emit(IdentKind::Method, name_tok, std::nullopt);
            parse_params(std::string(name_tok.text));
            finish_method_tail(std::string(name_tok.text));
            return;
        }
        std::optional<std::string> type = try_parse_type(true);
        if (!type) {
            advance();  // unrecognized member fragment; keep going
            return;
        }
        if (!is_ident(cur())) {
            advance();
            return;
        }
        Token name_tok = cur();
        advance();
        if (is_punct(cur(), '(')) {
            emit(IdentKind::Method, name_tok, std::move(type));
            parse_params(std::string(name_tok.text));
            finish_method_tail(std::string(name_tok.text));
            return;
        }
        // field declarator list
        const std::string init_context = mods.saw_static ? "<clinit>" : "<init>";
        while (true) {
            std::string dims;
            while (is_punct(cur(), '[') && is_punct(peek(1), ']')) {
                dims += "[]";
                advance();
                advance();
            }
            std::optional<std::string> literal;
            std::optional<std::string> ctx;
            if (is_punct(cur(), '=')) {
                advance();
                std::string saved = current_method;
                current_method = init_context;  // lambdas in initializers land here
                ExprSpan span = scan_expression({.semicolon = true, .comma = true});
                current_method = saved;
                capture_initializer(span, literal, ctx);
            }
            emit(IdentKind::Field, name_tok, *type + dims, std::nullopt, std::move(literal),
                 std::move(ctx));
            if (is_punct(cur(), ',')) {
                advance();
                if (!is_ident(cur())) break;
                name_tok = cur();
                advance();
                continue;
            }
            break;
        }
        if (is_punct(cur(), ';')) advance();
    }

    void finish_method_tail(const std::string& method_name) {
        // after the parameter list: throws clause or annotation-member default
        while (!at_end() && !is_punct(cur(), '{') && !is_punct(cur(), ';')) advance();
        if (is_punct(cur(), '{')) {
            parse_block(method_name);
        } else if (is_punct(cur(), ';')) {
            advance();
        }
    }

    void parse_params(const std::string& method_name) {
        // cur == '('
        advance();
        while (!at_end() && !is_punct(cur(), ')')) {
            skip_modifiers_and_annotations();
            if (is_punct(cur(), ')')) break;
            std::optional<std::string> type = try_parse_type(false);
            if (!type) {
                advance();
                continue;
            }
            std::string full_type = *type;
            if (is_punct(cur(), "...")) {
                full_type += "...";
                advance();
            }
            if (is_kw(cur(), "this")) {
                advance();  // receiver parameter: not a declaration
            } else if (is_ident(cur())) {
                Token name_tok = cur();
                advance();
                while (is_punct(cur(), '[') && is_punct(peek(1), ']')) {
                    full_type += "[]";
                    advance();
                    advance();
                }
                emit(IdentKind::Parameter, name_tok, full_type, method_name);
            }
            if (is_punct(cur(), ',')) advance();
        }
        if (is_punct(cur(), ')')) {
            advance();
        } else {
            fail("unexpected end of file in a parameter list", toks.back().line);
        }
    }

    void capture_initializer(const ExprSpan& span, std::optional<std::string>& literal,
                             std::optional<std::string>& ctx) {
        if (span.empty()) return;
        ctx = slice(span.first, span.count);
        if (span.count == 1) {
            const Token& t = toks[span.first];
            if (t.kind == Tok::Number || t.kind == Tok::String || t.kind == Tok::Char ||
                is_kw(t, "true") || is_kw(t, "false") || is_kw(t, "null")) {
                literal = std::string(t.text);
            }
        }
    }

    // ---- statements ----------------------------------------------------------

    void parse_block(const std::string& method_name) {
        // cur == '{'
        std::uint32_t open_line = cur().line;
        std::string saved = current_method;
        current_method = method_name;
        advance();
        while (!at_end() && !malformed && !is_punct(cur(), '}')) {
            parse_statement();
        }
        if (is_punct(cur(), '}')) {
            advance();
        } else if (!malformed) {
            fail("unexpected end of file inside a block", open_line);
        }
        current_method = saved;
    }

    void parse_statement() {
        const Token& t = cur();
        if (is_punct(t, '{')) {
            parse_block(current_method);
            return;
        }
        if (is_punct(t, ';')) {
            advance();
            return;
        }
        if (is_kw(t, "if") || is_kw(t, "while") || is_kw(t, "synchronized")) {
            bool was_if = is_kw(t, "if");
            advance();
            if (is_punct(cur(), '(')) {
                advance();
                scan_expression({.close_paren = true});
                if (is_punct(cur(), ')')) advance();
            }
            parse_statement();
            if (was_if && is_kw(cur(), "else")) {
                advance();
                parse_statement();
            }
            return;
        }
        if (is_kw(t, "do")) {
            advance();
            parse_statement();
            if (is_kw(cur(), "while")) {
                advance();
                if (is_punct(cur(), '(')) {
                    advance();
                    scan_expression({.close_paren = true});
                    if (is_punct(cur(), ')')) advance();
                }
            }
            if (is_punct(cur(), ';')) advance();
            return;
        }
        if (is_kw(t, "switch")) {
            advance();
            if (is_punct(cur(), '(')) {
                advance();
                scan_expression({.close_paren = true});
                if (is_punct(cur(), ')')) advance();
            }
            if (is_punct(cur(), '{')) parse_switch_block();
            return;
        }
        if (is_kw(t, "for")) {
            parse_for();
            return;
        }
        if (is_kw(t, "try")) {
            parse_try();
            return;
        }
        if (is_kw(t, "return") || is_kw(t, "throw") || is_kw(t, "assert")) {
            advance();
            scan_expression({.semicolon = true});
            if (is_punct(cur(), ';')) advance();
            return;
        }
        if (is_kw(t, "break") || is_kw(t, "continue")) {
            while (!at_end() && !is_punct(cur(), ';')) advance();
            if (is_punct(cur(), ';')) advance();
            return;
        }
        if (is_ident(t, "yield")) {
            advance();
            scan_expression({.semicolon = true});
            if (is_punct(cur(), ';')) advance();
            return;
        }
        if (is_ident(t) && is_punct(peek(1), ':')) {
            advance();  // statement label
            advance();
            parse_statement();
            return;
        }
        // local class, local declaration, or expression statement
        std::size_t save = i;
        skip_modifiers_and_annotations();
        if (starts_type_declaration()) {
            parse_type_declaration();
            return;
        }
        if (try_local_declaration(false)) return;
        i = save;
        scan_expression({.semicolon = true});
        if (is_punct(cur(), ';')) advance();
    }

    void parse_switch_block() {
        // cur == '{'
        std::uint32_t open_line = cur().line;
        advance();
        while (!at_end() && !malformed) {
            if (is_punct(cur(), '}')) {
                advance();
                return;
            }
            if (is_kw(cur(), "case") || is_kw(cur(), "default")) {
                advance();
                int depth = 0;
                while (!at_end()) {
                    if (is_punct(cur(), '(') || is_punct(cur(), '[')) {
                        ++depth;
                    } else if (is_punct(cur(), ')') || is_punct(cur(), ']')) {
                        --depth;
                    } else if (depth == 0 &&
                               (is_punct(cur(), ':') || is_punct(cur(), "->"))) {
                        break;
                    } else if (is_punct(cur(), '{') || is_punct(cur(), '}')) {
                        break;  // malformed label; bail out
                    }
                    advance();
                }
                if (is_punct(cur(), ':')) {
                    advance();
                } else if (is_punct(cur(), "->")) {
                    advance();
                    if (is_punct(cur(), '{')) {
                        parse_block(current_method);
                    } else {
                        if (is_kw(cur(), "throw")) advance();
                        scan_expression({.semicolon = true});
                        if (is_punct(cur(), ';')) advance();
                    }
                }
                continue;
            }
            parse_statement();
        }
        if (!malformed) fail("unexpected end of file inside a switch block", open_line);
    }

    void parse_for() {
        // cur == "for"
        advance();
        if (!is_punct(cur(), '(')) return;
        // enhanced iff a top-level ':' appears before any top-level ';'
        bool enhanced = false;
        {
            int depth = 0;
            std::size_t j = i;
            while (j < toks.size() && toks[j].kind != Tok::End) {
                const Token& tk = toks[j];
                if (is_punct(tk, '(') || is_punct(tk, '[')) {
                    ++depth;
                } else if (is_punct(tk, ']')) {
                    --depth;
                } else if (is_punct(tk, ')')) {
                    --depth;
                    if (depth == 0) break;
                } else if (depth == 1 && is_punct(tk, ';')) {
                    break;
                } else if (depth == 1 && is_punct(tk, ':')) {
                    enhanced = true;
                    break;
                }
                ++j;
            }
        }
        advance();  // consume '('
        if (enhanced) {
            skip_modifiers_and_annotations();
            std::optional<std::string> type;
            if (is_ident(cur(), "var") && is_ident(peek(1))) {
                advance();  // inferred type stays absent
            } else {
                type = try_parse_type(false);
            }
            if (is_ident(cur())) {
                Token name_tok = cur();
                advance();
                if (is_punct(cur(), ':')) advance();
                ExprSpan span = scan_expression({.close_paren = true});
                std::optional<std::string> ctx;
                if (!span.empty()) ctx = slice(span.first, span.count);
                emit(IdentKind::LocalVariable, name_tok, std::move(type), std::nullopt,
                     std::nullopt, std::move(ctx));
            } else {
                scan_expression({.close_paren = true});
            }
            if (is_punct(cur(), ')')) advance();
            parse_statement();
            return;
        }
        // classic form: init; condition; update
        if (is_punct(cur(), ';')) {
            advance();
        } else if (!try_local_declaration(true)) {
            scan_expression({.semicolon = true});
            if (is_punct(cur(), ';')) advance();
        }
        scan_expression({.semicolon = true});
        if (is_punct(cur(), ';')) advance();
        scan_expression({.close_paren = true});
        if (is_punct(cur(), ')')) advance();
        parse_statement();
    }

    void parse_try() {
        // cur == "try"
        advance();
        if (is_punct(cur(), '(')) {
            advance();
            while (!at_end() && !is_punct(cur(), ')')) {
                skip_modifiers_and_annotations();
                if (is_punct(cur(), ')')) break;
                std::size_t save = i;
                std::optional<std::string> type;
                bool var_form = false;
                if (is_ident(cur(), "var") && is_ident(peek(1))) {
                    advance();
                    var_form = true;
                } else {
                    type = try_parse_type(false);
                }
                if ((type || var_form) && is_ident(cur()) && is_punct(peek(1), '=')) {
                    Token name_tok = cur();
                    advance();
                    advance();  // '='
                    ExprSpan span = scan_expression({.semicolon = true, .close_paren = true});
                    std::optional<std::string> literal;
                    std::optional<std::string> ctx;
                    capture_initializer(span, literal, ctx);
                    emit(IdentKind::LocalVariable, name_tok, std::move(type), std::nullopt,
                         std::move(literal), std::move(ctx));
                } else {
                    // an existing effectively-final variable used as a resource
                    i = save;
                    scan_expression({.semicolon = true, .close_paren = true});
                }
                if (is_punct(cur(), ';')) advance();
            }
            if (is_punct(cur(), ')')) advance();
        }
        if (is_punct(cur(), '{')) parse_block(current_method);
        while (is_kw(cur(), "catch")) {
            advance();
            if (is_punct(cur(), '(')) {
                advance();
                skip_modifiers_and_annotations();
                std::size_t type_first = i;
                std::optional<std::string> type = try_parse_type(false);
                while (is_punct(cur(), '|')) {  // multi-catch: keep the raw union text
                    advance();
                    try_parse_type(false);
                }
                std::optional<std::string> declared;
                if (type) declared = slice(type_first, i - type_first);
                if (is_ident(cur())) {
                    emit(IdentKind::LocalVariable, cur(), std::move(declared));
                    advance();
                }
                if (is_punct(cur(), ')')) advance();
            }
            if (is_punct(cur(), '{')) parse_block(current_method);
        }
        if (is_kw(cur(), "finally")) {
            advance();
            if (is_punct(cur(), '{')) parse_block(current_method);
        }
    }

    bool try_local_declaration(bool in_for_init) {
        std::size_t save = i;
        std::size_t emitted_before = out.size();
        skip_modifiers_and_annotations();
        std::optional<std::string> type;
        if (is_ident(cur(), "var") && is_ident(peek(1)) && is_punct(peek(2), '=')) {
            advance();  // 'var': inferred type stays absent
        } else {
            type = try_parse_type(false);
            if (!type) {
                i = save;
                return false;
            }
            if (*type == "var") type.reset();
        }
        if (!is_ident(cur())) {
            i = save;
            out.resize(emitted_before);
            return false;
        }
        // the token after the declarator name (and any array dims) decides
        {
            std::size_t j = i + 1;
            while (j + 1 < toks.size() && is_punct(toks[j], '[') && is_punct(toks[j + 1], ']')) {
                j += 2;
            }
            const Token& after = j < toks.size() ? toks[j] : toks.back();
            if (!(is_punct(after, '=') || is_punct(after, ';') || is_punct(after, ','))) {
                i = save;
                out.resize(emitted_before);
                return false;
            }
        }
        Token name_tok = cur();
        advance();
        while (true) {
            std::string dims;
            while (is_punct(cur(), '[') && is_punct(peek(1), ']')) {
                dims += "[]";
                advance();
                advance();
            }
            std::optional<std::string> literal;
            std::optional<std::string> ctx;
            if (is_punct(cur(), '=')) {
                advance();
                ExprStop stop{.semicolon = true, .comma = true};
                if (in_for_init) stop.close_paren = true;
                ExprSpan span = scan_expression(stop);
                capture_initializer(span, literal, ctx);
            }
            std::optional<std::string> full_type;
            if (type) full_type = *type + dims;
            emit(IdentKind::LocalVariable, name_tok, std::move(full_type), std::nullopt,
                 std::move(literal), std::move(ctx));
            if (is_punct(cur(), ',')) {
                advance();
                if (!is_ident(cur())) break;
                name_tok = cur();
                advance();
                continue;
            }
            break;
        }
        if (is_punct(cur(), ';')) advance();
        return true;
    }
};

}  // namespace

ParseOutcome parse_file(const std::string& file_path, std::string_view source,
                        const std::string& project_label) {
    ParseOutcome outcome;
    LexResult lexed = lex_java(source);
    if (!lexed.ok) {
        outcome.ok = false;
        outcome.error = lexed.error + " (line " + std::to_string(lexed.error_line) + ")";
        return outcome;
    }
    Parser parser(source, lexed.tokens, project_label, file_path);
    parser.parse_compilation_unit();
    if (parser.malformed) {
        outcome.ok = false;
        outcome.error = parser.error;
        return outcome;
    }
    outcome.records = std::move(parser.out);
    return outcome;
}

}  // namespace idsim
