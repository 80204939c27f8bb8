#include "idsim/java_lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace idsim {

namespace {

// Reserved words only. Contextual keywords (var, record, yield, sealed,
// permits, open, module, ...) stay identifiers; the parser treats them
// specially where needed.
const std::unordered_set<std::string_view>& keyword_set() {
    static const std::unordered_set<std::string_view> kw = {
        "abstract", "assert",    "boolean",  "break",     "byte",
        "case",     "catch",     "char",     "class",     "const",
        "continue", "default",   "do",       "double",    "else",
        "enum",     "extends",   "final",    "finally",   "float",
        "for",      "goto",      "if",       "implements", "import",
        "instanceof", "int",     "interface", "long",     "native",
        "new",      "package",   "private",  "protected", "public",
        "return",   "short",     "static",   "strictfp",  "super",
        "switch",   "synchronized", "this",  "throw",     "throws",
        "transient", "try",      "void",     "volatile",  "while",
        "true",     "false",     "null",
    };
    return kw;
}

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

struct Cursor {
    std::string_view src;
    std::size_t pos = 0;
    std::uint32_t line = 1;
    std::uint32_t col = 1;

    bool done() const { return pos >= src.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }
    void advance() {
        if (done()) return;
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void advance_n(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) advance();
    }
};

}  // namespace

bool is_java_keyword(std::string_view word) {
    return keyword_set().count(word) != 0;
}

LexResult lex_java(std::string_view source) {
    LexResult out;
    out.tokens.reserve(source.size() / 4 + 8);
    Cursor cur{source};

    auto fail = [&](std::string msg, std::uint32_t line) {
        out.ok = false;
        out.error = std::move(msg);
        out.error_line = line;
    };

    auto push = [&](Tok kind, std::size_t begin, std::uint32_t line, std::uint32_t col) {
        Token t;
        t.kind = kind;
        t.begin = begin;
        t.end = cur.pos;
        t.text = source.substr(begin, cur.pos - begin);
        t.line = line;
        t.col = col;
        out.tokens.push_back(t);
    };

    while (!cur.done()) {
        char c = cur.peek();

        // Whitespace.
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
            cur.advance();
            continue;
        }

        // Comments.
        if (c == '/' && cur.peek(1) == '/') {
            while (!cur.done() && cur.peek() != '\n') cur.advance();
            continue;
        }
        if (c == '/' && cur.peek(1) == '*') {
            std::uint32_t start_line = cur.line;
            cur.advance_n(2);
            bool closed = false;
            while (!cur.done()) {
                if (cur.peek() == '*' && cur.peek(1) == '/') {
                    cur.advance_n(2);
                    closed = true;
                    break;
                }
                cur.advance();
            }
            if (!closed) {
                fail("unterminated block comment", start_line);
                break;
            }
            continue;
        }

        std::size_t begin = cur.pos;
        std::uint32_t line = cur.line;
        std::uint32_t col = cur.col;

        // Identifiers and keywords.
        if (is_ident_start(static_cast<unsigned char>(c))) {
            while (!cur.done() && is_ident_part(static_cast<unsigned char>(cur.peek()))) {
                cur.advance();
            }
            std::string_view word = source.substr(begin, cur.pos - begin);
            push(is_java_keyword(word) ? Tok::Keyword : Tok::Identifier, begin, line, col);
            continue;
        }

        // Numbers (integer and floating, hex/bin/oct, underscores, suffixes).
        if (is_digit(static_cast<unsigned char>(c)) ||
            (c == '.' && is_digit(static_cast<unsigned char>(cur.peek(1))))) {
            if (c == '0' && (cur.peek(1) == 'x' || cur.peek(1) == 'X' ||
                             cur.peek(1) == 'b' || cur.peek(1) == 'B')) {
                cur.advance_n(2);
                while (!cur.done() && (std::isalnum(static_cast<unsigned char>(cur.peek())) ||
                                       cur.peek() == '_')) {
                    cur.advance();
                }
            } else {
                bool seen_dot = false;
                bool seen_exp = false;
                while (!cur.done()) {
                    char d = cur.peek();
                    if (is_digit(static_cast<unsigned char>(d)) || d == '_') {
                        cur.advance();
                    } else if (d == '.' && !seen_dot && !seen_exp &&
                               is_digit(static_cast<unsigned char>(cur.peek(1)))) {
                        seen_dot = true;
                        cur.advance();
                    } else if ((d == 'e' || d == 'E') && !seen_exp &&
                               (is_digit(static_cast<unsigned char>(cur.peek(1))) ||
                                ((cur.peek(1) == '+' || cur.peek(1) == '-') &&
                                 is_digit(static_cast<unsigned char>(cur.peek(2)))))) {
                        seen_exp = true;
                        cur.advance();
                        if (cur.peek() == '+' || cur.peek() == '-') cur.advance();
                    } else if (d == 'l' || d == 'L' || d == 'f' || d == 'F' ||
                               d == 'd' || d == 'D') {
                        cur.advance();
                        break;
                    } else {
                        break;
                    }
                }
            }
            push(Tok::Number, begin, line, col);
            continue;
        }

        // Text blocks and string literals.
        if (c == '"') {
            if (cur.peek(1) == '"' && cur.peek(2) == '"') {
                // Text block: """ ... """ (escapes do not end it; \" is legal inside).
                cur.advance_n(3);
                bool closed = false;
                while (!cur.done()) {
                    if (cur.peek() == '\\') {
                        cur.advance_n(2);
                        continue;
                    }
                    if (cur.peek() == '"' && cur.peek(1) == '"' && cur.peek(2) == '"') {
                        cur.advance_n(3);
                        closed = true;
                        break;
                    }
                    cur.advance();
                }
                if (!closed) {
                    fail("unterminated text block", line);
                    break;
                }
            } else {
                cur.advance();
                bool closed = false;
                while (!cur.done()) {
                    char d = cur.peek();
                    if (d == '\\') {
                        cur.advance_n(2);
                        continue;
                    }
                    if (d == '"') {
                        cur.advance();
                        closed = true;
                        break;
                    }
                    if (d == '\n') break;  // strings cannot span lines
                    cur.advance();
                }
                if (!closed) {
                    fail("unterminated string literal", line);
                    break;
                }
            }
            push(Tok::String, begin, line, col);
            continue;
        }

        // Char literals.
        if (c == '\'') {
            cur.advance();
            bool closed = false;
            while (!cur.done()) {
                char d = cur.peek();
                if (d == '\\') {
                    cur.advance_n(2);
                    continue;
                }
                if (d == '\'') {
                    cur.advance();
                    closed = true;
                    break;
                }
                if (d == '\n') break;
                cur.advance();
            }
            if (!closed) {
                fail("unterminated char literal", line);
                break;
            }
            push(Tok::Char, begin, line, col);
            continue;
        }

        // Punctuation. Merge only ->, ::, and "...": those change declaration
        // structure. '<' and '>' stay single so generics parse uniformly.
        if (c == '-' && cur.peek(1) == '>') {
            cur.advance_n(2);
            push(Tok::Punct, begin, line, col);
            continue;
        }
        if (c == ':' && cur.peek(1) == ':') {
            cur.advance_n(2);
            push(Tok::Punct, begin, line, col);
            continue;
        }
        if (c == '.' && cur.peek(1) == '.' && cur.peek(2) == '.') {
            cur.advance_n(3);
            push(Tok::Punct, begin, line, col);
            continue;
        }
        cur.advance();
        push(Tok::Punct, begin, line, col);
    }

    Token end_tok;
    end_tok.kind = Tok::End;
    end_tok.begin = end_tok.end = cur.pos;
    end_tok.line = cur.line;
    end_tok.col = cur.col;
    end_tok.text = std::string_view();
    out.tokens.push_back(end_tok);
    return out;
}

}  // namespace idsim
