#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace idsim {

// Token categories produced by the Java lexer. The lexer is deliberately
// shallow: it only needs to expose enough structure for declaration-level
// parsing, so all operators and separators share the Punct category.
enum class Tok : std::uint8_t {
    Identifier,
    Keyword,
    Number,
    String,     // ordinary string literal or text block
    Char,
    Punct,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string_view text;   // view into the lexed source buffer
    std::uint32_t line = 1;  // 1-based
    std::uint32_t col = 1;   // 1-based, in bytes
    std::size_t begin = 0;   // byte offset of first char
    std::size_t end = 0;     // byte offset one past last char
};

struct LexResult {
    std::vector<Token> tokens;  // always terminated by a Tok::End token
    bool ok = true;
    std::string error;          // set when ok == false
    std::uint32_t error_line = 0;
};

// Lexes Java source text. Comments and whitespace are skipped. Multi-char
// punctuation is merged only for "->", "::" and "..." since those change how
// declarations are recognized; everything else (including '<' and '>') is
// emitted one character at a time so generic types never collide with shift
// operators. The contextual keywords (var, record, yield, sealed, permits)
// are lexed as identifiers. Returns ok == false for unterminated string,
// char, text block or block comment.
LexResult lex_java(std::string_view source);

bool is_java_keyword(std::string_view word);

}  // namespace idsim
