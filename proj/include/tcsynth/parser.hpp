/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tcsynth/ast.hpp"

namespace tcsynth {

struct ParseError {
    unsigned line = 0; // 1-based
    unsigned col = 0;  // 1-based
    std::string token; // offending token text ("<eof>" at end of input)
    std::vector<std::string> expected;

    std::string message() const;
};

using ParseResult = std::variant<SourceFile, ParseError>;

// Parse a whole `.tc` file. `path` is recorded for diagnostics only.
ParseResult parse_file(std::string_view text, std::string path = "<input>");

// Parse a single term, for goals given on a command line or in manifests.
std::variant<Term, ParseError> parse_term(std::string_view text);

// Inverse of parse_file for a single command, up to whitespace.
std::string render_decl(const Command& cmd);

// Renders every command, one per line.
std::string render_file(const SourceFile& file);

// Token stream with source positions, for mutation-style tests.
struct LexedToken {
    std::string text;
    unsigned line = 0;
    unsigned col = 0;
    std::size_t offset = 0;
    std::size_t length = 0;
};

std::vector<LexedToken> lex_file(std::string_view text);

} // namespace tcsynth
