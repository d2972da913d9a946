#pragma once

#include <string>
#include <vector>

#include "singan/map_model.hpp"

namespace singan {

// Lexical token of the mapfile format.
struct Token {
    enum class Kind { Ident, Integer, Str, Symbol, Keyword, End };
    Kind kind = Kind::End;
    std::string lexeme;
    int line = 1, col = 1;
};

// Splits source text into tokens; '#' starts a comment running to the end of
// the line. Throws ParseError on an illegal character or unterminated string.
std::vector<Token> tokenize(const std::string& src);

// Parses a complete token stream as a single expression. Precedence
// ^ > unary - > *,/ > +,- with ^ right-associative; exponents must fold to
// integers of magnitude <= 1000. Constant subtrees are folded to literals.
AstPtr parse_expr(const std::vector<Token>& tokens);

struct ParseOptions {
    // Derive missing backward rules of scalar maps on the spot. Disabled for
    // fuzzing and other contexts that only need the syntax checked.
    bool derive_backward = true;
};

// Parses a mapfile: one or more `map "name" { ... }` blocks. Performs the
// semantic checks (declared params, pair maps carry a backward rule) and, per
// options, inversion of scalar maps lacking `backward:`.
std::vector<MapInstance> parse_mapfile(const std::string& src, const ParseOptions& opt = {});

// Renders a map back to mapfile syntax; parsing the result reproduces the
// instance.
std::string pretty_print(const MapInstance& m);

// Structural equality of expression trees.
bool ast_equal(const AstPtr& a, const AstPtr& b);

}  // namespace singan
