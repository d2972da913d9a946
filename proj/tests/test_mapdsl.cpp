#include <random>

#include "doctest.h"
#include "singan/errors.hpp"
#include "singan/mapdsl.hpp"

using namespace singan;

TEST_CASE("tokenizer") {
    auto t = tokenize("x^2 - 1");
    REQUIRE(t.size() == 5);
    CHECK(t[0].kind == Token::Kind::Ident);
    CHECK(t[1].lexeme == "^");
    CHECK(t[4].lexeme == "1");
    CHECK_THROWS_AS(tokenize("x $ y"), ParseError);
    try {
        tokenize("x $ y");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col == 3);
    }
}

TEST_CASE("expression grammar") {
    auto neg = parse_expr(tokenize("-x^2"));
    CHECK(neg->kind == Ast::Kind::Neg);
    CHECK(neg->a->kind == Ast::Kind::Pow);
    // powers are integer-only and right-associative
    CHECK_THROWS_AS(parse_expr(tokenize("x^(1/2)")), ParseError);
    auto pow = parse_expr(tokenize("x^2^3"));
    CHECK(pow->kind == Ast::Kind::Pow);
    CHECK(pow->exp == 8);
    // constant folding
    auto num = parse_expr(tokenize("3/2 + 1/2"));
    CHECK(num->kind == Ast::Kind::Num);
    CHECK(num->num == Rational(2));
}

TEST_CASE("scalar map with derived backward") {
    auto maps = parse_mapfile(R"(
# polynomial mapping
map "henon" {
  kind: scalar
  forward: alpha + beta*x^2 - y
  param alpha: const 1
  param beta: const 1
}
)");
    REQUIRE(maps.size() == 1);
    CHECK(maps[0].is_scalar());
    CHECK(maps[0].has_backward());
    CHECK(maps[0].autonomous());
}

TEST_CASE("parameter clauses") {
    auto m = parse_mapfile(
        "map \"dp2\" { forward: 2*a*x/(x^2-1) - y  param a: linrec coeffs=[2, -1] init=[1, 2] }")[0];
    auto pf = rational_params(m, 0);
    for (long n = -2; n <= 4; ++n) CHECK(pf("a", n) == Rational(1 + n));

    auto ml = parse_mapfile("map \"l\" { forward: a*x - y  param a: list [3, 1/2, -7] }")[0];
    CHECK(rational_params(ml, 0)("a", 1) == Rational(1, 2));

    auto mm = parse_mapfile(
        "map \"m\" { forward: a*x - y  param a: mulrec exponents=[0, 2, 1] init=[2, 2, 2] }")[0];
    CHECK(rational_params(mm, 0)("a", 3) == Rational(8));
}

TEST_CASE("pair map round trip") {
    std::string src = R"(map "tri" {
  kind: pair
  forward: ((X+Y)/(X*Y+1), a*Y)
  backward: ((Y/a - X)/(X*Y/a - 1), Y/a)
  param a: const 3
})";
    auto m = parse_mapfile(src)[0];
    CHECK(!m.is_scalar());
    REQUIRE(m.fwd_y);
    REQUIRE(m.bwd_y);
    // pretty-print is a fixpoint and reparses to the same tree
    std::string pp = pretty_print(m);
    auto re = parse_mapfile(pp)[0];
    CHECK(pretty_print(re) == pp);
    CHECK(ast_equal(re.fwd_x, m.fwd_x));
    CHECK(ast_equal(re.fwd_y, m.fwd_y));
    CHECK(ast_equal(re.bwd_x, m.bwd_x));
    CHECK(ast_equal(re.bwd_y, m.bwd_y));
}

TEST_CASE("semantic errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_mapfile("map \"u\" { forward: q*x - y }"),
                         doctest::Contains("undeclared parameter 'q'"), ParseError);
    CHECK_THROWS_WITH_AS(parse_mapfile("map \"p\" { kind: pair forward: (X, Y) }"),
                         doctest::Contains("backward"), ParseError);
    // non-invertible scalar rule without an explicit backward
    CHECK_THROWS_AS(parse_mapfile("map \"n\" { forward: x*y^2 }"), ParseError);
    try {
        parse_mapfile("map \"z\" {\n  kind: scalar\n  forward: x +* y\n}");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.col == 15);
        CHECK(e.snippet == "  forward: x +* y");
    }
}

TEST_CASE("parenthesized scalar forward is not a pair") {
    auto m = parse_mapfile("map \"s\" { forward: (x - y) }")[0];
    CHECK(m.is_scalar());
    CHECK(m.fwd_x->kind == Ast::Kind::Sub);
}

TEST_CASE("fuzzed inputs never crash the parser") {
    std::mt19937_64 rng(123);
    const std::string alphabet = "mapkindforwarbckw x y X Y ()[]{}:;,+-*/^=\"0123456789 \n#_.";
    const std::string seed_src =
        "map \"t\" { forward: 2*a*x/(x^2-1) - y  param a: linrec coeffs=[2, -1] init=[1, 2] }";
    int parsed = 0;
    for (int i = 0; i < 20000; ++i) {
        std::string s;
        if (i % 3 == 0) {
            // mutate a valid source
            s = seed_src;
            size_t edits = 1 + rng() % 6;
            for (size_t j = 0; j < edits && !s.empty(); ++j) {
                size_t pos = rng() % s.size();
                switch (rng() % 3) {
                    case 0: s[pos] = alphabet[rng() % alphabet.size()]; break;
                    case 1: s.erase(pos, 1); break;
                    default: s.insert(pos, 1, alphabet[rng() % alphabet.size()]);
                }
            }
        } else {
            size_t len = rng() % 256;
            for (size_t j = 0; j < len; ++j) s += alphabet[rng() % alphabet.size()];
        }
        try {
            auto maps = parse_mapfile(s, ParseOptions{.derive_backward = false});
            parsed += static_cast<int>(maps.size());
        } catch (const ParseError&) {
            // rejected inputs must fail through the typed error only
        }
    }
    CHECK(parsed > 0);  // some mutants survive
}
