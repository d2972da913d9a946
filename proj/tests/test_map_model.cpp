#include <random>

#include "doctest.h"
#include "singan/errors.hpp"
#include "singan/map_model.hpp"
#include "singan/mapdsl.hpp"

using namespace singan;

namespace {

MapInstance mk(const std::string& src) { return parse_mapfile(src)[0]; }

AstPtr expr(const std::string& text) { return parse_expr(tokenize(text)); }

}  // namespace

TEST_CASE("auto_invert solves the rule for the trailing variable") {
    // x' = al + be*x - y inverts to the same shape
    AstPtr f = expr("al + be*x - y");
    AstPtr b = auto_invert(f, {"al", "be"});
    CHECK(ratfunc_equal(b, f, {"al", "be"}));

    // x' = x^3/y is an involution in (x', y)
    AstPtr f2 = expr("x^3/y");
    CHECK(ratfunc_equal(auto_invert(f2, {}), f2, {}));

    // x' = y(x^2 - a^2)/x solves to y x / (x^2 - a^2)
    AstPtr f3 = expr("y*(x^2 - a^2)/x");
    CHECK(ratfunc_equal(auto_invert(f3, {"a"}), expr("y*x/(x^2 - a^2)"), {"a"}));

    CHECK_THROWS_AS(auto_invert(expr("x + y^2"), {}), NotMobius);
    CHECK_THROWS_AS(auto_invert(expr("x*x"), {}), NotMobius);
}

TEST_CASE("forward and backward stepping invert each other") {
    auto m = mk("map \"t\" { forward: x - y }");
    auto pf = rational_params(m, 0);
    ParamFn<Rational> prat = [&](const std::string& nm, long n) { return pf(nm, n); };
    std::function<Rational(const Rational&)> lit = [](const Rational& q) { return q; };
    // scalar state (x_{n-1}, x_n) at time n; forward uses a_n, backward a_{n-1}
    State<Rational> s{Rational(2), Rational(3)};
    auto s1 = step_forward<Rational>(m, s, 1, prat, lit);
    CHECK(s1.a == Rational(3));
    CHECK(s1.b == Rational(1));
    auto back = step_backward<Rational>(m, s1, 2, prat, lit);
    CHECK(back.a == s.a);
    CHECK(back.b == s.b);
}

TEST_CASE("random-state round trips across representative maps") {
    std::vector<std::string> sources = {
        "map \"a\" { forward: y*(x^2-1)/x }",
        "map \"b\" { forward: (x^2-1)/y }",
        "map \"c\" { forward: x^3/y }",
        "map \"d\" { forward: 1 + x^2 - y }",
        "map \"e\" { forward: 2*a*x/(x^2-1) - y  param a: linrec coeffs=[2,-1] init=[1,2] }",
        "map \"f\" { forward: y*(x^2-a^2)/x  param a: mulrec exponents=[0,2,1] init=[2,2,2] }",
        R"(map "g" { kind: pair forward: ((X+Y)/(X*Y+1), a*Y)
           backward: ((Y/a - X)/(X*Y/a - 1), Y/a) param a: const 3 })",
    };
    std::mt19937_64 rng(5);
    auto rand_q = [&] {
        return Rational(static_cast<long>(rng() % 400) + 7, static_cast<long>(rng() % 40) + 3);
    };
    std::function<Rational(const Rational&)> lit = [](const Rational& q) { return q; };
    for (const auto& src : sources) {
        MapInstance m = mk(src);
        auto pf = rational_params(m, 0);
        ParamFn<Rational> prat = [&](const std::string& nm, long n) { return pf(nm, n); };
        int done = 0;
        while (done < 100) {
            State<Rational> s{rand_q(), rand_q()};
            long n = static_cast<long>(rng() % 7) - 3;
            try {
                auto fwd = step_forward<Rational>(m, s, n, prat, lit);
                auto back = step_backward<Rational>(m, fwd, n + 1, prat, lit);
                CHECK(back.a == s.a);
                CHECK(back.b == s.b);
                auto bwd = step_backward<Rational>(m, s, n, prat, lit);
                auto fore = step_forward<Rational>(m, bwd, n - 1, prat, lit);
                CHECK(fore.a == s.a);
                CHECK(fore.b == s.b);
                ++done;
            } catch (const DegenerateOrbit&) {
                // landed on a pole; resample
            }
        }
    }
}

TEST_CASE("pairify behaves like the scalar map") {
    auto m = mk("map \"t\" { forward: x - y }");
    MapInstance p = pairify(m);
    CHECK(!p.is_scalar());
    CHECK(p.has_backward());
    auto pf = rational_params(p, 0);
    ParamFn<Rational> prat = [&](const std::string& nm, long n) { return pf(nm, n); };
    std::function<Rational(const Rational&)> lit = [](const Rational& q) { return q; };
    State<Rational> s{Rational(2), Rational(3)};
    auto sp = step_forward<Rational>(p, s, 1, prat, lit);
    CHECK(sp.a == Rational(3));
    CHECK(sp.b == Rational(1));
    auto bp = step_backward<Rational>(p, sp, 2, prat, lit);
    CHECK(bp.a == s.a);
    CHECK(bp.b == s.b);
}

TEST_CASE("scalar conjugation by an involution") {
    // phi = 1/x fixes x' = x^2/y
    AstPtr f = expr("x^2/y");
    CHECK(ratfunc_equal(conjugate_scalar(f, expr("1/x"), {}), f, {}));
    // phi must be an involution
    CHECK_THROWS_AS(conjugate_scalar(f, expr("x + 1"), {}), UnsupportedMap);
}

TEST_CASE("conjugacy checking distinguishes maps") {
    auto m = mk("map \"t\" { forward: x - y }");
    auto h = mk("map \"h\" { forward: x^2 - y + 3/2 }");
    auto id = std::make_pair(expr("X"), expr("Y"));
    CHECK(check_conjugacy(m, m, id));
    CHECK(!check_conjugacy(m, h, id));
    // swap transform against the explicitly conjugated map
    auto swap = std::make_pair(expr("Y"), expr("X"));
    MapInstance cm = conjugate_map(m, swap, swap);
    CHECK(check_conjugacy(pairify(m), cm, swap));
}
