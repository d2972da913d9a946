#include <random>

#include "doctest.h"
#include "singan/ast.hpp"
#include "singan/laurent.hpp"
#include "singan/param_seq.hpp"
#include "singan/poly.hpp"
#include "singan/ratfunc.hpp"
#include "singan/rational.hpp"

using namespace singan;

namespace {

Rational rand_rational(std::mt19937_64& rng) {
    long num = static_cast<long>(rng() % 2001) - 1000;
    long den = static_cast<long>(rng() % 50) + 1;
    return rat(num, den);
}

Rational rand_nonzero(std::mt19937_64& rng) {
    Rational q = rand_rational(rng);
    while (q == Rational(0)) q = rand_rational(rng);
    return q;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(to_string(rat(3, 6)) == "1/2");
    CHECK(*parse_rational("-7/21") == rat(-1, 3));
    CHECK(!parse_rational("1/0"));
    CHECK(pow_value(rat(2, 3), -2) == rat(9, 4));
    CHECK(sign(rat(-5)) == -1);
}

TEST_CASE("rational field axioms on random triples") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        Rational a = rand_rational(rng), b = rand_rational(rng), c = rand_rational(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + Rational(0) == a);
        CHECK(a * Rational(1) == a);
        CHECK(a - a == Rational(0));
        Rational nz = rand_nonzero(rng);
        CHECK(nz * (a / nz) == a);
    }
}

TEST_CASE("laurent series arithmetic") {
    using L = Laurent<Rational>;
    L e = L::eps(-4, 9);
    L prod = e.scaled(Rational(2)) * e.scaled(Rational(3));
    CHECK(prod.val() == -8);
    CHECK(prod.leading() == Rational(6));
    // 1/(ε(1+ε)) = ε^{-1}(1 - ε + ε² - ...)
    L denom = L::eps(1, 6) + L::eps(2, 6);
    L inv = L(Rational(1), 0, 6) / denom;
    CHECK(inv.val() == -1);
    CHECK(inv.leading() == Rational(1));
}

TEST_CASE("laurent field identities on random series") {
    using L = Laurent<Rational>;
    std::mt19937_64 rng(7);
    auto rand_series = [&](size_t window) {
        long v = static_cast<long>(rng() % 9) - 4;
        L s = L::eps(v, window).scaled(rand_nonzero(rng));
        for (size_t k = 1; k < window; ++k) {
            Rational c = rand_rational(rng);
            if (c != Rational(0)) s = s + L::eps(v + static_cast<long>(k), window).scaled(c);
        }
        return s;
    };
    for (int i = 0; i < 1000; ++i) {
        L a = rand_series(6), b = rand_series(6), c = rand_series(6);
        L lhs = (a * b) * c, rhs = a * (b * c);
        CHECK(lhs.val() == rhs.val());
        CHECK(lhs.leading() == rhs.leading());
        L q = (a * b) / b;  // exact round trip of the surviving window
        CHECK(q.val() == a.val());
        CHECK(q.leading() == a.leading());
    }
}

TEST_CASE("laurent cancellation exhausts the window") {
    using L = Laurent<Rational>;
    L one(Rational(1), 0, 1);
    L mone(Rational(-1), 0, 1);
    CHECK_THROWS_AS(one + mone, PrecisionExhausted);
    // wider windows survive a partial cancellation
    L a(Rational(1), 0, 3);
    L b = L::eps(1, 3) - L(Rational(1), 0, 3);
    L sum = a + b;
    CHECK(sum.val() == 1);
}

TEST_CASE("polynomial gcd") {
    using PQ = Poly<Rational>;
    PQ t = PQ::var();
    PQ p = t * t - PQ::from_int(1);
    PQ q = t - PQ::from_int(1);
    CHECK(poly_gcd(p, q) == q.monic());
    // content does not matter
    CHECK(poly_gcd(p * Rational(2), q * Rational(4)) == q.monic());
    // coprime
    CHECK(poly_gcd(t * t + PQ::from_int(1), t).degree() == 0);
    // shared quadratic factor through the modular path
    PQ f1 = (pow_value(t, 5) - PQ::from_int(1)) * p;
    PQ f2 = (pow_value(t, 3) - PQ::from_int(1)) * p;
    PQ g = poly_gcd(f1, f2);
    CHECK(g.degree() == 3);  // (t-1)^2 (t+1)
    CHECK(g.eval(Rational(1)) == Rational(0));
    CHECK(g.eval(Rational(-1)) == Rational(0));
}

TEST_CASE("packed polynomial multiply agrees with schoolbook") {
    std::mt19937_64 rng(11);
    using PQ = Poly<Rational>;
    for (int trial = 0; trial < 30; ++trial) {
        size_t da = 8 + rng() % 40, db = 8 + rng() % 40;
        std::vector<Rational> ca(da + 1), cb(db + 1);
        for (auto& c : ca) c = rand_rational(rng);
        for (auto& c : cb) c = rand_rational(rng);
        ca.back() = rand_nonzero(rng);
        cb.back() = rand_nonzero(rng);
        PQ a(ca), b(cb);
        PQ fast = poly_mul_packed(a, b);
        // schoolbook convolution oracle
        std::vector<Rational> conv(da + db + 1, Rational(0));
        for (size_t i = 0; i <= da; ++i)
            for (size_t j = 0; j <= db; ++j) conv[i + j] += ca[i] * cb[j];
        CHECK(fast == PQ(conv));
    }
}

TEST_CASE("rational function normalization") {
    using RF = RatFunc<Rational>;
    RF x = RF::var();
    CHECK((x * x - RF(1)) / (x - RF(1)) == x + RF(1));
    RF s = RF(1) / x + RF(1) / (x + RF(1));
    CHECK(s.den().degree() == 2);
    CHECK(s.num().degree() == 1);
}

TEST_CASE("ast evaluation") {
    AstPtr e = ast_add(ast_param("al"),
                       ast_sub(ast_mul(ast_param("be"), ast_pow(ast_x(), 2)), ast_y()));
    auto v = eval_ast<Rational>(
        e, rat(2), rat(3), [](const std::string&) { return rat(1); },
        [](const Rational& r) { return r; });
    CHECK(v == rat(2));
}

TEST_CASE("parameter sequences extend both ways") {
    ParamSeq lin;
    lin.kind = ParamSeq::Kind::LinRec;
    lin.coeffs = {rat(2), rat(-1)};
    lin.init = {rat(1), rat(2)};
    // oracle: a_n = 1 + n for all n
    for (long n = -6; n <= 6; ++n) CHECK(param_value(lin, n) == rat(1 + n));

    ParamSeq mul;
    mul.kind = ParamSeq::Kind::MulRec;
    mul.exponents = {0, 2, 1};
    mul.init = {rat(2), rat(2), rat(2)};
    // oracle: recompute a_n = a_{n-2}^2 a_{n-3} forward from the seed
    std::vector<Rational> fwd = {rat(2), rat(2), rat(2)};
    for (int n = 3; n <= 10; ++n) fwd.push_back(fwd[n - 2] * fwd[n - 2] * fwd[n - 3]);
    for (int n = 0; n <= 10; ++n) CHECK(param_value(mul, n) == fwd[n]);
    // backward: a_{n-2} = a_{n+1} / a_n^0 a_{n-1}^2, so a_{-1} = a_2 / a_0^2
    CHECK(param_value(mul, -1) == rat(1, 2));
    CHECK(param_value(mul, -1) * param_value(mul, 1) * param_value(mul, 1) ==
          param_value(mul, 2));
}
