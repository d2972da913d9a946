#include <cmath>
#include <random>

#include "doctest.h"
#include "singan/errors.hpp"
#include "singan/growth.hpp"
#include "singan/mapdsl.hpp"

using namespace singan;

namespace {

MapInstance mk(const std::string& src) { return parse_mapfile(src)[0]; }

const Rational kTol{1, 1000000000};

}  // namespace

TEST_CASE("degree sequence of the doubling polynomial map") {
    auto ds = degree_sequence(mk("map \"h\" { forward: 1 + x^2 - y }"), 8, {0, 1, 2});
    CHECK(ds.degrees == std::vector<long>{0, 1, 2, 4, 8, 16, 32, 64, 128});
    auto est = entropy_from_degrees(ds, kTol);
    CHECK(est.growth == GrowthType::Exponential);
    CHECK(std::abs(est.entropy - std::log(2.0)) < 1e-12);
    REQUIRE(est.recurrence);
    CHECK(est.recurrence->valid_from == 1);
}

TEST_CASE("degree sequence with delayed recurrence onset") {
    auto ds = degree_sequence(mk("map \"e\" { forward: y*(x - 1/x) }"), 14, {0, 1, 2});
    CHECK(ds.degrees ==
          std::vector<long>{0, 1, 2, 4, 8, 14, 24, 40, 66, 108, 176, 286, 464, 752, 1218});
    std::vector<std::string> warns;
    auto rec = fit_recurrence(ds.degrees, 2, &warns);
    REQUIRE(rec);
    CHECK(rec->order == 3);
    CHECK(rec->coeffs == std::vector<Rational>{Rational(2), Rational(0), Rational(-1)});
    CHECK(rec->valid_from == 4);  // d_4 = 8 breaks the relation one step earlier
    auto iv = dominant_root(char_poly(*rec), kTol);
    double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(std::abs(to_double((iv.lo + iv.hi) / 2) - phi) < 1e-9);
    auto est = entropy_from_degrees(ds, kTol);
    CHECK(est.growth == GrowthType::Exponential);
    CHECK(std::abs(est.entropy - std::log(phi)) < 1e-6);
}

TEST_CASE("bounded and polynomial degree growth") {
    auto el = entropy_from_degrees(degree_sequence(mk("map \"l\" { forward: x + y }"), 10, {0, 1, 2}),
                                   kTol);
    CHECK(el.growth == GrowthType::Bounded);
    CHECK(el.entropy == 0.0);

    auto ec = entropy_from_degrees(
        degree_sequence(mk("map \"c\" { forward: (x^2 - 1)/y }"), 12, {0, 1, 2}), kTol);
    CHECK(ec.growth == GrowthType::Polynomial);
    CHECK(ec.poly_order == 1);
    CHECK(ec.entropy == 0.0);

    auto ep = entropy_from_degrees(
        degree_sequence(
            mk("map \"p\" { forward: 2*a*x/(x^2-1) - y  param a: linrec coeffs=[2,-1] init=[1,2] }"),
            12, {0, 1, 2}),
        kTol);
    CHECK(ep.growth == GrowthType::Polynomial);
    CHECK(ep.poly_order == 2);
}

TEST_CASE("recurrence fitting with holdout validation") {
    // constant and Fibonacci-like contracts
    auto r5 = fit_recurrence(std::vector<long>(8, 5), 2);
    REQUIRE(r5);
    CHECK(r5->order == 1);
    CHECK(r5->coeffs[0] == Rational(1));
    CHECK(r5->valid_from == 0);

    auto rf = fit_recurrence({1, 3, 8, 21, 55, 144, 377, 987}, 2);
    REQUIRE(rf);
    CHECK(rf->order == 2);
    CHECK(rf->coeffs == std::vector<Rational>{Rational(3), Rational(-1)});

    // planted recurrences are recovered exactly
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        int order = 1 + static_cast<int>(rng() % 3);
        std::vector<long> coef(order);
        for (auto& c : coef) c = 1 + static_cast<long>(rng() % 3);
        std::vector<long> seq;
        for (int i = 0; i < order; ++i) seq.push_back(1 + static_cast<long>(rng() % 4));
        while (seq.size() < 14) {
            long next = 0;
            for (int k = 0; k < order; ++k) next += coef[k] * seq[seq.size() - 1 - k];
            seq.push_back(next);
        }
        auto rec = fit_recurrence(seq, 2);
        REQUIRE(rec);
        CHECK(rec->valid_from <= order);
        // fitted relation reproduces every further term, including the holdout
        for (long n = rec->valid_from; n + 1 < static_cast<long>(seq.size()); ++n) {
            Rational acc(0);
            for (int k = 0; k < rec->order; ++k)
                acc += rec->coeffs[static_cast<size_t>(k)] * Rational(seq[static_cast<size_t>(n - k)]);
            CHECK(acc == Rational(seq[static_cast<size_t>(n + 1)]));
        }
    }

    // a sequence that breaks inside the holdout tail is rejected
    std::vector<long> broken{1, 2, 4, 8, 16, 32, 64, 129};
    CHECK(!fit_recurrence(broken, 2));
}

TEST_CASE("dominant root certification") {
    // golden ratio from λ³ - 2λ² + 1 = (λ - 1)(λ² - λ - 1)
    Poly<Rational> cubic{std::vector<Rational>{Rational(1), Rational(0), Rational(-2), Rational(1)}};
    auto iv = dominant_root(cubic, kTol);
    CHECK(!iv.is_point());
    CHECK(iv.hi - iv.lo <= kTol);
    CHECK(sign(cubic.eval(iv.lo)) * sign(cubic.eval(iv.hi)) <= 0);
    double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(std::abs(to_double((iv.lo + iv.hi) / 2) - phi) < 1e-9);

    // quartic with an irrational dominant pair
    Poly<Rational> quartic{std::vector<Rational>{Rational(1), Rational(-2), Rational(1),
                                                 Rational(-2), Rational(1)}};
    auto qi = dominant_root(quartic, Rational(1, 1000000));
    CHECK(std::abs(to_double((qi.lo + qi.hi) / 2) - 1.8832035) < 5e-4);
    CHECK(sign(quartic.eval(qi.lo)) * sign(quartic.eval(qi.hi)) <= 0);

    // exact rational roots come back as point intervals
    Poly<Rational> doubling{std::vector<Rational>{Rational(-2), Rational(1)}};
    auto di = dominant_root(doubling, kTol);
    CHECK(di.is_point());
    CHECK(di.lo == Rational(2));

    Poly<Rational> unit{std::vector<Rational>{Rational(-1), Rational(1)}};
    auto ui = dominant_root(unit, kTol);
    CHECK(ui.is_point());
    CHECK(ui.lo == Rational(1));

    // no real root at or beyond 1 with growing coefficients: rejected
    Poly<Rational> neg{std::vector<Rational>{Rational(2), Rational(1)}};
    CHECK_THROWS_AS(dominant_root(neg, Rational(1, 1000)), UnsupportedSpectrum);
}

TEST_CASE("planted dominant roots are certified within tolerance") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        // (λ - r) q(λ) with q's roots all inside the unit disc
        long num = 3 + static_cast<long>(rng() % 12);
        long den = 1 + static_cast<long>(rng() % 2);
        Rational r = Rational(num, den);
        Poly<Rational> t = Poly<Rational>::var();
        Poly<Rational> p = t - Poly<Rational>(r);
        Poly<Rational> q = t * t - Poly<Rational>(Rational(1, 3));
        auto iv = dominant_root(p * q, kTol);
        CHECK(iv.lo <= r);
        CHECK(r <= iv.hi);
        if (!iv.is_point()) CHECK(iv.hi - iv.lo <= kTol);
    }
}

TEST_CASE("seed disagreement surfaces as a warning, max taken") {
    // degree runs use several random initial conditions; the published
    // sequence is the index-wise maximum
    auto ds = degree_sequence(mk("map \"e\" { forward: y*(x^2-1)/x }"), 8, {0, 1, 2, 3});
    CHECK(ds.degrees == std::vector<long>{0, 1, 2, 4, 8, 14, 24, 40, 66});
}
