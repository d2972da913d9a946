#include <cmath>

#include "doctest.h"
#include "singan/errors.hpp"
#include "singan/mapdsl.hpp"
#include "singan/singularity.hpp"

using namespace singan;

namespace {

MapInstance mk(const std::string& src) { return parse_mapfile(src)[0]; }

std::vector<long> col(const std::vector<std::vector<long>>& rows, size_t k) {
    std::vector<long> out;
    for (size_t i = 0; i < rows.size() && i < k; ++i) out.push_back(rows[i][0]);
    return out;
}

const double kPhi = (1 + std::sqrt(5.0)) / 2;

}  // namespace

TEST_CASE("growth classification of valuation sequences") {
    auto g = growth_class({-1, -1, -1, -1, -1, -1});
    CHECK(g.type == GrowthResult::Type::Zero);
    g = growth_class({-1, -2, -3, -4, -5, -6});
    CHECK(g.type == GrowthResult::Type::Linear);
    CHECK(g.slope == -1);
    g = growth_class({-1, -2, -4, -8, -16, -32});
    CHECK(g.type == GrowthResult::Type::Exponential);
    CHECK(std::abs(g.rate - std::log(2.0)) < 1e-12);
    g = growth_class({1, 1, 2, 3, 5, 8, 13, 21});
    CHECK(g.type == GrowthResult::Type::Exponential);
    CHECK(std::abs(g.rate - std::log(kPhi)) < 1e-9);

    g = growth_class_joint({-1, -1, -2, -3, -5, -8, -13}, {1, 1, 2, 3, 5, 8, 13});
    CHECK(g.type == GrowthResult::Type::Exponential);
    CHECK(std::abs(g.rate - std::log(kPhi)) < 1e-9);
    g = growth_class_joint({-2, -3, -4, -5, -6}, {-1, -2, -3, -4, -5});
    CHECK(g.type == GrowthResult::Type::Linear);
    CHECK(g.slope == -1);
    g = growth_class_joint({1, 3, 8, 21}, {1, 3, 8, 21});
    CHECK(g.type == GrowthResult::Type::Exponential);
    CHECK(std::abs(g.rate - std::log((3 + std::sqrt(5.0)) / 2)) < 1e-9);
}

TEST_CASE("singular value discovery") {
    auto v = find_singular_values(mk("map \"a\" { forward: y*(x^2-1)/x }"));
    REQUIRE(v.size() == 4);
    CHECK((!v[0].at_infinity && v[0].value == Rational(-1)));
    CHECK((!v[1].at_infinity && v[1].value == Rational(0)));
    CHECK((!v[2].at_infinity && v[2].value == Rational(1)));
    CHECK(v[3].at_infinity);

    v = find_singular_values(mk("map \"b\" { forward: x^2/y }"));
    REQUIRE(v.size() == 2);
    CHECK(v[0].value == Rational(0));
    CHECK(v[1].at_infinity);

    CHECK(find_singular_values(mk("map \"c\" { forward: 1 + x^2 - y }")).empty());
    CHECK(find_singular_values(mk("map \"d\" { forward: 3*x - y }")).empty());

    // index-dependent candidates are dropped with a warning
    std::vector<std::string> warns;
    v = find_singular_values(
        mk("map \"e\" { forward: y*(x^2-a^2)/x  param a: mulrec exponents=[0,2,1] init=[2,2,2] }"),
        &warns);
    REQUIRE(v.size() == 2);
    CHECK(v[0].value == Rational(0));
    CHECK(v[1].at_infinity);
    CHECK(!warns.empty());

    CHECK_THROWS_AS(find_singular_values(mk("map \"f\" { forward: x^2  backward: x }")),
                    UnsupportedMap);
    CHECK_THROWS_AS(find_singular_values(mk("map \"g\" { forward: y*(x^2-2) }")), UnsupportedMap);
}

TEST_CASE("confined pattern with intermediate values") {
    auto m = mk("map \"a\" { forward: y*(x^2-1)/x }");
    ClassifyOptions opt;
    opt.horizon = 11;
    auto r = classify_singularity(m, SingularValue{false, Rational(1)}, opt);
    CHECK(r.cls == SingClass::Confined);
    REQUIRE(r.pattern.size() == 4);
    CHECK(r.pattern[0].value == "1");
    CHECK(r.pattern[1].value == "0");
    CHECK(r.pattern[2].value == "∞");
    CHECK(r.pattern[3].value == "-1");
    CHECK(r.entry_index == 1);
    CHECK(r.recovery_index == 5);

    // mirrored entry value gives the mirrored pattern
    r = classify_singularity(m, SingularValue{false, Rational(-1)}, opt);
    CHECK(r.cls == SingClass::Confined);
    CHECK(r.pattern[0].value == "-1");
    CHECK(r.pattern[3].value == "1");
}

TEST_CASE("anticonfined orbit with exponential deviation growth") {
    auto m = mk("map \"a\" { forward: y*(x^2-1)/x }");
    ClassifyOptions opt;
    opt.horizon = 11;
    auto r = classify_singularity(m, SingularValue{false, Rational(0)}, opt);
    CHECK(r.cls == SingClass::Anticonfined);
    CHECK(r.window_lo == 0);
    CHECK(r.window_hi == 3);
    REQUIRE(r.window.size() == 4);
    CHECK(r.window[0].comps[0].kind == PatternEntry::Kind::Regular);
    CHECK(r.window[0].comps[0].value == "x0");
    CHECK(r.window[0].comps[0].depends_on_tracker);
    CHECK(r.window[1].comps[0].kind == PatternEntry::Kind::Vanishing);
    CHECK(r.window[2].comps[0].kind == PatternEntry::Kind::Diverging);
    CHECK(r.window[3].comps[0].value == "-x0");
    CHECK(col(r.forward_valuations, 5) == std::vector<long>{-1, -1, -2, -3, -5});
    CHECK(col(r.backward_valuations, 5) == std::vector<long>{1, 1, 2, 3, 5});
    REQUIRE(r.growth);
    CHECK(r.growth->type == GrowthResult::Type::Exponential);
    CHECK(std::abs(r.growth->rate - std::log(kPhi)) < 1e-9);
}

TEST_CASE("zero and linear anticonfined growth") {
    ClassifyOptions opt;
    auto r = classify_singularity(
        mk("map \"a\" { forward: a*(x^2-1)/(x+y) - x  param a: const 17/5 }"),
        SingularValue{true, Rational(0)}, opt);
    CHECK(r.cls == SingClass::Anticonfined);
    CHECK(r.window_lo == -1);
    CHECK(r.window_hi == 0);
    CHECK(r.window[0].comps[0].value == "-x0");
    CHECK(r.window[1].comps[0].value == "x0");
    REQUIRE(r.growth);
    CHECK(r.growth->type == GrowthResult::Type::Zero);

    r = classify_singularity(mk("map \"b\" { forward: (x^2-1)/y }"),
                             SingularValue{true, Rational(0)}, opt);
    CHECK(r.cls == SingClass::Anticonfined);
    CHECK(r.window_lo == -2);
    CHECK(r.window_hi == 0);
    CHECK(r.window[0].comps[0].value == "-1/x0");
    CHECK(r.window[1].comps[0].kind == PatternEntry::Kind::Vanishing);
    CHECK(r.window[2].comps[0].value == "x0");
    CHECK(col(r.forward_valuations, 4) == std::vector<long>{-1, -2, -3, -4});
    REQUIRE(r.growth);
    CHECK(r.growth->type == GrowthResult::Type::Linear);
    CHECK(r.growth->slope == -1);
}

TEST_CASE("two-sided linear exponent ladder and display margins") {
    ClassifyOptions opt;
    auto r = classify_singularity(mk("map \"a\" { forward: x^2/y }"),
                                  SingularValue{true, Rational(0)}, opt);
    CHECK(r.cls == SingClass::Anticonfined);
    CHECK(r.window_lo == 0);
    CHECK(r.window_hi == 0);
    CHECK(r.window[0].comps[0].value == "x0");
    CHECK(col(r.forward_valuations, 4) == std::vector<long>{-1, -2, -3, -4});
    CHECK(col(r.backward_valuations, 4) == std::vector<long>{1, 2, 3, 4});
    // display keeps three neighbours each side of the window
    REQUIRE(r.display.size() == 7);
    CHECK(r.display.front().comps[0].valuation == 3);
    CHECK(r.display.back().comps[0].valuation == -3);
}

TEST_CASE("exponent recursion certified from the orbit") {
    ClassifyOptions opt;
    opt.horizon = 10;
    auto r = classify_singularity(mk("map \"a\" { forward: x^3/y }"),
                                  SingularValue{true, Rational(0)}, opt);
    CHECK(r.cls == SingClass::Anticonfined);
    CHECK(col(r.forward_valuations, 5) == std::vector<long>{-1, -3, -8, -21, -55});
    REQUIRE(r.growth);
    REQUIRE(r.growth->recurrence);
    CHECK(r.growth->recurrence->order == 2);
    CHECK(r.growth->recurrence->coeffs[0] == Rational(3));
    CHECK(r.growth->recurrence->coeffs[1] == Rational(-1));
    CHECK(std::abs(r.growth->rate - std::log((3 + std::sqrt(5.0)) / 2)) < 1e-6);
}

TEST_CASE("probe orbits for maps without enterable singular values") {
    ClassifyOptions opt;
    opt.horizon = 12;
    ProbeSpec p{"∞", seed_tracker(), seed_eps(-1), 0, "x0"};
    auto r = probe_anticonfined(mk("map \"h\" { forward: 1 + x^2 - y }"), p, opt);
    CHECK(r.cls == SingClass::Anticonfined);
    CHECK(col(r.forward_valuations, 6) == std::vector<long>{-1, -2, -4, -8, -16, -32});
    CHECK(col(r.backward_valuations, 6) == std::vector<long>{-1, -2, -4, -8, -16, -32});
    REQUIRE(r.growth);
    CHECK(r.growth->type == GrowthResult::Type::Exponential);
    // the doubling recurrence has an exact rational root: a point interval
    CHECK(r.growth->root.lo == Rational(2));
    CHECK(r.growth->root.hi == Rational(2));
    CHECK(std::abs(r.growth->rate - std::log(2.0)) < 1e-12);

    r = probe_anticonfined(mk("map \"l\" { forward: 3*x - y }"), p, opt);
    CHECK(r.cls == SingClass::Anticonfined);
    for (const auto& row : r.forward_valuations) CHECK(row[0] == -1);
    REQUIRE(r.growth);
    CHECK(r.growth->type == GrowthResult::Type::Zero);
}

TEST_CASE("seed scaling does not change the classification") {
    auto m = mk("map \"a\" { forward: y*(x^2-1)/x }");
    ClassifyOptions opt;
    opt.horizon = 9;
    ProbeSpec base{"0", seed_tracker(), seed_eps(1), 0, "x0"};
    auto ref = probe_anticonfined(m, base, opt);
    REQUIRE(ref.cls == SingClass::Anticonfined);
    for (Rational lam : {Rational(3), Rational(-2, 5), Rational(7, 2)}) {
        ProbeSpec scaled{"0", seed_tracker(), seed_eps(1, lam), 0, "x0"};
        auto r = probe_anticonfined(m, scaled, opt);
        CHECK(r.cls == ref.cls);
        CHECK(r.window_lo == ref.window_lo);
        CHECK(r.window_hi == ref.window_hi);
        CHECK(r.forward_valuations == ref.forward_valuations);
        CHECK(r.backward_valuations == ref.backward_valuations);
    }
}

TEST_CASE("confined classification is stable under a larger horizon") {
    auto m = mk("map \"a\" { forward: y*(x^2-1)/x }");
    ClassifyOptions small, large;
    small.horizon = 8;
    large.horizon = 14;
    auto a = classify_singularity(m, SingularValue{false, Rational(1)}, small);
    auto b = classify_singularity(m, SingularValue{false, Rational(1)}, large);
    REQUIRE(a.cls == SingClass::Confined);
    REQUIRE(b.cls == SingClass::Confined);
    CHECK(a.pattern.size() == b.pattern.size());
    for (size_t i = 0; i < a.pattern.size(); ++i) CHECK(a.pattern[i].value == b.pattern[i].value);
    CHECK(a.entry_index == b.entry_index);
    CHECK(a.recovery_index == b.recovery_index);
}

TEST_CASE("non-autonomous confinement and its generic breakdown") {
    auto dp2 = mk(
        "map \"a\" { forward: 2*a*x/(x^2-1) - y  param a: linrec coeffs=[2,-1] init=[1,2] }");
    ClassifyOptions opt;
    opt.horizon = 10;
    auto r = classify_singularity(dp2, SingularValue{false, Rational(1)}, opt);
    CHECK(r.cls == SingClass::Confined);
    REQUIRE(r.pattern.size() == 3);
    CHECK(r.pattern[0].value == "1");
    CHECK(r.pattern[1].value == "∞");
    CHECK(r.pattern[2].value == "-1");
    CHECK(r.recovery_index == 4);

    // generic coefficients never let the orbit recover; the engine re-checks
    // the verdict at twice the horizon before calling it non-confined
    auto gen = mk(
        "map \"g\" { forward: 2*a*x/(x^2-1) - y  param a: list "
        "[1/3, 2, -1/2, 5, 1/7, 3, -4, 9/2, 1/5, -6, 11/3, 1/2, 7, -2/3, 13, "
        "1/11, 4, -8/3, 17/5, 2/7, 19, -1/13, 5/3, 23/2, 1/17, -3/5, 29] }");
    gen.params.at("a").start = -13;
    ClassifyOptions og;
    og.horizon = 6;
    r = classify_singularity(gen, SingularValue{false, Rational(1)}, og);
    CHECK(r.cls == SingClass::NonConfined);
    CHECK(r.horizon == 12);
}

TEST_CASE("pair-map probes") {
    // every forward image pins the first component near 1 while y stays free
    auto tri = mk(R"(map "tri" {
  kind: pair
  forward: ((X+Y)/(X*Y+1), a*Y)
  backward: ((Y/a - X)/(X*Y/a - 1), Y/a)
  param a: const 3
})");
    ClassifyOptions opt;
    opt.near_values = std::vector<Rational>{Rational(1), Rational(-1)};
    ProbeSpec pinned{"pinned", seed_tracker(), seed_near(Rational(1)), 0, "x0"};
    CHECK(probe_anticonfined(tri, pinned, opt).cls == SingClass::NonConfined);

    // probe anchored away from index 0 reports the window at the anchor
    auto zmap = mk(R"(map "z" {
  kind: pair
  forward: (X^2*Y, 2*a/(X^2*Y*(X^4*Y^2-1)) - 1/(X^3*Y^2))
  backward: (2*a*X/(X^2-1) - X^2*Y, X/(2*a*X/(X^2-1) - X^2*Y)^2)
  param a: linrec coeffs=[2,-1] init=[1,2]
})");
    ClassifyOptions oz;
    oz.near_values = std::vector<Rational>{};
    ProbeSpec anchored{"(ε, z0)", seed_eps(1), seed_tracker(), 10, "z0"};
    auto r = probe_anticonfined(zmap, anchored, oz);
    CHECK(r.cls == SingClass::Anticonfined);
    CHECK(r.window_lo == 10);
    CHECK(r.window_hi == 10);
    REQUIRE(r.window[0].comps.size() == 2);
    CHECK(r.window[0].comps[0].kind == PatternEntry::Kind::Vanishing);
    CHECK(r.window[0].comps[1].value == "z0");
    REQUIRE(!r.forward_valuations.empty());
    CHECK(r.forward_valuations[0] == std::vector<long>{2, -3});
    CHECK(r.backward_valuations[0] == std::vector<long>{1, -1});
    REQUIRE(r.growth);
    CHECK(r.growth->type == GrowthResult::Type::Zero);

    // pair form of the confining map recovers through the probe too
    auto dp2p = mk(R"(map "p" {
  kind: pair
  forward: (Y, 2*a*Y/(Y^2-1) - X)
  backward: (2*a*X/(X^2-1) - Y, X)
  param a: linrec coeffs=[2,-1] init=[1,2]
})");
    ClassifyOptions od;
    od.near_values = std::vector<Rational>{Rational(1), Rational(-1)};
    ProbeSpec pd{"(x0, 1+ε)", seed_tracker(), seed_near(Rational(1)), 0, "x0"};
    auto rd = probe_anticonfined(dp2p, pd, od);
    CHECK(rd.cls == SingClass::Confined);
    CHECK(rd.recovery_index == 4);
}

TEST_CASE("verdict rules") {
    auto mkrep = [](SingClass c, GrowthResult::Type t, double rate) {
        SingularityReport r;
        r.cls = c;
        if (c == SingClass::Anticonfined) {
            GrowthResult g;
            g.type = t;
            g.rate = rate;
            r.growth = g;
        }
        return r;
    };
    EntropyEstimate flat;
    flat.growth = GrowthType::Polynomial;
    flat.entropy = 0;
    EntropyEstimate expo;
    expo.growth = GrowthType::Exponential;
    expo.entropy = std::log(kPhi);

    using VK = IntegrabilityVerdict::Kind;
    using GT = GrowthResult::Type;
    auto v = verdict({mkrep(SingClass::Confined, GT::Zero, 0),
                      mkrep(SingClass::Anticonfined, GT::Exponential, std::log(kPhi))},
                     expo);
    CHECK(v.kind == VK::NonIntegrable);
    CHECK(std::abs(v.entropy_bound - std::log(kPhi)) < 1e-12);

    CHECK(verdict({mkrep(SingClass::Anticonfined, GT::Linear, 0)}, flat).kind ==
          VK::Linearisable);
    CHECK(verdict({mkrep(SingClass::NonConfined, GT::Zero, 0),
                   mkrep(SingClass::Anticonfined, GT::Linear, 0)},
                  flat)
              .kind == VK::LinearisableOrNonIntegrable);
    CHECK(verdict({mkrep(SingClass::Confined, GT::Zero, 0),
                   mkrep(SingClass::Anticonfined, GT::Zero, 0)},
                  flat)
              .kind == VK::InconclusiveRecommendFullDeautonomisation);
    CHECK(verdict({mkrep(SingClass::NonConfined, GT::Zero, 0),
                   mkrep(SingClass::Anticonfined, GT::Zero, 0)},
                  flat)
              .kind == VK::LinearisableOrNonIntegrable);
    CHECK(verdict({mkrep(SingClass::NonConfined, GT::Zero, 0)}, expo).kind == VK::NonIntegrable);
    CHECK(verdict({mkrep(SingClass::NonConfined, GT::Zero, 0)}, flat).kind ==
          VK::LinearisableOrNonIntegrable);
    CHECK(verdict({mkrep(SingClass::Confined, GT::Zero, 0)}, flat).kind ==
          VK::IntegrableCandidate);
    CHECK(verdict({mkrep(SingClass::Confined, GT::Zero, 0)}, expo).kind == VK::NonIntegrable);

    // anticonfined rate and flat degrees disagree: verdict carries a warning
    v = verdict({mkrep(SingClass::Anticonfined, GT::Exponential, std::log(2.0))}, flat);
    CHECK(v.kind == VK::NonIntegrable);
    CHECK(!v.warnings.empty());

    // zero-growth window wins over exponential degrees, with a warning
    v = verdict({mkrep(SingClass::Anticonfined, GT::Zero, 0)}, expo);
    CHECK(v.kind == VK::InconclusiveRecommendFullDeautonomisation);
    CHECK(!v.warnings.empty());
}
