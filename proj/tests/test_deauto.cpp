#include <cmath>

#include "doctest.h"
#include "singan/deauto.hpp"
#include "singan/errors.hpp"
#include "singan/mapdsl.hpp"
#include "singan/singularity.hpp"

using namespace singan;

namespace {

MapInstance mk(const std::string& src) { return parse_mapfile(src)[0]; }

const double kLogPhi = std::log((1.0 + std::sqrt(5.0)) / 2.0);

ParamSeq mulrec_021() {
    ParamSeq c;
    c.kind = ParamSeq::Kind::MulRec;
    c.exponents = {0, 2, 1};
    c.init = {Rational(2), Rational(2), Rational(2)};
    return c;
}

}  // namespace

TEST_CASE("gen_params extends multiplicative recurrences both ways") {
    auto vals = gen_params(mulrec_021(), 12);
    REQUIRE(vals.size() == 25);
    // forward oracle: a_n = a_{n-2}^2 a_{n-3}
    std::vector<Rational> fwd = {Rational(2), Rational(2), Rational(2)};
    for (int n = 3; n <= 12; ++n) fwd.push_back(fwd[n - 2] * fwd[n - 2] * fwd[n - 3]);
    for (int n = 0; n <= 12; ++n) CHECK(vals[12 + n] == fwd[n]);
    // the exponent of 2 follows the same linear recurrence
    std::vector<long> want_exp = {1, 1, 1, 3, 3, 7, 9, 17, 25, 43, 67, 111, 177};
    for (int n = 0; n <= 12; ++n) CHECK(vals[12 + n] == pow_value(Rational(2), want_exp[n]));

    ParamSeq constant;
    constant.kind = ParamSeq::Kind::Constant;
    constant.constant = Rational(3);
    CHECK_THROWS_AS(gen_params(constant, 4), DomainError);
    ParamSeq expl;
    expl.kind = ParamSeq::Kind::Explicit;
    CHECK_THROWS_AS(gen_params(expl, 3), DomainError);
}

TEST_CASE("log-log growth rate of coefficient towers") {
    auto vals = gen_params(mulrec_021(), 12);
    LogLogFit f = loglog_fit(vals, 13);
    REQUIRE(f.recurrence);
    REQUIRE(f.char_poly);
    REQUIRE(f.dominant_factor);
    CHECK(f.char_poly->degree() == 3);
    CHECK(f.dominant_factor->degree() == 2);  // roots at -1 divided out
    CHECK(std::abs(f.rate - kLogPhi) < 1e-9);
    CHECK(loglog_growth_rate(vals, 13) == f.rate);

    // constant and geometric exponent growth both mean rate 0
    CHECK(loglog_fit(std::vector<Rational>(9, Rational(5, 3)), 6).rate == 0.0);
    std::vector<Rational> geo;
    for (int n = 0; n < 10; ++n) geo.push_back(pow_value(Rational(2), n));
    CHECK(loglog_fit(geo, 8).rate == 0.0);

    // doubly exponential tower 3^(2^n)
    std::vector<Rational> towers;
    for (int n = 0; n < 10; ++n) towers.push_back(pow_value(Rational(3), 1L << n));
    CHECK(std::abs(loglog_fit(towers, 8).rate - std::log(2.0)) < 1e-9);

    // too few values, mixed bases, nonpositive values: all rejected
    CHECK_THROWS_AS(loglog_fit(geo, 3), DomainError);
    std::vector<Rational> mixed = {Rational(2), Rational(3), Rational(2),
                                   Rational(3), Rational(2), Rational(3)};
    CHECK_THROWS_AS(loglog_fit(mixed, 4), DomainError);
    std::vector<Rational> neg = {Rational(2), Rational(-2), Rational(2), Rational(2)};
    CHECK_THROWS_AS(loglog_fit(neg, 4), DomainError);
}

TEST_CASE("multiplicative constraint keeps the pattern at scaled entry values") {
    MapInstance unit = mk("map \"g1\" { forward: y*(x^2 - 1)/x }");
    ClassifyOptions opt;
    opt.horizon = 9;
    SingularValue one{false, Rational(1)};
    SingularityReport ref = classify_singularity(unit, one, opt);
    REQUIRE(ref.cls == SingClass::Confined);

    MapInstance m = mk("map \"g\" { forward: y*(x^2 - a^2)/x param a: const 2 }");
    DeautoReport rep = verify_confinement_under_constraint(m, "a", mulrec_021(), one, ref, opt);
    CHECK(rep.observed.cls == SingClass::Confined);
    CHECK(rep.confinement_verified);
    CHECK(rep.entry_scaled);
    CHECK(rep.char_poly.degree() == 3);
    CHECK(rep.dominant_factor.degree() == 2);
    CHECK(std::abs(rep.predicted_entropy - kLogPhi) < 1e-9);
    REQUIRE(rep.loglog_rate);
    CHECK(std::abs(*rep.loglog_rate - kLogPhi) < 1e-9);
}

TEST_CASE("additive constraints verify or refute confinement") {
    MapInstance m = mk("map \"dp2\" { forward: 2*a*x/(x^2 - 1) - y param a: const 1 }");
    ClassifyOptions opt;
    opt.horizon = 10;
    SingularValue one{false, Rational(1)};
    SingularityReport ref = classify_singularity(m, one, opt);
    REQUIRE(ref.cls == SingClass::Confined);

    // a_n = 1 + n keeps the three-step pattern, entropy prediction 0
    ParamSeq lin;
    lin.kind = ParamSeq::Kind::LinRec;
    lin.coeffs = {Rational(2), Rational(-1)};
    lin.init = {Rational(1), Rational(2)};
    DeautoReport rep = verify_confinement_under_constraint(m, "a", lin, one, ref, opt);
    CHECK(rep.observed.cls == SingClass::Confined);
    CHECK(rep.confinement_verified);
    CHECK(!rep.entry_scaled);
    CHECK(rep.predicted_entropy == 0.0);
    CHECK(!rep.loglog_rate);

    // an order-4 rule admitted by the late pattern: confinement takes the
    // longer road and no longer matches the reference, entropy turns positive
    ParamSeq late;
    late.kind = ParamSeq::Kind::LinRec;
    late.coeffs = {Rational(2), Rational(-1), Rational(2), Rational(-1)};
    late.init = {Rational(1), Rational(1), Rational(2), Rational(4)};
    DeautoReport lrep = verify_confinement_under_constraint(m, "a", late, one, ref, opt);
    CHECK(lrep.observed.cls == SingClass::Confined);
    CHECK(lrep.observed.pattern.size() == 5);
    CHECK(!lrep.confinement_verified);
    CHECK(!lrep.consistency.empty());
    CHECK(std::abs(lrep.predicted_entropy - std::log(1.8832035059)) < 5e-4);
}
