#include "doctest.h"
#include "json.hpp"
#include "singan/analyze.hpp"
#include "singan/mapdsl.hpp"
#include "singan/report.hpp"

using namespace singan;

TEST_CASE("epsilon and pattern rendering") {
    CHECK(eps_string(1) == "ε");
    CHECK(eps_string(3) == "ε^3");
    CHECK(eps_string(-1) == "ε^{-1}");
    CHECK(eps_string(-2) == "ε^{-2}");

    PatternEntry near1;
    near1.kind = PatternEntry::Kind::NearValue;
    near1.value = "1";
    PatternEntry zero;
    zero.kind = PatternEntry::Kind::Vanishing;
    zero.valuation = 1;
    zero.value = "0";
    PatternEntry inf;
    inf.kind = PatternEntry::Kind::Diverging;
    inf.valuation = -1;
    inf.value = "∞";
    CHECK(pattern_string({near1, zero, inf}) == "{1, 0, ∞}");

    PatternEntry reg;
    reg.kind = PatternEntry::Kind::Regular;
    reg.value = "-x0";
    CHECK(entry_string(reg) == "-x0");
    CHECK(entry_string(zero) == "ε");
    CHECK(entry_string(inf) == "ε^{-1}");
}

TEST_CASE("recurrence and polynomial rendering") {
    Recurrence r;
    r.order = 3;
    r.coeffs = {Rational(2), Rational(0), Rational(-1)};
    CHECK(recurrence_string(r) == "d_{n+1} = 2 d_n - d_{n-2}");
    Recurrence d;
    d.order = 1;
    d.coeffs = {Rational(2)};
    CHECK(recurrence_string(d) == "d_{n+1} = 2 d_n");

    CHECK(poly_string(char_poly(r)) == "λ^3 - 2 λ^2 + 1");
    Poly<Rational> lin{std::vector<Rational>{Rational(-2), Rational(1)}};
    CHECK(poly_string(lin) == "λ - 2");
}

TEST_CASE("analysis report renders to text and canonical JSON") {
    auto m = parse_mapfile("map \"power\" { forward: x^2/y }")[0];
    AnalyzeConfig cfg;
    cfg.steps = 8;
    cfg.horizon = 8;
    AnalysisReport rep = analyze_map(m, cfg);

    std::string text = render_text(rep);
    CHECK(text.find("map: power") != std::string::npos);
    CHECK(text.find("singularity at 0: anticonfined") != std::string::npos);
    CHECK(text.find("ε, x0, ε^{-1}") != std::string::npos);
    CHECK(text.find("verdict: Linearisable") != std::string::npos);

    std::string js = to_json(rep);
    auto j = nlohmann::json::parse(js);
    CHECK(j["name"] == "power");
    CHECK(j["config"]["steps"] == 8);
    CHECK(j["singular_values"].size() == 2);
    CHECK(j["singular_values"][1] == "inf");  // pure ASCII in JSON
    CHECK(j["singularities"].size() == 2);
    CHECK(j["singularities"][0]["class"] == "anticonfined");
    CHECK(j["degrees"].size() == 9);
    CHECK(j["verdict"] == "Linearisable");
    CHECK(j.contains("recurrence"));
    CHECK(j.contains("char_poly"));
    CHECK(j.contains("dominant_root"));
    CHECK(j.contains("entropy"));

    // canonical form: repeated runs give byte-identical output
    AnalysisReport again = analyze_map(m, cfg);
    CHECK(to_json(again) == js);
}

TEST_CASE("non-finite verdict fields serialize as null") {
    auto m = parse_mapfile("map \"lin\" { forward: 3*x - y }")[0];
    AnalyzeConfig cfg;
    cfg.steps = 6;
    cfg.horizon = 8;
    AnalysisReport rep = analyze_map(m, cfg);
    auto j = nlohmann::json::parse(to_json(rep));
    // bounded degrees: no recurrence, no characteristic polynomial
    CHECK(j["recurrence"].is_null());
    CHECK(j["char_poly"].is_null());
    CHECK(j["entropy"] == "0.000000000000");
}
