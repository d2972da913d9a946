#include "singan/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "singan/deauto.hpp"
#include "singan/mapdsl.hpp"
#include "singan/report.hpp"

namespace singan {

namespace {

const double kLogGolden = std::log((1.0 + std::sqrt(5.0)) / 2.0);
const double kLogK3 = std::log((3.0 + std::sqrt(5.0)) / 2.0);

using Rep = AnalysisReport;
using VK = IntegrabilityVerdict::Kind;
using GT = GrowthResult::Type;

bool fail(std::string& detail, std::string msg) {
    detail = std::move(msg);
    return false;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const SingularityReport* sing(const Rep& rep, const std::string& label) {
    for (const auto& cs : rep.singularities)
        if (cs.value == label) return &cs.report;
    return nullptr;
}

std::string join_longs(const std::vector<long>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

// first-component valuations, at most n of them
std::vector<long> col0(const std::vector<std::vector<long>>& rows, size_t n) {
    std::vector<long> out;
    for (const auto& r : rows) {
        if (out.size() == n) break;
        out.push_back(r.at(0));
    }
    return out;
}

bool prefix_is(const std::vector<long>& got, const std::vector<long>& want, std::string& detail,
               const std::string& side) {
    if (got.size() < want.size())
        return fail(detail, side + " has only " + std::to_string(got.size()) + " values");
    for (size_t i = 0; i < want.size(); ++i)
        if (got[i] != want[i])
            return fail(detail, side + " valuations " + join_longs(got) + " != " + join_longs(want));
    return true;
}

// the classified report for `label`, required to have class `cls`
const SingularityReport* want_class(const Rep& rep, const std::string& label, SingClass cls,
                                    std::string& detail) {
    const SingularityReport* sr = sing(rep, label);
    if (!sr) {
        fail(detail, "no classification for " + label);
        return nullptr;
    }
    if (sr->cls != cls) {
        fail(detail, label + " classified " + to_string(sr->cls));
        return nullptr;
    }
    return sr;
}

bool check_confined(const Rep& rep, const std::string& label, const std::string& want_pattern,
                    long want_recovery, std::string& detail) {
    const SingularityReport* sr = want_class(rep, label, SingClass::Confined, detail);
    if (!sr) return false;
    std::string got = pattern_string(sr->pattern);
    if (got != want_pattern) return fail(detail, label + " pattern " + got);
    if (want_recovery >= 0 && sr->recovery_index != want_recovery)
        return fail(detail, label + " recovered at " + std::to_string(sr->recovery_index));
    return true;
}

bool check_growth(const SingularityReport& sr, GT type, std::string& detail) {
    if (!sr.growth) return fail(detail, "no growth classification");
    if (sr.growth->type != type) {
        const char* names[] = {"zero", "linear", "exponential", "unclassified"};
        return fail(detail, std::string("growth ") + names[static_cast<int>(sr.growth->type)]);
    }
    return true;
}

std::vector<std::string> window_strings(const SingularityReport& sr) {
    std::vector<std::string> out;
    for (const auto& row : sr.window) {
        if (row.comps.size() == 1) {
            out.push_back(entry_string(row.comps[0]));
        } else {
            std::string s = "(";
            for (size_t i = 0; i < row.comps.size(); ++i) {
                if (i) s += ", ";
                s += entry_string(row.comps[i]);
            }
            out.push_back(s + ")");
        }
    }
    return out;
}

std::string display_line(const SingularityReport& sr) {
    std::string s;
    for (const auto& row : sr.display) {
        if (!s.empty()) s += ", ";
        if (row.comps.size() == 1) {
            s += entry_string(row.comps[0]);
        } else {
            s += "(";
            for (size_t i = 0; i < row.comps.size(); ++i) {
                if (i) s += ", ";
                s += entry_string(row.comps[i]);
            }
            s += ")";
        }
    }
    return s;
}

bool degrees_are(const Rep& rep, const std::vector<long>& want, std::string& detail) {
    if (rep.degrees != want)
        return fail(detail, "degrees " + join_longs(rep.degrees) + " != " + join_longs(want));
    return true;
}

bool entropy_near(const Rep& rep, double want, double tol, std::string& detail) {
    if (!rep.entropy) return fail(detail, "no entropy estimate");
    if (!near(rep.entropy->entropy, want, tol)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "entropy %.12f", rep.entropy->entropy);
        return fail(detail, buf);
    }
    return true;
}

bool poly_growth(const Rep& rep, int order, std::string& detail) {
    if (!rep.entropy) return fail(detail, "no entropy estimate");
    if (rep.entropy->growth != GrowthType::Polynomial || rep.entropy->poly_order != order)
        return fail(detail, "degree growth is not polynomial of order " + std::to_string(order));
    return true;
}

bool verdict_is(const Rep& rep, VK kind, std::string& detail) {
    if (rep.verdict.kind != kind) return fail(detail, "verdict " + to_string(rep.verdict.kind));
    return true;
}

bool has_warning(const std::vector<std::string>& warnings, const std::string& needle) {
    for (const auto& w : warnings)
        if (w.find(needle) != std::string::npos) return true;
    return false;
}

double interval_mid(const Interval& iv) { return to_double((iv.lo + iv.hi) / 2); }

Expectation E(std::string tag, std::string what,
              std::function<bool(const CatalogEntry&, const Rep&, std::string&)> fn) {
    Expectation x;
    x.tag = std::move(tag);
    x.what = std::move(what);
    x.check = std::move(fn);
    return x;
}

AstPtr expr(const std::string& text) { return parse_expr(tokenize(text)); }

// conjugation check used by the power-map entries: x = (1-u)/(1+u) carries
// the rational form back to x_{n+1} x_{n-1} = x_n^k
bool conjugates_to_power(const CatalogEntry& e, int k, std::string& detail) {
    MapInstance m = catalog_map(e);
    AstPtr phi = expr("(1-x)/(1+x)");
    AstPtr g = conjugate_scalar(m.fwd_x, phi, {});
    AstPtr want = expr(k == 2 ? "x^2/y" : "x^3/y");
    if (!ratfunc_equal(g, want, {})) return fail(detail, "conjugated rule differs");
    return true;
}

std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> all;

    // ---- cubic -------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "cubic";
        e.title = "x' x = y (x^2 - 1): exponential degree growth beside confined patterns";
        e.source = "map \"cubic\" { forward: y*(x^2-1)/x }";
        e.config.steps = 14;
        e.config.horizon = 11;
        e.expect.push_back(E("paper", "degrees 0, 1, 2, 4, 8, 14, 24, ..., 1218",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return degrees_are(rep,
                                                    {0, 1, 2, 4, 8, 14, 24, 40, 66, 108, 176, 286,
                                                     464, 752, 1218},
                                                    detail);
                             }));
        e.expect.push_back(E("paper", "degree recurrence d_{n+1} = 2 d_n - d_{n-2} from n = 4",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!rep.entropy || !rep.entropy->recurrence)
                                     return fail(detail, "no recurrence");
                                 std::string got = recurrence_string(*rep.entropy->recurrence);
                                 if (got != "d_{n+1} = 2 d_n - d_{n-2}")
                                     return fail(detail, got);
                                 if (rep.entropy->recurrence->valid_from != 4)
                                     return fail(detail,
                                                 "valid from " +
                                                     std::to_string(
                                                         rep.entropy->recurrence->valid_from));
                                 return true;
                             }));
        e.expect.push_back(
            E("derived", "dominant root = golden ratio (1e-9); entropy = its log (1e-6)",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  if (!rep.entropy) return fail(detail, "no entropy estimate");
                  double mid = interval_mid(rep.entropy->dominant);
                  if (!near(mid, (1.0 + std::sqrt(5.0)) / 2.0, 1e-9))
                      return fail(detail, "root " + std::to_string(mid));
                  return entropy_near(rep, kLogGolden, 1e-6, detail);
              }));
        e.expect.push_back(E("paper", "singularity at 1 confined: {1, 0, ∞, -1}",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return check_confined(rep, "1", "{1, 0, ∞, -1}", 5, detail);
                             }));
        e.expect.push_back(E("paper", "singularity at -1 confined: {-1, 0, ∞, 1}",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return check_confined(rep, "-1", "{-1, 0, ∞, 1}", 5, detail);
                             }));
        e.expect.push_back(
            E("paper", "orbit through 0 anticonfined: Fibonacci exponents, two free entries",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr = want_class(rep, "0", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  if (!prefix_is(col0(sr->forward_valuations, 7), {-1, -1, -2, -3, -5, -8, -13},
                                 detail, "forward"))
                      return false;
                  if (!prefix_is(col0(sr->backward_valuations, 7), {1, 1, 2, 3, 5, 8, 13}, detail,
                                 "backward"))
                      return false;
                  int free_entries = 0;
                  for (const auto& row : sr->window)
                      if (row.comps[0].kind == PatternEntry::Kind::Regular &&
                          row.comps[0].depends_on_tracker)
                          ++free_entries;
                  if (free_entries != 2)
                      return fail(detail, std::to_string(free_entries) + " free window entries");
                  return true;
              }));
        e.expect.push_back(
            E("derived", "anticonfined rate equals the degree entropy (1e-6)",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr = want_class(rep, "0", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  if (!check_growth(*sr, GT::Exponential, detail)) return false;
                  if (!rep.entropy) return fail(detail, "no entropy estimate");
                  if (!near(sr->growth->rate, rep.entropy->entropy, 1e-6))
                      return fail(detail, "rate " + std::to_string(sr->growth->rate));
                  return true;
              }));
        e.expect.push_back(E("trivial", "verdict NonIntegrable, bound log(golden)",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!verdict_is(rep, VK::NonIntegrable, detail)) return false;
                                 if (!near(rep.verdict.entropy_bound, kLogGolden, 1e-6))
                                     return fail(detail, "bound " +
                                                             std::to_string(
                                                                 rep.verdict.entropy_bound));
                                 return true;
                             }));
        all.push_back(std::move(e));
    }

    // ---- cubic-deauto ------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "cubic-deauto";
        e.title = "x' x = y (x^2 - a^2) with a_{n+2} = a_n^2 a_{n-1}";
        e.source =
            "map \"cubic-deauto\" { forward: y*(x^2-a^2)/x  "
            "param a: mulrec exponents=[0,2,1] init=[2,2,2] }";
        e.config.steps = 10;
        e.config.horizon = 6;
        e.expect.push_back(
            E("derived", "index-dependent singular candidates dropped; set is {0, ∞}",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  if (rep.singular_values.size() != 2 || rep.singular_values[0].at_infinity ||
                      rep.singular_values[0].value != Rational(0) ||
                      !rep.singular_values[1].at_infinity)
                      return fail(detail, "unexpected singular set");
                  if (!has_warning(rep.warnings, "dropped as parameter-dependent"))
                      return fail(detail, "missing dropped-candidate warning");
                  return true;
              }));
        e.expect.push_back(
            E("paper", "orbits through 0 and ∞ anticonfined at rate log(golden)",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  for (const char* label : {"0", "∞"}) {
                      const SingularityReport* sr =
                          want_class(rep, label, SingClass::Anticonfined, detail);
                      if (!sr) return false;
                      if (!check_growth(*sr, GT::Exponential, detail)) return false;
                      if (!near(sr->growth->rate, kLogGolden, 1e-9))
                          return fail(detail, "rate " + std::to_string(sr->growth->rate));
                  }
                  return true;
              }));
        e.expect.push_back(
            E("paper", "coefficient tower: (1/n) log log a_n -> log(golden), quadratic factor",
              [](const CatalogEntry& self, const Rep&, std::string& detail) {
                  MapInstance m = catalog_map(self);
                  LogLogFit fit = loglog_fit(gen_params(m.params.at("a"), 12), 13);
                  if (!near(fit.rate, kLogGolden, 1e-9))
                      return fail(detail, "rate " + std::to_string(fit.rate));
                  if (!fit.char_poly || fit.char_poly->degree() != 3)
                      return fail(detail, "characteristic degree");
                  if (!fit.dominant_factor || fit.dominant_factor->degree() != 2)
                      return fail(detail, "dominant factor degree");
                  return true;
              }));
        e.expect.push_back(
            E("derived", "pattern survives the constraint at the scaled entry value",
              [](const CatalogEntry& self, const Rep&, std::string& detail) {
                  MapInstance ref_map =
                      parse_mapfile("map \"autonomous\" { forward: y*(x^2-1)/x }").front();
                  ClassifyOptions ro;
                  ro.horizon = 9;
                  SingularityReport ref =
                      classify_singularity(ref_map, SingularValue{false, Rational(1)}, ro);
                  MapInstance m = catalog_map(self);
                  DeautoReport dr = verify_confinement_under_constraint(
                      m, "a", m.params.at("a"), SingularValue{false, Rational(1)}, ref, ro);
                  if (!dr.confinement_verified) {
                      std::string why = dr.consistency.empty() ? "not verified" : dr.consistency[0];
                      return fail(detail, why);
                  }
                  if (!dr.entry_scaled) return fail(detail, "entry was not scaled");
                  if (!near(dr.predicted_entropy, kLogGolden, 1e-9))
                      return fail(detail, "predicted " + std::to_string(dr.predicted_entropy));
                  if (!dr.loglog_rate || !near(*dr.loglog_rate, kLogGolden, 1e-9))
                      return fail(detail, "log-log cross-check");
                  return true;
              }));
        e.expect.push_back(E("trivial", "verdict NonIntegrable, bound log(golden)",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!verdict_is(rep, VK::NonIntegrable, detail)) return false;
                                 if (!near(rep.verdict.entropy_bound, kLogGolden, 1e-9))
                                     return fail(detail, "bound " +
                                                             std::to_string(
                                                                 rep.verdict.entropy_bound));
                                 return true;
                             }));
        all.push_back(std::move(e));
    }

    // ---- dp2-generic ---------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "dp2-generic";
        e.title = "x' + y = 2 a x/(x^2 - 1) with generic coefficients: non-confined";
        e.source =
            "map \"dp2-generic\" { forward: 2*a*x/(x^2-1) - y  param a: list "
            "[1/3, 2, -1/2, 5, 1/7, 3, -4, 9/2, 1/5, -6, 11/3, 1/2, 7, -2/3, 13, "
            "1/11, 4, -8/3, 17/5, 2/7, 19, -1/13, 5/3, 23/2, 1/17, -3/5, 29, 2/19, "
            "31/7, -1/23, 6/5, 37/3, 1/29, -7/2, 41/5, 3/31, 43/9] }";
        e.config.steps = 10;
        e.config.horizon = 6;
        e.patch = [](MapInstance& m) { m.params.at("a").start = -18; };
        e.expect.push_back(
            E("paper", "singularities at ±1 never recover (checked at twice the horizon)",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  for (const char* label : {"1", "-1"}) {
                      const SingularityReport* sr =
                          want_class(rep, label, SingClass::NonConfined, detail);
                      if (!sr) return false;
                      if (sr->horizon != 12)
                          return fail(detail, "horizon " + std::to_string(sr->horizon));
                  }
                  return true;
              }));
        e.expect.push_back(E("derived", "degrees 0, 1, 2, 5, 10, 21, 42, ...; entropy log 2",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!degrees_are(rep,
                                                  {0, 1, 2, 5, 10, 21, 42, 85, 170, 341, 682},
                                                  detail))
                                     return false;
                                 return entropy_near(rep, std::log(2.0), 1e-12, detail);
                             }));
        e.expect.push_back(E("trivial", "verdict NonIntegrable",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return verdict_is(rep, VK::NonIntegrable, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- dp2-late ------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "dp2-late";
        e.title = "x' + y = 2 a x/(x^2 - 1), order-4 coefficient rule: confined yet exponential";
        e.source =
            "map \"dp2-late\" { forward: 2*a*x/(x^2-1) - y  "
            "param a: linrec coeffs=[2,-1,2,-1] init=[1,1,2,4] }";
        e.config.steps = 10;
        e.config.horizon = 10;
        e.expect.push_back(
            E("paper", "confinement is delayed: {1, ∞, -1, ∞, 1} and mirror",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  return check_confined(rep, "1", "{1, ∞, -1, ∞, 1}", 6, detail) &&
                         check_confined(rep, "-1", "{-1, ∞, 1, ∞, -1}", 6, detail);
              }));
        e.expect.push_back(
            E("paper", "coefficient recurrence root 1.8832 (5e-4)",
              [](const CatalogEntry& self, const Rep&, std::string& detail) {
                  MapInstance m = catalog_map(self);
                  const ParamSeq& c = m.params.at("a");
                  Recurrence rec;
                  rec.order = static_cast<int>(c.coeffs.size());
                  rec.coeffs = c.coeffs;
                  Poly<Rational> p = char_poly(rec);
                  Interval iv = dominant_root(p, Rational(1, 1000000000));
                  double mid = interval_mid(iv);
                  if (!near(mid, 1.8832, 5e-4)) return fail(detail, "root " + std::to_string(mid));
                  return true;
              }));
        e.expect.push_back(
            E("derived", "late degree ratio within 10% of the coefficient root",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  if (rep.degrees.size() < 2 || rep.degrees[rep.degrees.size() - 2] == 0)
                      return fail(detail, "too few degrees");
                  double ratio = double(rep.degrees.back()) / double(rep.degrees[rep.degrees.size() - 2]);
                  if (std::abs(ratio / 1.8832 - 1.0) > 0.10)
                      return fail(detail, "ratio " + std::to_string(ratio));
                  return true;
              }));
        e.expect.push_back(
            E("derived", "degree growth exponential; verdict NonIntegrable",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  if (!rep.entropy || rep.entropy->growth != GrowthType::Exponential)
                      return fail(detail, "degree growth not exponential");
                  return verdict_is(rep, VK::NonIntegrable, detail);
              }));
        e.expect.push_back(E("trivial", "ratio-based entropy is flagged low-confidence",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!has_warning(rep.warnings, "ratio-based"))
                                     return fail(detail, "missing warning");
                                 return true;
                             }));
        all.push_back(std::move(e));
    }

    // ---- dp2-linear ----------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "dp2-linear";
        e.title = "x' + y = 2 a x/(x^2 - 1) with a_n = n + 1: integrable candidate";
        e.source =
            "map \"dp2-linear\" { forward: 2*a*x/(x^2-1) - y  "
            "param a: linrec coeffs=[2,-1] init=[1,2] }";
        e.config.steps = 12;
        e.config.horizon = 10;
        e.expect.push_back(E("paper", "confined patterns {1, ∞, -1} and {-1, ∞, 1}",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return check_confined(rep, "1", "{1, ∞, -1}", 4, detail) &&
                                        check_confined(rep, "-1", "{-1, ∞, 1}", 4, detail);
                             }));
        e.expect.push_back(E("derived", "degrees grow quadratically; entropy 0",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!degrees_are(rep,
                                                  {0, 1, 2, 5, 8, 13, 18, 25, 32, 41, 50, 61, 72},
                                                  detail))
                                     return false;
                                 if (!poly_growth(rep, 2, detail)) return false;
                                 return entropy_near(rep, 0.0, 0.0, detail);
                             }));
        e.expect.push_back(E("trivial", "verdict IntegrableCandidate",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return verdict_is(rep, VK::IntegrableCandidate, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- dp2-pair ------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "dp2-pair";
        e.title = "dp2-linear as a pair map, probed where a component enters ±1";
        e.source = R"(map "dp2-pair" {
  kind: pair
  forward: (Y, 2*a*Y/(Y^2-1) - X)
  backward: (2*a*X/(X^2-1) - Y, X)
  param a: linrec coeffs=[2,-1] init=[1,2]
})";
        e.config.steps = 10;
        e.config.horizon = 10;
        e.spec.classify.near_values = std::vector<Rational>{Rational(1), Rational(-1)};
        e.spec.probes.push_back(
            ProbeSpec{"(x0, 1+ε)", seed_tracker(), seed_near(Rational(1)), 0, "x0"});
        e.spec.probes.push_back(
            ProbeSpec{"(x0, -1+ε)", seed_tracker(), seed_near(Rational(-1)), 0, "x0"});
        e.expect.push_back(
            E("paper", "probe patterns {1, ∞, ∞, -1} and {-1, ∞, ∞, 1}",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  return check_confined(rep, "(x0, 1+ε)", "{1, ∞, ∞, -1}", 4,
                                        detail) &&
                         check_confined(rep, "(x0, -1+ε)", "{-1, ∞, ∞, 1}", 4,
                                        detail);
              }));
        e.expect.push_back(E("derived", "degrees grow quadratically; verdict IntegrableCandidate",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!poly_growth(rep, 2, detail)) return false;
                                 return verdict_is(rep, VK::IntegrableCandidate, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- dp2-z ---------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "dp2-z";
        e.title = "dp2-late in (x, z = y/x^2) variables: zero-growth anticonfined window";
        e.source = R"(map "dp2-z" {
  kind: pair
  forward: (X^2*Y, 2*a/(X^2*Y*(X^4*Y^2-1)) - 1/(X^3*Y^2))
  backward: (2*a*X/(X^2-1) - X^2*Y, X/(2*a*X/(X^2-1) - X^2*Y)^2)
  param a: linrec coeffs=[2,-1,2,-1] init=[1,1,2,4]
})";
        e.config.steps = 8;
        e.config.horizon = 12;
        e.spec.classify.near_values = std::vector<Rational>{};
        e.spec.probes.push_back(ProbeSpec{"(ε, z0)", seed_eps(1), seed_tracker(), 10, "z0"});
        e.expect.push_back(
            E("paper", "window (ε, z0); margins (ε^2, ε^{-3}) and (ε, ε^{-1})",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "(ε, z0)", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  if (sr->window_lo != 10 || sr->window_hi != 10)
                      return fail(detail, "window not a single entry at the anchor");
                  auto ws = window_strings(*sr);
                  if (ws.size() != 1 || ws[0] != "(ε, z0)")
                      return fail(detail, "window " + (ws.empty() ? "?" : ws[0]));
                  const auto& fv = sr->forward_valuations;
                  const auto& bv = sr->backward_valuations;
                  if (fv.size() < 2 || bv.empty()) return fail(detail, "missing margins");
                  if (fv[0] != std::vector<long>{2, -3})
                      return fail(detail, "forward margin " + join_longs(fv[0]));
                  if (fv[1] != std::vector<long>{1, -1} || bv[0] != std::vector<long>{1, -1})
                      return fail(detail, "tail is not (ε, ε^{-1})");
                  return check_growth(*sr, GT::Zero, detail);
              }));
        e.expect.push_back(
            E("paper", "display ..., (ε, z0), (ε^2, ε^{-3}), (ε, ε^{-1}), ...",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "(ε, z0)", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  std::string line = display_line(*sr);
                  if (line.find("(ε, z0), (ε^2, ε^{-3}), (ε, ε^{-1})") ==
                      std::string::npos)
                      return fail(detail, line);
                  return true;
              }));
        e.expect.push_back(
            E("derived", "exponential degrees beside a zero-growth window: full study advised",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  if (!rep.entropy || rep.entropy->growth != GrowthType::Exponential)
                      return fail(detail, "degree growth not exponential");
                  if (!verdict_is(rep, VK::InconclusiveRecommendFullDeautonomisation, detail))
                      return false;
                  if (!has_warning(rep.verdict.warnings, "is positive") &&
                      !has_warning(rep.warnings, "is positive"))
                      return fail(detail, "missing positive-entropy warning");
                  return true;
              }));
        all.push_back(std::move(e));
    }

    // ---- henon ---------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "henon";
        e.title = "x' + y = 1 + x^2: polynomial map probed at infinity";
        e.source = "map \"henon\" { forward: 1 + x^2 - y }";
        e.config.steps = 8;
        e.config.horizon = 12;
        e.expect.push_back(
            E("paper", "no enterable singular values; automatic probe at infinity",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  if (!rep.singular_values.empty()) return fail(detail, "singular set not empty");
                  if (!has_warning(rep.warnings, "anticonfined probe at infinity"))
                      return fail(detail, "missing probe warning");
                  return sing(rep, "(x0, ε^{-1})") != nullptr ||
                         fail(detail, "no probe report");
              }));
        e.expect.push_back(
            E("paper", "probe exponents double every step: -1, -2, -4, ..., -64 both ways",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "(x0, ε^{-1})", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  std::vector<long> want{-1, -2, -4, -8, -16, -32, -64};
                  return prefix_is(col0(sr->forward_valuations, 7), want, detail, "forward") &&
                         prefix_is(col0(sr->backward_valuations, 7), want, detail, "backward");
              }));
        e.expect.push_back(E("derived", "degree recurrence d_{n+1} = 2 d_n; entropy log 2 (1e-12)",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!rep.entropy || !rep.entropy->recurrence)
                                     return fail(detail, "no recurrence");
                                 std::string got = recurrence_string(*rep.entropy->recurrence);
                                 if (got != "d_{n+1} = 2 d_n") return fail(detail, got);
                                 return entropy_near(rep, std::log(2.0), 1e-12, detail);
                             }));
        e.expect.push_back(E("paper", "verdict NonIntegrable, bound log 2 (1e-12)",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!verdict_is(rep, VK::NonIntegrable, detail)) return false;
                                 if (!near(rep.verdict.entropy_bound, std::log(2.0), 1e-12))
                                     return fail(detail, "bound " +
                                                             std::to_string(
                                                                 rep.verdict.entropy_bound));
                                 return true;
                             }));
        all.push_back(std::move(e));
    }

    // ---- linear --------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "linear";
        e.title = "x' + y = 3 x: linear map probed at infinity";
        e.source = "map \"linear\" { forward: 3*x - y }";
        e.config.steps = 10;
        e.config.horizon = 12;
        e.expect.push_back(
            E("trivial", "no enterable singular values; automatic probe at infinity",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  if (!rep.singular_values.empty()) return fail(detail, "singular set not empty");
                  if (!has_warning(rep.warnings, "anticonfined probe at infinity"))
                      return fail(detail, "missing probe warning");
                  return true;
              }));
        e.expect.push_back(
            E("paper", "probe exponent stays -1 in both directions; zero growth",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "(x0, ε^{-1})", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  for (const auto& row : sr->forward_valuations)
                      if (row[0] != -1) return fail(detail, "forward valuation moved");
                  for (const auto& row : sr->backward_valuations)
                      if (row[0] != -1) return fail(detail, "backward valuation moved");
                  return check_growth(*sr, GT::Zero, detail);
              }));
        e.expect.push_back(E("derived", "degrees stay bounded; entropy 0",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!rep.entropy || rep.entropy->growth != GrowthType::Bounded)
                                     return fail(detail, "degree growth not bounded");
                                 return entropy_near(rep, 0.0, 0.0, detail);
                             }));
        e.expect.push_back(
            E("derived", "zero-growth probe alone is inconclusive: study coefficient growth",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  return verdict_is(rep, VK::InconclusiveRecommendFullDeautonomisation, detail);
              }));
        all.push_back(std::move(e));
    }

    // ---- power-k2 ------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "power-k2";
        e.title = "x' y = x^2: linearisable power map";
        e.source = "map \"power-k2\" { forward: x^2/y }";
        e.config.steps = 10;
        e.config.horizon = 10;
        e.expect.push_back(
            E("paper", "orbit at ∞: ε^3, ε^2, ε, x0, ε^{-1}, ...",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "∞", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  std::string line = display_line(*sr);
                  if (line.find("ε^3, ε^2, ε, x0, ε^{-1}") == std::string::npos)
                      return fail(detail, line);
                  return true;
              }));
        e.expect.push_back(
            E("derived", "exponents move linearly with slope ±1 on the two orbits",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* at_inf =
                      want_class(rep, "∞", SingClass::Anticonfined, detail);
                  if (!at_inf) return false;
                  if (!check_growth(*at_inf, GT::Linear, detail)) return false;
                  if (at_inf->growth->slope != -1) return fail(detail, "slope at ∞");
                  const SingularityReport* at0 =
                      want_class(rep, "0", SingClass::Anticonfined, detail);
                  if (!at0) return false;
                  if (!check_growth(*at0, GT::Linear, detail)) return false;
                  if (at0->growth->slope != 1) return fail(detail, "slope at 0");
                  return prefix_is(col0(at_inf->forward_valuations, 4), {-1, -2, -3, -4}, detail,
                                   "forward") &&
                         prefix_is(col0(at_inf->backward_valuations, 4), {1, 2, 3, 4}, detail,
                                   "backward");
              }));
        e.expect.push_back(E("derived", "degrees 0, 1, 2, 3, ... (order-1 polynomial)",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!degrees_are(rep, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, detail))
                                     return false;
                                 return poly_growth(rep, 1, detail);
                             }));
        e.expect.push_back(E("paper", "verdict Linearisable",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return verdict_is(rep, VK::Linearisable, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- power-k2-conj ---------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "power-k2-conj";
        e.title = "homographic image of power-k2 with singular values ±1";
        e.source = "map \"power-k2-conj\" { forward: (2*x - y*(1+x^2))/(1 + x^2 - 2*x*y) }";
        e.config.steps = 10;
        e.config.horizon = 10;
        e.expect.push_back(E("paper", "x = (1-u)/(1+u) carries the rule to x' y = x^2 exactly",
                             [](const CatalogEntry& self, const Rep&, std::string& detail) {
                                 return conjugates_to_power(self, 2, detail);
                             }));
        e.expect.push_back(
            E("paper", "orbits at ±1 anticonfined; deviations deepen linearly",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  for (const char* label : {"1", "-1"}) {
                      const SingularityReport* sr =
                          want_class(rep, label, SingClass::Anticonfined, detail);
                      if (!sr) return false;
                      if (!check_growth(*sr, GT::Linear, detail)) return false;
                      if (sr->growth->slope != 1) return fail(detail, "slope");
                      if (!prefix_is(col0(sr->forward_valuations, 4), {1, 2, 3, 4}, detail,
                                     "forward"))
                          return false;
                  }
                  return true;
              }));
        e.expect.push_back(
            E("derived", "the free entry sits between the two singular values: -1, x0, 1",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "1", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  std::string line = display_line(*sr);
                  if (line.find("-1, x0, 1") == std::string::npos) return fail(detail, line);
                  return true;
              }));
        e.expect.push_back(E("derived", "degrees linear; verdict Linearisable",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!poly_growth(rep, 1, detail)) return false;
                                 return verdict_is(rep, VK::Linearisable, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- power-k3 ------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "power-k3";
        e.title = "x' y = x^3: non-integrable power map";
        e.source = "map \"power-k3\" { forward: x^3/y }";
        e.config.steps = 8;
        e.config.horizon = 10;
        e.expect.push_back(
            E("paper", "exponents 1, 3, 8, 21 on both sides of the free entry",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "0", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  return prefix_is(col0(sr->forward_valuations, 4), {1, 3, 8, 21}, detail,
                                   "forward") &&
                         prefix_is(col0(sr->backward_valuations, 4), {-1, -3, -8, -21}, detail,
                                   "backward");
              }));
        e.expect.push_back(
            E("paper", "exponent recursion d' + d'' = 3 d; rate log((3+√5)/2) (1e-6)",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "0", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  if (!check_growth(*sr, GT::Exponential, detail)) return false;
                  if (!sr->growth->recurrence || sr->growth->recurrence->order != 2 ||
                      sr->growth->recurrence->coeffs[0] != Rational(3) ||
                      sr->growth->recurrence->coeffs[1] != Rational(-1))
                      return fail(detail, "recurrence");
                  if (!near(sr->growth->rate, kLogK3, 1e-6))
                      return fail(detail, "rate " + std::to_string(sr->growth->rate));
                  return true;
              }));
        e.expect.push_back(E("derived", "degrees 0, 1, 3, 8, 21, ...; entropy equals the rate",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!degrees_are(rep, {0, 1, 3, 8, 21, 55, 144, 377, 987}, detail))
                                     return false;
                                 return entropy_near(rep, kLogK3, 1e-9, detail);
                             }));
        e.expect.push_back(E("trivial", "verdict NonIntegrable, bound log((3+√5)/2)",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!verdict_is(rep, VK::NonIntegrable, detail)) return false;
                                 if (!near(rep.verdict.entropy_bound, kLogK3, 1e-6))
                                     return fail(detail, "bound");
                                 return true;
                             }));
        all.push_back(std::move(e));
    }

    // ---- power-k3-conj ---------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "power-k3-conj";
        e.title = "homographic image of power-k3 with singular values ±1";
        e.source =
            "map \"power-k3-conj\" { forward: (x^3 + 3*x - y*(1+3*x^2))/(1 + 3*x^2 - "
            "y*(x^3+3*x)) }";
        e.config.steps = 7;
        e.config.horizon = 7;
        e.expect.push_back(E("paper", "x = (1-u)/(1+u) carries the rule to x' y = x^3 exactly",
                             [](const CatalogEntry& self, const Rep&, std::string& detail) {
                                 return conjugates_to_power(self, 3, detail);
                             }));
        e.expect.push_back(
            E("paper", "orbits at ±1 anticonfined; deviation exponents 1, 3, 8, 21",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  for (const char* label : {"1", "-1"}) {
                      const SingularityReport* sr =
                          want_class(rep, label, SingClass::Anticonfined, detail);
                      if (!sr) return false;
                      if (!prefix_is(col0(sr->forward_valuations, 4), {1, 3, 8, 21}, detail,
                                     "forward") ||
                          !prefix_is(col0(sr->backward_valuations, 4), {1, 3, 8, 21}, detail,
                                     "backward"))
                          return false;
                      if (!check_growth(*sr, GT::Exponential, detail)) return false;
                      if (!near(sr->growth->rate, kLogK3, 1e-6)) return fail(detail, "rate");
                  }
                  return true;
              }));
        e.expect.push_back(
            E("derived", "degrees follow d_{n+1} = 3 d_n - d_{n-1}; entropy matches the rate",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  if (!rep.entropy || !rep.entropy->recurrence) return fail(detail, "no recurrence");
                  std::string got = recurrence_string(*rep.entropy->recurrence);
                  if (got != "d_{n+1} = 3 d_n - d_{n-1}") return fail(detail, got);
                  return entropy_near(rep, kLogK3, 1e-6, detail);
              }));
        e.expect.push_back(E("trivial", "verdict NonIntegrable",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return verdict_is(rep, VK::NonIntegrable, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- qrt-add ---------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "qrt-add";
        e.title = "(x' + x)(x + y) = a (x^2 - 1): linearisable, zero-growth anticonfined orbit";
        e.source = "map \"qrt-add\" { forward: a*(x^2-1)/(x+y) - x  param a: const 17/5 }";
        e.config.steps = 12;
        e.config.horizon = 10;
        e.expect.push_back(E("paper", "confined patterns {1, -1} and {-1, 1}",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return check_confined(rep, "1", "{1, -1}", 3, detail) &&
                                        check_confined(rep, "-1", "{-1, 1}", 3, detail);
                             }));
        e.expect.push_back(
            E("paper", "orbit at ∞: window (-x0, x0), exponent pinned at -1, zero growth",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "∞", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  auto ws = window_strings(*sr);
                  if (ws != std::vector<std::string>{"-x0", "x0"})
                      return fail(detail, "window differs");
                  for (const auto& row : sr->forward_valuations)
                      if (row[0] != -1) return fail(detail, "forward valuation moved");
                  for (const auto& row : sr->backward_valuations)
                      if (row[0] != -1) return fail(detail, "backward valuation moved");
                  return check_growth(*sr, GT::Zero, detail);
              }));
        e.expect.push_back(
            E("paper", "conjugate to (u, v) -> (a(u-1)/u, a(v-1)/v) on 100 random states",
              [](const CatalogEntry& self, const Rep&, std::string& detail) {
                  MapInstance lhs = pairify(catalog_map(self));
                  const CatalogEntry* uv = catalog_find("qrt-add-uv");
                  if (!uv) return fail(detail, "companion entry missing");
                  MapInstance rhs = catalog_map(*uv);
                  auto T = std::make_pair(expr("(X+Y)/(X+1)"), expr("(X+Y)/(X-1)"));
                  ConjugacyOptions co;
                  co.states = 100;
                  if (!check_conjugacy(lhs, rhs, T, co)) return fail(detail, "conjugacy fails");
                  return true;
              }));
        e.expect.push_back(E("trivial", "degrees saturate at 2; entropy 0",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!rep.entropy || rep.entropy->growth != GrowthType::Bounded)
                                     return fail(detail, "degree growth not bounded");
                                 if (rep.degrees.back() != 2)
                                     return fail(detail, "degrees not saturated at 2");
                                 return entropy_near(rep, 0.0, 0.0, detail);
                             }));
        e.expect.push_back(
            E("derived", "zero-growth anticonfined orbit alone is inconclusive",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  return verdict_is(rep, VK::InconclusiveRecommendFullDeautonomisation, detail);
              }));
        all.push_back(std::move(e));
    }

    // ---- qrt-add-uv ------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "qrt-add-uv";
        e.title = "projective form (u, v) -> (a(u-1)/u, a(v-1)/v) of qrt-add";
        e.source = R"(map "qrt-add-uv" {
  kind: pair
  forward: (a*(X-1)/X, a*(Y-1)/Y)
  backward: (a/(a-X), a/(a-Y))
  param a: const 17/5
})";
        e.config.steps = 12;
        e.config.horizon = 10;
        e.expect.push_back(E("trivial", "componentwise homographies: degrees stay at 1",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 for (long d : rep.degrees)
                                     if (d != 1) return fail(detail, "degrees moved");
                                 if (!rep.entropy || rep.entropy->growth != GrowthType::Bounded)
                                     return fail(detail, "not bounded");
                                 return true;
                             }));
        e.expect.push_back(E("trivial", "verdict IntegrableCandidate",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return verdict_is(rep, VK::IntegrableCandidate, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- qrt-mult --------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "qrt-mult";
        e.title = "x' y = x^2 - 1: linearisable with linearly growing anticonfined exponents";
        e.source = "map \"qrt-mult\" { forward: (x^2-1)/y }";
        e.config.steps = 12;
        e.config.horizon = 10;
        e.expect.push_back(E("paper", "confined patterns {1, 0, -1} and {-1, 0, 1}",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return check_confined(rep, "1", "{1, 0, -1}", 4, detail) &&
                                        check_confined(rep, "-1", "{-1, 0, 1}", 4, detail);
                             }));
        e.expect.push_back(
            E("paper", "orbit at ∞: window (-1/x0, ε, x0), exponents -1, -2, -3, ...",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "∞", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  auto ws = window_strings(*sr);
                  if (ws != std::vector<std::string>{"-1/x0", "ε", "x0"})
                      return fail(detail, "window differs");
                  if (!prefix_is(col0(sr->forward_valuations, 4), {-1, -2, -3, -4}, detail,
                                 "forward") ||
                      !prefix_is(col0(sr->backward_valuations, 4), {-1, -2, -3, -4}, detail,
                                 "backward"))
                      return false;
                  if (!check_growth(*sr, GT::Linear, detail)) return false;
                  if (sr->growth->slope != -1) return fail(detail, "slope");
                  return true;
              }));
        e.expect.push_back(E("derived", "degrees 0, 1, 2, 4, 6, 8, ... (order-1 polynomial)",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!degrees_are(
                                         rep, {0, 1, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22},
                                         detail))
                                     return false;
                                 return poly_growth(rep, 1, detail);
                             }));
        e.expect.push_back(E("paper", "verdict Linearisable",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 return verdict_is(rep, VK::Linearisable, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- triangular ------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "triangular";
        e.title = "(x, y) -> ((x+y)/(xy+1), a y): linearisable, non-confined at y = ±1";
        e.source = R"(map "triangular" {
  kind: pair
  forward: ((X+Y)/(X*Y+1), a*Y)
  backward: ((Y/a - X)/(X*Y/a - 1), Y/a)
  param a: const 3
})";
        e.config.steps = 10;
        e.config.horizon = 12;
        e.spec.classify.near_values = std::vector<Rational>{Rational(1), Rational(-1)};
        e.spec.probes.push_back(
            ProbeSpec{"(x0, 1+ε)", seed_tracker(), seed_near(Rational(1)), 0, "x0"});
        e.expect.push_back(
            E("paper", "the pinned image never recovers its lost degree of freedom",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  return want_class(rep, "(x0, 1+ε)", SingClass::NonConfined, detail) !=
                         nullptr;
              }));
        e.expect.push_back(E("derived", "degrees linear; verdict LinearisableOrNonIntegrable",
                             [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                                 if (!poly_growth(rep, 1, detail)) return false;
                                 return verdict_is(rep, VK::LinearisableOrNonIntegrable, detail);
                             }));
        all.push_back(std::move(e));
    }

    // ---- triangular-z ------------------------------------------------------------
    {
        CatalogEntry e;
        e.key = "triangular-z";
        e.title = "triangular in (y, z = x/y^2) variables: zero-growth anticonfined window";
        e.source = R"(map "triangular-z" {
  kind: pair
  forward: (a*X, (Y*X+1)/(a^2*X*(Y*X^3+1)))
  backward: (X/a, a^2*(1-a*Y*X)/(X*(Y*X^3-a)))
  param a: const 3
})";
        e.config.steps = 10;
        e.config.horizon = 12;
        e.spec.classify.near_values = std::vector<Rational>{Rational(1), Rational(-1)};
        e.spec.probes.push_back(ProbeSpec{"(ε, z0)", seed_eps(1), seed_tracker(), 0, "z0"});
        e.spec.probes.push_back(
            ProbeSpec{"(1+ε, z0)", seed_near(Rational(1)), seed_tracker(), 0, "z0"});
        e.expect.push_back(
            E("paper", "window (ε, z0); every neighbour is (ε, ε^{-1}); zero growth",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  const SingularityReport* sr =
                      want_class(rep, "(ε, z0)", SingClass::Anticonfined, detail);
                  if (!sr) return false;
                  auto ws = window_strings(*sr);
                  if (ws != std::vector<std::string>{"(ε, z0)"})
                      return fail(detail, "window differs");
                  for (const auto& row : sr->forward_valuations)
                      if (row != std::vector<long>{1, -1})
                          return fail(detail, "forward row " + join_longs(row));
                  for (const auto& row : sr->backward_valuations)
                      if (row != std::vector<long>{1, -1})
                          return fail(detail, "backward row " + join_longs(row));
                  return check_growth(*sr, GT::Zero, detail);
              }));
        e.expect.push_back(
            E("paper", "the probe pinned at y = 1 never recovers",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  return want_class(rep, "(1+ε, z0)", SingClass::NonConfined, detail) !=
                         nullptr;
              }));
        e.expect.push_back(
            E("derived", "zero-growth window beside a non-confined orbit: LinearisableOrNonIntegrable",
              [](const CatalogEntry&, const Rep& rep, std::string& detail) {
                  return verdict_is(rep, VK::LinearisableOrNonIntegrable, detail);
              }));
        all.push_back(std::move(e));
    }

    return all;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

const CatalogEntry* catalog_find(const std::string& key) {
    for (const auto& e : catalog())
        if (e.key == key) return &e;
    return nullptr;
}

MapInstance catalog_map(const CatalogEntry& entry) {
    MapInstance m = parse_mapfile(entry.source).front();
    if (entry.patch) entry.patch(m);
    return m;
}

AnalysisReport catalog_analyze(const CatalogEntry& entry, const AnalyzeConfig& cfg) {
    MapInstance m = catalog_map(entry);
    return analyze_map(m, cfg, entry.spec);
}

int catalog_run_all(std::ostream& out, const std::string& only_tag) {
    const std::string want = lower(only_tag);
    int passed = 0, failed = 0;
    for (const auto& e : catalog()) {
        std::vector<const Expectation*> todo;
        for (const auto& x : e.expect)
            if (want.empty() || lower(x.tag) == want) todo.push_back(&x);
        if (todo.empty()) continue;
        AnalysisReport rep;
        std::string analysis_error;
        try {
            rep = catalog_analyze(e, e.config);
        } catch (const std::exception& ex) {
            analysis_error = ex.what();
        }
        for (const Expectation* x : todo) {
            bool ok = false;
            std::string detail = analysis_error;
            if (analysis_error.empty()) {
                try {
                    ok = x->check(e, rep, detail);
                } catch (const std::exception& ex) {
                    ok = false;
                    detail = ex.what();
                }
            }
            out << (ok ? "[PASS] " : "[FAIL] ") << e.key << ": " << x->what << " [" << x->tag
                << "]";
            if (!ok && !detail.empty()) out << " -- " << detail;
            out << "\n";
            ++(ok ? passed : failed);
        }
    }
    out << passed + failed << " expectations: " << passed << " passed, " << failed << " failed\n";
    return failed;
}

}  // namespace singan
