#include "singan/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace singan {
namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

std::string growth_type_string(GrowthResult::Type t) {
    switch (t) {
        case GrowthResult::Type::Zero: return "zero";
        case GrowthResult::Type::Linear: return "linear";
        case GrowthResult::Type::Exponential: return "exponential";
        case GrowthResult::Type::Unclassified: return "unclassified";
    }
    return "?";
}

std::string degree_growth_string(GrowthType t, int poly_order) {
    switch (t) {
        case GrowthType::Bounded: return "bounded";
        case GrowthType::Polynomial: return "polynomial, order " + std::to_string(poly_order);
        case GrowthType::Exponential: return "exponential";
    }
    return "?";
}

// pattern-style entry: the limiting value, not the ε power
std::string pattern_entry_string(const PatternEntry& e) {
    switch (e.kind) {
        case PatternEntry::Kind::Vanishing: return "0";
        case PatternEntry::Kind::Diverging: return "∞";
        case PatternEntry::Kind::NearValue: return to_string(e.near_base);
        case PatternEntry::Kind::Regular: return e.value;
    }
    return "?";
}

std::string tuple_string(const IndexEntry& ie) {
    if (ie.comps.size() == 1) return entry_string(ie.comps[0]);
    std::string s = "(";
    for (size_t i = 0; i < ie.comps.size(); ++i) {
        if (i) s += ", ";
        s += entry_string(ie.comps[i]);
    }
    return s + ")";
}

std::string row_string(const std::vector<long>& row) {
    if (row.size() == 1) return std::to_string(row[0]);
    std::string s = "(";
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(row[i]);
    }
    return s + ")";
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, const char* sep, F f) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += f(xs[i]);
    }
    return s;
}

std::string ascii_inf(const std::string& s) { return s == "∞" ? "inf" : s; }

nlohmann::json valuation_rows(const std::vector<std::vector<long>>& rows, bool scalar) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& row : rows) {
        if (scalar && row.size() == 1) {
            a.push_back(row[0]);
        } else {
            nlohmann::json pair = nlohmann::json::array();
            for (long v : row) pair.push_back(v);
            a.push_back(pair);
        }
    }
    return a;
}

}  // namespace

std::string eps_string(long valuation) {
    if (valuation == 0) return "1";
    if (valuation == 1) return "ε";
    if (valuation > 1) return "ε^" + std::to_string(valuation);
    return "ε^{" + std::to_string(valuation) + "}";
}

std::string entry_string(const PatternEntry& e) {
    switch (e.kind) {
        case PatternEntry::Kind::Vanishing:
        case PatternEntry::Kind::Diverging: return eps_string(e.valuation);
        case PatternEntry::Kind::NearValue: return to_string(e.near_base);
        case PatternEntry::Kind::Regular: return e.value;
    }
    return "?";
}

std::string pattern_string(const std::vector<PatternEntry>& pattern) {
    return "{" + join(pattern, ", ", pattern_entry_string) + "}";
}

std::string recurrence_string(const Recurrence& r) {
    std::string s = "d_{n+1} = ";
    bool first = true;
    for (int i = 0; i < r.order; ++i) {
        Rational c = r.coeffs[static_cast<size_t>(i)];
        if (is_zero(c)) continue;
        std::string term = i == 0 ? "d_n" : "d_{n-" + std::to_string(i) + "}";
        Rational mag = sign(c) < 0 ? Rational(Rational(0) - c) : c;
        std::string coeff = is_one(mag) ? "" : to_string(mag) + " ";
        if (first) {
            s += (sign(c) < 0 ? "-" : "") + coeff + term;
            first = false;
        } else {
            s += (sign(c) < 0 ? " - " : " + ") + coeff + term;
        }
    }
    if (first) s += "0";
    return s;
}

std::string poly_string(const Poly<Rational>& p) {
    std::string s;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        Rational c = p.coeff(k);
        if (is_zero(c)) continue;
        Rational mag = sign(c) < 0 ? Rational(Rational(0) - c) : c;
        std::string var = k == 0 ? "" : (k == 1 ? "λ" : "λ^" + std::to_string(k));
        std::string coeff = (is_one(mag) && k > 0) ? "" : to_string(mag);
        if (first) {
            s += (sign(c) < 0 ? "-" : "") + coeff + var;
            first = false;
        } else {
            s += (sign(c) < 0 ? " - " : " + ") + coeff + var;
        }
    }
    return first ? "0" : s;
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream out;
    out << "map: " << r.name << "\n";
    out << "config: steps=" << r.config.steps << " horizon=" << r.config.horizon
        << " trunc=" << r.config.truncation << " seeds=" << r.config.seeds
        << " seed=" << r.config.seed << "\n";
    if (r.singular_values.empty()) {
        out << "singular values: none\n";
    } else {
        out << "singular values: "
            << join(r.singular_values, ", ", [](const SingularValue& v) { return v.str(); })
            << "\n";
    }

    for (const auto& s : r.singularities) {
        const SingularityReport& rep = s.report;
        out << "\n";
        if (s.probe)
            out << "probe " << s.value << ": " << to_string(rep.cls) << "\n";
        else
            out << "singularity at " << s.value << ": " << to_string(rep.cls) << "\n";
        switch (rep.cls) {
            case SingClass::Confined:
                out << "  pattern: " << pattern_string(rep.pattern) << "\n";
                out << "  entry at n=" << rep.entry_index << ", recovered at n="
                    << rep.recovery_index << " (window T=" << rep.truncation_used << ")\n";
                break;
            case SingClass::Anticonfined: {
                out << "  window [" << rep.window_lo << ", " << rep.window_hi << "]: "
                    << join(rep.window, ", ", tuple_string) << "\n";
                out << "  ..., " << join(rep.display, ", ", tuple_string) << ", ...\n";
                out << "  forward valuations: "
                    << join(rep.forward_valuations, ", ", row_string) << "\n";
                out << "  backward valuations: "
                    << join(rep.backward_valuations, ", ", row_string) << "\n";
                if (rep.growth) {
                    out << "  growth: " << growth_type_string(rep.growth->type);
                    if (rep.growth->type == GrowthResult::Type::Linear)
                        out << ", slope " << rep.growth->slope;
                    if (rep.growth->type == GrowthResult::Type::Exponential)
                        out << ", rate " << fmt12(rep.growth->rate);
                    out << "\n";
                }
                break;
            }
            case SingClass::NonConfined:
                out << "  no recovery within the horizon\n";
                break;
            case SingClass::RegularOrbit:
                out << "  orbit stays regular\n";
                break;
        }
        for (const auto& w : rep.warnings) out << "  warning: " << w << "\n";
    }

    if (!r.degrees.empty()) {
        out << "\ndegrees: "
            << join(r.degrees, ", ", [](long d) { return std::to_string(d); }) << "\n";
    }
    if (r.entropy) {
        const EntropyEstimate& e = *r.entropy;
        if (e.recurrence)
            out << "recurrence: " << recurrence_string(*e.recurrence) << " (valid from n="
                << e.recurrence->valid_from << ")\n";
        if (e.char_poly) out << "char poly: " << poly_string(*e.char_poly) << "\n";
        if (!e.dominant.is_point() || !(e.dominant.lo == 1)) {
            Rational mid = (e.dominant.lo + e.dominant.hi) / 2;
            out << "dominant root: " << fmt12(to_double(mid)) << "\n";
        }
        out << "entropy: " << fmt12(e.entropy) << " (" << e.method << ")\n";
        out << "degree growth: " << degree_growth_string(e.growth, e.poly_order) << "\n";
    }
    out << "verdict: " << to_string(r.verdict.kind) << "\n";
    if (r.verdict.kind == IntegrabilityVerdict::Kind::NonIntegrable)
        out << "entropy bound: " << fmt12(r.verdict.entropy_bound) << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    return out.str();
}

std::string to_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["config"] = {{"steps", r.config.steps},
                   {"horizon", r.config.horizon},
                   {"trunc", r.config.truncation},
                   {"seeds", r.config.seeds},
                   {"seed", r.config.seed}};
    nlohmann::json sv = nlohmann::json::array();
    for (const auto& v : r.singular_values) sv.push_back(ascii_inf(v.str()));
    j["singular_values"] = sv;

    nlohmann::json sing = nlohmann::json::array();
    for (const auto& s : r.singularities) {
        nlohmann::json o;
        o["value"] = ascii_inf(s.value);
        o["class"] = to_string(s.report.cls);
        nlohmann::json pat = nlohmann::json::array();
        if (s.report.cls == SingClass::Confined) {
            for (const auto& e : s.report.pattern) pat.push_back(ascii_inf(pattern_entry_string(e)));
        } else if (s.report.cls == SingClass::Anticonfined) {
            for (const auto& ie : s.report.window) pat.push_back(tuple_string(ie));
        }
        o["pattern"] = pat;
        o["forward_valuations"] = valuation_rows(s.report.forward_valuations, r.scalar);
        o["backward_valuations"] = valuation_rows(s.report.backward_valuations, r.scalar);
        if (s.report.growth) {
            o["growth"] = {{"type", growth_type_string(s.report.growth->type)},
                           {"rate", fmt12(s.report.growth->type == GrowthResult::Type::Linear
                                              ? static_cast<double>(s.report.growth->slope)
                                              : s.report.growth->rate)}};
        } else {
            o["growth"] = nullptr;
        }
        sing.push_back(o);
    }
    j["singularities"] = sing;
    j["degrees"] = r.degrees;

    if (r.entropy && r.entropy->recurrence) {
        const Recurrence& rec = *r.entropy->recurrence;
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : rec.coeffs) coeffs.push_back(to_string(c));
        j["recurrence"] = {{"order", rec.order}, {"coeffs", coeffs},
                           {"valid_from", rec.valid_from}};
    } else {
        j["recurrence"] = nullptr;
    }
    if (r.entropy && r.entropy->char_poly)
        j["char_poly"] = poly_string(*r.entropy->char_poly);
    else
        j["char_poly"] = nullptr;
    if (r.entropy)
        j["dominant_root"] = {{"lo", to_string(r.entropy->dominant.lo)},
                              {"hi", to_string(r.entropy->dominant.hi)}};
    else
        j["dominant_root"] = nullptr;
    j["entropy"] = r.entropy ? nlohmann::json(fmt12(r.entropy->entropy)) : nlohmann::json(nullptr);
    j["verdict"] = to_string(r.verdict.kind);
    j["warnings"] = r.warnings;
    return j.dump(2, ' ', true) + "\n";
}

}  // namespace singan
