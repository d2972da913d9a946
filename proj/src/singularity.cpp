#include "singan/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "singan/laurent.hpp"
#include "singan/tower.hpp"

namespace singan {

namespace {

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// --- valuation growth -------------------------------------------------------

// Largest magnitude already attained in the first half of the list.
bool zero_growth(const std::vector<long>& v) {
    if (v.empty()) return true;
    long m = 0;
    size_t at = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        long a = v[i] < 0 ? -v[i] : v[i];
        if (a > m) {
            m = a;
            at = i;
        }
    }
    return at < (v.size() + 1) / 2;
}

// Constant nonzero difference along the tail (last half, at least 3 steps).
std::optional<long> linear_slope(const std::vector<long>& v) {
    if (v.size() < 4) return std::nullopt;
    size_t tail = std::max<size_t>(4, v.size() / 2 + 1);  // number of points
    size_t start = v.size() - tail;
    long d = v[start + 1] - v[start];
    if (d == 0) return std::nullopt;
    for (size_t i = start + 1; i + 1 < v.size(); ++i)
        if (v[i + 1] - v[i] != d) return std::nullopt;
    return d;
}

GrowthResult exponential_fit(const std::vector<std::vector<long>>& lists, const Rational& tol) {
    GrowthResult g;
    std::optional<Recurrence> rec;
    // the first entries sit next to the regular window and may not yet obey
    // the asymptotic recurrence; retry with up to two of them dropped
    for (size_t skip = 0; skip <= 2 && !rec; ++skip) {
        std::vector<std::vector<long>> trimmed;
        for (const auto& l : lists) {
            if (l.size() > skip) trimmed.emplace_back(l.begin() + static_cast<long>(skip), l.end());
        }
        if (trimmed.empty()) break;
        size_t longest = 0;
        for (const auto& l : trimmed) longest = std::max(longest, l.size());
        int kmax = static_cast<int>(std::min<size_t>(4, longest > 1 ? longest - 1 : 0));
        if (kmax < 1) break;
        rec = fit_recurrence_joint(trimmed, kmax);
    }
    if (!rec) {
        g.type = GrowthResult::Type::Unclassified;
        g.warnings.push_back("no short recurrence explains the valuation growth");
        return g;
    }
    g.recurrence = rec;
    g.cpoly = char_poly(*rec);
    try {
        g.root = dominant_root(*g.cpoly, tol);
    } catch (const UnsupportedSpectrum& e) {
        g.type = GrowthResult::Type::Unclassified;
        g.warnings.push_back(std::string("valuation recurrence spectrum not certifiable: ") +
                             e.what());
        return g;
    }
    if (!(g.root.hi > Rational(1))) {
        g.type = GrowthResult::Type::Unclassified;
        g.warnings.push_back("valuation growth fits a recurrence without a root beyond 1; "
                             "neither bounded, linear, nor exponential");
        return g;
    }
    g.type = GrowthResult::Type::Exponential;
    Rational mid = (g.root.lo + g.root.hi) / Rational(2);
    g.rate = std::log(mpq_class(mid).get_d());
    return g;
}

}  // namespace

GrowthResult growth_class(const std::vector<long>& vals, const Rational& tol) {
    GrowthResult g;
    if (vals.empty()) {
        g.type = GrowthResult::Type::Unclassified;
        g.warnings.push_back("no resolved valuations to classify");
        return g;
    }
    if (zero_growth(vals)) {
        g.type = GrowthResult::Type::Zero;
        return g;
    }
    if (auto s = linear_slope(vals)) {
        g.type = GrowthResult::Type::Linear;
        g.slope = *s;
        return g;
    }
    return exponential_fit({vals}, tol);
}

GrowthResult growth_class_joint(const std::vector<long>& fwd, const std::vector<long>& bwd,
                                const Rational& tol) {
    GrowthResult g;
    if (fwd.empty() && bwd.empty()) {
        g.type = GrowthResult::Type::Unclassified;
        g.warnings.push_back("no resolved valuations to classify");
        return g;
    }
    bool zf = zero_growth(fwd), zb = zero_growth(bwd);
    if (zf && zb) {
        g.type = GrowthResult::Type::Zero;
        return g;
    }
    auto sf = linear_slope(fwd), sb = linear_slope(bwd);
    if ((zf || sf) && (zb || sb)) {
        g.type = GrowthResult::Type::Linear;
        g.slope = sf ? *sf : -*sb;  // backward list runs by distance
        return g;
    }
    return exponential_fit({fwd, bwd}, tol);
}

// --- singular values --------------------------------------------------------

namespace {

using Kx = RatFunc<Rational>;  // rational functions of x
using TT = RatFunc<Kx>;        // rational in x_{n-1} over Q(x)

// y-coefficient rows of the cleared numerator/denominator: polynomials in x
// with no common factor between the two sides.
struct ClearedBivar {
    std::vector<Poly<Rational>> num, den;
};

ClearedBivar clear_bivariate(const TT& f) {
    Poly<Rational> lcm(Rational(1));
    auto fold = [&](const Poly<Kx>& p) {
        for (int j = 0; j <= p.degree(); ++j) {
            Poly<Rational> dn = p.coeff(j).den();
            if (dn.degree() > 0) lcm = lcm * (dn / poly_gcd(lcm, dn));
        }
    };
    fold(f.num());
    fold(f.den());
    Kx mul{Poly<Rational>(lcm)};
    auto rows = [&](const Poly<Kx>& p) {
        std::vector<Poly<Rational>> out(static_cast<size_t>(p.degree()) + 1);
        for (int j = 0; j <= p.degree(); ++j) {
            Kx c = p.coeff(j) * mul;
            // denominator cleared: only a constant can remain
            Rational dinv = Rational(1) / c.den().coeff(0);
            out[static_cast<size_t>(j)] = c.num() * Poly<Rational>(dinv);
        }
        return out;
    };
    ClearedBivar b{rows(f.num()), rows(f.den())};
    // strip the x-content common to both sides
    Poly<Rational> g;
    bool have = false;
    for (const auto* side : {&b.num, &b.den})
        for (const auto& r : *side) {
            if (r.is_zero_poly()) continue;
            g = have ? poly_gcd(g, r) : r;
            have = true;
            if (g.degree() == 0) break;
        }
    if (have && g.degree() > 0) {
        for (auto* side : {&b.num, &b.den})
            for (auto& r : *side)
                if (!r.is_zero_poly()) r = r / g;
    }
    return b;
}

// y-coefficient rows of N_y D - N D_y.
std::vector<Poly<Rational>> cross_derivative_rows(const ClearedBivar& b) {
    auto deriv = [](const std::vector<Poly<Rational>>& p) {
        std::vector<Poly<Rational>> d;
        for (size_t j = 1; j < p.size(); ++j)
            d.push_back(p[j] * Poly<Rational>(Rational(static_cast<long>(j))));
        return d;
    };
    auto dn = deriv(b.num), dd = deriv(b.den);
    size_t sz = std::max(dn.size() + b.den.size(), b.num.size() + dd.size());
    std::vector<Poly<Rational>> e(sz >= 1 ? sz - 1 : 0);
    for (size_t p = 0; p < dn.size(); ++p)
        for (size_t q = 0; q < b.den.size(); ++q) e[p + q] = e[p + q] + dn[p] * b.den[q];
    for (size_t p = 0; p < b.num.size(); ++p)
        for (size_t q = 0; q < dd.size(); ++q) e[p + q] = e[p + q] - b.num[p] * dd[q];
    return e;
}

// gcd over the nonzero rows; zero polynomial when every row vanishes.
Poly<Rational> rows_gcd(const std::vector<Poly<Rational>>& rows) {
    Poly<Rational> g;
    bool have = false;
    for (const auto& r : rows) {
        if (r.is_zero_poly()) continue;
        g = have ? poly_gcd(g, r) : r;
        have = true;
        if (have && g.degree() == 0) break;
    }
    return have ? g : Poly<Rational>();
}

constexpr long kDivisorBudget = 3000000;

std::vector<Integer> divisors_of(Integer n, long budget) {
    std::vector<Integer> ds;
    if (n < 0) n = -n;
    if (n == 0) return ds;
    long steps = 0;
    for (Integer d(1); d * d <= n; ++d) {
        if (++steps > budget)
            throw UnsupportedMap("singular-value search: coefficient too large to factor");
        if (n % d == 0) {
            ds.push_back(d);
            ds.push_back(n / d);
        }
    }
    return ds;
}

// All rational roots, with an honest failure when real irrational roots
// remain after they are divided out.
std::vector<Rational> rational_roots_checked(const Poly<Rational>& g0) {
    std::vector<Rational> roots;
    if (g0.degree() <= 0) return roots;
    Poly<Rational> g = g0;
    Poly<Rational> x = Poly<Rational>::var();
    if (is_zero(g.eval(Rational(0)))) {
        roots.push_back(Rational(0));
        while (g.degree() > 0 && is_zero(g.coeff(0))) g = g / x;
    }
    if (g.degree() > 0) {
        Integer den_lcm(1);
        for (int i = 0; i <= g.degree(); ++i) {
            Integer d = g.coeff(i).get_den();
            den_lcm = den_lcm / gcd(den_lcm, d) * d;
        }
        auto int_at = [&](int i) {
            Rational t = g.coeff(i) * Rational(den_lcm);
            return t.get_num();
        };
        Integer c0 = int_at(0), cl = int_at(g.degree());
        std::set<Rational> seen;
        for (const Integer& p : divisors_of(c0, kDivisorBudget))
            for (const Integer& q : divisors_of(cl, kDivisorBudget)) {
                Rational cand(p, q);
                cand.canonicalize();
                for (int s = 0; s < 2; ++s, cand = -cand) {
                    if (!seen.insert(cand).second) continue;
                    if (is_zero(g.eval(cand))) roots.push_back(cand);
                }
            }
    }
    Poly<Rational> res = squarefree_part(g0);
    for (const Rational& r : roots) {
        Poly<Rational> lin(std::vector<Rational>{Rational(-r), Rational(1)});
        if (divrem(res, lin).second.is_zero_poly()) res = res / lin;
    }
    if (res.degree() >= 1 && count_real_roots(res) > 0)
        throw UnsupportedMap("map has an irrational singular value; exact analysis unsupported");
    std::sort(roots.begin(), roots.end());
    return roots;
}

struct SampleScan {
    std::vector<Rational> finite;
    bool at_inf = false;
    bool inf_enterable = false;
};

// Candidate singular values of the map frozen at index n: finite x where
// the y-dependence of the forward image degenerates, plus the same test
// conjugated to x = ∞ (kept only when the map has poles to reach it).
// want_finite=false skips the root search (re-checks of the ∞ candidate
// alone must not pay for factoring huge frozen coefficients).
SampleScan scan_at_index(const MapInstance& m, long n, bool want_finite = true) {
    auto pf = rational_params(m, 0);
    auto param = [&](const std::string& nm) { return embed_rational<TT>(pf(nm, n)); };
    auto lit = [](const Rational& q) { return embed_rational<TT>(q); };
    TT yv = TT::var();

    auto candidates = [&](const TT& xv) {
        TT f = eval_ast<TT>(m.fwd_x, xv, yv, param, lit);
        ClearedBivar b = clear_bivariate(f);
        Poly<Rational> g = rows_gcd(cross_derivative_rows(b));
        if (g.is_zero_poly())
            throw UnsupportedMap("forward rule does not depend on x_{n-1}");
        bool poles = b.den.size() > 1 || (b.den.size() == 1 && b.den[0].degree() > 0);
        return std::pair(g, poles);
    };

    SampleScan out;
    auto [g_fin, poles] = candidates(embed_up<TT>(Kx::var()));
    if (want_finite) out.finite = rational_roots_checked(g_fin);
    out.inf_enterable = poles;
    auto [g_inf, poles2] = candidates(embed_up<TT>(Kx(Poly<Rational>(Rational(1))) / Kx::var()));
    (void)poles2;
    out.at_inf = is_zero(g_inf.eval(Rational(0)));
    return out;
}

// Exact check that x = v maps to a y-independent image for every value of
// the non-constant parameters (kept symbolic; constants are substituted).
template <class Kp>
bool singular_at_impl(const MapInstance& m, const std::vector<std::string>& sym_names,
                      const Rational& v) {
    using V = RatFunc<Kp>;
    auto pf = rational_params(m, 0);
    auto lit = [](const Rational& q) { return embed_rational<V>(q); };
    auto param = [&](const std::string& nm) -> V {
        for (size_t i = 0; i < sym_names.size(); ++i)
            if (sym_names[i] == nm) return embed_up<V>(tower_var<Kp>(static_cast<int>(i)));
        return lit(pf(nm, 0));
    };
    try {
        V f = eval_ast<V>(m.fwd_x, lit(v), V::var(), param, lit);
        return f.is_constant();
    } catch (const DomainError&) {
        return true;  // image degenerates identically (a pole for every y)
    }
}

bool verify_singular(const MapInstance& m, const Rational& v) {
    std::vector<std::string> sym;
    for (const auto& [nm, seq] : m.params)
        if (!seq.is_constant()) sym.push_back(nm);
    switch (sym.size()) {
        case 0: return singular_at_impl<Rational>(m, sym, v);
        case 1: return singular_at_impl<F1>(m, sym, v);
        case 2: return singular_at_impl<F2>(m, sym, v);
        default: throw UnsupportedMap("at most two symbolic parameters are supported here");
    }
}

}  // namespace

std::vector<SingularValue> find_singular_values(const MapInstance& m,
                                                std::vector<std::string>* warnings) {
    if (!m.is_scalar())
        throw UnsupportedMap("singular-value detection needs a scalar map; pair maps take "
                             "explicit probes");
    auto warn = [&](const std::string& s) {
        if (warnings) warnings->push_back(s);
    };

    std::vector<long> samples = m.autonomous() ? std::vector<long>{0} : std::vector<long>{0, 3, 7};
    std::vector<SampleScan> scans;
    for (long n : samples) {
        try {
            scans.push_back(scan_at_index(m, n));
        } catch (const DomainError& e) {
            warn(std::string("parameter sequence not evaluable at sampled index ") +
                 std::to_string(n) + ": " + e.what());
        }
    }
    if (scans.empty()) throw UnsupportedMap("no sampled index admits a singular-value scan");

    // union of finite candidates, then demand membership in every sample
    std::set<Rational> all;
    for (const auto& s : scans) all.insert(s.finite.begin(), s.finite.end());
    std::vector<SingularValue> out;
    for (const Rational& v : all) {
        bool everywhere = true;
        for (const auto& s : scans)
            everywhere = everywhere && std::count(s.finite.begin(), s.finite.end(), v) > 0;
        if (everywhere && verify_singular(m, v)) {
            out.push_back({false, v});
        } else {
            warn("singular-value candidate x = " + to_string(v) +
                 " holds only at particular indices; dropped as parameter-dependent");
        }
    }

    bool inf_everywhere = true, inf_somewhere = false, enterable = true;
    for (const auto& s : scans) {
        inf_everywhere = inf_everywhere && s.at_inf;
        inf_somewhere = inf_somewhere || s.at_inf;
        enterable = enterable && s.inf_enterable;
    }
    if (!m.autonomous() && inf_everywhere) {
        // a few extra frozen indices stand in for a symbolic check at ∞
        for (long n : {1L, 2L, 4L, 5L, 9L}) {
            try {
                SampleScan s = scan_at_index(m, n, false);
                inf_everywhere = inf_everywhere && s.at_inf;
                enterable = enterable && s.inf_enterable;
            } catch (const DomainError&) {
                break;
            }
        }
    }
    if (inf_everywhere && enterable) {
        out.push_back({true, Rational(0)});
    } else if (inf_somewhere && !inf_everywhere) {
        warn("singular-value candidate x = ∞ holds only at particular indices; dropped as "
             "parameter-dependent");
    }
    return out;
}

// --- orbit engine -----------------------------------------------------------

namespace {

using SeriesF1 = Laurent<F1>;
using LV = LaurentVal<F1>;

LV make_seed(const SeedComp& c, int T) {
    size_t w = static_cast<size_t>(T);
    switch (c.kind) {
        case SeedComp::Kind::Tracker: return LV(SeriesF1(F1::var(), 0, w));
        case SeedComp::Kind::Eps:
            if (c.power == 0) throw DomainError("ε-seed needs a nonzero exponent");
            return LV(SeriesF1(F1(c.scale), c.power, w));
        case SeedComp::Kind::Near: {
            if (is_zero(c.value)) return LV(SeriesF1(F1(c.scale), 1, w));
            SeriesF1 s(F1(c.value), 0, w);
            s.coeff_rel(1) = F1(c.scale);
            return LV(s);
        }
        case SeedComp::Kind::Value:
            return is_zero(c.value) ? LV::zero() : LV(SeriesF1(F1(c.value), 0, w));
    }
    throw DomainError("corrupt probe seed");
}

struct RawOrbit {
    std::map<long, std::vector<LV>> at;
    std::vector<std::string> warnings;
    // directions cut short because every ε-coefficient in the window cancelled;
    // a larger truncation may reach further, so these feed the restart logic
    bool pe_fwd = false, pe_bwd = false;
    long lo() const { return at.begin()->first; }
    long hi() const { return at.rbegin()->first; }
};

struct OrbitEnv {
    ParamFn<LV> param;
    std::function<LV(const Rational&)> lit;
};

OrbitEnv orbit_env(const MapInstance& m, int T) {
    auto pf = rational_params(m, 0);
    OrbitEnv env;
    env.param = [pf, T](const std::string& nm, long n) -> LV {
        Rational q = pf(nm, n);
        if (is_zero(q)) return LV::zero();
        return LV(SeriesF1(F1(q), 0, static_cast<size_t>(T)));
    };
    env.lit = [T](const Rational& q) -> LV {
        if (is_zero(q)) return LV::zero();
        return LV(SeriesF1(F1(q), 0, static_cast<size_t>(T)));
    };
    return env;
}

RawOrbit run_forward(const MapInstance& m, const ProbeSpec& probe, int H, int T) {
    OrbitEnv env = orbit_env(m, T);
    RawOrbit orb;
    LV A = make_seed(probe.a, T), B = make_seed(probe.b, T);
    const bool scalar = m.is_scalar();
    if (scalar) {
        orb.at[probe.anchor] = {A};
        orb.at[probe.anchor + 1] = {B};
    } else {
        orb.at[probe.anchor] = {A, B};
    }

    State<LV> s{A, B};
    long t = probe.anchor + (scalar ? 1 : 0);
    for (int i = 0; i < H; ++i) {
        try {
            s = step_forward(m, s, t, env.param, env.lit);
        } catch (const PrecisionExhausted& e) {
            orb.warnings.push_back("forward orbit stopped at index " + std::to_string(t + 1) +
                                   ": " + e.what());
            orb.pe_fwd = true;
            break;
        } catch (const DegenerateOrbit& e) {
            orb.warnings.push_back("forward orbit stopped at index " + std::to_string(t + 1) +
                                   ": " + e.what());
            break;
        } catch (const DomainError& e) {
            orb.warnings.push_back("forward orbit stopped at index " + std::to_string(t + 1) +
                                   ": " + e.what());
            break;
        }
        ++t;
        orb.at[t] = scalar ? std::vector<LV>{s.b} : std::vector<LV>{s.a, s.b};
    }
    return orb;
}

// The backward half is kept separate: when the forward orbit already proves
// confinement the backward iterates are never needed, and for maps with
// exponential degree growth they are by far the most expensive values in
// the whole analysis.
void run_backward_into(RawOrbit& orb, const MapInstance& m, const ProbeSpec& probe, int H, int T) {
    OrbitEnv env = orbit_env(m, T);
    LV A = make_seed(probe.a, T), B = make_seed(probe.b, T);
    const bool scalar = m.is_scalar();
    State<LV> s2{A, B};
    long t = probe.anchor + (scalar ? 1 : 0);
    for (int i = 0; i < H; ++i) {
        long rec = scalar ? t - 2 : t - 1;
        try {
            s2 = step_backward(m, s2, t, env.param, env.lit);
        } catch (const PrecisionExhausted& e) {
            orb.warnings.push_back("backward orbit stopped at index " + std::to_string(rec) +
                                   ": " + e.what());
            orb.pe_bwd = true;
            break;
        } catch (const DegenerateOrbit& e) {
            orb.warnings.push_back("backward orbit stopped at index " + std::to_string(rec) +
                                   ": " + e.what());
            break;
        } catch (const DomainError& e) {
            orb.warnings.push_back("backward orbit stopped at index " + std::to_string(rec) +
                                   ": " + e.what());
            break;
        }
        --t;
        orb.at[rec] = scalar ? std::vector<LV>{s2.a} : std::vector<LV>{s2.a, s2.b};
    }
}

std::string render_f1(const F1& f, const std::string& tracker) {
    return to_string(tower_to_ast(f, {ast_param(tracker)}));
}

PatternEntry classify_value(const LV& v, const std::vector<Rational>& bases,
                            const std::string& tracker) {
    PatternEntry e;
    if (v.is_exact_zero()) {
        e.value = "0";
        return e;  // an exactly-zero component; regular constant
    }
    const SeriesF1& s = v.series();
    if (s.val() != 0) {
        e.kind = s.val() > 0 ? PatternEntry::Kind::Vanishing : PatternEntry::Kind::Diverging;
        e.valuation = s.val();
        e.depends_on_tracker = !s.leading().is_constant();
        e.value = s.val() > 0 ? "0" : "∞";
        return e;
    }
    const F1& lead = s.leading();
    if (!lead.is_constant()) {
        e.depends_on_tracker = true;
        e.value = render_f1(lead, tracker);
        return e;
    }
    Rational q = lead.constant_value();
    for (const Rational& b : bases) {
        if (q != b) continue;
        e.kind = PatternEntry::Kind::NearValue;
        e.near_base = q;
        e.value = to_string(q);
        try {
            SeriesF1 dev = s + SeriesF1(F1(-q), 0, s.window());
            e.valuation = dev.val();
            e.depends_on_tracker = !dev.leading().is_constant();
        } catch (const PrecisionExhausted&) {
            e.resolved = false;
            e.valuation = static_cast<long>(s.window());  // only a lower bound
        }
        return e;
    }
    e.value = to_string(q);
    return e;
}

bool idx_all_regular(const IndexEntry& e) {
    for (const auto& c : e.comps)
        if (c.kind != PatternEntry::Kind::Regular) return false;
    return true;
}
bool idx_bearing(const IndexEntry& e) {
    for (const auto& c : e.comps)
        if (c.kind == PatternEntry::Kind::Regular) return true;
    return false;
}
bool idx_tracked(const IndexEntry& e) {
    for (const auto& c : e.comps)
        if (c.kind == PatternEntry::Kind::Regular && c.depends_on_tracker) return true;
    return false;
}

// The component that carries the singular behavior at this index.
const PatternEntry& dominant_comp(const IndexEntry& e) {
    if (e.comps.size() == 1) return e.comps[0];
    const PatternEntry &a = e.comps[0], &b = e.comps[1];
    bool sa = a.kind != PatternEntry::Kind::Regular, sb = b.kind != PatternEntry::Kind::Regular;
    if (sa != sb) return sa ? a : b;
    if (!sa) return a.depends_on_tracker || !b.depends_on_tracker ? a : b;
    long ma = a.valuation < 0 ? -a.valuation : a.valuation;
    long mb = b.valuation < 0 ? -b.valuation : b.valuation;
    if (ma != mb) return ma > mb ? a : b;
    return a.valuation <= b.valuation ? a : b;  // tie: divergence over vanishing
}

long signed_valuation(const PatternEntry& e) {
    return e.kind == PatternEntry::Kind::Regular ? 0 : e.valuation;
}

using BasesFn = std::function<std::vector<Rational>(long)>;

// Substituting a generic rational for the tracker turns the backward orbit
// into plain rational ε-series, whose cost stays proportional to the number
// of steps. A nonzero evaluation witnesses a nonzero coefficient, so when a
// sampled pass stays regular all the way down it proves the symbolic
// backward orbit is all-regular too — without paying for coefficients that
// grow exponentially on non-confining maps. Anything that looks singular at
// every sample is re-examined symbolically.
enum class BackScan { AllRegular, Structured, Inconclusive };

BackScan sample_backward_scan(const MapInstance& m, const ProbeSpec& probe, int H, int T,
                              const BasesFn& bases_at) {
    using QS = Laurent<Rational>;
    using QV = LaurentVal<Rational>;
    auto pf = rational_params(m, 0);
    const bool scalar = m.is_scalar();
    const size_t w = static_cast<size_t>(T);

    ParamFn<QV> param = [pf, w](const std::string& nm, long n) -> QV {
        Rational q = pf(nm, n);
        if (is_zero(q)) return QV::zero();
        return QV(QS(q, 0, w));
    };
    std::function<QV(const Rational&)> lit = [w](const Rational& q) -> QV {
        if (is_zero(q)) return QV::zero();
        return QV(QS(q, 0, w));
    };

    auto regular_at = [&](const QV& v, long n) {
        if (v.is_exact_zero()) return false;
        const QS& s = v.series();
        if (s.val() != 0) return false;
        for (const Rational& b : bases_at(n))
            if (s.leading() == b) return false;
        return true;
    };

    static const Rational samples[] = {Rational(22, 7), Rational(-31, 12), Rational(47, 10)};
    bool saw_structure = false;
    for (const Rational& c0 : samples) {
        auto seed = [&](const SeedComp& sc) -> QV {
            switch (sc.kind) {
                case SeedComp::Kind::Tracker: return QV(QS(c0, 0, w));
                case SeedComp::Kind::Eps:
                    if (sc.power == 0) throw DomainError("ε-seed needs a nonzero exponent");
                    return QV(QS(sc.scale, sc.power, w));
                case SeedComp::Kind::Near: {
                    if (is_zero(sc.value)) return QV(QS(sc.scale, 1, w));
                    QS s(sc.value, 0, w);
                    s.coeff_rel(1) = sc.scale;
                    return QV(s);
                }
                case SeedComp::Kind::Value:
                    return is_zero(sc.value) ? QV::zero() : QV(QS(sc.value, 0, w));
            }
            throw DomainError("corrupt probe seed");
        };
        try {
            State<QV> s2{seed(probe.a), seed(probe.b)};
            long t = probe.anchor + (scalar ? 1 : 0);
            bool ok = true;
            for (int i = 0; i < H && ok; ++i) {
                long rec = scalar ? t - 2 : t - 1;
                s2 = step_backward(m, s2, t, param, lit);
                --t;
                if (!regular_at(s2.a, rec) || (!scalar && !regular_at(s2.b, rec))) {
                    saw_structure = true;
                    ok = false;
                }
            }
            if (ok) return BackScan::AllRegular;
        } catch (const PrecisionExhausted&) {
        } catch (const DegenerateOrbit&) {
        } catch (const DomainError&) {
        }
    }
    return saw_structure ? BackScan::Structured : BackScan::Inconclusive;
}

SingularityReport classify_once(const MapInstance& m, const ProbeSpec& probe, int H, int T,
                                const ClassifyOptions& opt, const BasesFn& bases_at,
                                bool* want_restart) {
    *want_restart = false;
    RawOrbit orb = run_forward(m, probe, H, T);

    std::map<long, IndexEntry> ent;
    auto classify_new = [&]() {
        for (const auto& [n, comps] : orb.at) {
            if (ent.count(n)) continue;
            IndexEntry ie{n, {}};
            for (const auto& c : comps)
                ie.comps.push_back(classify_value(c, bases_at(n), probe.tracker));
            ent.emplace(n, std::move(ie));
        }
    };
    classify_new();

    SingularityReport rep;
    rep.label = probe.label;
    rep.tracker = probe.tracker;
    rep.horizon = H;
    rep.truncation_used = T;
    rep.warnings = orb.warnings;

    const long entry = m.is_scalar() ? probe.anchor + 1 : probe.anchor;
    const long fwd_hi = ent.rbegin()->first;

    bool forward_singular = false;
    for (const auto& [n, e] : ent) forward_singular = forward_singular || !idx_all_regular(e);

    // confinement: a recovered index after which everything stays regular.
    // This is decided by the forward orbit alone, so a confined singularity
    // never pays for the backward iterates (the dominant cost on maps with
    // fast degree growth).
    if (forward_singular) {
        long rec_idx = 0;
        bool confined = false;
        for (long r = entry + 1; r <= fwd_hi && !confined; ++r) {
            const IndexEntry& e = ent.at(r);
            if (!(idx_all_regular(e) && idx_tracked(e))) continue;
            bool permanent = true;
            for (long q = r; q <= fwd_hi; ++q)
                if (!idx_all_regular(ent.at(q))) {
                    permanent = false;
                    break;
                }
            if (permanent) {
                confined = true;
                rec_idx = r;
            }
        }
        if (confined) {
            if (orb.pe_fwd) *want_restart = true;
            rep.cls = SingClass::Confined;
            rep.entry_index = entry;
            rep.recovery_index = rec_idx;
            for (long n = entry; n < rec_idx; ++n) {
                const IndexEntry& e = ent.at(n);
                rep.pattern.push_back(dominant_comp(e));
                if (n > entry && idx_all_regular(e) && !idx_tracked(e))
                    rep.warnings.push_back("pattern passes through a regular value at index " +
                                           std::to_string(n) + " without recovering initial data");
            }
            return rep;
        }
    }

    if (sample_backward_scan(m, probe, H, T, bases_at) == BackScan::AllRegular) {
        if (!forward_singular) {
            if (orb.pe_fwd)
                throw PrecisionExhausted(
                    "orbit shows no singular structure before the ε-window runs out");
            rep.cls = SingClass::RegularOrbit;
            return rep;
        }
        rep.cls = SingClass::NonConfined;
        return rep;
    }

    run_backward_into(orb, m, probe, H, T);
    classify_new();
    rep.warnings = orb.warnings;
    const long lo = ent.begin()->first, hi = ent.rbegin()->first;

    bool everything_regular = true;
    for (const auto& [n, e] : ent) everything_regular = everything_regular && idx_all_regular(e);
    if (everything_regular) {
        if (orb.pe_fwd || orb.pe_bwd)
            throw PrecisionExhausted(
                "orbit shows no singular structure before the ε-window runs out");
        rep.cls = SingClass::RegularOrbit;
        return rep;
    }

    bool back_ok = true;
    for (long n = lo; n < entry; ++n) back_ok = back_ok && idx_all_regular(ent.at(n));

    // anticonfinement: a finite regular-bearing window, singular beyond it
    // on both sides all the way to the horizon
    long wlo = 0, whi = 0;
    bool have_window = false;
    for (const auto& [n, e] : ent) {
        if (!idx_bearing(e)) continue;
        if (!have_window) wlo = whi = n;
        wlo = std::min(wlo, n);
        whi = std::max(whi, n);
        have_window = true;
    }
    bool anticonfined = have_window && whi < hi && wlo > lo;
    if (anticonfined) {
        for (long n = whi + 1; n <= hi; ++n) anticonfined = anticonfined && !idx_all_regular(ent.at(n));
        for (long n = lo; n < wlo; ++n) anticonfined = anticonfined && !idx_all_regular(ent.at(n));
    }
    if (anticonfined) {
        rep.cls = SingClass::Anticonfined;
        rep.window_lo = wlo;
        rep.window_hi = whi;
        bool tracked_window = false;
        for (long n = wlo; n <= whi; ++n) {
            rep.window.push_back(ent.at(n));
            tracked_window = tracked_window || idx_tracked(ent.at(n));
        }
        if (!tracked_window)
            rep.warnings.push_back("regular window carries no dependence on the initial data");
        for (long n = std::max(lo, wlo - 3); n <= std::min(hi, whi + 3); ++n)
            rep.display.push_back(ent.at(n));

        std::vector<long> fdom, bdom;
        bool cut = false;
        for (long n = whi + 1; n <= hi; ++n) {
            const IndexEntry& e = ent.at(n);
            bool resolved = true;
            for (const auto& c : e.comps) resolved = resolved && c.resolved;
            if (!resolved) {
                cut = true;
                break;
            }
            std::vector<long> row;
            for (const auto& c : e.comps) row.push_back(signed_valuation(c));
            rep.forward_valuations.push_back(std::move(row));
            fdom.push_back(signed_valuation(dominant_comp(e)));
        }
        for (long n = wlo - 1; n >= lo; --n) {
            const IndexEntry& e = ent.at(n);
            bool resolved = true;
            for (const auto& c : e.comps) resolved = resolved && c.resolved;
            if (!resolved) {
                cut = true;
                break;
            }
            std::vector<long> row;
            for (const auto& c : e.comps) row.push_back(signed_valuation(c));
            rep.backward_valuations.push_back(std::move(row));
            bdom.push_back(signed_valuation(dominant_comp(e)));
        }
        if (cut)
            rep.warnings.push_back("ε-window exhausted before every deviation resolved; "
                                   "valuation tails truncated");
        long favail = hi - whi, bavail = wlo - lo;
        if (static_cast<long>(fdom.size()) < std::min<long>(4, favail) ||
            static_cast<long>(bdom.size()) < std::min<long>(4, bavail))
            *want_restart = true;
        if ((orb.pe_fwd && fdom.size() < 4) || (orb.pe_bwd && bdom.size() < 4))
            *want_restart = true;
        rep.growth = growth_class_joint(fdom, bdom, opt.root_tol);
        for (const auto& w : rep.growth->warnings) rep.warnings.push_back(w);
        return rep;
    }

    rep.cls = SingClass::NonConfined;
    if (!back_ok)
        rep.warnings.push_back("irregular singularity structure: backward orbit not regular, "
                               "forward orbit never recovers");
    return rep;
}

SingularityReport classify_with_restarts(const MapInstance& m, const ProbeSpec& probe, int H,
                                         const ClassifyOptions& opt, const BasesFn& bases_at) {
    std::string last_precision_failure;
    for (int T = opt.truncation;; T *= 2) {
        if (T > opt.truncation_cap)
            throw BudgetExhausted("truncation cap " + std::to_string(opt.truncation_cap) +
                                  " exceeded" +
                                  (last_precision_failure.empty()
                                       ? std::string()
                                       : ": " + last_precision_failure));
        bool want_restart = false;
        SingularityReport rep;
        try {
            rep = classify_once(m, probe, H, T, opt, bases_at, &want_restart);
        } catch (const PrecisionExhausted& e) {
            last_precision_failure = e.what();
            continue;
        }
        if (want_restart && 2 * T <= opt.truncation_cap) continue;
        return rep;
    }
}

SingularityReport classify_probe(const MapInstance& m, const ProbeSpec& probe,
                                 const ClassifyOptions& opt) {
    BasesFn bases_at;
    if (opt.near_values_at) {
        bases_at = opt.near_values_at;
    } else {
        std::vector<Rational> bases;
        if (opt.near_values) {
            bases = *opt.near_values;
        } else if (m.is_scalar()) {
            for (const auto& sv : find_singular_values(m))
                if (!sv.at_infinity) bases.push_back(sv.value);
        }
        bases_at = [bases](long) { return bases; };
    }

    SingularityReport rep = classify_with_restarts(m, probe, opt.horizon, opt, bases_at);
    if (rep.cls != SingClass::NonConfined) return rep;
    // no recovery within the horizon: double it once before settling
    SingularityReport rep2 = classify_with_restarts(m, probe, 2 * opt.horizon, opt, bases_at);
    if (rep2.cls != SingClass::NonConfined)
        rep2.warnings.push_back("classification changed when the horizon was doubled to " +
                                std::to_string(2 * opt.horizon));
    return rep2;
}

}  // namespace

SingularityReport classify_singularity(const MapInstance& m, const SingularValue& v,
                                       const ClassifyOptions& opt) {
    if (!m.is_scalar())
        throw UnsupportedMap("singular-value classification needs a scalar map; pair maps take "
                             "explicit probes");
    ProbeSpec probe;
    probe.label = v.str();
    probe.a = seed_tracker();
    probe.b = v.at_infinity ? seed_eps(-1) : seed_near(v.value);
    probe.anchor = 0;
    return classify_probe(m, probe, opt);
}

SingularityReport probe_anticonfined(const MapInstance& m, const ProbeSpec& probe,
                                     const ClassifyOptions& opt) {
    return classify_probe(m, probe, opt);
}

// --- verdict ----------------------------------------------------------------

IntegrabilityVerdict verdict(const std::vector<SingularityReport>& reports,
                             const std::optional<EntropyEstimate>& degrees) {
    IntegrabilityVerdict out;
    using K = IntegrabilityVerdict::Kind;
    bool anti_exp = false, anti_lin = false, anti_zero = false, nonconf = false;
    double max_rate = 0;
    for (const auto& r : reports) {
        if (r.cls == SingClass::NonConfined) nonconf = true;
        if (r.cls != SingClass::Anticonfined || !r.growth) continue;
        switch (r.growth->type) {
            case GrowthResult::Type::Exponential:
                anti_exp = true;
                max_rate = std::max(max_rate, r.growth->rate);
                break;
            case GrowthResult::Type::Linear: anti_lin = true; break;
            case GrowthResult::Type::Zero: anti_zero = true; break;
            case GrowthResult::Type::Unclassified:
                out.warnings.push_back("anticonfined orbit at " + r.label +
                                       " has unclassified valuation growth; ignored in the "
                                       "verdict");
                break;
        }
    }
    const bool ent_pos = degrees && degrees->growth == GrowthType::Exponential;
    const double ent = degrees ? degrees->entropy : 0.0;

    if (anti_exp) {
        out.kind = K::NonIntegrable;
        out.entropy_bound = max_rate;
        if (degrees) {
            if (!ent_pos)
                out.warnings.push_back("anticonfined valuations grow exponentially but the degree "
                                       "growth does not; estimates disagree");
            else if (std::fabs(max_rate - ent) > 1e-6)
                out.warnings.push_back("anticonfined growth rate " + fmt_double(max_rate) +
                                       " differs from degree entropy " + fmt_double(ent));
        }
        return out;
    }
    if (anti_lin) {
        if (nonconf) {
            out.kind = K::LinearisableOrNonIntegrable;
            out.warnings.push_back("non-confined singularity alongside linearly growing "
                                   "anticonfined orbit; verdict stays open");
        } else {
            out.kind = K::Linearisable;
            if (ent_pos)
                out.warnings.push_back("degree entropy " + fmt_double(ent) +
                                       " is positive despite a linearisable signature");
        }
        return out;
    }
    if (anti_zero) {
        out.kind = nonconf ? K::LinearisableOrNonIntegrable
                           : K::InconclusiveRecommendFullDeautonomisation;
        if (!nonconf && ent_pos)
            out.warnings.push_back("degree entropy " + fmt_double(ent) +
                                   " is positive; expect the full study to confirm "
                                   "non-integrability");
        return out;
    }
    if (nonconf) {
        if (ent_pos) {
            out.kind = K::NonIntegrable;
            out.entropy_bound = ent;
        } else {
            out.kind = K::LinearisableOrNonIntegrable;
        }
        return out;
    }
    if (ent_pos) {
        out.kind = K::NonIntegrable;
        out.entropy_bound = ent;
        return out;
    }
    out.kind = K::IntegrableCandidate;
    return out;
}

}  // namespace singan
