#include "singan/deauto.hpp"

#include <algorithm>
#include <cmath>

#include "singan/errors.hpp"

namespace singan {
namespace {

// max(|num|, |den|): the multiplicative "size" used to steer the
// exponent-lattice Euclid below
Integer rheight(const Rational& q) {
    Integer n = abs(q.get_num()), d = q.get_den();
    return n > d ? n : d;
}

// exact integer k with v == b^k, for positive v and b > 1
std::optional<long> power_of(Rational v, const Rational& b) {
    if (v == 1) return 0;
    long k = 0;
    if (v > 1) {
        while (v > 1 && k < 100000) {
            v /= b;
            ++k;
        }
        if (v == 1) return k;
        return std::nullopt;
    }
    while (v < 1 && k < 100000) {
        v *= b;
        ++k;
    }
    if (v == 1) return -k;
    return std::nullopt;
}

// largest gamma > 1 with a = gamma^i and b = gamma^j (Euclid on the
// exponents: replace the bigger value by its multiplicative remainder)
std::optional<Rational> common_base(Rational a, Rational b) {
    if (a < 1) a = 1 / a;
    if (b < 1) b = 1 / b;
    for (int guard = 0; guard < 256; ++guard) {
        if (a < b) std::swap(a, b);
        if (b == 1) return a == 1 ? std::nullopt : std::optional<Rational>(a);
        Rational r = a / b;
        if (r < 1) r = 1 / r;
        if (rheight(r) >= rheight(a)) return std::nullopt;  // exponents not commensurable
        a = b;
        b = r;
    }
    return std::nullopt;
}

// divide out every root at +1 and -1
Poly<Rational> strip_unit_roots(Poly<Rational> p) {
    for (Rational r : {Rational(1), Rational(-1)}) {
        Rational mr = Rational(0) - r;
        Poly<Rational> lin(std::vector<Rational>{mr, Rational(1)});
        while (p.degree() > 0 && is_zero(p.eval(r))) p = divrem(p, lin).first;
    }
    return p;
}

double rate_from_poly(const Poly<Rational>& p, Interval* out) {
    Interval root = dominant_root(p, Rational(1, 1000000000000));
    if (out) *out = root;
    if (root.is_point() && root.lo == 1) return 0.0;
    Rational mid = (root.lo + root.hi) / 2;
    return std::log(to_double(mid));
}

Poly<Rational> constraint_char_poly(const ParamSeq& s) {
    Recurrence r;
    if (s.kind == ParamSeq::Kind::LinRec) {
        r.order = static_cast<int>(s.coeffs.size());
        r.coeffs = s.coeffs;
    } else if (s.kind == ParamSeq::Kind::MulRec) {
        r.order = static_cast<int>(s.exponents.size());
        for (long e : s.exponents) r.coeffs.push_back(Rational(e));
    } else {
        throw DomainError("constraint must be a linear or multiplicative recurrence");
    }
    return char_poly(r);
}

std::string render(const SingularValue& v) { return v.str(); }

}  // namespace

std::vector<Rational> gen_params(const ParamSeq& constraint, int N) {
    if (constraint.kind != ParamSeq::Kind::LinRec && constraint.kind != ParamSeq::Kind::MulRec)
        throw DomainError("constraint must be a linear or multiplicative recurrence");
    if (N < 0) throw DomainError("parameter window must be non-negative");
    std::vector<Rational> out;
    out.reserve(2 * static_cast<size_t>(N) + 1);
    for (long n = -N; n <= N; ++n) out.push_back(param_value(constraint, n));
    return out;
}

LogLogFit loglog_fit(const std::vector<Rational>& params, int tail) {
    if (tail < 4) throw DomainError("log log fit needs a tail of at least 4 values");
    if (static_cast<int>(params.size()) < tail)
        throw DomainError("fewer parameter values than the requested tail");
    for (const auto& v : params)
        if (sign(v) <= 0) throw DomainError("log log growth needs positive parameter values");

    LogLogFit fit;

    // common base of everything that isn't 1
    std::optional<Rational> base;
    for (const auto& v : params) {
        if (v == 1) continue;
        Rational w = v < 1 ? Rational(1 / v) : v;
        if (!base) {
            base = w;
            continue;
        }
        if (power_of(w, *base)) continue;
        base = common_base(*base, w);
        if (!base)
            throw DomainError("parameter values are not powers of a common rational base");
    }
    if (!base) return fit;  // all values 1: constant, rate 0

    std::vector<long> exps;
    for (size_t i = params.size() - static_cast<size_t>(tail); i < params.size(); ++i) {
        auto k = power_of(params[i], *base);
        if (!k) throw DomainError("parameter values are not powers of a common rational base");
        exps.push_back(*k);
    }

    auto rec = fit_recurrence(exps, 2, &fit.warnings);
    if (!rec) throw DomainError("parameter exponent sequence is not recurrent");
    fit.recurrence = *rec;
    fit.char_poly = char_poly(*rec);
    fit.dominant_factor = strip_unit_roots(*fit.char_poly);
    fit.rate = rate_from_poly(*fit.char_poly, &fit.dominant);
    return fit;
}

double loglog_growth_rate(const std::vector<Rational>& params, int tail) {
    return loglog_fit(params, tail).rate;
}

DeautoReport verify_confinement_under_constraint(const MapInstance& m, const std::string& param,
                                                 const ParamSeq& constraint,
                                                 const SingularValue& v,
                                                 const SingularityReport& reference,
                                                 const ClassifyOptions& opt_in) {
    DeautoReport rep;
    rep.constraint = constraint;

    MapInstance m2 = m;
    auto it = m2.params.find(param);
    if (it == m2.params.end()) throw DomainError("map has no parameter named " + param);
    it->second = constraint;

    // bases the reference pattern pins values to
    std::vector<Rational> ref_bases;
    for (const auto& e : reference.pattern)
        if (e.kind == PatternEntry::Kind::NearValue) ref_bases.push_back(e.near_base);

    ClassifyOptions opt = opt_in;
    if (!opt.near_values_at && !opt.near_values) {
        // the constraint may move the singular values: flag both the plain
        // reference bases and their per-index scalings
        std::vector<Rational> bases = ref_bases;
        opt.near_values_at = [bases, constraint](long n) {
            std::vector<Rational> out = bases;
            Rational a = param_value(constraint, n);
            for (const auto& b : bases) {
                Rational s = a * b;
                bool seen = false;
                for (const auto& o : out) seen = seen || o == s;
                if (!seen && !is_zero(s)) out.push_back(s);
            }
            return out;
        };
    }

    const long entry = reference.entry_index;
    auto compare = [&](const SingularityReport& got) {
        std::vector<std::string> notes;
        if (got.cls != SingClass::Confined) {
            notes.push_back("classified " + to_string(got.cls) + " instead of confined");
            return notes;
        }
        if (got.pattern.size() != reference.pattern.size()) {
            notes.push_back("pattern length " + std::to_string(got.pattern.size()) + " vs " +
                            std::to_string(reference.pattern.size()));
            return notes;
        }
        for (size_t i = 0; i < got.pattern.size(); ++i) {
            const auto& g = got.pattern[i];
            const auto& r = reference.pattern[i];
            long n = entry + static_cast<long>(i);
            if (g.kind != r.kind) {
                notes.push_back("entry " + std::to_string(n) + ": kind differs (" + g.value +
                                " vs " + r.value + ")");
                continue;
            }
            if ((g.kind == PatternEntry::Kind::Vanishing ||
                 g.kind == PatternEntry::Kind::Diverging) &&
                g.valuation != r.valuation)
                notes.push_back("entry " + std::to_string(n) + ": valuation " +
                                std::to_string(g.valuation) + " vs " +
                                std::to_string(r.valuation));
            if (g.kind == PatternEntry::Kind::NearValue) {
                Rational scaled = param_value(constraint, n) * r.near_base;
                if (g.near_base != r.near_base && g.near_base != scaled)
                    notes.push_back("entry " + std::to_string(n) + ": base " + g.value +
                                    " matches neither " + to_string(r.near_base) + " nor " +
                                    to_string(scaled));
            }
        }
        return notes;
    };

    rep.observed = classify_singularity(m2, v, opt);
    rep.consistency = compare(rep.observed);

    if (!rep.consistency.empty() && !v.at_infinity) {
        // the entry value itself may scale with the parameter
        SingularValue vs{false, param_value(constraint, entry) * v.value};
        if (vs.value != v.value) {
            SingularityReport scaled = classify_singularity(m2, vs, opt);
            auto notes = compare(scaled);
            if (notes.size() < rep.consistency.size() ||
                (scaled.cls == SingClass::Confined &&
                 rep.observed.cls != SingClass::Confined)) {
                rep.observed = std::move(scaled);
                rep.consistency = std::move(notes);
                rep.entry_scaled = true;
                rep.warnings.push_back("entry value " + render(v) + " scaled to " +
                                       to_string(vs.value) + " by the parameter at index " +
                                       std::to_string(entry));
            }
        }
    }
    rep.confinement_verified = rep.consistency.empty();

    rep.char_poly = constraint_char_poly(constraint);
    rep.dominant_factor = strip_unit_roots(rep.char_poly);
    rep.predicted_entropy = rate_from_poly(rep.char_poly, &rep.dominant);

    if (constraint.kind == ParamSeq::Kind::MulRec) {
        int N = static_cast<int>(std::min<long>(12, kMulRecIndexCap));
        auto vals = gen_params(constraint, N);
        LogLogFit f = loglog_fit(vals, N + 1);
        rep.loglog_rate = f.rate;
        for (const auto& w : f.warnings) rep.warnings.push_back(w);
    }
    return rep;
}

}  // namespace singan
