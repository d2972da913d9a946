#include "singan/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "singan/errors.hpp"

namespace singan {

namespace {

// Non-integer values of moderate height; small integers and 0/±1 are the
// typical singular values of catalog maps, so the draw stays clear of them.
Rational draw_seed_value(uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x1234567ULL);
    long num = 13 + static_cast<long>(rng() % 17);
    long den = 7 + static_cast<long>(rng() % 5);
    while (std::gcd(num, den) != 1) den = 7 + static_cast<long>(rng() % 5);
    if (rng() & 1) num = -num;
    return rat(num, den);
}

// --- Z[t] fraction arithmetic -----------------------------------------404
//
// Degree counting iterates rational functions of t whose coefficient sizes
// reach thousands of bits. RatFunc<Rational> is exact but keeps a monic
// denominator, which drags a huge leading coefficient through every mpq
// canonicalization. Here orbits are integer-coefficient fraction pairs:
// gcd extraction still runs through the modular poly_gcd, multiplication
// through poly_mul_z, and everything else stays in plain mpz arithmetic.

using ZPoly = std::vector<Integer>;  // lowest power first, no trailing zeros

void ztrim(ZPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

long zdeg(const ZPoly& a) { return static_cast<long>(a.size()) - 1; }

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    ZPoly r = poly_mul_z(a, b);
    ztrim(r);
    return r;
}

Integer zcontent(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// Exact quotient a/b in Z[t]; inputs must divide (Gauss's lemma keeps the
// long division integral when b's primitive part divides a).
ZPoly zdivexact(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw DomainError("division by zero polynomial");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw DomainError("inexact polynomial division");
    ZPoly rem = a;
    ZPoly q(a.size() - b.size() + 1, Integer(0));
    const Integer& bl = b.back();
    for (size_t k = q.size(); k-- > 0;) {
        Integer& top = rem[k + b.size() - 1];
        if (sgn(top) == 0) continue;
        Integer qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), bl.get_mpz_t());
        if (sgn(r) != 0) throw DomainError("inexact polynomial division");
        q[k] = qc;
        for (size_t j = 0; j + 1 < b.size(); ++j) rem[k + j] -= qc * b[j];
        top = 0;
    }
    for (size_t i = 0; i + 1 < b.size(); ++i)
        if (sgn(rem[i]) != 0) throw DomainError("inexact polynomial division");
    ztrim(q);
    return q;
}

// Primitive gcd (positive leading coefficient); integer contents dropped.
ZPoly zgcd(const ZPoly& a, const ZPoly& b) {
    auto to_q = [](const ZPoly& v) {
        std::vector<Rational> cs(v.size());
        for (size_t i = 0; i < v.size(); ++i) cs[i] = Rational(v[i]);
        return Poly<Rational>(std::move(cs));
    };
    Poly<Rational> g = poly_gcd(to_q(a), to_q(b));
    if (g.degree() <= 0) return {Integer(1)};
    Integer lcm = 1;
    for (const auto& c : g.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly out(g.coeffs().size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = g.coeffs()[i].get_num() * (lcm / g.coeffs()[i].get_den());
    Integer ct = zcontent(out);
    if (ct > 1)
        for (auto& c : out) c /= ct;
    if (sgn(out.back()) < 0)
        for (auto& c : out) c = -c;
    return out;
}

// num/den over Z[t], fully reduced (coprime polynomial parts, coprime
// integer contents) with den's leading coefficient positive.
struct ZFrac {
    ZPoly num, den;

    ZFrac() : den{Integer(1)} {}
    explicit ZFrac(const Rational& q) : den{Integer(q.get_den())} {
        if (sgn(q) != 0) num = {Integer(q.get_num())};
    }
    static ZFrac var() { return make({Integer(0), Integer(1)}, {Integer(1)}); }

    bool is_zero_value() const { return num.empty(); }
    long degree() const { return std::max(zdeg(num), zdeg(den)); }

    // reduce a raw pair (poly gcd, shared content, sign)
    static ZFrac make(ZPoly n, ZPoly d) {
        if (d.empty()) throw DomainError("division by zero rational function");
        ZFrac r;
        if (n.empty()) {
            r.den = {Integer(1)};
            return r;
        }
        ZPoly g = zgcd(n, d);
        if (zdeg(g) > 0) {
            n = zdivexact(n, g);
            d = zdivexact(d, g);
        }
        r.num = std::move(n);
        r.den = std::move(d);
        r.strip_content();
        return r;
    }

    void strip_content() {
        Integer cn = zcontent(num), cd = zcontent(den), c;
        mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
        if (c > 1) {
            for (auto& z : num) z /= c;
            for (auto& z : den) z /= c;
        }
        if (sgn(den.back()) < 0) {
            for (auto& z : num) z = -z;
            for (auto& z : den) z = -z;
        }
    }

    friend ZFrac operator-(const ZFrac& a) {
        ZFrac r = a;
        for (auto& z : r.num) z = -z;
        return r;
    }

    friend ZFrac operator+(const ZFrac& a, const ZFrac& b) {
        if (a.is_zero_value()) return b;
        if (b.is_zero_value()) return a;
        ZPoly g = zgcd(a.den, b.den);
        if (zdeg(g) <= 0) {
            ZFrac r;
            r.num = zadd(zmul(a.num, b.den), zmul(b.num, a.den));
            if (r.num.empty()) return ZFrac();
            r.den = zmul(a.den, b.den);
            r.strip_content();
            return r;
        }
        ZPoly ad = zdivexact(a.den, g);
        ZPoly bd = zdivexact(b.den, g);
        ZPoly t = zadd(zmul(a.num, bd), zmul(b.num, ad));
        if (t.empty()) return ZFrac();
        ZPoly h = zgcd(t, g);
        if (zdeg(h) > 0) {
            t = zdivexact(t, h);
            g = zdivexact(g, h);
        }
        ZFrac r;
        r.num = std::move(t);
        r.den = zmul(zmul(ad, bd), g);
        r.strip_content();
        return r;
    }

    friend ZFrac operator-(const ZFrac& a, const ZFrac& b) { return a + (-b); }

    friend ZFrac operator*(const ZFrac& a, const ZFrac& b) {
        if (a.is_zero_value() || b.is_zero_value()) return ZFrac();
        ZPoly g1 = zgcd(a.num, b.den);
        ZPoly g2 = zgcd(b.num, a.den);
        const bool r1 = zdeg(g1) > 0, r2 = zdeg(g2) > 0;
        ZFrac r;
        r.num = zmul(r1 ? zdivexact(a.num, g1) : a.num, r2 ? zdivexact(b.num, g2) : b.num);
        r.den = zmul(r2 ? zdivexact(a.den, g2) : a.den, r1 ? zdivexact(b.den, g1) : b.den);
        r.strip_content();
        return r;
    }

    friend ZFrac operator/(const ZFrac& a, const ZFrac& b) {
        if (b.is_zero_value()) throw DomainError("division by zero rational function");
        if (a.is_zero_value()) return ZFrac();
        ZFrac binv;
        binv.num = b.den;
        binv.den = b.num;
        if (sgn(binv.den.back()) < 0) {
            for (auto& z : binv.num) z = -z;
            for (auto& z : binv.den) z = -z;
        }
        return a * binv;
    }
};

ZFrac pow_value(const ZFrac& base, long e) {
    if (e == 0) return ZFrac(Rational(1));
    ZFrac b = base;
    if (e < 0) {
        b = ZFrac(Rational(1)) / b;
        e = -e;
    }
    ZFrac acc(Rational(1));
    while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

// One seed's degree run; throws DegenerateOrbit when the orbit hits a pole.
std::vector<long> degree_run(const MapInstance& m, int N, uint64_t seed) {
    auto pf = rational_params(m, 0);
    ParamFn<ZFrac> param = [&](const std::string& name, long n) { return ZFrac(pf(name, n)); };
    std::function<ZFrac(const Rational&)> lit = [](const Rational& q) { return ZFrac(q); };

    State<ZFrac> s{ZFrac(draw_seed_value(seed)), ZFrac::var()};
    std::vector<long> d;
    if (m.is_scalar()) {
        d.push_back(s.a.degree());
        d.push_back(s.b.degree());
    } else {
        d.push_back(std::max(s.a.degree(), s.b.degree()));
    }
    long n = 1;
    while (d.size() < static_cast<size_t>(N) + 1) {
        try {
            s = step_forward<ZFrac>(m, s, m.is_scalar() ? n : n - 1, param, lit);
        } catch (const DomainError& e) {
            throw DegenerateOrbit(e.what(), n);
        }
        if (m.is_scalar())
            d.push_back(s.b.degree());
        else
            d.push_back(std::max(s.a.degree(), s.b.degree()));
        ++n;
    }
    return d;
}

Rational eval_poly(const Poly<Rational>& p, const Rational& x) { return p.eval(x); }

// Sturm chain of a squarefree polynomial.
std::vector<Poly<Rational>> sturm_chain(const Poly<Rational>& p) {
    std::vector<Poly<Rational>> chain;
    chain.push_back(p);
    if (p.degree() >= 1) chain.push_back(p.derivative());
    while (chain.back().degree() >= 1) {
        Poly<Rational> r = divrem(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero_poly()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_variations(const std::vector<Poly<Rational>>& chain, const Rational& x) {
    int vars = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sign(eval_poly(q, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

// Divides out the factor (x - r); r must be a root.
Poly<Rational> divide_root(const Poly<Rational>& p, const Rational& r) {
    Poly<Rational> lin{std::vector<Rational>{-r, Rational(1)}};
    auto [q, rem] = divrem(p, lin);
    if (!rem.is_zero_poly()) throw DomainError("divide_root: not a root");
    return q;
}

Rational cauchy_bound(const Poly<Rational>& p) {
    Rational m(0);
    const Rational& lead = p.lead();
    for (int i = 0; i < p.degree(); ++i) {
        Rational q = abs(Rational(p.coeff(i) / lead));
        if (q > m) m = q;
    }
    return m + 1;
}

// distinct real roots in the open interval (a, b) of a squarefree q with
// q(a) != 0 and q(b) != 0
long sturm_count_open(const Poly<Rational>& q, const Rational& a, const Rational& b) {
    if (q.degree() < 1) return 0;
    auto chain = sturm_chain(q);
    // Sturm counts (a, b]; b is not a root here, so (a, b] = (a, b)
    return sign_variations(chain, a) - sign_variations(chain, b);
}

struct LinearSolve {
    bool consistent = false;
    std::vector<Rational> x;
};

// Exact Gaussian elimination of an overdetermined augmented system
// [A | b]; free variables are pinned to zero.
LinearSolve solve_exact(std::vector<std::vector<Rational>> rows, size_t ncols) {
    size_t r = 0;
    std::vector<long> pivot_of_col(ncols, -1);
    for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && is_zero(rows[piv][c])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Rational inv = Rational(1) / rows[r][c];
        for (size_t j = c; j <= ncols; ++j) rows[r][j] *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || is_zero(rows[i][c])) continue;
            Rational f = rows[i][c];
            for (size_t j = c; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    for (size_t i = r; i < rows.size(); ++i)
        if (!is_zero(rows[i][ncols])) return {};
    LinearSolve out;
    out.consistent = true;
    out.x.assign(ncols, Rational(0));
    for (size_t c = 0; c < ncols; ++c)
        if (pivot_of_col[c] >= 0) out.x[c] = rows[static_cast<size_t>(pivot_of_col[c])][ncols];
    return out;
}

}  // namespace

DegreeSequence degree_sequence(const MapInstance& m, int N, const std::vector<uint64_t>& seeds) {
    if (N < 4) throw DomainError("degree_sequence: N must be at least 4");
    if (seeds.empty()) throw DomainError("degree_sequence: need at least one seed");
    DegreeSequence out;
    std::vector<std::vector<long>> runs;
    std::string degenerate_note;
    for (uint64_t s : seeds) {
        try {
            runs.push_back(degree_run(m, N, s));
            out.seeds_used.push_back(s);
        } catch (const DegenerateOrbit& e) {
            out.warnings.push_back("seed " + std::to_string(s) + ": orbit degenerated at step " +
                                   std::to_string(e.step) + "; seed dropped");
            degenerate_note = e.what();
        }
    }
    if (runs.empty())
        throw DegenerateOrbit("all seeds produced degenerate orbits: " + degenerate_note, 0);
    out.degrees = runs.front();
    bool disagree = false;
    for (const auto& run : runs)
        for (size_t i = 0; i < out.degrees.size(); ++i) {
            if (run[i] != out.degrees[i]) disagree = true;
            out.degrees[i] = std::max(out.degrees[i], run[i]);
        }
    if (disagree)
        out.warnings.push_back(
            "degree sequences disagree across seeds (cancellation at some seed); "
            "index-wise maximum reported");
    return out;
}

std::optional<Recurrence> fit_recurrence(const std::vector<long>& d, int holdout,
                                         std::vector<std::string>* warnings) {
    const long len = static_cast<long>(d.size());
    const long train_end = len - holdout;  // training data is d[0 .. train_end-1]
    if (holdout < 2 || train_end < 3) return std::nullopt;
    const long kmax = train_end / 2;
    for (long k = 1; k <= kmax; ++k) {
        // relation rows predict d[n+1] from d[n], ..., d[n+1-k]
        const long first = k - 1, last = train_end - 2;
        const long avail = last - first + 1;
        if (avail < k + 1) break;
        const long use = std::min<long>(avail, 2 * k + 2);
        std::vector<std::vector<Rational>> rows;
        for (long n = last - use + 1; n <= last; ++n) {
            std::vector<Rational> row;
            for (long i = 1; i <= k; ++i) row.emplace_back(d[static_cast<size_t>(n + 1 - i)]);
            row.emplace_back(d[static_cast<size_t>(n + 1)]);
            rows.push_back(std::move(row));
        }
        LinearSolve sol = solve_exact(std::move(rows), static_cast<size_t>(k));
        if (!sol.consistent) continue;

        auto predicts = [&](long n) {
            Rational acc(0);
            for (long i = 1; i <= k; ++i) acc += sol.x[static_cast<size_t>(i - 1)] *
                                                 Rational(d[static_cast<size_t>(n + 1 - i)]);
            return acc == Rational(d[static_cast<size_t>(n + 1)]);
        };
        bool held = true;
        for (long n = train_end - 1; n <= len - 2; ++n)
            if (!predicts(n)) {
                held = false;
                break;
            }
        if (!held) {
            if (warnings)
                warnings->push_back("HOLDOUT_MISMATCH: order " + std::to_string(k) +
                                    " fit fails on held-out terms; trying higher order");
            continue;
        }
        long valid_from = first;
        for (long n = len - 2; n >= first; --n) {
            if (!predicts(n)) {
                valid_from = n + 1;
                break;
            }
        }
        Recurrence r;
        r.order = static_cast<int>(k);
        r.coeffs = sol.x;
        r.valid_from = valid_from;
        return r;
    }
    return std::nullopt;
}

std::optional<Recurrence> fit_recurrence_joint(const std::vector<std::vector<long>>& lists,
                                               int kmax) {
    for (int k = 1; k <= kmax; ++k) {
        std::vector<std::vector<Rational>> rows;
        for (const auto& d : lists) {
            if (static_cast<long>(d.size()) <= k) continue;
            for (size_t i = 0; i + static_cast<size_t>(k) < d.size(); ++i) {
                std::vector<Rational> row;
                for (int j = 1; j <= k; ++j)
                    row.emplace_back(d[i + static_cast<size_t>(k - j)]);
                row.emplace_back(d[i + static_cast<size_t>(k)]);
                rows.push_back(std::move(row));
            }
        }
        if (static_cast<long>(rows.size()) < k + 2) continue;
        LinearSolve sol = solve_exact(std::move(rows), static_cast<size_t>(k));
        if (!sol.consistent) continue;
        Recurrence r;
        r.order = k;
        r.coeffs = sol.x;
        r.valid_from = 0;
        return r;
    }
    return std::nullopt;
}

Poly<Rational> char_poly(const Recurrence& r) {
    std::vector<Rational> c(static_cast<size_t>(r.order) + 1, Rational(0));
    c[static_cast<size_t>(r.order)] = Rational(1);
    for (int i = 1; i <= r.order; ++i)
        c[static_cast<size_t>(r.order - i)] = -r.coeffs[static_cast<size_t>(i - 1)];
    return Poly<Rational>(c);
}

Poly<Rational> squarefree_part(const Poly<Rational>& p) {
    if (p.degree() < 1) return p;
    Poly<Rational> g = poly_gcd(p, p.derivative());
    if (g.degree() < 1) return p;
    return divrem(p, g).first;
}

long count_real_roots(const Poly<Rational>& p, const Rational& a, const Rational& b) {
    Poly<Rational> q = squarefree_part(p);
    while (q.degree() >= 1 && is_zero(eval_poly(q, a))) q = divide_root(q, a);
    while (q.degree() >= 1 && is_zero(eval_poly(q, b))) q = divide_root(q, b);
    return sturm_count_open(q, a, b);
}

long count_real_roots(const Poly<Rational>& p) {
    Poly<Rational> q = squarefree_part(p);
    if (q.degree() < 1) return 0;
    Rational b = cauchy_bound(q);
    return sturm_count_open(q, -b, b);
}

Interval dominant_root(const Poly<Rational>& p, const Rational& tol) {
    if (p.degree() < 1) throw DomainError("dominant_root: constant polynomial");
    if (!(tol > Rational(0))) throw DomainError("dominant_root: tolerance must be positive");
    Poly<Rational> q = squarefree_part(p);
    while (q.degree() >= 1 && is_zero(eval_poly(q, Rational(1)))) q = divide_root(q, Rational(1));

    auto no_root_result = [&]() -> Interval {
        // no real root beyond 1: the product of all roots must not exceed 1
        // in modulus, otherwise a complex pair dominates and the bisection
        // cannot certify anything
        Rational prod = abs(Rational(p.coeff(0) / p.lead()));
        if (prod > Rational(1))
            throw UnsupportedSpectrum(
                "no real root exceeds 1 but the root product does: complex-dominated spectrum");
        return {Rational(1), Rational(1)};
    };

    if (q.degree() < 1) return no_root_result();
    Rational hi = cauchy_bound(q);
    Rational lo(1);
    if (sturm_count_open(q, lo, hi) == 0) return no_root_result();

    while (true) {
        // exact rational root becomes reachable once q is linear
        if (q.degree() == 1) {
            Rational r = -q.coeff(0) / q.coeff(1);
            if (r > Rational(1)) return {r, r};
            return no_root_result();
        }
        if (hi - lo <= tol && sturm_count_open(q, lo, hi) == 1) break;
        Rational mid = (lo + hi) / 2;
        if (is_zero(eval_poly(q, mid))) {
            if (sturm_count_open(q, mid, hi) == 0) return {mid, mid};
            q = divide_root(q, mid);
            lo = mid;
            continue;
        }
        if (sturm_count_open(q, mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

EntropyEstimate entropy_from_degrees(const DegreeSequence& ds, const Rational& tol) {
    EntropyEstimate est;
    est.warnings = ds.warnings;
    const std::vector<long>& d = ds.degrees;
    const size_t len = d.size();

    std::optional<Recurrence> rec = fit_recurrence(d, 2, &est.warnings);
    bool stabilized = len >= 3 && d[len - 1] == d[len - 2] && d[len - 1] == d[len - 3];

    if (!rec) {
        if (stabilized) {
            est.growth = GrowthType::Bounded;
            est.entropy = 0.0;
            return est;
        }
        est.method = "ratio-based";
        est.warnings.push_back(
            "no exact recurrence found; ratio-based entropy estimate is low-confidence");
        if (len >= 2 && d[len - 2] > 0) {
            Rational ratio(d[len - 1], d[len - 2]);
            est.dominant = {ratio, ratio};
            est.entropy = ratio > Rational(1) ? std::log(to_double(ratio)) : 0.0;
            est.growth = ratio > Rational(1) ? GrowthType::Exponential : GrowthType::Bounded;
        }
        return est;
    }

    est.recurrence = rec;
    Poly<Rational> cp = char_poly(*rec);
    est.char_poly = cp;
    est.dominant = dominant_root(cp, tol);

    if (est.dominant.is_point() && est.dominant.lo == Rational(1)) {
        est.entropy = 0.0;
        if (stabilized) {
            est.growth = GrowthType::Bounded;
            return est;
        }
        // polynomial order = multiplicity of the root 1, minus 1; order 0
        // (simple root, e.g. periodic degree sequences) is just bounded
        int mult = 0;
        Poly<Rational> q = cp;
        while (q.degree() >= 1 && is_zero(eval_poly(q, Rational(1)))) {
            q = divide_root(q, Rational(1));
            ++mult;
        }
        if (mult <= 1) {
            est.growth = GrowthType::Bounded;
            return est;
        }
        est.growth = GrowthType::Polynomial;
        est.poly_order = mult - 1;
        return est;
    }

    est.growth = GrowthType::Exponential;
    est.entropy = std::log(to_double((est.dominant.lo + est.dominant.hi) / 2));
    return est;
}

EntropyEstimate entropy_estimate(const MapInstance& m, int N, const std::vector<uint64_t>& seeds,
                                 const Rational& tol) {
    DegreeSequence ds = degree_sequence(m, N, seeds);
    EntropyEstimate est = entropy_from_degrees(ds, tol);
    if (!est.recurrence && est.method == "ratio-based") {
        // one automatic extension before settling for the ratio estimate
        DegreeSequence longer = degree_sequence(m, N + 6, seeds);
        EntropyEstimate retry = entropy_from_degrees(longer, tol);
        if (retry.recurrence) return retry;
    }
    return est;
}

}  // namespace singan
