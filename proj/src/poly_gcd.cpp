#include <cstdint>
#include <vector>

#include "singan/poly.hpp"

// Modular gcd over Q: clear denominators, take gcds of the integer images
// modulo word-size primes, lift by CRT with symmetric residues, and verify
// the stabilized candidate by exact integer division. A degree-0 image is a
// proof of coprimality (reduction mod a prime not dividing either leading
// coefficient can only raise the gcd degree), so the common case costs one
// mod-p Euclid run. This is what keeps reduction of the degree-10^3
// numerators in the degree-counting engine tractable; a rational remainder
// sequence would square its coefficient sizes every round.

namespace singan {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// 62-bit primes, generated descending and cached across calls.
const std::vector<u64>& primes_62bit(size_t at_least) {
    static std::vector<u64> cache;
    static u64 next_candidate = (1ull << 62) - 1;
    while (cache.size() < at_least) {
        while (!is_prime_u64(next_candidate)) --next_candidate;
        cache.push_back(next_candidate);
        --next_candidate;
    }
    return cache;
}

using ZpPoly = std::vector<u64>;  // lowest power first, no trailing zeros

void zp_trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

void zp_make_monic(ZpPoly& a, u64 p) {
    if (a.empty()) return;
    u64 inv = powmod(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod(c, inv, p);
}

// a := a mod b (b monic)
void zp_rem(ZpPoly& a, const ZpPoly& b, u64 p) {
    while (a.size() >= b.size()) {
        u64 q = a.back();
        size_t off = a.size() - b.size();
        if (q != 0) {
            for (size_t j = 0; j < b.size(); ++j) {
                u64 t = mulmod(q, b[j], p);
                u64& dst = a[off + j];
                dst = dst >= t ? dst - t : dst + p - t;
            }
        }
        a.pop_back();
        zp_trim(a);
        if (a.size() < b.size()) break;
    }
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, u64 p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        zp_make_monic(b, p);
        zp_rem(a, b, p);
        std::swap(a, b);
    }
    zp_make_monic(a, p);
    return a;
}

using ZPoly = std::vector<Integer>;

ZPoly clear_denominators(const Poly<Rational>& p) {
    Integer lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.get_num() * (lcm / c.get_den()));
    return out;
}

Integer int_content(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

void make_primitive(ZPoly& a) {
    Integer g = int_content(a);
    if (g == 0 || g == 1) return;
    for (auto& c : a) c /= g;
}

ZpPoly reduce_mod(const ZPoly& a, u64 p) {
    ZpPoly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
    zp_trim(out);
    return out;
}

// Does the primitive polynomial d divide a over Z? Gauss's lemma makes this
// equivalent to divisibility over Q. Long division with an early abort the
// moment a quotient coefficient would be fractional.
bool divides_exactly(const ZPoly& a, const ZPoly& d) {
    if (d.empty()) return a.empty();
    ZPoly rem = a;
    const Integer& dl = d.back();
    while (rem.size() >= d.size()) {
        if (rem.back() == 0) {
            rem.pop_back();
            continue;
        }
        Integer q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.back().get_mpz_t(), dl.get_mpz_t());
        if (r != 0) return false;
        size_t off = rem.size() - d.size();
        for (size_t j = 0; j + 1 < d.size(); ++j) rem[off + j] -= q * d[j];
        rem.pop_back();
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return rem.empty();
}

Poly<Rational> monic_over_q(const ZPoly& a) {
    std::vector<Rational> cs;
    cs.reserve(a.size());
    const Integer& lead = a.back();
    for (const auto& c : a) cs.push_back(rat(c, lead));
    return Poly<Rational>(std::move(cs));
}

}  // namespace

Poly<Rational> poly_gcd(const Poly<Rational>& a, const Poly<Rational>& b) {
    if (a.is_zero_poly()) return b.is_zero_poly() ? b : b.monic();
    if (b.is_zero_poly()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return Poly<Rational>::from_int(1);

    ZPoly za = clear_denominators(a);
    ZPoly zb = clear_denominators(b);
    make_primitive(za);
    make_primitive(zb);

    // linear divisor: a single evaluation settles it
    if (a.degree() == 1 || b.degree() == 1) {
        const Poly<Rational>& lin = a.degree() == 1 ? a : b;
        const Poly<Rational>& other = a.degree() == 1 ? b : a;
        Rational root = -lin.coeff(0) / lin.coeff(1);
        return is_zero(other.eval(root)) ? lin.monic() : Poly<Rational>::from_int(1);
    }

    Integer lead_gcd;
    mpz_gcd(lead_gcd.get_mpz_t(), za.back().get_mpz_t(), zb.back().get_mpz_t());

    constexpr size_t kMaxPrimes = 128;
    std::vector<Integer> acc;       // CRT residues in [0, M)
    Integer modulus = 1;
    int acc_degree = -2;            // -2: nothing accumulated yet
    ZPoly prev_lift;

    for (size_t pi = 0; pi < kMaxPrimes; ++pi) {
        u64 p = primes_62bit(pi + 1)[pi];
        if (mpz_fdiv_ui(za.back().get_mpz_t(), p) == 0) continue;
        if (mpz_fdiv_ui(zb.back().get_mpz_t(), p) == 0) continue;

        ZpPoly gp = zp_gcd(reduce_mod(za, p), reduce_mod(zb, p), p);
        int deg = static_cast<int>(gp.size()) - 1;
        if (deg == 0) return Poly<Rational>::from_int(1);  // proven coprime

        u64 scale = mpz_fdiv_ui(lead_gcd.get_mpz_t(), p);
        for (auto& c : gp) c = mulmod(c, scale, p);

        if (acc_degree < -1 || deg < acc_degree) {
            acc.clear();
            for (u64 c : gp) acc.emplace_back(static_cast<unsigned long>(c));
            modulus = Integer(static_cast<unsigned long>(p));
            acc_degree = deg;
            prev_lift.clear();
            continue;
        }
        if (deg > acc_degree) continue;  // unlucky prime

        // CRT combine
        u64 m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
        u64 m_inv = powmod(m_mod_p, p - 2, p);
        for (size_t i = 0; i < acc.size(); ++i) {
            u64 cur = mpz_fdiv_ui(acc[i].get_mpz_t(), p);
            u64 want = i < gp.size() ? gp[i] : 0;
            u64 diff = want >= cur ? want - cur : want + p - cur;
            u64 t = mulmod(diff, m_inv, p);
            acc[i] += modulus * Integer(static_cast<unsigned long>(t));
        }
        modulus *= Integer(static_cast<unsigned long>(p));

        // symmetric lift, primitive part, compare with last round
        ZPoly lift(acc.size());
        Integer half = modulus / 2;
        for (size_t i = 0; i < acc.size(); ++i) lift[i] = acc[i] > half ? acc[i] - modulus : acc[i];
        make_primitive(lift);
        if (!lift.empty() && lift.back() < 0)
            for (auto& c : lift) c = -c;

        if (lift == prev_lift) {
            if (divides_exactly(za, lift) && divides_exactly(zb, lift)) return monic_over_q(lift);
        }
        prev_lift = std::move(lift);
    }

    // Unreachable in practice; stay correct no matter what.
    return poly_gcd_euclid(a, b);
}

}  // namespace singan
