#include "singan/poly.hpp"

#include <gmp.h>

#include <cstdint>
#include <vector>

namespace singan {
namespace {

// Kronecker-style packing: a coefficient list with entries below 2^(64*slot)
// becomes one big integer whose base-2^(64*slot) digits are the entries.
// Multiplying two packed integers convolves the digit lists, which is the
// polynomial product; GMP's large-integer multiplication does the work.
// Signed coefficients are handled by packing positive and negative parts
// separately (digits stay non-negative, so extraction is plain slot reads).

using ZPoly = std::vector<Integer>;

size_t max_coeff_bits(const ZPoly& v) {
    size_t best = 1;
    for (const auto& z : v)
        if (sgn(z) != 0) best = std::max(best, mpz_sizeinbase(z.get_mpz_t(), 2));
    return best;
}

// Packs max(z,0) over the list (or max(-z,0) when negative_part is set).
Integer pack_part(const ZPoly& v, bool negative_part, size_t slot) {
    std::vector<uint64_t> buf(v.size() * slot, 0);
    bool any = false;
    for (size_t i = 0; i < v.size(); ++i) {
        int s = sgn(v[i]);
        if (negative_part ? s >= 0 : s <= 0) continue;
        any = true;
        size_t count = 0;
        mpz_export(&buf[i * slot], &count, -1, sizeof(uint64_t), 0, 0, v[i].get_mpz_t());
    }
    if (!any) return Integer(0);
    Integer packed;
    mpz_import(packed.get_mpz_t(), buf.size(), -1, sizeof(uint64_t), 0, 0, buf.data());
    return packed;
}

void unpack_into(const Integer& big, int sig, size_t n_slots, size_t slot, ZPoly& acc) {
    if (sgn(big) == 0) return;
    std::vector<uint64_t> buf((n_slots + 1) * slot, 0);
    size_t count = 0;
    mpz_export(buf.data(), &count, -1, sizeof(uint64_t), 0, 0, big.get_mpz_t());
    if (count > buf.size()) throw DomainError("packed polynomial product overflowed its slots");
    Integer digit;
    for (size_t i = 0; i < n_slots; ++i) {
        mpz_import(digit.get_mpz_t(), slot, -1, sizeof(uint64_t), 0, 0, &buf[i * slot]);
        if (sgn(digit) == 0) continue;
        if (sig > 0)
            acc[i] += digit;
        else
            acc[i] -= digit;
    }
}

ZPoly mul_schoolbook(const ZPoly& a, const ZPoly& b) {
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (sgn(b[j]) == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

ZPoly mul_packed(const ZPoly& a, const ZPoly& b) {
    // Slot width: a convolution digit is at most min(#terms) * maxA * maxB.
    size_t min_terms = std::min(a.size(), b.size());
    size_t lg = 0;
    while ((size_t{1} << lg) < min_terms) ++lg;
    size_t need = max_coeff_bits(a) + max_coeff_bits(b) + lg + 2;
    size_t slot = (need + 63) / 64;

    Integer apos = pack_part(a, false, slot), aneg = pack_part(a, true, slot);
    Integer bpos = pack_part(b, false, slot), bneg = pack_part(b, true, slot);

    ZPoly cv(a.size() + b.size() - 1, Integer(0));
    unpack_into(apos * bpos, +1, cv.size(), slot, cv);
    unpack_into(aneg * bneg, +1, cv.size(), slot, cv);
    unpack_into(apos * bneg, -1, cv.size(), slot, cv);
    unpack_into(aneg * bpos, -1, cv.size(), slot, cv);
    return cv;
}

}  // namespace

ZPoly poly_mul_z(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    size_t na = 0, nb = 0;
    for (const auto& z : a)
        if (sgn(z) != 0) ++na;
    for (const auto& z : b)
        if (sgn(z) != 0) ++nb;
    if (na == 0 || nb == 0) return {};
    if (na >= 8 && nb >= 8 && na * nb >= 4096) return mul_packed(a, b);
    return mul_schoolbook(a, b);
}

Poly<Rational> poly_mul_packed(const Poly<Rational>& a, const Poly<Rational>& b) {
    if (a.is_zero_poly() || b.is_zero_poly()) return Poly<Rational>();
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();

    Integer la(1), lb(1);
    for (const auto& q : ac) mpz_lcm(la.get_mpz_t(), la.get_mpz_t(), q.get_den().get_mpz_t());
    for (const auto& q : bc) mpz_lcm(lb.get_mpz_t(), lb.get_mpz_t(), q.get_den().get_mpz_t());
    ZPoly av(ac.size()), bv(bc.size());
    for (size_t i = 0; i < ac.size(); ++i) av[i] = ac[i].get_num() * (la / ac[i].get_den());
    for (size_t i = 0; i < bc.size(); ++i) bv[i] = bc[i].get_num() * (lb / bc[i].get_den());

    ZPoly cv = poly_mul_z(av, bv);
    cv.resize(av.size() + bv.size() - 1, Integer(0));
    Integer den = la * lb;
    std::vector<Rational> out(cv.size());
    for (size_t i = 0; i < cv.size(); ++i) out[i] = rat(cv[i], den);
    return Poly<Rational>(std::move(out));
}

}  // namespace singan
