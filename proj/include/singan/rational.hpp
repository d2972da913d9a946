#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "singan/errors.hpp"

namespace singan {

// Exact arithmetic lives on GMP. mpq_class keeps the canonical form
// (gcd(num,den)=1, den>0) through all arithmetic as long as values are
// built through the helpers below.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "p/q", optional leading '-'. Returns nullopt on anything else.
inline std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    mpq_t tmp;
    mpq_init(tmp);
    if (mpq_set_str(tmp, text.c_str(), 10) != 0) {
        mpq_clear(tmp);
        return std::nullopt;
    }
    if (mpz_sgn(mpq_denref(tmp)) == 0) {
        mpq_clear(tmp);
        return std::nullopt;
    }
    mpq_canonicalize(tmp);
    Rational q(tmp);
    mpq_clear(tmp);
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }
inline int sign(const Rational& q) { return sgn(q); }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational pow_value(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (is_zero(base)) {
        if (e < 0) throw DomainError("zero to a negative power");
        return Rational(0);
    }
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), ue);
    mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), ue);
    return e > 0 ? rat(n, d) : rat(d, n);
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace singan
