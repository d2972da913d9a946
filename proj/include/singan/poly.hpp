#pragma once

#include <algorithm>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "singan/errors.hpp"
#include "singan/rational.hpp"

namespace singan {

// Dense univariate polynomial over a field K, coefficients stored lowest
// power first, never with trailing zeros. The variable has no runtime
// identity; printers take its name as an argument.
template <class K>
class Poly {
    std::vector<K> c_;

    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }

  public:
    using coeff_type = K;

    Poly() = default;
    explicit Poly(K constant) {
        if (!is_zero(constant)) c_.push_back(std::move(constant));
    }
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly var() { return Poly(std::vector<K>{K(0), K(1)}); }
    static Poly from_int(long v) { return Poly(K(v)); }

    bool is_zero_poly() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const std::vector<K>& coeffs() const { return c_; }

    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return K(0);
        return c_[i];
    }

    const K& lead() const {
        if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        r.trim();
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
        r.trim();
        return r;
    }

    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& k : r.c_) k = -k;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        if constexpr (std::is_same_v<K, Rational>) {
            size_t na = 0, nb = 0;
            for (const auto& x : a.c_)
                if (!is_zero(x)) ++na;
            for (const auto& x : b.c_)
                if (!is_zero(x)) ++nb;
            if (na >= 8 && nb >= 8 && na * nb >= 4096) return poly_mul_packed(a, b);
        }
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (is_zero(b.c_[j])) continue;
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }

    friend Poly operator*(const Poly& a, const K& k) {
        if (is_zero(k)) return Poly();
        Poly r = a;
        for (auto& x : r.c_) x = x * k;
        r.trim();
        return r;
    }
    friend Poly operator*(const K& k, const Poly& a) { return a * k; }

    // multiply by x^k
    Poly shifted(int k) const {
        if (c_.empty() || k == 0) return *this;
        if (k < 0) throw DomainError("negative shift");
        Poly r;
        r.c_.assign(c_.size() + static_cast<size_t>(k), K(0));
        std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
        return r;
    }

    Poly derivative() const {
        Poly r;
        for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * K(static_cast<long>(i)));
        r.trim();
        return r;
    }

    K eval(const K& x) const {
        K acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly monic() const {
        if (c_.empty()) return *this;
        K inv = K(1) / c_.back();
        return *this * inv;
    }
};

// Quotient + remainder; divisor must be nonzero.
template <class K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero_poly()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly<K>(), a};
    std::vector<K> rem(a.coeffs());
    std::vector<K> quo(static_cast<size_t>(a.degree() - b.degree()) + 1, K(0));
    const K lead_inv = K(1) / b.lead();
    for (int i = a.degree(); i >= b.degree(); --i) {
        if (is_zero(rem[static_cast<size_t>(i)])) continue;
        K q = rem[static_cast<size_t>(i)] * lead_inv;
        quo[static_cast<size_t>(i - b.degree())] = q;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<size_t>(i - b.degree() + j)] =
                rem[static_cast<size_t>(i - b.degree() + j)] - q * b.coeff(j);
    }
    return {Poly<K>(std::move(quo)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> operator/(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero_poly()) throw DomainError("inexact polynomial division");
    return q;
}

template <class K>
Poly<K> pow_value(const Poly<K>& base, long e) {
    if (e < 0) throw DomainError("negative power of a polynomial");
    Poly<K> acc = Poly<K>::from_int(1), sq = base;
    unsigned long ue = static_cast<unsigned long>(e);
    while (ue) {
        if (ue & 1) acc = acc * sq;
        ue >>= 1;
        if (ue) sq = sq * sq;
    }
    return acc;
}

template <class K>
bool is_zero(const Poly<K>& p) {
    return p.is_zero_poly();
}

// Monic remainder-sequence gcd; fine for the small-degree generic cases
// (nested coefficient fields). Q gets a modular algorithm, see below.
template <class K>
Poly<K> poly_gcd_euclid(Poly<K> a, Poly<K> b) {
    if (a.is_zero_poly()) return b.is_zero_poly() ? b : b.monic();
    if (b.is_zero_poly()) return a.monic();
    a = a.monic();
    b = b.monic();
    while (!b.is_zero_poly()) {
        Poly<K> r = divrem(a, b).second;
        a = std::move(b);
        b = r.is_zero_poly() ? std::move(r) : r.monic();
    }
    return a;  // already monic
}

// Modular gcd over Q (reduce mod word-size primes, CRT, verify); handles the
// degree-10^3 operands the degree-counting engine produces. Defined in
// src/poly_gcd.cpp.
Poly<Rational> poly_gcd(const Poly<Rational>& a, const Poly<Rational>& b);

// Dense product over Q via integer packing (clear denominators, pack the
// coefficients of each sign into fixed-width slots of one big integer, let
// GMP do a single multiplication per sign pair). operator* switches to this
// once both factors carry enough terms. Defined in src/poly_mul.cpp.
Poly<Rational> poly_mul_packed(const Poly<Rational>& a, const Poly<Rational>& b);

// Integer-coefficient convolution behind poly_mul_packed (lowest power
// first); picks schoolbook or packing by operand size. Engines that keep
// Z[t] representations call this directly.
std::vector<Integer> poly_mul_z(const std::vector<Integer>& a, const std::vector<Integer>& b);

template <class K>
Poly<K> poly_gcd(const Poly<K>& a, const Poly<K>& b) {
    return poly_gcd_euclid(a, b);
}

namespace detail {
inline bool token_needs_parens(const std::string& s) {
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '-' && i == 0) continue;
        if (ch == '+' || ch == '-' || ch == '*' || ch == ' ' || ch == '^') return true;
    }
    return false;
}
inline std::string wrap_token(const std::string& s) {
    return token_needs_parens(s) ? "(" + s + ")" : s;
}
}  // namespace detail

inline std::string to_string(const Poly<Rational>& p, const std::string& var) {
    if (p.is_zero_poly()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(i);
        if (is_zero(c)) continue;
        bool neg = sign(c) < 0;
        Rational a = abs(c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        bool unit = is_one(a);
        if (i == 0) {
            out += to_string(a);
        } else {
            if (!unit) out += to_string(a) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

template <class K>
std::string to_string(const Poly<K>& p, const std::string& var) {
    if (p.is_zero_poly()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        K c = p.coeff(i);
        if (is_zero(c)) continue;
        if (!out.empty()) out += " + ";
        std::string cs = to_string(c);
        if (i == 0) {
            out += detail::wrap_token(cs);
        } else {
            if (cs != "1") out += detail::wrap_token(cs) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace singan
