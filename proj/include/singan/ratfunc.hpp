#pragma once

#include <string>
#include <utility>

#include "singan/poly.hpp"

namespace singan {

// Rational function num/den over a field K, kept fully reduced with a monic
// denominator. Addition and multiplication use the classic reduced formulas
// (split off gcds first) so intermediate products stay as small as the
// result allows.
template <class K>
class RatFunc {
    Poly<K> num_, den_;

    void normalize_monic() {
        // den_ is nonzero here; make it monic, fold the factor into num_
        K lead = den_.lead();
        if (!(lead == K(1))) {
            K inv = K(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    void reduce_full() {
        if (den_.is_zero_poly()) throw DomainError("rational function with zero denominator");
        if (num_.is_zero_poly()) {
            den_ = Poly<K>::from_int(1);
            return;
        }
        Poly<K> g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divrem(num_, g).first;
            den_ = divrem(den_, g).first;
        }
        normalize_monic();
    }

    // invariant-preserving fast constructor for internal use
    RatFunc(Poly<K> n, Poly<K> d, int) : num_(std::move(n)), den_(std::move(d)) {}

  public:
    using coeff_type = K;

    RatFunc() : num_(), den_(Poly<K>::from_int(1)) {}
    RatFunc(long v) : num_(Poly<K>::from_int(v)), den_(Poly<K>::from_int(1)) {}
    RatFunc(int v) : RatFunc(static_cast<long>(v)) {}
    explicit RatFunc(K constant) : num_(Poly<K>(std::move(constant))), den_(Poly<K>::from_int(1)) {}
    explicit RatFunc(Poly<K> p) : num_(std::move(p)), den_(Poly<K>::from_int(1)) {}
    RatFunc(Poly<K> n, Poly<K> d) : num_(std::move(n)), den_(std::move(d)) { reduce_full(); }

    static RatFunc var() { return RatFunc(Poly<K>::var()); }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    bool is_zero_value() const { return num_.is_zero_poly(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    // constant term as element of K; only valid when is_constant()
    K constant_value() const {
        if (!is_constant()) throw DomainError("not a constant rational function");
        return num_.coeff(0);  // den is monic degree 0, i.e. exactly 1
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;  // canonical form
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_, 0); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero_value()) return b;
        if (b.is_zero_value()) return a;
        Poly<K> g = poly_gcd(a.den_, b.den_);
        if (g.degree() <= 0) {
            // coprime denominators: result is automatically reduced
            Poly<K> n = a.num_ * b.den_ + b.num_ * a.den_;
            if (n.is_zero_poly()) return RatFunc();
            return RatFunc(std::move(n), a.den_ * b.den_, 0);
        }
        Poly<K> bd = divrem(a.den_, g).first;   // a.den / g
        Poly<K> dd = divrem(b.den_, g).first;   // b.den / g
        Poly<K> t = a.num_ * dd + b.num_ * bd;
        if (t.is_zero_poly()) return RatFunc();
        Poly<K> h = poly_gcd(t, g);
        if (h.degree() > 0) {
            t = divrem(t, h).first;
            g = divrem(g, h).first;
        }
        RatFunc r(std::move(t), bd * dd * g, 0);
        r.normalize_monic();
        return r;
    }

    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero_value() || b.is_zero_value()) return RatFunc();
        Poly<K> g1 = poly_gcd(a.num_, b.den_);
        Poly<K> g2 = poly_gcd(b.num_, a.den_);
        Poly<K> an = g1.degree() > 0 ? divrem(a.num_, g1).first : a.num_;
        Poly<K> bd = g1.degree() > 0 ? divrem(b.den_, g1).first : b.den_;
        Poly<K> bn = g2.degree() > 0 ? divrem(b.num_, g2).first : b.num_;
        Poly<K> ad = g2.degree() > 0 ? divrem(a.den_, g2).first : a.den_;
        RatFunc r(an * bn, ad * bd, 0);
        r.normalize_monic();
        return r;
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero_value()) throw DomainError("division by zero rational function");
        if (a.is_zero_value()) return RatFunc();
        Poly<K> g1 = poly_gcd(a.num_, b.num_);
        Poly<K> g2 = poly_gcd(b.den_, a.den_);
        Poly<K> an = g1.degree() > 0 ? divrem(a.num_, g1).first : a.num_;
        Poly<K> bn = g1.degree() > 0 ? divrem(b.num_, g1).first : b.num_;
        Poly<K> bd = g2.degree() > 0 ? divrem(b.den_, g2).first : b.den_;
        Poly<K> ad = g2.degree() > 0 ? divrem(a.den_, g2).first : a.den_;
        RatFunc r(an * bd, ad * bn, 0);
        r.normalize_monic();
        return r;
    }

    RatFunc inverse() const {
        if (is_zero_value()) throw DomainError("inverse of zero rational function");
        RatFunc r(den_, num_, 0);
        r.normalize_monic();
        return r;
    }

    // substitute a K value for the variable; nullopt when it hits a pole
    std::optional<K> eval(const K& x) const {
        K d = den_.eval(x);
        if (is_zero(d)) return std::nullopt;
        return num_.eval(x) / d;
    }
};

template <class K>
bool is_zero(const RatFunc<K>& f) {
    return f.is_zero_value();
}

template <class K>
RatFunc<K> pow_value(const RatFunc<K>& base, long e) {
    if (e == 0) return RatFunc<K>(1);
    if (base.is_zero_value()) {
        if (e < 0) throw DomainError("zero to a negative power");
        return base;
    }
    RatFunc<K> b = e < 0 ? base.inverse() : base;
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    RatFunc<K> acc(1);
    while (ue) {
        if (ue & 1) acc = acc * b;
        ue >>= 1;
        if (ue) b = b * b;
    }
    return acc;
}

// Re-reduce an arbitrary num/den pair into canonical form (the constructor
// already does this; exposed for building values from raw polynomials).
template <class K>
RatFunc<K> ratfunc_reduce(Poly<K> num, Poly<K> den) {
    return RatFunc<K>(std::move(num), std::move(den));
}

template <class K>
std::string to_string(const RatFunc<K>& f, const std::string& var) {
    std::string n = to_string(f.num(), var);
    if (f.den().degree() == 0) return n;
    return detail::wrap_token(n) + "/" + detail::wrap_token(to_string(f.den(), var));
}

}  // namespace singan
