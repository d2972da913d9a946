#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "singan/errors.hpp"
#include "singan/rational.hpp"

namespace singan {

// Truncated Laurent series c_0 t^v + c_1 t^{v+1} + ... over a field K, with
// c_0 != 0. `window()` is the number of coefficients actually known; it
// shrinks when leading terms cancel in an addition, so a value never claims
// more precision than the computation that produced it. An addition whose
// entire known range cancels throws PrecisionExhausted.
template <class K>
class Laurent {
    long val_ = 0;
    std::vector<K> c_;

    Laurent() = default;

  public:
    Laurent(K leading, long val, size_t window) : val_(val) {
        if (is_zero(leading)) throw DomainError("Laurent leading coefficient must be nonzero");
        if (window == 0) throw DomainError("Laurent window must be positive");
        c_.assign(window, K(0));
        c_[0] = std::move(leading);
    }

    static Laurent eps(long vexp, size_t window) { return Laurent(K(1), vexp, window); }

    long val() const { return val_; }
    size_t window() const { return c_.size(); }
    // first unknown absolute power
    long known_end() const { return val_ + static_cast<long>(c_.size()); }

    const K& leading() const { return c_[0]; }
    // coefficient of t^{val+i}
    const K& coeff_rel(size_t i) const { return c_.at(i); }
    K& coeff_rel(size_t i) { return c_.at(i); }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.val_ == b.val_ && a.c_ == b.c_;
    }

    friend Laurent operator-(const Laurent& a) {
        Laurent r = a;
        for (auto& k : r.c_) k = -k;
        return r;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        long lo = std::min(a.val_, b.val_);
        long end = std::min(a.known_end(), b.known_end());
        // coefficients below a series' valuation are exactly zero, so the
        // sum is exact on [lo, end)
        std::vector<K> sum;
        sum.reserve(static_cast<size_t>(end - lo));
        for (long k = lo; k < end; ++k) {
            K v(0);
            if (k >= a.val_) v = v + a.c_[static_cast<size_t>(k - a.val_)];
            if (k >= b.val_) v = v + b.c_[static_cast<size_t>(k - b.val_)];
            sum.push_back(std::move(v));
        }
        size_t lead = 0;
        while (lead < sum.size() && is_zero(sum[lead])) ++lead;
        if (lead == sum.size())
            throw PrecisionExhausted("cancellation beyond the known window in Laurent addition");
        Laurent r;
        r.val_ = lo + static_cast<long>(lead);
        r.c_.assign(sum.begin() + static_cast<long>(lead), sum.end());
        return r;
    }

    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        size_t w = std::min(a.c_.size(), b.c_.size());
        Laurent r;
        r.val_ = a.val_ + b.val_;
        r.c_.assign(w, K(0));
        for (size_t i = 0; i < w && i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (size_t j = 0; i + j < w && j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        return r;  // leading a0*b0 != 0 over a field
    }

    Laurent scaled(const K& k) const {
        if (is_zero(k)) throw DomainError("scaling a Laurent series by zero");
        Laurent r = *this;
        for (auto& c : r.c_) c = c * k;
        return r;
    }

    Laurent inverse() const {
        Laurent r;
        r.val_ = -val_;
        r.c_.assign(c_.size(), K(0));
        K lead_inv = K(1) / c_[0];
        r.c_[0] = lead_inv;
        for (size_t k = 1; k < c_.size(); ++k) {
            K acc(0);
            for (size_t i = 1; i <= k; ++i) acc = acc + c_[i] * r.c_[k - i];
            r.c_[k] = -acc * lead_inv;
        }
        return r;
    }

    friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inverse(); }
};

template <class K>
Laurent<K> pow_value(const Laurent<K>& base, long e) {
    if (e == 0) return Laurent<K>(K(1), 0, base.window());
    Laurent<K> b = e < 0 ? base.inverse() : base;
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    Laurent<K> acc = b;
    ue -= 1;
    while (ue) {
        if (ue & 1) acc = acc * b;
        ue >>= 1;
        if (ue) b = b * b;
    }
    return acc;
}

// Expression-evaluation value: a Laurent series or an exact zero. Exact
// zeros enter through literals and through parameter sequences that hit 0;
// orbit values themselves always carry the tracker and stay nonzero.
template <class K>
class LaurentVal {
    std::optional<Laurent<K>> v_;

  public:
    LaurentVal() = default;  // exact zero
    LaurentVal(Laurent<K> s) : v_(std::move(s)) {}

    static LaurentVal zero() { return LaurentVal(); }

    bool is_exact_zero() const { return !v_.has_value(); }
    const Laurent<K>& series() const {
        if (!v_) throw DomainError("exact zero has no series form");
        return *v_;
    }

    friend LaurentVal operator-(const LaurentVal& a) {
        return a.is_exact_zero() ? a : LaurentVal(-a.series());
    }

    friend LaurentVal operator+(const LaurentVal& a, const LaurentVal& b) {
        if (a.is_exact_zero()) return b;
        if (b.is_exact_zero()) return a;
        return LaurentVal(a.series() + b.series());
    }

    friend LaurentVal operator-(const LaurentVal& a, const LaurentVal& b) { return a + (-b); }

    friend LaurentVal operator*(const LaurentVal& a, const LaurentVal& b) {
        if (a.is_exact_zero() || b.is_exact_zero()) return LaurentVal();
        return LaurentVal(a.series() * b.series());
    }

    friend LaurentVal operator/(const LaurentVal& a, const LaurentVal& b) {
        if (b.is_exact_zero()) throw DegenerateOrbit("division by exact zero", 0);
        if (a.is_exact_zero()) return a;
        return LaurentVal(a.series() / b.series());
    }
};

template <class K>
LaurentVal<K> pow_value(const LaurentVal<K>& base, long e) {
    if (base.is_exact_zero()) {
        if (e < 0) throw DegenerateOrbit("zero to a negative power", 0);
        if (e == 0) throw DomainError("0^0 in expression evaluation");
        return base;
    }
    return LaurentVal<K>(pow_value(base.series(), e));
}

template <class K>
bool is_zero(const Laurent<K>&) {
    return false;  // invariant: leading coefficient nonzero
}

}  // namespace singan
