#pragma once

#include <map>
#include <string>
#include <vector>

#include "singan/rational.hpp"

namespace singan {

// Parameter sequence a_n. Four shapes:
//   Constant:  a_n = value
//   LinRec:    a_{n+k} = sum_i coeffs[i] * a_{n+k-1-i}, seeded by init (a_0..a_{k-1})
//   MulRec:    a_{n+k} = prod_i a_{n+k-1-i}^{exponents[i]}, seeded by init
//   Explicit:  table of values starting at index `start`
struct ParamSeq {
    enum class Kind { Constant, LinRec, MulRec, Explicit };
    Kind kind = Kind::Constant;
    Rational constant = Rational(0);
    std::vector<Rational> coeffs;    // LinRec, length k
    std::vector<long> exponents;     // MulRec, length k
    std::vector<Rational> init;      // LinRec/MulRec, length k
    std::vector<Rational> values;    // Explicit
    long start = 0;                  // Explicit: index of values[0]

    bool is_constant() const { return kind == Kind::Constant; }
};

// MulRec values are rationals raised to exponentially growing powers; cap
// the index range so a single value cannot eat the address space.
inline constexpr long kMulRecIndexCap = 16;

inline Rational param_value(const ParamSeq& s, long n) {
    switch (s.kind) {
        case ParamSeq::Kind::Constant: return s.constant;
        case ParamSeq::Kind::Explicit: {
            long off = n - s.start;
            if (off < 0 || off >= static_cast<long>(s.values.size()))
                throw DomainError("explicit parameter sequence has no value at index " +
                                  std::to_string(n));
            return s.values[static_cast<size_t>(off)];
        }
        case ParamSeq::Kind::LinRec: {
            const long k = static_cast<long>(s.coeffs.size());
            if (k == 0 || s.init.size() != s.coeffs.size())
                throw DomainError("linear recurrence parameter needs matching coeffs/init");
            if (n >= 0 && n < k) return s.init[static_cast<size_t>(n)];
            std::vector<Rational> win = s.init;  // values at [base, base+k)
            long base = 0;
            while (base + k <= n) {
                Rational next(0);
                for (long i = 0; i < k; ++i) next += s.coeffs[static_cast<size_t>(i)] * win[static_cast<size_t>(k - 1 - i)];
                win.erase(win.begin());
                win.push_back(next);
                ++base;
            }
            while (n < base) {
                // shift the window [a_base .. a_{base+k-1}] down one step by
                // solving the relation anchored at base-1 for its lowest term
                if (is_zero(s.coeffs.back()))
                    throw DomainError("linear recurrence not backward-extendable (last coefficient is 0)");
                Rational top = win[static_cast<size_t>(k - 1)];
                for (long i = 0; i < k - 1; ++i)
                    top -= s.coeffs[static_cast<size_t>(i)] * win[static_cast<size_t>(k - 2 - i)];
                Rational lowest = top / s.coeffs.back();
                win.pop_back();
                win.insert(win.begin(), lowest);
                --base;
            }
            return win[static_cast<size_t>(n - base)];
        }
        case ParamSeq::Kind::MulRec: {
            const long k = static_cast<long>(s.exponents.size());
            if (k == 0 || s.init.size() != s.exponents.size())
                throw DomainError("multiplicative recurrence parameter needs matching exponents/init");
            for (const auto& v : s.init)
                if (is_zero(v)) throw DomainError("multiplicative recurrence seed must be nonzero");
            if (n < -kMulRecIndexCap || n > kMulRecIndexCap)
                throw DomainError("multiplicative parameter index " + std::to_string(n) +
                                  " beyond cap " + std::to_string(kMulRecIndexCap));
            if (n >= 0 && n < k) return s.init[static_cast<size_t>(n)];
            std::vector<Rational> win = s.init;
            long base = 0;
            while (base + k <= n) {
                Rational next(1);
                for (long i = 0; i < k; ++i)
                    next *= pow_value(win[static_cast<size_t>(k - 1 - i)], s.exponents[static_cast<size_t>(i)]);
                win.erase(win.begin());
                win.push_back(next);
                ++base;
            }
            while (n < base) {
                long ek = s.exponents.back();
                if (ek != 1 && ek != -1)
                    throw DomainError("multiplicative recurrence not backward-extendable (last exponent not ±1)");
                // a_{base+k-1} = (prod over higher terms) * a_{base-1}^{ek}
                Rational rest(1);
                for (long i = 0; i < k - 1; ++i)
                    rest *= pow_value(win[static_cast<size_t>(k - 2 - i)], s.exponents[static_cast<size_t>(i)]);
                Rational target = win[static_cast<size_t>(k - 1)] / rest;
                Rational lowest = ek == 1 ? target : pow_value(target, -1);
                win.pop_back();
                win.insert(win.begin(), lowest);
                --base;
            }
            return win[static_cast<size_t>(n - base)];
        }
    }
    throw DomainError("corrupt parameter sequence");
}

// Materialized values over a contiguous index range; what orbit code uses.
struct ParamTable {
    long lo = 0;
    std::map<std::string, std::vector<Rational>> values;

    const Rational& at(const std::string& name, long n) const {
        auto it = values.find(name);
        if (it == values.end()) throw DomainError("unknown parameter " + name);
        long off = n - lo;
        if (off < 0 || off >= static_cast<long>(it->second.size()))
            throw DomainError("parameter " + name + " not materialized at index " + std::to_string(n));
        return it->second[static_cast<size_t>(off)];
    }
};

inline ParamTable materialize(const std::map<std::string, ParamSeq>& seqs, long lo, long hi) {
    if (hi < lo) throw DomainError("empty materialization range");
    ParamTable t;
    t.lo = lo;
    for (const auto& [name, seq] : seqs) {
        std::vector<Rational> vals;
        vals.reserve(static_cast<size_t>(hi - lo + 1));
        for (long n = lo; n <= hi; ++n) vals.push_back(param_value(seq, n));
        t.values.emplace(name, std::move(vals));
    }
    return t;
}

}  // namespace singan
