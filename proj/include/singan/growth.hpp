#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "singan/map_model.hpp"
#include "singan/poly.hpp"

namespace singan {

// Degrees d_0..d_N of the iterates over Q(t), maximized across seeds.
struct DegreeSequence {
    std::vector<long> degrees;
    std::vector<uint64_t> seeds_used;
    std::vector<std::string> warnings;
};

// d_{n+1} = sum_{i=1..order} coeffs[i-1] * d_{n+1-i}, holding for all
// n >= valid_from.
struct Recurrence {
    int order = 0;
    std::vector<Rational> coeffs;
    long valid_from = 0;
};

struct Interval {
    Rational lo, hi;
    bool is_point() const { return lo == hi; }
};

enum class GrowthType { Bounded, Polynomial, Exponential };

struct EntropyEstimate {
    std::optional<Recurrence> recurrence;
    std::optional<Poly<Rational>> char_poly;
    Interval dominant{Rational(1), Rational(1)};
    double entropy = 0.0;
    GrowthType growth = GrowthType::Bounded;
    int poly_order = 0;  // meaningful for Polynomial: 1 linear, 2 quadratic, ...
    std::string method = "recurrence-based";  // or "ratio-based"
    std::vector<std::string> warnings;
};

// Exact degree sequence of the orbit with x_0 a small random rational drawn
// from each seed and x_1 = t, fully reduced at every step. Pair maps start
// from (const, t) and take the component-wise maximum, so their d_0 is 1.
// Degenerate seeds are dropped with a warning; throws DegenerateOrbit only
// when every seed degenerates.
DegreeSequence degree_sequence(const MapInstance& m, int N, const std::vector<uint64_t>& seeds);

// Minimal-order exact-rational recurrence fitted to the sequence with the
// last `holdout` terms excluded from training and verified by prediction.
// Returns nullopt when no order <= (len-holdout)/2 fits; a training fit that
// fails the holdout is reported into `warnings` as HOLDOUT_MISMATCH and the
// search continues.
std::optional<Recurrence> fit_recurrence(const std::vector<long>& d, int holdout = 2,
                                         std::vector<std::string>* warnings = nullptr);

// Minimal-order recurrence satisfied by every window of every listed
// sequence simultaneously (rows from all lists are pooled into one exact
// solve). Needs at least order+2 rows before an order is trusted; returns
// nullopt when nothing of order <= kmax fits.
std::optional<Recurrence> fit_recurrence_joint(const std::vector<std::vector<long>>& lists,
                                               int kmax);

// lambda^k - sum c_i lambda^{k-i}
Poly<Rational> char_poly(const Recurrence& r);

// --- real-root machinery (shared with the singular-value finder) -----------

Poly<Rational> squarefree_part(const Poly<Rational>& p);

// Number of distinct real roots in (a, b]; p need not be squarefree.
long count_real_roots(const Poly<Rational>& p, const Rational& a, const Rational& b);

// Number of distinct real roots on the whole line.
long count_real_roots(const Poly<Rational>& p);

// Isolates the largest real root > 1 to an interval of width <= tol with a
// sign change certificate p(lo)*p(hi) <= 0; returns [1,1] when no real root
// exceeds 1. Throws UnsupportedSpectrum when no real root exceeds 1 yet the
// coefficient bound |c_0/c_lead| > 1 shows roots of modulus > 1 exist.
Interval dominant_root(const Poly<Rational>& p, const Rational& tol);

// Degree sequence -> recurrence -> characteristic root, with growth typing:
// Bounded when the degrees stabilize, Polynomial(order) when the dominant
// root is exactly 1 with multiplicity order+1, Exponential otherwise. Falls
// back to a flagged ratio estimate when no recurrence fits (after one
// automatic extension of N).
EntropyEstimate entropy_estimate(const MapInstance& m, int N, const std::vector<uint64_t>& seeds,
                                 const Rational& tol);

// Convenience: degrees already in hand.
EntropyEstimate entropy_from_degrees(const DegreeSequence& ds, const Rational& tol);

}  // namespace singan
