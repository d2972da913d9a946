#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "singan/growth.hpp"
#include "singan/map_model.hpp"
#include "singan/rational.hpp"

// Singularity analysis: iterate a map on Laurent-series initial data
// (x0 = tracker symbol, x1 = singular value + ε) and classify what the
// orbit does around the singular entry.

namespace singan {

// One orbit component at one index, classified by its ε-expansion.
struct PatternEntry {
    enum class Kind {
        Regular,    // valuation 0, leading term away from every flagged base
        Vanishing,  // positive valuation: the value is O(ε^m)
        Diverging,  // negative valuation: the value blows up like ε^{-m}
        NearValue,  // valuation 0 but leading term equals a flagged base
    };
    Kind kind = Kind::Regular;
    // Vanishing/Diverging: the ε-valuation (signed). NearValue: the
    // valuation of (value - base), always positive when resolved.
    long valuation = 0;
    bool depends_on_tracker = false;  // leading behavior involves x0
    bool resolved = true;             // false: deviation exceeded the ε-window
    std::string value;  // Regular: leading coefficient; NearValue: the base
    Rational near_base{0};
};

// All components of the orbit at index n (1 entry for scalar, 2 for pair).
struct IndexEntry {
    long n = 0;
    std::vector<PatternEntry> comps;
};

// How the ε-valuations grow away from the regular window.
struct GrowthResult {
    enum class Type { Zero, Linear, Exponential, Unclassified };
    Type type = Type::Zero;
    long slope = 0;    // Linear: common difference along the forward tail
    double rate = 0;   // Exponential: log of the dominant recurrence root
    std::optional<Recurrence> recurrence;
    std::optional<Poly<Rational>> cpoly;
    Interval root{Rational(1), Rational(1)};
    std::vector<std::string> warnings;
};

// Classify one signed valuation list: Zero when the largest magnitude is
// already attained in the first half, Linear when the tail has constant
// nonzero differences, Exponential when a short recurrence with a dominant
// root > 1 fits, Unclassified otherwise.
GrowthResult growth_class(const std::vector<long>& vals,
                          const Rational& tol = Rational(1, 1000000000));

// Same, but both directions of an orbit must be explained together (the
// recurrence rows of the two tails are pooled into one fit).
GrowthResult growth_class_joint(const std::vector<long>& fwd, const std::vector<long>& bwd,
                                const Rational& tol = Rational(1, 1000000000));

enum class SingClass { Confined, NonConfined, Anticonfined, RegularOrbit };

inline std::string to_string(SingClass c) {
    switch (c) {
        case SingClass::Confined: return "confined";
        case SingClass::NonConfined: return "non-confined";
        case SingClass::Anticonfined: return "anticonfined";
        case SingClass::RegularOrbit: return "regular";
    }
    return "?";
}

// A value of x at which the forward rule loses its dependence on x_{n-1}.
struct SingularValue {
    bool at_infinity = false;
    Rational value{0};
    std::string str() const { return at_infinity ? "∞" : to_string(value); }
};

// Values where the forward image of a scalar map is independent of
// x_{n-1} (including a separate test at x = ∞, kept only when the map has
// poles that can reach it). Index-dependent candidates of non-autonomous
// maps are dropped with a warning. Throws UnsupportedMap for pair maps and
// when a singular value is real but irrational.
std::vector<SingularValue> find_singular_values(const MapInstance& m,
                                                std::vector<std::string>* warnings = nullptr);

// One seed component of a probe orbit.
struct SeedComp {
    enum class Kind { Tracker, Eps, Near, Value };
    Kind kind = Kind::Tracker;
    long power = 1;      // Eps: exponent of ε (may be negative)
    Rational value{0};   // Near: the base; Value: the exact constant
    Rational scale{1};   // coefficient on the ε-term (Eps/Near)
};

inline SeedComp seed_tracker() { return {SeedComp::Kind::Tracker, 0, Rational(0), Rational(1)}; }
inline SeedComp seed_eps(long power = 1, Rational scale = Rational(1)) {
    return {SeedComp::Kind::Eps, power, Rational(0), std::move(scale)};
}
inline SeedComp seed_near(Rational base, Rational scale = Rational(1)) {
    return {SeedComp::Kind::Near, 0, std::move(base), std::move(scale)};
}
inline SeedComp seed_value(Rational v) {
    return {SeedComp::Kind::Value, 0, std::move(v), Rational(1)};
}

// Orbit seed. Scalar maps: a = x_anchor, b = x_{anchor+1}. Pair maps:
// (a, b) = (X, Y) at index anchor.
struct ProbeSpec {
    std::string label;
    SeedComp a, b;
    long anchor = 0;
    std::string tracker = "x0";  // display name of the tracker symbol
};

struct ClassifyOptions {
    int horizon = 20;
    int truncation = 8;
    int truncation_cap = 64;
    Rational root_tol{1, 1000000000};
    // Bases the NearValue test compares leading terms against. Default:
    // the map's own finite singular values (scalar), empty for pairs.
    std::optional<std::vector<Rational>> near_values;
    // Index-dependent override (frozen non-autonomous maps).
    std::function<std::vector<Rational>(long)> near_values_at;
};

struct SingularityReport {
    std::string label;
    std::string tracker = "x0";
    SingClass cls = SingClass::NonConfined;
    int horizon = 0;          // horizon actually used (doubled re-checks included)
    int truncation_used = 0;  // ε-window that produced the final answer

    // Confined: singular entries from the entry up to (not including) the
    // first recovered index.
    std::vector<PatternEntry> pattern;
    long entry_index = 0;
    long recovery_index = 0;

    // Anticonfined: the finite window of regular-bearing indices, with a
    // few neighbouring entries kept for display, and the signed valuations
    // of everything beyond the window (one inner entry per component).
    long window_lo = 0, window_hi = 0;
    std::vector<IndexEntry> window;
    std::vector<IndexEntry> display;
    std::vector<std::vector<long>> forward_valuations;
    std::vector<std::vector<long>> backward_valuations;
    std::optional<GrowthResult> growth;

    std::vector<std::string> warnings;
};

// Classify the orbit through x = v (seed x0 = tracker, x1 = v + ε; at ∞ the
// entry is ε^{-1}). Scalar maps only; the backward rule must be present.
SingularityReport classify_singularity(const MapInstance& m, const SingularValue& v,
                                       const ClassifyOptions& opt = {});

// Run an arbitrary probe seed through the same engine. The orbit is
// classified by the same rules, so a probe that confines (or stays regular
// everywhere) is reported as such.
SingularityReport probe_anticonfined(const MapInstance& m, const ProbeSpec& probe,
                                     const ClassifyOptions& opt = {});

struct IntegrabilityVerdict {
    enum class Kind {
        NonIntegrable,
        Linearisable,
        LinearisableOrNonIntegrable,
        InconclusiveRecommendFullDeautonomisation,
        IntegrableCandidate,
    };
    Kind kind = Kind::IntegrableCandidate;
    double entropy_bound = 0;  // positive only for NonIntegrable
    std::vector<std::string> warnings;
};

inline std::string to_string(IntegrabilityVerdict::Kind k) {
    using K = IntegrabilityVerdict::Kind;
    switch (k) {
        case K::NonIntegrable: return "NonIntegrable";
        case K::Linearisable: return "Linearisable";
        case K::LinearisableOrNonIntegrable: return "LinearisableOrNonIntegrable";
        case K::InconclusiveRecommendFullDeautonomisation:
            return "InconclusiveRecommendFullDeautonomisation";
        case K::IntegrableCandidate: return "IntegrableCandidate";
    }
    return "?";
}

// Combine the per-singularity classifications with the degree-growth
// estimate. Anticonfined exponential growth dominates everything; the
// entropy only decides the remaining cases. Disagreements between the two
// signals are reported as warnings, never silently reconciled.
IntegrabilityVerdict verdict(const std::vector<SingularityReport>& reports,
                             const std::optional<EntropyEstimate>& degrees);

}  // namespace singan
