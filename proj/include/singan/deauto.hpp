#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singan/growth.hpp"
#include "singan/param_seq.hpp"
#include "singan/singularity.hpp"

// Promoting a constant map parameter to a recurrence-driven sequence and
// checking that the singularity pattern survives. The recurrence's
// characteristic root predicts the degree-growth entropy; for multiplicative
// recurrences the prediction can be cross-checked against the growth of
// log log a_n, computed exactly on the integer exponent lattice.

namespace singan {

// Recurrence fitted to the integer exponents of a parameter sequence whose
// values are powers of a common rational base.
struct LogLogFit {
    double rate = 0.0;  // log of the dominant recurrence root (0 when <= 1)
    std::optional<Recurrence> recurrence;
    std::optional<Poly<Rational>> char_poly;
    // char_poly with every root at +1/-1 divided out; the factor that
    // actually carries the growth
    std::optional<Poly<Rational>> dominant_factor;
    Interval dominant{Rational(1), Rational(1)};
    std::vector<std::string> warnings;
};

struct DeautoReport {
    ParamSeq constraint;
    SingularityReport observed;
    // true when the non-autonomous pattern matches the reference pattern
    // entry-for-entry: same kinds and valuations, and near-value bases equal
    // either exactly or after scaling by the parameter value at that index
    bool confinement_verified = false;
    bool entry_scaled = false;  // the probed entry value itself was scaled
    std::vector<std::string> consistency;  // per-entry mismatch notes
    Poly<Rational> char_poly;              // of the constraint recurrence
    Poly<Rational> dominant_factor;        // roots at +1/-1 divided out
    Interval dominant{Rational(1), Rational(1)};
    double predicted_entropy = 0.0;
    std::optional<double> loglog_rate;  // multiplicative constraints only
    std::vector<std::string> warnings;
};

// Exact values a_{-N}..a_{N} (2N+1 entries, index order). Throws when the
// recurrence cannot be extended backward or a multiplicative seed is zero.
std::vector<Rational> gen_params(const ParamSeq& constraint, int N);

// Fits the integer exponent sequence of the last `tail` values (all values
// must be positive powers of one rational base) and returns the growth rate
// of log a_n, i.e. the limit of (1/n) log log a_n. Constant or geometric
// sequences give rate 0.
LogLogFit loglog_fit(const std::vector<Rational>& params, int tail);
double loglog_growth_rate(const std::vector<Rational>& params, int tail);

// Re-classifies singular value `v` on a copy of `m` whose parameter `param`
// follows `constraint`, and compares the resulting pattern against
// `reference` (the autonomous classification, taken at parameter value 1).
// When the constraint moves the singular values themselves, the entry value
// and the near-value bases are scaled by a_n per index; both the plain and
// the scaled entry are tried and the matching one is reported.
DeautoReport verify_confinement_under_constraint(const MapInstance& m, const std::string& param,
                                                 const ParamSeq& constraint,
                                                 const SingularValue& v,
                                                 const SingularityReport& reference,
                                                 const ClassifyOptions& opt = {});

}  // namespace singan
