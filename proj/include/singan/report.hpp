#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singan/growth.hpp"
#include "singan/singularity.hpp"

// Analysis result assembly and rendering. Text output mirrors the pattern
// notation used throughout the library docs ({1, 0, ∞, -1}, ε^{-3}, ...);
// JSON is canonical: sorted keys, exact rationals as strings, doubles as
// fixed 12-digit decimal strings, pure ASCII ("inf" for ∞).

namespace singan {

struct AnalyzeConfig {
    int steps = 14;       // degree-sequence length
    int horizon = 20;     // ε-orbit length each way
    int truncation = 8;   // initial Laurent window
    int seeds = 3;        // random x0 seeds for degree runs
    uint64_t seed = 0;    // PRNG seed
};

// One classified singularity or probe orbit.
struct ClassifiedSingularity {
    std::string value;  // entry value ("1", "∞") or probe label
    bool probe = false;
    SingularityReport report;
};

struct AnalysisReport {
    std::string name;
    bool scalar = true;
    AnalyzeConfig config;
    std::vector<SingularValue> singular_values;
    std::vector<ClassifiedSingularity> singularities;
    std::vector<long> degrees;
    std::optional<EntropyEstimate> entropy;
    IntegrabilityVerdict verdict;
    std::vector<std::string> warnings;
};

// --- shared formatting ------------------------------------------------------

// "ε", "ε^3", "ε^{-2}" for a signed valuation; "0" stays "0" only in
// pattern context, so the caller decides what a zero valuation means.
std::string eps_string(long valuation);

// One pattern/window entry: NearValue -> base, Vanishing/Diverging -> ε
// power, Regular -> leading value.
std::string entry_string(const PatternEntry& e);

// "{1, 0, ∞, -1}"
std::string pattern_string(const std::vector<PatternEntry>& pattern);

// "d_{n+1} = 2 d_n - d_{n-2}"
std::string recurrence_string(const Recurrence& r);

// "λ^3 - 2λ^2 + 1"
std::string poly_string(const Poly<Rational>& p);

std::string render_text(const AnalysisReport& r);
std::string to_json(const AnalysisReport& r);

}  // namespace singan
