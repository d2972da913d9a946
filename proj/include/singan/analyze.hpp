#pragma once

#include "singan/map_model.hpp"
#include "singan/report.hpp"

// Full analysis pipeline: singular-value discovery, per-value orbit
// classification, extra probe orbits, degree growth, entropy, verdict.

namespace singan {

// Inputs the caller supplies on top of the map itself.
struct AnalyzeSpec {
    std::vector<ProbeSpec> probes;  // extra orbits to classify
    ClassifyOptions classify;       // near-value / tolerance overrides
    bool degrees = true;            // compute the degree sequence
};

AnalysisReport analyze_map(const MapInstance& m, const AnalyzeConfig& cfg,
                           const AnalyzeSpec& spec = {});

}  // namespace singan
