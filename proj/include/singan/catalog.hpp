#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "singan/analyze.hpp"

namespace singan {

// One checkable claim about an analysis result. `tag` groups expectations by
// provenance ("paper" for values quoted from the literature, "derived" for
// values an independent computation pins down, "trivial" for bookkeeping).
struct Expectation {
    std::string tag;
    std::string what;
    // Returns true when the claim holds; on failure may leave a short
    // explanation in `detail`.
    std::function<bool(const struct CatalogEntry&, const AnalysisReport&, std::string& detail)>
        check;
};

// A named example map with its preferred analysis settings and the results it
// is expected to reproduce.
struct CatalogEntry {
    std::string key;
    std::string title;
    std::string source;  // mapfile text, parseable by parse_mapfile
    AnalyzeConfig config;
    AnalyzeSpec spec;
    std::function<void(MapInstance&)> patch;  // applied after parsing, may be empty
    std::vector<Expectation> expect;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* catalog_find(const std::string& key);

// Parses entry.source and applies entry.patch.
MapInstance catalog_map(const CatalogEntry& entry);

// Runs the analysis pipeline on the entry's map with the given settings.
AnalysisReport catalog_analyze(const CatalogEntry& entry, const AnalyzeConfig& cfg);

// Analyzes every entry and evaluates its expectations, printing one PASS/FAIL
// line per expectation. `only_tag` (case-insensitive) restricts to
// expectations with that tag. Returns the number of failures.
int catalog_run_all(std::ostream& out, const std::string& only_tag = "");

}  // namespace singan
