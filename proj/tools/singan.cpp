#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "singan/analyze.hpp"
#include "singan/catalog.hpp"
#include "singan/errors.hpp"
#include "singan/mapdsl.hpp"
#include "singan/report.hpp"

namespace {

// exit codes: 0 ok, 1 expectation failure, 2 bad input, 3 analysis gave up
constexpr int kExitFail = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitGaveUp = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw singan::DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"singularity-pattern analyzer for second-order birational maps"};
    app.require_subcommand(1);

    std::string file;
    std::string catalog_key;
    singan::AnalyzeConfig cfg;
    bool as_json = false;

    auto* analyze = app.add_subcommand("analyze", "classify singular orbits of a map");
    auto* file_opt = analyze->add_option("file", file, "map description file");
    auto* key_opt =
        analyze->add_option("--catalog", catalog_key, "analyze a built-in catalog entry instead");
    file_opt->excludes(key_opt);
    auto* steps_opt = analyze->add_option("--steps", cfg.steps, "degree-sequence length");
    auto* horizon_opt = analyze->add_option("--horizon", cfg.horizon, "orbit length each way");
    auto* trunc_opt = analyze->add_option("--trunc", cfg.truncation, "initial series window");
    auto* seeds_opt = analyze->add_option("--seeds", cfg.seeds, "random seeds per degree run");
    auto* seed_opt = analyze->add_option("--seed", cfg.seed, "PRNG seed");
    analyze->add_flag("--json", as_json, "emit the report as JSON");

    auto* catalog_cmd = app.add_subcommand("catalog", "built-in map collection");
    auto* list_cmd = catalog_cmd->add_subcommand("list", "list catalog entries");
    auto* runall_cmd =
        catalog_cmd->add_subcommand("run-all", "analyze every entry and check expectations");
    std::string only;
    runall_cmd->add_option("--only", only, "restrict to one expectation tag, e.g. tag=paper");
    catalog_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            if (file.empty() && catalog_key.empty())
                throw singan::DomainError("analyze needs a file or --catalog KEY");
            std::vector<singan::AnalysisReport> reports;
            if (!catalog_key.empty()) {
                const singan::CatalogEntry* e = singan::catalog_find(catalog_key);
                if (!e) throw singan::DomainError("no catalog entry named " + catalog_key);
                singan::AnalyzeConfig run = e->config;
                if (*steps_opt) run.steps = cfg.steps;
                if (*horizon_opt) run.horizon = cfg.horizon;
                if (*trunc_opt) run.truncation = cfg.truncation;
                if (*seeds_opt) run.seeds = cfg.seeds;
                if (*seed_opt) run.seed = cfg.seed;
                reports.push_back(singan::catalog_analyze(*e, run));
            } else {
                for (const auto& m : singan::parse_mapfile(slurp(file)))
                    reports.push_back(singan::analyze_map(m, cfg));
            }
            if (as_json) {
                if (reports.size() == 1) {
                    std::cout << singan::to_json(reports[0]) << "\n";
                } else {
                    auto arr = nlohmann::json::array();
                    for (const auto& r : reports) arr.push_back(nlohmann::json::parse(to_json(r)));
                    std::cout << arr.dump(2, ' ', true) << "\n";
                }
            } else {
                for (size_t i = 0; i < reports.size(); ++i) {
                    if (i) std::cout << "\n";
                    std::cout << singan::render_text(reports[i]);
                }
            }
            return 0;
        }
        if (*list_cmd) {
            for (const auto& e : singan::catalog())
                std::cout << e.key << "  " << e.title << "\n";
            return 0;
        }
        if (*runall_cmd) {
            std::string tag = only;
            if (tag.rfind("tag=", 0) == 0) tag = tag.substr(4);
            return singan::catalog_run_all(std::cout, tag) == 0 ? 0 : kExitFail;
        }
    } catch (const singan::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const singan::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const singan::UnsupportedMap& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const singan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGaveUp;
    }
    return 0;
}
