#include "singan/analyze.hpp"

namespace singan {

AnalysisReport analyze_map(const MapInstance& m_in, const AnalyzeConfig& cfg,
                           const AnalyzeSpec& spec) {
    MapInstance m = m_in;
    ensure_backward(m);

    AnalysisReport rep;
    rep.name = m.name;
    rep.scalar = m.is_scalar();
    rep.config = cfg;

    ClassifyOptions opt = spec.classify;
    opt.horizon = cfg.horizon;
    opt.truncation = cfg.truncation;

    if (m.is_scalar()) {
        rep.singular_values = find_singular_values(m, &rep.warnings);
        if (!opt.near_values && !opt.near_values_at) {
            // freeze the finite singular set so every classification sees
            // the same flagged bases without re-running the finder
            std::vector<Rational> fin;
            for (const auto& v : rep.singular_values)
                if (!v.at_infinity) fin.push_back(v.value);
            opt.near_values = fin;
        }
    } else if (spec.probes.empty()) {
        rep.warnings.push_back("pair map without probes: no orbits classified");
    }

    for (const auto& v : rep.singular_values) {
        ClassifiedSingularity cs;
        cs.value = v.str();
        cs.report = classify_singularity(m, v, opt);
        rep.singularities.push_back(std::move(cs));
    }

    if (m.is_scalar() && rep.singular_values.empty() && spec.probes.empty()) {
        rep.warnings.push_back("no enterable singular values; anticonfined probe at infinity");
        ProbeSpec p;
        p.label = "(x0, ε^{-1})";
        p.a = seed_tracker();
        p.b = seed_eps(-1);
        ClassifiedSingularity cs;
        cs.value = p.label;
        cs.probe = true;
        cs.report = probe_anticonfined(m, p, opt);
        rep.singularities.push_back(std::move(cs));
    }

    for (const auto& p : spec.probes) {
        ClassifiedSingularity cs;
        cs.value = p.label;
        cs.probe = true;
        cs.report = probe_anticonfined(m, p, opt);
        rep.singularities.push_back(std::move(cs));
    }

    if (spec.degrees) {
        std::vector<uint64_t> seeds;
        for (int i = 0; i < cfg.seeds; ++i)
            seeds.push_back(cfg.seed + 1 + static_cast<uint64_t>(i));
        DegreeSequence d = degree_sequence(m, cfg.steps, seeds);
        rep.degrees = d.degrees;
        for (auto& w : d.warnings) rep.warnings.push_back(std::move(w));
        EntropyEstimate est = entropy_from_degrees(d, opt.root_tol);
        for (const auto& w : est.warnings) rep.warnings.push_back(w);
        rep.entropy = std::move(est);
    }

    std::vector<SingularityReport> all;
    all.reserve(rep.singularities.size());
    for (const auto& s : rep.singularities) all.push_back(s.report);
    rep.verdict = verdict(all, rep.entropy);
    for (const auto& w : rep.verdict.warnings) rep.warnings.push_back(w);
    return rep;
}

}  // namespace singan
