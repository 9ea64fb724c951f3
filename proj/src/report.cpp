#include "wildred/report.hpp"

#include <set>

#include "wildred/normalform.hpp"
#include "wildred/stability.hpp"
#include "wildred/unfolding.hpp"
#include "wildred/verma.hpp"

namespace wildred {

namespace {

using nlohmann::json;

bool integer_like(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

std::vector<std::string> vec_to_strings(const Vec& v) {
    std::vector<std::string> out;
    for (const auto& r : v) out.push_back(rat_to_string(r));
    return out;
}

Vec strings_to_vec(const json& arr, std::size_t expected, const std::string& field) {
    require(arr.is_array() && arr.size() == expected,
            field + " must be an array of " + std::to_string(expected) + " rationals");
    Vec v;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        require(arr[i].is_string(), field + "[" + std::to_string(i) + "] must be a string");
        v.push_back(rat_from_string(arr[i].get<std::string>(),
                                    field + "[" + std::to_string(i) + "]"));
    }
    return v;
}

json fission_json(const LieAlgebra& g, const FissionData& f) {
    json j;
    j["nu"] = f.nu;
    j["torus_indices"] = f.torus_indices;
    std::vector<std::size_t> dims;
    for (const auto& l : f.levis) dims.push_back(l.basis.size());
    j["levi_dimensions"] = dims;
    return j;
}

json resonance_json(const ResonanceReport& r) {
    json j;
    j["nonresonant"] = r.nonresonant;
    j["resonance_degrees"] = r.resonance_degrees;
    json offenders = json::array();
    for (const auto& [root, kappa] : r.offenders)
        offenders.push_back(json{{"root_index", root}, {"kappa", kappa}});
    j["offenders"] = offenders;
    return j;
}

json classify_section(const LieAlgebra& g, const ParsedConfig& cfg) {
    json j;
    json points = json::array();
    std::size_t nu_sum = 0;
    for (const auto& p : cfg.wild.points) {
        const auto f = fission(g, p.marked);
        nu_sum += f.nu;
        json pj;
        pj["label"] = p.label;
        pj["pole_order"] = p.marked.s;
        pj["fission"] = fission_json(g, f);
        pj["resonance"] = resonance_json(resonance_report(g, p.marked));
        points.push_back(pj);
    }
    j["points"] = points;
    j["chi"] = 2 - static_cast<long>(nu_sum);
    return j;
}

json flatness_section(const LieAlgebra& g, const ParsedConfig& cfg) {
    const auto v = flatness_verdict(g, cfg.wild);
    json j;
    j["nus"] = v.nus;
    j["chi"] = rat_to_string(v.chi);
    j["clause"] = v.clause;
    switch (v.verdict) {
        case FlatnessKind::holds: j["verdict"] = "holds"; break;
        case FlatnessKind::fails: j["verdict"] = "fails"; break;
        case FlatnessKind::unsupported: j["verdict"] = "unsupported"; break;
    }
    return j;
}

json stability_witness_json(const StabilityWitness& w) {
    json j;
    j["omitted_simple"] = w.omitted_simple;
    j["weyl_tuple"] = w.weyl_tuple;
    j["residue_sum"] = vec_to_strings(w.residue_sum);
    return j;
}

json stability_section(const LieAlgebra& g, const ParsedConfig& cfg) {
    const auto by_characters = stability_check(g, cfg.wild);
    const auto by_avoidance = avoidance_check(g, cfg.wild);
    ensure_invariant(by_characters.stable_certified == by_avoidance.stable_certified,
                     "stability oracles disagree");
    json j;
    j["certified"] = by_characters.stable_certified;
    j["subsets_enumerated"] = by_characters.subsets_enumerated;
    j["tuples_enumerated"] = by_characters.tuples_enumerated;
    if (by_characters.witness_failure)
        j["witness"] = stability_witness_json(*by_characters.witness_failure);
    if (by_avoidance.witness_failure)
        j["avoidance_witness"] = stability_witness_json(*by_avoidance.witness_failure);
    j["oracles_agree"] = true;
    return j;
}

json verma_section(const LieAlgebra& g, const ParsedConfig& cfg) {
    json points = json::array();
    for (const auto& p : cfg.wild.points) {
        const auto filt = build_filtration(g, fission(g, p.marked));
        const auto slice = shapovalov_gram(g, filt, p.marked, cfg.options.grade_bound);
        const auto verdict = simplicity_test(g, slice);
        json pj;
        pj["label"] = p.label;
        pj["balanced"] = filt.balanced_flag;
        pj["generators"] = slice.generators.size();
        pj["grade_bound"] = slice.grade_bound;
        json blocks = json::array();
        for (const auto& b : slice.blocks)
            blocks.push_back(json{{"grade", b.grade},
                                  {"dimension", b.monomials.size()},
                                  {"det_nonzero", det(b.gram) != 0}});
        pj["blocks"] = blocks;
        json sj;
        sj["simple_up_to_grade"] = verdict.simple_up_to_grade;
        sj["integral_criterion"] = verdict.integral_criterion;
        sj["positive_criterion"] = verdict.positive_criterion;
        if (verdict.first_degenerate_grade)
            sj["first_degenerate_grade"] = *verdict.first_degenerate_grade;
        json flagged = json::array();
        for (const auto& [root, value] : verdict.flagged)
            flagged.push_back(json{{"root_index", root}, {"value", value}});
        sj["flagged"] = flagged;
        pj["simplicity"] = sj;
        points.push_back(pj);
    }
    return json{{"points", points}};
}

json unfold_section(const LieAlgebra& g, const ParsedConfig& cfg) {
    json points = json::array();
    bool all_torus = !cfg.wild.points.empty();
    for (const auto& p : cfg.wild.points) {
        UnfoldingConfig ucfg;
        if (cfg.options.epsilons && cfg.options.epsilons->size() == p.marked.s) {
            ucfg.epsilons = *cfg.options.epsilons;
            ucfg.source = p.marked;
        } else {
            ucfg = make_unfolding_config(g, p.marked);
        }
        const auto res = unfold_residues(g, ucfg);
        json pj;
        pj["label"] = p.label;
        pj["epsilons"] = vec_to_strings(ucfg.epsilons);
        json residues = json::array();
        for (const auto& h : res.residues) residues.push_back(vec_to_strings(g.to_cartan_vector(h)));
        pj["residues"] = residues;
        AlgElement sum = g.zero();
        for (const auto& h : res.residues)
            for (std::size_t k = 0; k < g.dim(); ++k) sum[k] += h[k];
        pj["residue_sum_matches"] = sum == p.marked.coeffs[0];
        points.push_back(pj);
        const auto f = fission(g, p.marked);
        if (f.torus_indices.empty() || f.torus_indices.back() != p.marked.s) all_torus = false;
    }
    json j;
    j["points"] = points;
    if (cfg.wild.points.size() == 3 && all_torus) {
        const auto cert =
            unfolded_flatness_bridge(g, cfg.wild, cfg.options.samples, cfg.options.seed);
        json bj;
        bj["residue_sums_ok"] = cert.residue_sums_ok;
        std::vector<std::string> labels;
        for (const auto& t : cert.tame.points) labels.push_back(t.label);
        bj["tame_points"] = labels;
        bj["rank"] = json{{"full", cert.rank_evidence.full_rank},
                          {"min", cert.rank_evidence.min_rank},
                          {"max", cert.rank_evidence.max_rank}};
        j["bridge"] = bj;
    } else {
        j["bridge"] = nullptr;
    }
    return j;
}

json rank_section(const LieAlgebra& g, const ParsedConfig& cfg) {
    const auto r = moment_rank(g, cfg.wild, cfg.options.samples, cfg.options.seed);
    json j;
    j["full_rank"] = r.full_rank;
    j["min_rank"] = r.min_rank;
    j["max_rank"] = r.max_rank;
    j["per_sample"] = r.per_sample;
    return j;
}

}  // namespace

std::string rat_to_string(const Rat& r) { return r.str(); }

Rat rat_from_string(const std::string& text, const std::string& field) {
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    require(integer_like(num), field + ": malformed rational \"" + text + "\"");
    if (slash == std::string::npos) return Rat(num);
    const std::string den = text.substr(slash + 1);
    require(integer_like(den) && den[0] != '-',
            field + ": malformed rational \"" + text + "\"");
    const Rat d(den);
    require(d != 0, field + ": zero denominator in \"" + text + "\"");
    return Rat(num) / d;
}

ParsedConfig parse_config(const nlohmann::json& doc) {
    require(doc.is_object(), "config document must be an object");
    require(doc.contains("algebra") && doc["algebra"].is_object(),
            "config needs an \"algebra\" object");
    const auto& alg = doc["algebra"];
    require(alg.contains("type") && alg["type"].is_string(), "algebra.type must be a string");
    require(alg.contains("rank") && alg["rank"].is_number_integer() &&
                alg["rank"].get<long long>() >= 0,
            "algebra.rank must be a nonnegative integer");

    ParsedConfig cfg;
    cfg.algebra_type = alg["type"].get<std::string>();
    cfg.rank = alg["rank"].get<std::size_t>();
    const LieAlgebra g(RootDatum::build(cfg.algebra_type, cfg.rank));

    cfg.wild.semisimple_flag = doc.value("semisimple", true);
    require(doc.contains("points") && doc["points"].is_array(),
            "config needs a \"points\" array");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < doc["points"].size(); ++i) {
        const auto& pj = doc["points"][i];
        const std::string where = "points[" + std::to_string(i) + "]";
        require(pj.is_object(), where + " must be an object");
        require(pj.contains("label") && pj["label"].is_string(),
                where + ".label must be a string");
        require(pj.contains("pole_order") && pj["pole_order"].is_number_integer() &&
                    pj["pole_order"].get<long long>() >= 1,
                where + ".pole_order must be a positive integer");
        WildPoint p;
        p.label = pj["label"].get<std::string>();
        require(labels.insert(p.label).second, where + ".label duplicates " + p.label);
        const std::size_t s = pj["pole_order"].get<std::size_t>();
        require(pj.contains("coefficients") && pj["coefficients"].is_array() &&
                    pj["coefficients"].size() == s,
                where + ".coefficients must list one Cartan vector per pole order");
        p.marked = pp_zero(g, s);
        for (std::size_t k = 0; k < s; ++k)
            p.marked.coeffs[k] = g.from_cartan_vector(strings_to_vec(
                pj["coefficients"][k], cfg.rank,
                where + ".coefficients[" + std::to_string(k) + "]"));
        cfg.wild.points.push_back(p);
    }

    if (doc.contains("options")) {
        const auto& opt = doc["options"];
        require(opt.is_object(), "options must be an object");
        cfg.options.grade_bound = opt.value("grade_bound", cfg.options.grade_bound);
        cfg.options.samples = opt.value("samples", cfg.options.samples);
        cfg.options.seed = opt.value("seed", cfg.options.seed);
        if (opt.contains("epsilons")) {
            std::vector<Rat> eps;
            for (std::size_t i = 0; i < opt["epsilons"].size(); ++i)
                eps.push_back(rat_from_string(opt["epsilons"][i].get<std::string>(),
                                              "options.epsilons[" + std::to_string(i) + "]"));
            cfg.options.epsilons = eps;
        }
    }
    validate_config(g, cfg.wild);
    return cfg;
}

nlohmann::json config_echo(const ParsedConfig& cfg) {
    const LieAlgebra g(RootDatum::build(cfg.algebra_type, cfg.rank));
    json doc;
    doc["algebra"] = json{{"type", cfg.algebra_type}, {"rank", cfg.rank}};
    doc["semisimple"] = cfg.wild.semisimple_flag;
    json points = json::array();
    for (const auto& p : cfg.wild.points) {
        json pj;
        pj["label"] = p.label;
        pj["pole_order"] = p.marked.s;
        json coeffs = json::array();
        for (const auto& c : p.marked.coeffs) coeffs.push_back(vec_to_strings(g.to_cartan_vector(c)));
        pj["coefficients"] = coeffs;
        points.push_back(pj);
    }
    doc["points"] = points;
    json opt;
    opt["grade_bound"] = cfg.options.grade_bound;
    opt["samples"] = cfg.options.samples;
    opt["seed"] = cfg.options.seed;
    if (cfg.options.epsilons) {
        std::vector<std::string> eps;
        for (const auto& e : *cfg.options.epsilons) eps.push_back(rat_to_string(e));
        opt["epsilons"] = eps;
    }
    doc["options"] = opt;
    return doc;
}

nlohmann::json run_command(const std::string& command, const ParsedConfig& cfg,
                           std::size_t threads) {
    static const std::set<std::string> known = {"classify", "flatness", "stability", "verma",
                                                "unfold",   "rank",     "full"};
    require(known.count(command) == 1, "unknown command: " + command);
    const LieAlgebra g(RootDatum::build(cfg.algebra_type, cfg.rank));

    json report;
    report["tool"] = kToolVersion;
    report["command"] = command;
    report["seed"] = cfg.options.seed;
    report["samples"] = cfg.options.samples;
    report["grade_bound"] = cfg.options.grade_bound;
    report["threads"] = threads;
    report["config"] = config_echo(cfg);

    json sections;
    if (command == "classify" || command == "full") sections["classify"] = classify_section(g, cfg);
    if (command == "flatness" || command == "full") sections["flatness"] = flatness_section(g, cfg);
    if (command == "stability" || command == "full")
        sections["stability"] = stability_section(g, cfg);
    if (command == "verma" || command == "full") sections["verma"] = verma_section(g, cfg);
    if (command == "unfold" || command == "full") sections["unfold"] = unfold_section(g, cfg);
    if (command == "rank" || command == "full") sections["rank"] = rank_section(g, cfg);
    report["sections"] = sections;
    return report;
}

}  // namespace wildred
