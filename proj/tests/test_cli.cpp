#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wildred/report.hpp"

using namespace wildred;
using nlohmann::json;

namespace {

json a1_config(const std::vector<std::vector<std::string>>& points_coeffs) {
    json doc;
    doc["algebra"] = json{{"type", "A"}, {"rank", 1}};
    json points = json::array();
    for (std::size_t i = 0; i < points_coeffs.size(); ++i) {
        json coeffs = json::array();
        for (const auto& c : points_coeffs[i]) coeffs.push_back(json::array({c}));
        points.push_back(json{{"label", "p" + std::to_string(i)},
                              {"pole_order", points_coeffs[i].size()},
                              {"coefficients", coeffs}});
    }
    doc["points"] = points;
    doc["options"] = json{{"samples", 10}, {"seed", 5}, {"grade_bound", 2}};
    return doc;
}

}  // namespace

TEST_CASE("rational string round-trips") {
    CHECK(rat_to_string(rat_from_string("3/4", "x")) == "3/4");
    CHECK(rat_to_string(rat_from_string("-7", "x")) == "-7");
    CHECK(rat_from_string("2/4", "x") == Rat(1) / 2);
    CHECK_THROWS_AS(rat_from_string("1/0", "points[0]"), validation_error);
    CHECK_THROWS_AS(rat_from_string("", "x"), validation_error);
    CHECK_THROWS_AS(rat_from_string("a/b", "x"), validation_error);
    CHECK_THROWS_AS(rat_from_string("1/-2", "x"), validation_error);
}

TEST_CASE("config parsing and echo round-trip") {
    const auto doc = a1_config({{"1/2"}, {"1/3"}, {"1/5"}});
    const auto cfg = parse_config(doc);
    CHECK(cfg.wild.points.size() == 3);
    CHECK(cfg.options.samples == 10);
    const auto echoed = config_echo(cfg);
    const auto cfg2 = parse_config(echoed);
    CHECK(cfg2.wild.points.size() == cfg.wild.points.size());
    for (std::size_t i = 0; i < cfg.wild.points.size(); ++i) {
        CHECK(cfg2.wild.points[i].label == cfg.wild.points[i].label);
        CHECK(cfg2.wild.points[i].marked == cfg.wild.points[i].marked);
    }
    CHECK(config_echo(cfg2) == echoed);

    // Malformed rationals and duplicate labels are named in the diagnostics.
    auto bad = doc;
    bad["points"][0]["coefficients"][0][0] = "1/0";
    CHECK_THROWS_WITH_AS(parse_config(bad), doctest::Contains("points[0]"), validation_error);
    auto dup = doc;
    dup["points"][1]["label"] = "p0";
    CHECK_THROWS_AS(parse_config(dup), validation_error);
}

TEST_CASE("classify: flatness patterns and the empty configuration") {
    {
        // One pole of order 4 with regular coefficients: nu = 4, chi = -2.
        const auto doc = a1_config({{"1/2", "1/3", "1/5", "1/7"}});
        const auto report = run_command("classify", parse_config(doc), 1);
        CHECK(report["sections"]["classify"]["chi"] == -2);
        CHECK(report["sections"]["classify"]["points"][0]["fission"]["nu"] == 4);
        const auto flat = run_command("flatness", parse_config(doc), 1);
        CHECK(flat["sections"]["flatness"]["verdict"] == "holds");
        CHECK(flat["sections"]["flatness"]["chi"] == "-2");
    }
    {
        json doc;
        doc["algebra"] = json{{"type", "A"}, {"rank", 1}};
        doc["points"] = json::array();
        const auto report = run_command("classify", parse_config(doc), 1);
        CHECK(report["sections"]["classify"]["chi"] == 2);
        const auto flat = run_command("flatness", parse_config(doc), 1);
        CHECK(flat["sections"]["flatness"]["verdict"] == "fails");
    }
}

TEST_CASE("full reports: sections, determinism, and delegation") {
    // Schlesinger pattern: three simple poles with generic (nonresonant)
    // residues, so every Verma Gram block stays nondegenerate.
    const auto doc = a1_config({{"1/3"}, {"1/5"}, {"1/7"}});
    const auto cfg = parse_config(doc);
    const auto report = run_command("full", cfg, 2);
    const auto& sections = report["sections"];
    CHECK(sections["flatness"]["verdict"] == "holds");
    CHECK(sections["flatness"]["clause"] == "three points with nu >= 1");
    CHECK(sections["stability"]["certified"] == true);
    CHECK(sections["stability"]["oracles_agree"] == true);
    CHECK(sections["rank"]["max_rank"] == 3);
    CHECK(sections["unfold"]["bridge"]["residue_sums_ok"] == true);
    for (const auto& p : sections["verma"]["points"])
        for (const auto& b : p["blocks"]) CHECK(b["det_nonzero"] == true);
    CHECK(report["threads"] == 2);

    // Same config and seed produce byte-identical reports.
    const auto again = run_command("full", parse_config(doc), 2);
    CHECK(report.dump() == again.dump());

    // JMMS pattern: one order-2 pole and two simple poles.
    const auto jmms = a1_config({{"1/2", "1/3"}, {"1/5"}, {"1/7"}});
    const auto jr = run_command("flatness", parse_config(jmms), 1);
    CHECK(jr["sections"]["flatness"]["verdict"] == "holds");
    CHECK(jr["sections"]["flatness"]["clause"] == "a point with nu >= 2 and another with nu >= 1");

    // Unstable residues are reported with a witness.
    const auto unstable = a1_config({{"1/2"}, {"1/2"}, {"-1"}});
    const auto ur = run_command("stability", parse_config(unstable), 1);
    CHECK(ur["sections"]["stability"]["certified"] == false);
    CHECK(ur["sections"]["stability"].contains("witness"));

    // Unknown commands are rejected.
    CHECK_THROWS_AS(run_command("bogus", cfg, 1), validation_error);
}

TEST_CASE("unfold section respects explicit pole positions") {
    auto doc = a1_config({{"1/2", "1/3"}});
    doc["options"]["epsilons"] = json::array({"0", "1"});
    const auto report = run_command("unfold", parse_config(doc), 1);
    const auto& point = report["sections"]["unfold"]["points"][0];
    CHECK(point["epsilons"] == json::array({"0", "1"}));
    CHECK(point["residue_sum_matches"] == true);
    // Residues for A0 = (1/2)h-coords, A1 = (1/3): hL0 = A0 - A1, hL1 = A1.
    CHECK(point["residues"][0][0] == "1/6");
    CHECK(point["residues"][1][0] == "1/3");
}
