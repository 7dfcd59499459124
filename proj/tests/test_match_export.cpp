// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "finger/export.hpp"
#include "finger/match.hpp"

using namespace finger;

namespace {

Fingerprint make_fp(const std::string& label, double zpl_nm, double tau_r_ns,
                    std::optional<double> emission_angle = std::nullopt) {
    Fingerprint fp;
    fp.defect_label = label;
    fp.zpl_nm = zpl_nm;
    fp.e0_ev = nm_to_ev(zpl_nm);
    fp.tau_r_ns = tau_r_ns;
    fp.gamma_r = 1e9 / tau_r_ns;
    fp.emission_angle_deg = emission_angle;
    fp.hr = 1.0;
    fp.dw = std::exp(-1.0);
    fp.eta_pct = 100.0;
    return fp;
}

ExperimentRecord exp_zpl_tau(double zpl, double zpl_unc, double tau, double tau_unc) {
    ExperimentRecord rec;
    rec.fields["zpl_nm"] = {zpl, zpl_unc};
    rec.fields["tau_r_ns"] = {tau, tau_unc};
    return rec;
}

} // namespace

TEST_CASE("a candidate identical to the experiment scores zero and ranks first") {
    auto rec = exp_zpl_tau(573.0, 5.0, 16.94, 2.0);
    auto res = match_candidates(rec, {make_fp("A", 573.0, 16.94), make_fp("B", 751.0, 15.67)});
    REQUIRE(res.size() == 2);
    CHECK(res[0].candidate_label == "A");
    CHECK(res[0].rank == 1);
    CHECK(res[0].score == Catch::Approx(0.0).margin(1e-12));
    CHECK(res[1].rank == 2);
    CHECK(res[1].score > 0.0);
}

TEST_CASE("lifetimes compare on a log scale") {
    ExperimentRecord rec;
    rec.fields["tau_r_ns"] = {4.0, 2.0};
    auto res = match_candidates(rec, {make_fp("X", 573.0, 40.0)});
    // residual = (log10 40 - log10 4) / log10(6/4)
    const double expected = 1.0 / std::log10(1.5);
    CHECK(res[0].residuals.at("tau_r_ns") == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("angles compare on the folded 60-degree circle") {
    ExperimentRecord rec;
    rec.fields["emission_angle_deg"] = {29.0, 1.0};
    auto near = match_candidates(rec, {make_fp("N", 573.0, 10.0, 28.0)});
    CHECK(near[0].residuals.at("emission_angle_deg") == Catch::Approx(1.0));
    auto across = match_candidates(rec, {make_fp("F", 573.0, 10.0, 2.0)});
    // folded 2 stands for {2, 58}; nearest image of {29, 31} is 27 away
    CHECK(across[0].residuals.at("emission_angle_deg") == Catch::Approx(27.0));
}

TEST_CASE("out-of-plane candidates skip angle fields") {
    ExperimentRecord rec;
    rec.fields["emission_angle_deg"] = {10.0, 1.0};
    rec.fields["zpl_nm"] = {573.0, 5.0};
    auto res = match_candidates(rec, {make_fp("Z", 573.0, 10.0, std::nullopt)});
    CHECK(res[0].residuals.count("emission_angle_deg") == 0);
    CHECK(res[0].residuals.count("zpl_nm") == 1);

    ExperimentRecord only_angle;
    only_angle.fields["emission_angle_deg"] = {10.0, 1.0};
    CHECK_THROWS_AS(match_candidates(only_angle, {make_fp("Z", 573.0, 10.0, std::nullopt)}),
                    domain_error);
}

TEST_CASE("uniform weight rescaling leaves scores and ranks unchanged") {
    auto rec = exp_zpl_tau(573.0, 5.0, 10.0, 2.0);
    std::vector<Fingerprint> cands{make_fp("A", 570.0, 12.0), make_fp("B", 580.0, 9.0),
                                   make_fp("C", 560.0, 30.0)};
    auto r1 = match_candidates(rec, cands);
    auto r2 = match_candidates(rec, cands, {{"zpl_nm", 5.0}, {"tau_r_ns", 5.0}});
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].candidate_label == r2[i].candidate_label);
        CHECK(r1[i].rank == r2[i].rank);
        CHECK(r1[i].score == Catch::Approx(r2[i].score).epsilon(1e-12));
    }
}

TEST_CASE("ties break deterministically by label") {
    auto rec = exp_zpl_tau(573.0, 5.0, 10.0, 2.0);
    auto res = match_candidates(rec, {make_fp("beta", 573.0, 10.0), make_fp("alpha", 573.0, 10.0)});
    CHECK(res[0].candidate_label == "alpha");
    CHECK(res[1].candidate_label == "beta");
}

TEST_CASE("degenerate inputs are rejected") {
    auto rec = exp_zpl_tau(573.0, 5.0, 10.0, 2.0);
    CHECK_THROWS_AS(match_candidates(rec, {}), domain_error);
    ExperimentRecord bad;
    bad.fields["zpl_nm"] = {573.0, 0.0};
    CHECK_THROWS_AS(match_candidates(bad, {make_fp("A", 573.0, 10.0)}), validation_error);
    ExperimentRecord unshared;
    unshared.fields["no_such_field"] = {1.0, 1.0};
    CHECK_THROWS_AS(match_candidates(unshared, {make_fp("A", 573.0, 10.0)}), domain_error);
}

TEST_CASE("round_sig6 is idempotent and keeps six significant digits") {
    CHECK(round_sig6(1.2345678901) == 1.23457);
    CHECK(round_sig6(round_sig6(1.2345678901)) == round_sig6(1.2345678901));
    CHECK(round_sig6(0.0) == 0.0);
    CHECK(round_sig6(-5.9012345e7) == -5.90123e7);
}

TEST_CASE("fingerprint JSON round-trips, including the out-of-plane sentinel") {
    RunConfig cfg;
    auto fp = make_fp("C2C2", 573.0, 16.94, 12.14);
    fp.transition_order = 2;
    fp.stable_multiplicity = "triplet";
    fp.odmr_flag = "likely";
    fp.excitation_angle_deg = std::nullopt;
    fp.excitation_visibility = 0.0;
    fp.mu_sq_debye2 = 19.2;

    auto j = fingerprint_to_json(fp, cfg);
    CHECK(j.at("excitation_angle_deg") == "out-of-plane");
    auto fp2 = fingerprint_from_json(j);
    CHECK(fp2.defect_label == "C2C2");
    CHECK(fp2.transition_order == 2);
    CHECK_FALSE(fp2.excitation_angle_deg.has_value());
    REQUIRE(fp2.emission_angle_deg.has_value());
    CHECK(*fp2.emission_angle_deg == Catch::Approx(12.14));
    CHECK(fp2.tau_r_ns == Catch::Approx(16.94));
    CHECK(fp2.odmr_flag == "likely");
    // serialization is deterministic
    CHECK(fingerprint_to_json(fp, cfg).dump(2) == j.dump(2));
}

TEST_CASE("metadata names the conventions in force") {
    RunConfig cfg;
    auto meta = config_metadata(cfg);
    CHECK(meta.contains("visibility_convention"));
    CHECK(meta.contains("angle_convention"));
    CHECK(meta.contains("delta_convention"));
    CHECK(meta.at("temperature_k") == 300.0);
}

TEST_CASE("experiment JSON parsing validates uncertainties") {
    auto j = nlohmann::json::parse(R"({"fields":{"zpl_nm":{"value":573,"uncertainty":5}}})");
    auto rec = experiment_from_json(j);
    CHECK(rec.fields.at("zpl_nm").value == 573.0);
    auto bad = nlohmann::json::parse(R"({"fields":{"zpl_nm":{"value":573,"uncertainty":0}}})");
    CHECK_THROWS_AS(experiment_from_json(bad), validation_error);
}

TEST_CASE("match results serialize with ranks and rounded scores") {
    auto rec = exp_zpl_tau(573.0, 5.0, 10.0, 2.0);
    auto res = match_candidates(rec, {make_fp("A", 570.0, 12.0), make_fp("B", 580.0, 9.0)});
    auto j = match_results_to_json(res);
    REQUIRE(j.is_array());
    CHECK(j[0].at("rank") == 1);
    CHECK(j[1].at("rank") == 2);
    CHECK(j[0].at("score").get<double>() <= j[1].at("score").get<double>());
    CHECK(match_results_to_json(res).dump() == j.dump());
}

TEST_CASE("CSV export has the documented columns and a monotone energy axis") {
    EnergyGrid grid(1.8, 2.2, 101);
    PLSpectrum spec{grid,
                    std::vector<double>(grid.size(), 0.5),
                    std::vector<double>(grid.size(), 0.25),
                    2.0,
                    0.003,
                    1.0,
                    "peak",
                    1.0,
                    {}};
    RunConfig cfg;
    const auto csv = spectrum_to_csv(spec, cfg);
    CHECK(csv.find("energy_eV,wavelength_nm,A,L") != std::string::npos);
    CHECK(csv.find("# normalization = peak") != std::string::npos);

    // parse the data rows back and check ordering
    std::istringstream in(csv);
    std::string line;
    double prev_e = -1.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'e') continue;
        const double e = std::strtod(line.c_str(), nullptr);
        CHECK(e > prev_e);
        prev_e = e;
        ++rows;
    }
    CHECK(rows == grid.size());
}

TEST_CASE("SVG export is a well-formed polyline plot") {
    EnergyGrid grid(1.8, 2.2, 51);
    std::vector<double> l(grid.size(), 0.0);
    l[25] = 1.0;
    PLSpectrum spec{grid, std::vector<double>(grid.size(), 0.0), l, 2.0, 0.003, 1.0,
                    "peak", 1.0, {}};
    const auto svg = spectrum_to_svg(spec);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}
