// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_EXPORT_HPP
#define FINGER_EXPORT_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "finger/config.hpp"
#include "finger/fingerprint.hpp"
#include "finger/lineshape.hpp"
#include "finger/match.hpp"

namespace finger {

/// Round to 6 significant digits so serialized numbers are bit-stable across
/// runs and platforms.
inline double round_sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

inline nlohmann::json config_metadata(const RunConfig& cfg) {
    nlohmann::json m;
    m["temperature_k"] = round_sig6(cfg.temperature_k);
    m["sigma_phonon_ev"] = round_sig6(cfg.sigma_phonon_ev);
    m["gamma_damping_inv_fs"] = round_sig6(cfg.gamma_damping_inv_fs);
    m["time_step_fs"] = round_sig6(cfg.time_step_fs);
    m["n_time_samples"] = cfg.n_time_samples;
    m["zpl_energy_ev"] = round_sig6(cfg.zpl_energy_ev);
    m["refractive_index"] = round_sig6(cfg.refractive_index);
    m["purcell_factor"] = round_sig6(cfg.purcell_factor);
    m["degeneracy_g"] = cfg.degeneracy_g;
    m["w_if"] = round_sig6(cfg.w_if);
    m["effective_mode_initial_mev"] = round_sig6(cfg.effective_mode_initial_mev);
    m["effective_mode_final_mev"] = round_sig6(cfg.effective_mode_final_mev);
    m["relaxation_energy_ev"] = round_sig6(cfg.relaxation_energy_ev);
    m["max_phonon_quanta"] = cfg.max_phonon_quanta;
    m["crystal_axis_angle_deg"] = round_sig6(cfg.crystal_axis_angle_deg);
    m["include_near_zero_modes"] = cfg.include_near_zero_modes;
    m["visibility_convention"] = "in-plane intensity fraction (|mux|^2+|muy|^2)/|mu|^2";
    m["angle_convention"] = "polarization angle folded to [0,30] deg from nearest crystal axis";
    m["delta_convention"] = "Gaussian realization of delta functions, width sigma_phonon";
    return m;
}

inline nlohmann::json fingerprint_to_json(const Fingerprint& fp, const RunConfig& cfg) {
    nlohmann::json j;
    j["defect_label"] = fp.defect_label;
    j["transition_order"] = fp.transition_order;
    j["stable_multiplicity"] = fp.stable_multiplicity;
    j["spin_transition"] = fp.spin_transition;
    j["zpl_nm"] = round_sig6(fp.zpl_nm);
    j["e0_ev"] = round_sig6(fp.e0_ev);
    j["delta_q"] = round_sig6(fp.delta_q);
    j["hr"] = round_sig6(fp.hr);
    j["dw"] = round_sig6(fp.dw);
    if (fp.excitation_angle_deg) j["excitation_angle_deg"] = round_sig6(*fp.excitation_angle_deg);
    else j["excitation_angle_deg"] = "out-of-plane";
    j["excitation_visibility"] = round_sig6(fp.excitation_visibility);
    if (fp.emission_angle_deg) j["emission_angle_deg"] = round_sig6(*fp.emission_angle_deg);
    else j["emission_angle_deg"] = "out-of-plane";
    j["emission_visibility"] = round_sig6(fp.emission_visibility);
    j["mu_sq_debye2"] = round_sig6(fp.mu_sq_debye2);
    j["gamma_r_per_s"] = round_sig6(fp.gamma_r);
    j["tau_r_ns"] = round_sig6(fp.tau_r_ns);
    j["gamma_nr_per_s"] = round_sig6(fp.gamma_nr);
    j["tau_nr_ns"] = round_sig6(fp.tau_nr_ns);
    j["eta_pct"] = round_sig6(fp.eta_pct);
    j["odmr_flag"] = fp.odmr_flag;
    j["purcell_applied"] = round_sig6(fp.purcell_applied);
    j["diagnostics"] = fp.diagnostics;
    j["metadata"] = config_metadata(cfg);
    return j;
}

inline Fingerprint fingerprint_from_json(const nlohmann::json& j) {
    Fingerprint fp;
    fp.defect_label = j.at("defect_label").get<std::string>();
    fp.transition_order = j.at("transition_order").get<long>();
    fp.stable_multiplicity = j.value("stable_multiplicity", "unspecified");
    fp.spin_transition = j.value("spin_transition", "");
    fp.zpl_nm = j.at("zpl_nm").get<double>();
    fp.e0_ev = j.at("e0_ev").get<double>();
    fp.delta_q = j.value("delta_q", 0.0);
    fp.hr = j.value("hr", 0.0);
    fp.dw = j.value("dw", 0.0);
    auto angle = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_string()) return std::nullopt;
        return j.at(key).get<double>();
    };
    fp.excitation_angle_deg = angle("excitation_angle_deg");
    fp.excitation_visibility = j.value("excitation_visibility", 0.0);
    fp.emission_angle_deg = angle("emission_angle_deg");
    fp.emission_visibility = j.value("emission_visibility", 0.0);
    fp.mu_sq_debye2 = j.value("mu_sq_debye2", 0.0);
    fp.gamma_r = j.value("gamma_r_per_s", 0.0);
    fp.tau_r_ns = j.value("tau_r_ns", 0.0);
    fp.gamma_nr = j.value("gamma_nr_per_s", 0.0);
    fp.tau_nr_ns = j.value("tau_nr_ns", 0.0);
    fp.eta_pct = j.value("eta_pct", 0.0);
    fp.odmr_flag = j.value("odmr_flag", "unknown");
    fp.purcell_applied = j.value("purcell_applied", 1.0);
    return fp;
}

inline ExperimentRecord experiment_from_json(const nlohmann::json& j) {
    ExperimentRecord rec;
    for (const auto& [key, v] : j.at("fields").items())
        rec.fields[key] = {v.at("value").get<double>(), v.at("uncertainty").get<double>()};
    rec.validate();
    return rec;
}

inline nlohmann::json match_results_to_json(const std::vector<MatchResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json j;
        j["candidate_label"] = r.candidate_label;
        j["rank"] = r.rank;
        j["score"] = round_sig6(r.score);
        nlohmann::json res;
        for (const auto& [k, v] : r.residuals) res[k] = round_sig6(v);
        j["residuals"] = res;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::ios_base::failure("write failed for '" + path + "'");
}

/// CSV columns: energy_eV, wavelength_nm, A, L; metadata header as '#' lines.
inline std::string spectrum_to_csv(const PLSpectrum& spec, const RunConfig& cfg) {
    std::string out;
    const auto meta = config_metadata(cfg);
    for (auto it = meta.begin(); it != meta.end(); ++it)
        out += "# " + it.key() + " = " + it.value().dump() + "\n";
    out += "# normalization = " + spec.normalization_mode + "\n";
    out += "energy_eV,wavelength_nm,A,L\n";
    char buf[160];
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const double e = spec.grid.energy(i);
        std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g,%.6g\n", e, ev_to_nm(e),
                      spec.a_values[i], spec.l_values[i]);
        out += buf;
    }
    return out;
}

/// Minimal standalone SVG line plot of L against wavelength.
inline std::string spectrum_to_svg(const PLSpectrum& spec) {
    const int width = 800, height = 500, margin = 60;
    double lmax = 0.0;
    for (double v : spec.l_values) lmax = std::max(lmax, v);
    if (lmax <= 0.0) lmax = 1.0;
    const double nm_lo = ev_to_nm(spec.grid.e_max());
    const double nm_hi = ev_to_nm(spec.grid.e_min());
    std::string svg;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\">\n",
                  width, height);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", margin,
                  height - margin, width - margin, height - margin);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", margin,
                  margin, margin, height - margin);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"14\">wavelength (nm): %.6g - %.6g</text>\n",
                  margin, height - margin / 3, nm_lo, nm_hi);
    svg += buf;
    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const double nm = ev_to_nm(spec.grid.energy(i));
        const double px = margin + (nm - nm_lo) / (nm_hi - nm_lo) * (width - 2.0 * margin);
        const double py =
            height - margin - spec.l_values[i] / lmax * (height - 2.0 * margin);
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px, py);
        svg += buf;
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

} // namespace finger

#endif
