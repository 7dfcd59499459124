// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_CONFIG_HPP
#define FINGER_CONFIG_HPP

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "finger/parse_util.hpp"

namespace finger {

/// Run parameters, "key = value" text with '#' comments. Every field has a
/// documented default; zero means "unset" for the fields that are required
/// only by specific pipeline stages (zpl_energy, W_if, effective modes).
struct RunConfig {
    double temperature_k = 300.0;
    double sigma_phonon_ev = 0.005;
    double gamma_damping_inv_fs = 0.01; // Lorentzian ZPL width, always echoed in output metadata
    double time_step_fs = 0.0;          // 0 = choose from Nyquist rule at run time
    std::size_t n_time_samples = 4096;  // power of two
    double zpl_energy_ev = 0.0;
    double refractive_index = 1.0;
    double purcell_factor = 1.0;
    long degeneracy_g = 1;
    double w_if = 0.0; // eV / (amu^{1/2} A)
    double effective_mode_initial_mev = 0.0;
    double effective_mode_final_mev = 0.0;
    double relaxation_energy_ev = 0.0; // optional fallback for effective modes
    long max_phonon_quanta = 40;
    double crystal_axis_angle_deg = 0.0;
    bool include_near_zero_modes = false;

    std::vector<std::string> warnings; // unknown keys, non-fatal

    void validate() const {
        if (temperature_k < 0.0) throw validation_error("config: temperature must be >= 0");
        if (!(sigma_phonon_ev > 0.0)) throw validation_error("config: sigma_phonon must be > 0");
        if (n_time_samples < 2 || (n_time_samples & (n_time_samples - 1)) != 0)
            throw validation_error("config: n_time_samples must be a power of two");
        if (max_phonon_quanta < 1) throw validation_error("config: max_phonon_quanta must be >= 1");
        if (!(purcell_factor > 0.0)) throw validation_error("config: purcell_factor must be > 0");
    }
};

inline RunConfig parse_config(std::istream& in) {
    detail::LineReader rd(in);
    RunConfig cfg;
    std::string line;
    while (rd.next_content(line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw format_error("expected 'key = value'", rd.lineno());
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) throw format_error("expected 'key = value'", rd.lineno());
        auto num = [&] { return detail::parse_double(val, rd.lineno()); };
        auto check = [&](bool ok, const char* what) {
            if (!ok)
                throw format_error(std::string("invalid value for key '") + key + "': " + what,
                                   rd.lineno());
        };
        if (key == "temperature") {
            cfg.temperature_k = num();
            check(cfg.temperature_k >= 0.0, "must be >= 0");
        } else if (key == "sigma_phonon") {
            cfg.sigma_phonon_ev = num();
            check(cfg.sigma_phonon_ev > 0.0, "must be > 0");
        } else if (key == "gamma_damping") {
            cfg.gamma_damping_inv_fs = num();
            check(cfg.gamma_damping_inv_fs > 0.0, "must be > 0");
        } else if (key == "time_step") {
            cfg.time_step_fs = num();
            check(cfg.time_step_fs >= 0.0, "must be >= 0");
        } else if (key == "n_time_samples") {
            const long n = detail::parse_long(val, rd.lineno());
            check(n >= 2 && (n & (n - 1)) == 0, "must be a power of two");
            cfg.n_time_samples = static_cast<std::size_t>(n);
        } else if (key == "zpl_energy") {
            cfg.zpl_energy_ev = num();
            check(cfg.zpl_energy_ev > 0.0, "must be > 0");
        } else if (key == "refractive_index") {
            cfg.refractive_index = num();
            check(cfg.refractive_index > 0.0, "must be > 0");
        } else if (key == "purcell_factor") {
            cfg.purcell_factor = num();
            check(cfg.purcell_factor > 0.0, "must be > 0");
        } else if (key == "degeneracy_g") {
            cfg.degeneracy_g = detail::parse_long(val, rd.lineno());
            check(cfg.degeneracy_g >= 1, "must be >= 1");
        } else if (key == "W_if") {
            cfg.w_if = num();
        } else if (key == "effective_mode_initial") {
            cfg.effective_mode_initial_mev = num();
            check(cfg.effective_mode_initial_mev >= 0.0, "must be >= 0");
        } else if (key == "effective_mode_final") {
            cfg.effective_mode_final_mev = num();
            check(cfg.effective_mode_final_mev >= 0.0, "must be >= 0");
        } else if (key == "relaxation_energy") {
            cfg.relaxation_energy_ev = num();
            check(cfg.relaxation_energy_ev >= 0.0, "must be >= 0");
        } else if (key == "max_phonon_quanta") {
            cfg.max_phonon_quanta = detail::parse_long(val, rd.lineno());
            check(cfg.max_phonon_quanta >= 1, "must be >= 1");
        } else if (key == "crystal_axis_angle") {
            cfg.crystal_axis_angle_deg = num();
        } else if (key == "include_near_zero_modes") {
            check(val == "true" || val == "false", "must be true or false");
            cfg.include_near_zero_modes = (val == "true");
        } else {
            cfg.warnings.push_back("unknown config key '" + key + "' (line " +
                                   std::to_string(rd.lineno()) + ")");
        }
    }
    cfg.validate();
    return cfg;
}

inline void write_config(std::ostream& out, const RunConfig& cfg) {
    out.precision(12);
    out << "temperature = " << cfg.temperature_k << "\n"
        << "sigma_phonon = " << cfg.sigma_phonon_ev << "\n"
        << "gamma_damping = " << cfg.gamma_damping_inv_fs << "\n"
        << "time_step = " << cfg.time_step_fs << "\n"
        << "n_time_samples = " << cfg.n_time_samples << "\n";
    if (cfg.zpl_energy_ev > 0.0) out << "zpl_energy = " << cfg.zpl_energy_ev << "\n";
    out << "refractive_index = " << cfg.refractive_index << "\n"
        << "purcell_factor = " << cfg.purcell_factor << "\n"
        << "degeneracy_g = " << cfg.degeneracy_g << "\n"
        << "W_if = " << cfg.w_if << "\n"
        << "effective_mode_initial = " << cfg.effective_mode_initial_mev << "\n"
        << "effective_mode_final = " << cfg.effective_mode_final_mev << "\n"
        << "relaxation_energy = " << cfg.relaxation_energy_ev << "\n"
        << "max_phonon_quanta = " << cfg.max_phonon_quanta << "\n"
        << "crystal_axis_angle = " << cfg.crystal_axis_angle_deg << "\n"
        << "include_near_zero_modes = " << (cfg.include_near_zero_modes ? "true" : "false")
        << "\n";
}

} // namespace finger

#endif
