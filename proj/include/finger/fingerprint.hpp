// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_FINGERPRINT_HPP
#define FINGER_FINGERPRINT_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "finger/config.hpp"
#include "finger/dipole_record.hpp"
#include "finger/geometry.hpp"
#include "finger/lineshape.hpp"
#include "finger/phonons.hpp"
#include "finger/photophysics.hpp"
#include "finger/vibronic.hpp"

namespace finger {

/// One row of the full optical fingerprint of a defect transition.
struct Fingerprint {
    std::string defect_label;
    long transition_order = 1;
    std::string stable_multiplicity = "unspecified";
    std::string spin_transition; // e.g. "down-down"
    double zpl_nm = 0.0;
    double e0_ev = 0.0;
    double delta_q = 0.0; // amu^{1/2} A
    double hr = 0.0;
    double dw = 0.0;
    std::optional<double> excitation_angle_deg;
    double excitation_visibility = 0.0;
    std::optional<double> emission_angle_deg;
    double emission_visibility = 0.0;
    double mu_sq_debye2 = 0.0;
    double gamma_r = 0.0;
    double tau_r_ns = 0.0;
    double gamma_nr = 0.0;
    double tau_nr_ns = 0.0;
    double eta_pct = 0.0;
    std::string odmr_flag = "unknown"; // likely | unlikely | unknown
    double purcell_applied = 1.0;
    std::vector<std::string> diagnostics;
};

/// Cross-checks between independently derived fields; run at assembly time.
inline void check_consistency(const Fingerprint& fp) {
    if (std::abs(fp.zpl_nm - ev_to_nm(fp.e0_ev)) > 1.0)
        throw consistency_error("fingerprint: zpl_nm disagrees with E0 by more than 1 nm");
    if (std::abs(fp.dw - std::exp(-fp.hr)) > 0.005)
        throw consistency_error("fingerprint: DW is not exp(-HR) within 0.005");
    if (fp.gamma_r + fp.gamma_nr > 0.0) {
        const double eta = 100.0 * fp.gamma_r / (fp.gamma_r + fp.gamma_nr);
        if (std::abs(eta - fp.eta_pct) > 0.05)
            throw consistency_error("fingerprint: eta inconsistent with rates beyond 0.05 pp");
    }
    if (fp.gamma_r > 0.0 && std::abs(fp.tau_r_ns * fp.gamma_r - 1e9) > 1.0)
        throw consistency_error("fingerprint: tau_R * Gamma_R != 1e9");
}

// Optional side input: one "multiplicity total_energy_eV" line per candidate
// spin state of the ground configuration.
inline std::vector<SpinConfiguration> parse_spin_configs(std::istream& in) {
    detail::LineReader rd(in);
    std::vector<SpinConfiguration> out;
    std::string line;
    while (rd.next_content(line)) {
        auto tok = detail::tokenize(line);
        if (tok.size() != 2)
            throw format_error("expected 'multiplicity total_energy_eV'", rd.lineno());
        Multiplicity m;
        if (tok[0] == "singlet") m = Multiplicity::singlet;
        else if (tok[0] == "doublet") m = Multiplicity::doublet;
        else if (tok[0] == "triplet") m = Multiplicity::triplet;
        else throw format_error("unknown multiplicity '" + tok[0] + "'", rd.lineno());
        out.push_back({m, detail::parse_double(tok[1], rd.lineno())});
    }
    return out;
}

struct PipelineInputs {
    Geometry ground;
    Geometry excited;
    PhononModeSet modes;
    DipoleRecord dipole_excitation;
    DipoleRecord dipole_emission;
    std::vector<SpinConfiguration> spin_configs; // may be empty
    std::string defect_label = "defect";
    long transition_order = 1;
};

struct PipelineResult {
    Fingerprint fingerprint;
    VibronicSummary vibronic;
    PLSpectrum pl;
};

/// Spacing rule for the time grid: the Nyquist energy pi hbar / dt must exceed
/// four times the highest phonon energy.
inline double auto_time_step(const PhononModeSet& modes) {
    double e_max = 0.0;
    for (const auto& m : modes.modes) e_max = std::max(e_max, m.energy_mev * 1e-3);
    if (e_max <= 0.0) e_max = 0.2;
    return M_PI * constants::hbar_ev_fs / (4.0 * e_max);
}

/// Full pipeline for one defect transition. Stage names are prefixed onto any
/// error so the CLI can report where a run failed.
inline PipelineResult run_fingerprint(const PipelineInputs& in, const RunConfig& cfg) {
    // Prefix the failing stage onto the message, keeping the exception type so
    // callers can still map it to an exit code.
    auto stage = [](const char* name, auto&& fn) {
        auto tag = [name](const char* what) {
            return std::string("[") + name + "] " + what;
        };
        try {
            return fn();
        } catch (const convergence_error& e) {
            throw convergence_error(tag(e.what()));
        } catch (const consistency_error& e) {
            throw consistency_error(tag(e.what()));
        } catch (const validation_error& e) {
            throw validation_error(tag(e.what()));
        } catch (const domain_error& e) {
            throw domain_error(tag(e.what()));
        } catch (const std::exception& e) {
            throw std::runtime_error(tag(e.what()));
        }
    };

    if (cfg.zpl_energy_ev <= 0.0)
        throw validation_error("[config] zpl_energy must be set for the fingerprint pipeline");

    double mode_max_mev = 0.0;
    for (const auto& m : in.modes.modes) mode_max_mev = std::max(mode_max_mev, m.energy_mev);

    const EnergyGrid phonon_grid(0.0,
                                 std::max(0.25, 1.5 * mode_max_mev * 1e-3 +
                                                    10.0 * cfg.sigma_phonon_ev),
                                 2048);
    const VibronicSummary vib = stage("vibronic", [&] {
        return vibronic_summary(in.ground, in.excited, in.modes, cfg.sigma_phonon_ev,
                                phonon_grid, cfg.include_near_zero_modes);
    });

    const double dt = cfg.time_step_fs > 0.0 ? cfg.time_step_fs : auto_time_step(in.modes);
    const EnergyGrid emission_grid(cfg.zpl_energy_ev - 1.0, cfg.zpl_energy_ev + 0.25, 4001);
    PLSpectrum pl = stage("lineshape", [&] {
        const auto s_t = time_spectral_function(vib.spectral_function, dt, cfg.n_time_samples,
                                                cfg.sigma_phonon_ev);
        const auto g = generating_function(s_t);
        auto a = optical_spectral_function(g, cfg.zpl_energy_ev, cfg.gamma_damping_inv_fs,
                                           emission_grid);
        return pl_intensity(std::move(a), PLNormalization::peak);
    });

    const DipoleMoment mu_exc =
        stage("dipole", [&] { return transition_dipole(in.dipole_excitation); });
    const DipoleMoment mu_emi =
        stage("dipole", [&] { return transition_dipole(in.dipole_emission); });

    const double gamma_r = stage("rates", [&] {
        return radiative_rate(cfg.zpl_energy_ev, mu_emi.mu_sq_debye2, cfg.refractive_index);
    });
    const double gamma_nr = stage("rates", [&] {
        return nonradiative_rate(cfg, delta_q(in.ground, in.excited), cfg.zpl_energy_ev);
    });
    const RateReport rates =
        stage("rates", [&] { return rate_report(gamma_r, gamma_nr, cfg.purcell_factor); });

    Fingerprint fp;
    fp.defect_label = in.defect_label;
    fp.transition_order = in.transition_order;
    if (!in.spin_configs.empty()) {
        const auto sel = stage("spin", [&] {
            return select_stable_configuration(in.spin_configs);
        });
        fp.stable_multiplicity = to_string(sel.chosen.multiplicity);
        fp.odmr_flag = sel.odmr_likely ? "likely" : "unlikely";
    }
    fp.spin_transition = to_string(in.dipole_excitation.spin) + "-" +
                         to_string(in.dipole_emission.spin);
    fp.e0_ev = cfg.zpl_energy_ev;
    fp.zpl_nm = ev_to_nm(fp.e0_ev);
    fp.delta_q = vib.delta_q;
    fp.hr = vib.total_hr;
    fp.dw = vib.debye_waller;
    fp.excitation_angle_deg = polarization_angle(mu_exc, cfg.crystal_axis_angle_deg);
    fp.excitation_visibility = mu_exc.in_plane_visibility;
    fp.emission_angle_deg = polarization_angle(mu_emi, cfg.crystal_axis_angle_deg);
    fp.emission_visibility = mu_emi.in_plane_visibility;
    fp.mu_sq_debye2 = mu_emi.mu_sq_debye2;
    fp.gamma_r = rates.gamma_r;
    fp.tau_r_ns = rates.tau_r_ns;
    fp.gamma_nr = rates.gamma_nr;
    fp.tau_nr_ns = rates.tau_nr_ns;
    fp.eta_pct = 100.0 * rates.eta;
    fp.purcell_applied = rates.purcell_applied;
    fp.diagnostics = pl.diagnostics;
    if (vib.skipped_hr > 0.0)
        fp.diagnostics.push_back("excluded near-zero modes carry HR " +
                                 std::to_string(vib.skipped_hr));

    stage("consistency", [&] {
        check_consistency(fp);
        return 0;
    });
    return PipelineResult{fp, vib, std::move(pl)};
}

} // namespace finger

#endif
