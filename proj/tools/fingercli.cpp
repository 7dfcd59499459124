// SPDX-License-Identifier: Apache-2.0
//
// fingercli: command-line driver for the defect optical-fingerprint pipeline.
// Exit codes: 0 success, 2 input/format error, 3 numerical non-convergence,
// 4 internal-consistency failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "finger/finger.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int exit_input_error = 2;
constexpr int exit_nonconvergence = 3;
constexpr int exit_inconsistency = 4;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw finger::format_error("cannot open input file '" + path + "'");
    return in;
}

finger::RunConfig load_config(const std::string& path) {
    if (path.empty()) return finger::RunConfig{};
    auto in = open_input(path);
    auto cfg = finger::parse_config(in);
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
    return cfg;
}

struct InputPaths {
    std::string config, ground, excited, phonons, dipole_excitation, dipole_emission,
        spin_configs;
    std::string label = "defect";
    long transition_order = 1;
};

void add_pipeline_options(CLI::App* cmd, InputPaths& p, bool need_dipoles) {
    cmd->add_option("--config", p.config, "run configuration file");
    cmd->add_option("--ground", p.ground, "ground-state geometry")->required();
    cmd->add_option("--excited", p.excited, "excited-state geometry")->required();
    cmd->add_option("--phonons", p.phonons, "phonon mode file")->required();
    auto* de = cmd->add_option("--dipole-excitation", p.dipole_excitation,
                               "excitation dipole record");
    auto* dm = cmd->add_option("--dipole-emission", p.dipole_emission,
                               "emission dipole record");
    if (need_dipoles) {
        de->required();
        dm->required();
    }
    cmd->add_option("--spin-configs", p.spin_configs,
                    "spin configuration candidates (multiplicity + total energy)");
    cmd->add_option("--label", p.label, "defect label for the report");
    cmd->add_option("--transition-order", p.transition_order, "electronic transition order");
}

finger::PipelineInputs load_pipeline_inputs(const InputPaths& p) {
    finger::PipelineInputs in{
        [&] { auto s = open_input(p.ground); return finger::parse_geometry(s); }(),
        [&] { auto s = open_input(p.excited); return finger::parse_geometry(s); }(),
        finger::PhononModeSet{},
        finger::DipoleRecord{},
        finger::DipoleRecord{},
        {},
        p.label,
        p.transition_order};
    {
        auto s = open_input(p.phonons);
        in.modes = finger::parse_phonons(s, in.ground.n_atoms());
    }
    if (!p.dipole_excitation.empty()) {
        auto s = open_input(p.dipole_excitation);
        in.dipole_excitation = finger::parse_dipole(s);
    }
    if (!p.dipole_emission.empty()) {
        auto s = open_input(p.dipole_emission);
        in.dipole_emission = finger::parse_dipole(s);
    }
    if (!p.spin_configs.empty()) {
        auto s = open_input(p.spin_configs);
        in.spin_configs = finger::parse_spin_configs(s);
    }
    return in;
}

void write_outputs(const fs::path& out_dir, const finger::PipelineResult& result,
                   const finger::RunConfig& cfg, const std::string& format) {
    fs::create_directories(out_dir);
    const bool all = format == "all";
    if (all || format == "json")
        finger::write_text_file((out_dir / "fingerprint.json").string(),
                                finger::fingerprint_to_json(result.fingerprint, cfg).dump(2) +
                                    "\n");
    if (all || format == "csv")
        finger::write_text_file((out_dir / "spectrum.csv").string(),
                                finger::spectrum_to_csv(result.pl, cfg));
    if (all || format == "svg")
        finger::write_text_file((out_dir / "spectrum.svg").string(),
                                finger::spectrum_to_svg(result.pl));
}

int cmd_fingerprint(const InputPaths& paths, const std::string& out_dir,
                    const std::string& format) {
    const auto cfg = load_config(paths.config);
    const auto inputs = load_pipeline_inputs(paths);
    const auto result = finger::run_fingerprint(inputs, cfg);
    write_outputs(out_dir, result, cfg, format);
    std::cout << finger::fingerprint_to_json(result.fingerprint, cfg).dump(2) << "\n";
    return 0;
}

int cmd_vibronic(const InputPaths& paths, const std::string& out_dir) {
    const auto cfg = load_config(paths.config);
    const auto inputs = load_pipeline_inputs(paths);
    double mode_max = 0.0;
    for (const auto& m : inputs.modes.modes) mode_max = std::max(mode_max, m.energy_mev);
    const finger::EnergyGrid grid(
        0.0, std::max(0.25, 1.5 * mode_max * 1e-3 + 10.0 * cfg.sigma_phonon_ev), 2048);
    const auto vib = finger::vibronic_summary(inputs.ground, inputs.excited, inputs.modes,
                                              cfg.sigma_phonon_ev, grid,
                                              cfg.include_near_zero_modes);
    json j;
    j["delta_q"] = finger::round_sig6(vib.delta_q);
    j["hr"] = finger::round_sig6(vib.total_hr);
    j["dw"] = finger::round_sig6(vib.debye_waller);
    j["skipped_hr"] = finger::round_sig6(vib.skipped_hr);
    j["metadata"] = finger::config_metadata(cfg);
    std::cout << j.dump(2) << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        finger::write_text_file((fs::path(out_dir) / "vibronic.json").string(), j.dump(2) + "\n");
        std::string csv = "energy_eV,S\n";
        char buf[80];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.6g,%.6g\n", grid.energy(i),
                          vib.spectral_function.values[i]);
            csv += buf;
        }
        finger::write_text_file((fs::path(out_dir) / "spectral_function.csv").string(), csv);
    }
    return 0;
}

int cmd_lineshape(const InputPaths& paths, const std::string& out_dir,
                  const std::string& format) {
    const auto cfg = load_config(paths.config);
    auto inputs = load_pipeline_inputs(paths);
    if (cfg.zpl_energy_ev <= 0.0)
        throw finger::validation_error("lineshape needs zpl_energy in the config");
    double mode_max = 0.0;
    for (const auto& m : inputs.modes.modes) mode_max = std::max(mode_max, m.energy_mev);
    const finger::EnergyGrid grid(
        0.0, std::max(0.25, 1.5 * mode_max * 1e-3 + 10.0 * cfg.sigma_phonon_ev), 2048);
    const auto vib = finger::vibronic_summary(inputs.ground, inputs.excited, inputs.modes,
                                              cfg.sigma_phonon_ev, grid,
                                              cfg.include_near_zero_modes);
    const double dt =
        cfg.time_step_fs > 0.0 ? cfg.time_step_fs : finger::auto_time_step(inputs.modes);
    const auto s_t = finger::time_spectral_function(vib.spectral_function, dt,
                                                    cfg.n_time_samples, cfg.sigma_phonon_ev);
    const auto g = finger::generating_function(s_t);
    const finger::EnergyGrid emission(cfg.zpl_energy_ev - 1.0, cfg.zpl_energy_ev + 0.25, 4001);
    auto pl = finger::pl_intensity(
        finger::optical_spectral_function(g, cfg.zpl_energy_ev, cfg.gamma_damping_inv_fs,
                                          emission),
        finger::PLNormalization::peak);
    for (const auto& d : pl.diagnostics) std::cerr << "diagnostic: " << d << "\n";
    fs::create_directories(out_dir.empty() ? "." : out_dir);
    const fs::path dir = out_dir.empty() ? "." : out_dir;
    const bool all = format == "all";
    if (all || format == "csv")
        finger::write_text_file((dir / "spectrum.csv").string(),
                                finger::spectrum_to_csv(pl, cfg));
    if (all || format == "svg")
        finger::write_text_file((dir / "spectrum.svg").string(), finger::spectrum_to_svg(pl));
    std::cout << "wrote spectrum for ZPL " << cfg.zpl_energy_ev << " eV to " << dir.string()
              << "\n";
    return 0;
}

json dipole_json(const finger::DipoleRecord& rec, const finger::RunConfig& cfg) {
    const auto mu = finger::transition_dipole(rec);
    const auto angle = finger::polarization_angle(mu, cfg.crystal_axis_angle_deg);
    json j;
    j["label"] = rec.label;
    j["spin"] = finger::to_string(rec.spin);
    j["mu_sq_debye2"] = finger::round_sig6(mu.mu_sq_debye2);
    j["in_plane_visibility"] = finger::round_sig6(mu.in_plane_visibility);
    if (angle) j["polarization_angle_deg"] = finger::round_sig6(*angle);
    else j["polarization_angle_deg"] = "out-of-plane";
    return j;
}

int cmd_dipole(const std::string& config, const std::string& excitation,
               const std::string& emission, const std::string& out_dir) {
    const auto cfg = load_config(config);
    json j;
    if (!excitation.empty()) {
        auto s = open_input(excitation);
        j["excitation"] = dipole_json(finger::parse_dipole(s), cfg);
    }
    if (!emission.empty()) {
        auto s = open_input(emission);
        j["emission"] = dipole_json(finger::parse_dipole(s), cfg);
    }
    if (j.empty()) throw finger::validation_error("dipole: no dipole record given");
    std::cout << j.dump(2) << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        finger::write_text_file((fs::path(out_dir) / "dipole.json").string(), j.dump(2) + "\n");
    }
    return 0;
}

int cmd_rates(const InputPaths& paths, const std::string& out_dir) {
    const auto cfg = load_config(paths.config);
    const auto inputs = load_pipeline_inputs(paths);
    if (cfg.zpl_energy_ev <= 0.0)
        throw finger::validation_error("rates needs zpl_energy in the config");
    const auto mu = finger::transition_dipole(inputs.dipole_emission);
    const double gr =
        finger::radiative_rate(cfg.zpl_energy_ev, mu.mu_sq_debye2, cfg.refractive_index);
    const double gnr = finger::nonradiative_rate(
        cfg, finger::delta_q(inputs.ground, inputs.excited), cfg.zpl_energy_ev);
    const auto rep = finger::rate_report(gr, gnr, cfg.purcell_factor);
    json j;
    j["gamma_r_per_s"] = finger::round_sig6(rep.gamma_r);
    j["tau_r_ns"] = finger::round_sig6(rep.tau_r_ns);
    j["gamma_nr_per_s"] = finger::round_sig6(rep.gamma_nr);
    j["tau_nr_ns"] = finger::round_sig6(rep.tau_nr_ns);
    j["eta_pct"] = finger::round_sig6(100.0 * rep.eta);
    j["purcell_applied"] = finger::round_sig6(rep.purcell_applied);
    j["metadata"] = finger::config_metadata(cfg);
    std::cout << j.dump(2) << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        finger::write_text_file((fs::path(out_dir) / "rates.json").string(), j.dump(2) + "\n");
    }
    return 0;
}

int cmd_match(const std::string& experiment, const std::vector<std::string>& candidates,
              const std::vector<std::string>& weight_args, const std::string& out_dir) {
    auto in = open_input(experiment);
    const auto exp = finger::experiment_from_json(json::parse(in));
    std::vector<finger::Fingerprint> fps;
    for (const auto& path : candidates) {
        auto s = open_input(path);
        fps.push_back(finger::fingerprint_from_json(json::parse(s)));
    }
    std::map<std::string, double> weights;
    for (const auto& w : weight_args) {
        const auto eq = w.find('=');
        if (eq == std::string::npos)
            throw finger::format_error("--weight expects key=value, got '" + w + "'");
        weights[w.substr(0, eq)] = std::stod(w.substr(eq + 1));
    }
    const auto results = finger::match_candidates(exp, fps, weights);
    const auto j = finger::match_results_to_json(results);
    std::cout << j.dump(2) << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        finger::write_text_file((fs::path(out_dir) / "match.json").string(), j.dump(2) + "\n");
    }
    return 0;
}

int cmd_export(const std::string& input, const std::string& format, const std::string& out) {
    auto in = open_input(input);
    const auto j = json::parse(in);
    const auto fp = finger::fingerprint_from_json(j);
    if (format == "json") {
        finger::RunConfig cfg; // metadata not round-tripped; re-emit canonical form
        json out_j = finger::fingerprint_to_json(fp, cfg);
        if (j.contains("metadata")) out_j["metadata"] = j.at("metadata");
        finger::write_text_file(out, out_j.dump(2) + "\n");
    } else if (format == "csv") {
        std::string csv = "field,value\n";
        json flat = j;
        flat.erase("metadata");
        flat.erase("diagnostics");
        for (auto it = flat.begin(); it != flat.end(); ++it)
            csv += it.key() + "," + it.value().dump() + "\n";
        finger::write_text_file(out, csv);
    } else {
        throw finger::validation_error("export: unsupported format '" + format +
                                       "' for a fingerprint (json or csv)");
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optical fingerprints of crystal point defects"};
    app.require_subcommand(1);

    InputPaths fp_paths, vib_paths, ls_paths, rate_paths;
    std::string out_dir = "out", format = "all";
    std::string dip_config, dip_exc, dip_emi, dip_out;
    std::string exp_path, export_in, export_fmt = "json", export_out;
    std::vector<std::string> cand_paths, weight_args;
    std::string match_out;

    auto* fp_cmd = app.add_subcommand("fingerprint", "full pipeline: one defect transition");
    add_pipeline_options(fp_cmd, fp_paths, true);
    fp_cmd->add_option("--out-dir", out_dir, "output directory");
    fp_cmd->add_option("--format", format, "json|csv|svg|all");

    auto* vib_cmd = app.add_subcommand("vibronic", "HR/DW factors and spectral function");
    add_pipeline_options(vib_cmd, vib_paths, false);
    std::string vib_out;
    vib_cmd->add_option("--out-dir", vib_out, "output directory");

    auto* ls_cmd = app.add_subcommand("lineshape", "PL lineshape from phonon projections");
    add_pipeline_options(ls_cmd, ls_paths, false);
    std::string ls_out = "out", ls_fmt = "all";
    ls_cmd->add_option("--out-dir", ls_out, "output directory");
    ls_cmd->add_option("--format", ls_fmt, "csv|svg|all");

    auto* dip_cmd = app.add_subcommand("dipole", "dipole moment, angle, visibility");
    dip_cmd->add_option("--config", dip_config, "run configuration file");
    dip_cmd->add_option("--dipole-excitation", dip_exc, "excitation dipole record");
    dip_cmd->add_option("--dipole-emission", dip_emi, "emission dipole record");
    dip_cmd->add_option("--out-dir", dip_out, "output directory");

    auto* rate_cmd = app.add_subcommand("rates", "radiative/non-radiative rates and efficiency");
    add_pipeline_options(rate_cmd, rate_paths, false);
    rate_cmd->get_option("--dipole-emission")->required();
    std::string rate_out;
    rate_cmd->add_option("--out-dir", rate_out, "output directory");

    auto* match_cmd = app.add_subcommand("match", "rank candidates against an experiment");
    match_cmd->add_option("--experiment", exp_path, "experiment record (JSON)")->required();
    match_cmd->add_option("--candidate", cand_paths, "candidate fingerprint JSON (repeatable)")
        ->required();
    match_cmd->add_option("--weight", weight_args, "field weight as key=value (repeatable)");
    match_cmd->add_option("--out-dir", match_out, "output directory");

    auto* export_cmd = app.add_subcommand("export", "re-serialize a fingerprint report");
    export_cmd->add_option("--input", export_in, "fingerprint JSON")->required();
    export_cmd->add_option("--format", export_fmt, "json|csv");
    export_cmd->add_option("--out", export_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fp_cmd->parsed()) return cmd_fingerprint(fp_paths, out_dir, format);
        if (vib_cmd->parsed()) return cmd_vibronic(vib_paths, vib_out);
        if (ls_cmd->parsed()) return cmd_lineshape(ls_paths, ls_out, ls_fmt);
        if (dip_cmd->parsed()) return cmd_dipole(dip_config, dip_exc, dip_emi, dip_out);
        if (rate_cmd->parsed()) return cmd_rates(rate_paths, rate_out);
        if (match_cmd->parsed()) return cmd_match(exp_path, cand_paths, weight_args, match_out);
        if (export_cmd->parsed()) return cmd_export(export_in, export_fmt, export_out);
    } catch (const finger::consistency_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_inconsistency;
    } catch (const finger::convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_nonconvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return 0;
}
