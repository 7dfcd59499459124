// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_VIBRONIC_HPP
#define FINGER_VIBRONIC_HPP

#include <cmath>
#include <vector>

#include "finger/constants.hpp"
#include "finger/geometry.hpp"
#include "finger/grid.hpp"
#include "finger/phonons.hpp"

namespace finger {

/// Projection of the ground->excited displacement onto one phonon mode.
struct ModeProjection {
    std::size_t mode_index;
    double q; // amu^{1/2} A
    double s; // partial Huang-Rhys factor, dimensionless
    double energy_mev;
    bool near_zero;
};

struct VibronicSummary {
    double delta_q;            // amu^{1/2} A
    double total_hr;           // sum of s_k over retained modes
    double debye_waller;       // exp(-total_hr)
    double skipped_hr;         // diagnostic: s_k mass sitting in excluded near-zero modes
    Spectrum spectral_function;
};

namespace detail {

inline void check_matched(const Geometry& ground, const Geometry& excited) {
    if (ground.n_atoms() != excited.n_atoms())
        throw validation_error("geometries disagree on atom count: " +
                               std::to_string(ground.n_atoms()) + " vs " +
                               std::to_string(excited.n_atoms()));
    for (std::size_t a = 0; a < ground.n_atoms(); ++a)
        if (ground.atoms[a].species != excited.atoms[a].species)
            throw validation_error("species mismatch at atom index " + std::to_string(a) + ": " +
                                   ground.atoms[a].species + " vs " + excited.atoms[a].species);
}

/// s = omega q^2 / (2 hbar), with q in amu^{1/2} A and the mode energy in eV.
inline double partial_hr(double energy_ev, double q) {
    using namespace constants;
    // E q^2 / (2 hbar^2) carries amu A^2 / (eV fs^2); that combination is the
    // pure number amu_A2_fs2_to_ev.
    return energy_ev * q * q / (2.0 * hbar_ev_fs * hbar_ev_fs) * amu_A2_fs2_to_ev;
}

} // namespace detail

/// q_k = sum_{alpha,i} sqrt(m_alpha) (R_e - R_g) dr_k per mode.
inline std::vector<ModeProjection> config_coordinates(const Geometry& ground,
                                                      const Geometry& excited,
                                                      const PhononModeSet& modes) {
    detail::check_matched(ground, excited);
    if (modes.n_atoms != ground.n_atoms())
        throw validation_error("phonon set atom count does not match geometry");
    std::vector<ModeProjection> out;
    out.reserve(modes.modes.size());
    for (std::size_t k = 0; k < modes.modes.size(); ++k) {
        const auto& mode = modes.modes[k];
        double q = 0.0;
        for (std::size_t a = 0; a < ground.n_atoms(); ++a) {
            const double sqm = std::sqrt(ground.atoms[a].mass_amu);
            for (std::size_t i = 0; i < 3; ++i)
                q += sqm * (excited.atoms[a].position[i] - ground.atoms[a].position[i]) *
                     mode.displacement[a][i];
        }
        const double e_ev = mode.energy_mev * 1e-3;
        out.push_back({k, q, detail::partial_hr(e_ev, q), mode.energy_mev, mode.near_zero});
    }
    return out;
}

/// Mass-weighted displacement norm between the two equilibrium structures.
inline double delta_q(const Geometry& ground, const Geometry& excited) {
    detail::check_matched(ground, excited);
    double acc = 0.0;
    for (std::size_t a = 0; a < ground.n_atoms(); ++a)
        for (std::size_t i = 0; i < 3; ++i) {
            const double d = excited.atoms[a].position[i] - ground.atoms[a].position[i];
            acc += ground.atoms[a].mass_amu * d * d;
        }
    return std::sqrt(acc);
}

/// Broadened S(hbar omega); near-zero modes are dropped unless asked for.
inline Spectrum spectral_function(const std::vector<ModeProjection>& projections, double sigma,
                                  const EnergyGrid& grid, bool include_near_zero = false) {
    std::vector<std::pair<double, double>> sticks;
    for (const auto& p : projections)
        if (include_near_zero || !p.near_zero) sticks.emplace_back(p.energy_mev * 1e-3, p.s);
    return gaussian_broaden(sticks, sigma, grid);
}

inline VibronicSummary vibronic_summary(const Geometry& ground, const Geometry& excited,
                                        const PhononModeSet& modes, double sigma,
                                        const EnergyGrid& grid,
                                        bool include_near_zero = false) {
    const auto proj = config_coordinates(ground, excited, modes);
    double total = 0.0, skipped = 0.0;
    for (const auto& p : proj) {
        if (p.near_zero && !include_near_zero) skipped += p.s;
        else total += p.s;
    }
    return VibronicSummary{delta_q(ground, excited), total, std::exp(-total), skipped,
                           spectral_function(proj, sigma, grid, include_near_zero)};
}

} // namespace finger

#endif
