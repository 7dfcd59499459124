// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_PHOTOPHYSICS_HPP
#define FINGER_PHOTOPHYSICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "finger/config.hpp"
#include "finger/constants.hpp"
#include "finger/dipole_record.hpp"
#include "finger/errors.hpp"

namespace finger {

// ---------------------------------------------------------------------------
// Transition dipole
// ---------------------------------------------------------------------------

/// Transition dipole in Debye with its in-plane decomposition. The xy-plane is
/// the crystal plane; a dipole with no in-plane component carries no
/// polarization angle (out-of-plane sentinel = empty optional).
struct DipoleMoment {
    std::array<std::complex<double>, 3> mu_debye{};
    double mu_sq_debye2 = 0.0;
    double in_plane_visibility = 0.0;           // (|mux|^2+|muy|^2)/mu^2
    std::optional<double> dipole_angle_deg;     // atan2(|muy|,|mux|), unfolded
};

/// mu = (i hbar / ((E_f - E_i) m)) p, converted from atomic momentum units to
/// Debye. The global phase i is dropped.
inline DipoleMoment transition_dipole(const DipoleRecord& rec) {
    using namespace constants;
    const double de_ev = rec.e_final_ev - rec.e_initial_ev;
    if (de_ev == 0.0) throw domain_error("transition_dipole: degenerate orbital energies");
    const double de_j = std::abs(de_ev) * elementary_charge;
    // length = hbar p / (dE m); dipole = e * length
    const double au_to_debye =
        elementary_charge * hbar_si * atomic_momentum_si / (de_j * electron_mass_kg) / debye_to_si;
    DipoleMoment out;
    double in_plane = 0.0, total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        out.mu_debye[i] = rec.p_au[i] * au_to_debye;
        const double m2 = std::norm(out.mu_debye[i]);
        total += m2;
        if (i < 2) in_plane += m2;
    }
    out.mu_sq_debye2 = total;
    out.in_plane_visibility = total > 0.0 ? in_plane / total : 0.0;
    if (in_plane > 0.0)
        out.dipole_angle_deg =
            std::atan2(std::abs(out.mu_debye[1]), std::abs(out.mu_debye[0])) * 180.0 / M_PI;
    return out;
}

/// Fold an angle onto [0, 30] degrees: distance to the nearest axis of the
/// 60-degree-periodic crystal axis family.
inline double fold_to_axis(double angle_deg) {
    double r = std::fmod(angle_deg, 60.0);
    if (r < 0.0) r += 60.0;
    return std::min(r, 60.0 - r);
}

/// Polarization is orthogonal to the dipole: rotate by 90 degrees, then fold
/// modulo 60 to the nearest crystal axis. Out-of-plane dipoles have no angle.
inline std::optional<double> polarization_angle(const DipoleMoment& mu,
                                                double crystal_axis_angle_deg) {
    if (!mu.dipole_angle_deg) return std::nullopt;
    return fold_to_axis(*mu.dipole_angle_deg + 90.0 - crystal_axis_angle_deg);
}

// ---------------------------------------------------------------------------
// Rates
// ---------------------------------------------------------------------------

struct RateReport {
    double gamma_r = 0.0;  // 1/s
    double tau_r_ns = 0.0;
    double gamma_nr = 0.0; // 1/s
    double tau_nr_ns = 0.0;
    double eta = 0.0;      // fraction in [0,1]
    double purcell_applied = 1.0;
};

inline double rate_to_tau_ns(double gamma_per_s) {
    return gamma_per_s > 0.0 ? 1e9 / gamma_per_s
                             : std::numeric_limits<double>::infinity();
}

/// Gamma_R = n_D E0^3 mu^2 / (3 pi eps0 hbar^4 c^3) in SI, with E0 in eV and
/// mu^2 in Debye^2.
inline double radiative_rate(double e0_ev, double mu_sq_debye2, double n_d) {
    using namespace constants;
    if (!(e0_ev > 0.0)) throw domain_error("radiative_rate: E0 must be > 0");
    if (mu_sq_debye2 < 0.0) throw domain_error("radiative_rate: mu^2 must be >= 0");
    const double e0_j = e0_ev * elementary_charge;
    const double mu_sq_si = mu_sq_debye2 * debye_to_si * debye_to_si;
    const double denom = 3.0 * M_PI * vacuum_permittivity * hbar_si * hbar_si * hbar_si *
                         hbar_si * speed_of_light * speed_of_light * speed_of_light;
    return n_d * e0_j * e0_j * e0_j * mu_sq_si / denom;
}

inline double quantum_efficiency(double gamma_r, double gamma_nr) {
    if (gamma_r < 0.0 || gamma_nr < 0.0)
        throw domain_error("quantum_efficiency: rates must be >= 0");
    if (gamma_r + gamma_nr == 0.0)
        throw domain_error("quantum_efficiency: both rates are zero");
    return gamma_r / (gamma_r + gamma_nr);
}

inline double apply_purcell(double gamma_r, double purcell_factor) {
    if (!(purcell_factor > 0.0)) throw domain_error("apply_purcell: factor must be > 0");
    return purcell_factor * gamma_r;
}

// ---------------------------------------------------------------------------
// Franck-Condon overlaps of mutually displaced oscillators with distinct
// frequencies, by the normalized two-index recursion (stable: every stored
// value is a normalized overlap with magnitude <= 1).
// ---------------------------------------------------------------------------

namespace fc {

/// Overlap matrix I(m, n) = <phi_f,m | phi_i,n> for initial oscillator
/// (energy e_i_ev) centered at Q = 0 and final oscillator (energy e_f_ev)
/// centered at Q = dq (amu^{1/2} A). Row index m is the final quantum number.
inline std::vector<std::vector<double>> overlap_matrix(double e_i_ev, double e_f_ev, double dq,
                                                       std::size_t m_max, std::size_t n_max) {
    using namespace constants;
    if (!(e_i_ev > 0.0) || !(e_f_ev > 0.0))
        throw domain_error("fc::overlap_matrix: mode energies must be > 0");
    // Gaussian exponents omega/hbar in 1/(amu A^2)
    const double a = e_i_ev / (hbar_ev_fs * hbar_ev_fs) * amu_A2_fs2_to_ev;
    const double b = e_f_ev / (hbar_ev_fs * hbar_ev_fs) * amu_A2_fs2_to_ev;
    const double c = a + b;
    const double alpha = std::sqrt(a), beta = std::sqrt(b);
    const double g = a * dq / c; // final-oscillator center in its own scaled frame
    const double h = b * dq / c; // initial-oscillator shift after completing the square
    const double ab_c = 2.0 * alpha * beta / c;
    const double pa = (a - b) / c;

    std::vector<std::vector<double>> ov(m_max + 1, std::vector<double>(n_max + 1, 0.0));
    ov[0][0] = std::sqrt(2.0 * alpha * beta / c) * std::exp(-a * b * dq * dq / (2.0 * c));
    auto sq2 = [](std::size_t k) { return std::sqrt(2.0 * static_cast<double>(k)); };
    // column n = 0 upward in m
    for (std::size_t m = 0; m < m_max; ++m) {
        double v = -2.0 * beta * g * ov[m][0];
        if (m > 0) v += -pa * sq2(m) * ov[m - 1][0];
        ov[m + 1][0] = v / sq2(m + 1);
    }
    // remaining columns
    for (std::size_t n = 0; n < n_max; ++n) {
        for (std::size_t m = 0; m <= m_max; ++m) {
            double v = 2.0 * alpha * h * ov[m][n];
            if (m > 0) v += ab_c * sq2(m) * ov[m - 1][n];
            if (n > 0) v += pa * sq2(n) * ov[m][n - 1];
            ov[m][n + 1] = v / sq2(n + 1);
        }
    }
    return ov;
}

/// Matrix elements <phi_f,m | (Q - Q_i^eq) | phi_i,n> in amu^{1/2} A, built
/// from the overlap matrix through the initial-oscillator ladder operators.
inline std::vector<std::vector<double>> q_matrix(double e_i_ev, double e_f_ev, double dq,
                                                 std::size_t m_max, std::size_t n_max) {
    using namespace constants;
    const auto ov = overlap_matrix(e_i_ev, e_f_ev, dq, m_max, n_max + 1);
    // hbar / (2 omega_i) in amu A^2
    const double l2 = hbar_ev_fs * hbar_ev_fs / (2.0 * e_i_ev) / amu_A2_fs2_to_ev;
    const double l = std::sqrt(l2);
    std::vector<std::vector<double>> q(m_max + 1, std::vector<double>(n_max + 1, 0.0));
    for (std::size_t m = 0; m <= m_max; ++m)
        for (std::size_t n = 0; n <= n_max; ++n) {
            double v = std::sqrt(static_cast<double>(n + 1)) * ov[m][n + 1];
            if (n > 0) v += std::sqrt(static_cast<double>(n)) * ov[m][n - 1];
            q[m][n] = l * v;
        }
    return q;
}

} // namespace fc

// ---------------------------------------------------------------------------
// Non-radiative rate: static coupling, one effective phonon mode per state.
// ---------------------------------------------------------------------------

/// Gamma_NR = (2 pi / hbar) g |W_if|^2 X_if(T), with
/// X_if = sum_{n,m} p_n |<phi_fm|Q - Q_a|phi_in>|^2 delta_sigma(m hw_f - n hw_i - E0).
/// e0_ev is the electronic energy released in the transition (> 0); the delta
/// is a Gaussian of width cfg.sigma_phonon_ev.
inline double nonradiative_rate(const RunConfig& cfg, double delta_q_val, double e0_ev) {
    using namespace constants;
    if (cfg.w_if == 0.0) return 0.0;
    double hw_i = cfg.effective_mode_initial_mev * 1e-3;
    double hw_f = cfg.effective_mode_final_mev * 1e-3;
    if (hw_i <= 0.0 || hw_f <= 0.0) {
        if (cfg.relaxation_energy_ev > 0.0 && delta_q_val > 0.0) {
            // omega = sqrt(2 E_relax / dQ^2)
            const double w = std::sqrt(2.0 * cfg.relaxation_energy_ev / amu_A2_fs2_to_ev) /
                             delta_q_val; // 1/fs
            const double hw = hbar_ev_fs * w;
            if (hw_i <= 0.0) hw_i = hw;
            if (hw_f <= 0.0) hw_f = hw;
        } else {
            throw validation_error("nonradiative_rate: effective mode energies not set and no "
                                   "relaxation_energy to derive them from");
        }
    }
    const std::size_t nq = static_cast<std::size_t>(cfg.max_phonon_quanta);
    if (static_cast<double>(nq) * hw_f < e0_ev - 5.0 * cfg.sigma_phonon_ev)
        throw convergence_error("nonradiative_rate: max_phonon_quanta * hw_f = " +
                                std::to_string(static_cast<double>(nq) * hw_f) +
                                " eV cannot reach the crossing at " + std::to_string(e0_ev) +
                                " eV; raise max_phonon_quanta");

    // Boltzmann occupation of the initial-state oscillator
    std::vector<double> p(nq + 1, 0.0);
    if (cfg.temperature_k == 0.0) {
        p[0] = 1.0;
    } else {
        const double kt = boltzmann_ev_per_k * cfg.temperature_k;
        double z = 0.0;
        for (std::size_t n = 0; n <= nq; ++n) {
            p[n] = std::exp(-static_cast<double>(n) * hw_i / kt);
            z += p[n];
        }
        for (double& v : p) v /= z;
        if (p[nq] > 1e-6)
            throw convergence_error("nonradiative_rate: Boltzmann weight of the highest initial "
                                    "level is " + std::to_string(p[nq]) +
                                    " > 1e-6; raise max_phonon_quanta");
    }

    const auto q = fc::q_matrix(hw_i, hw_f, delta_q_val, nq, nq);
    const double sig = cfg.sigma_phonon_ev;
    const double dnorm = 1.0 / (sig * std::sqrt(2.0 * M_PI));
    double x = 0.0, last_shell = 0.0;
    for (std::size_t m = 0; m <= nq; ++m) {
        double shell = 0.0;
        for (std::size_t n = 0; n <= nq; ++n) {
            const double de = static_cast<double>(m) * hw_f - static_cast<double>(n) * hw_i -
                              e0_ev;
            const double gauss = dnorm * std::exp(-0.5 * de * de / (sig * sig));
            shell += p[n] * q[m][n] * q[m][n] * gauss;
        }
        x += shell;
        if (m == nq) last_shell = shell;
    }
    if (x > 0.0 && last_shell / x > 1e-6)
        throw convergence_error("nonradiative_rate: Franck-Condon sum not saturated; the top "
                                "final-phonon shell still carries a fraction " +
                                std::to_string(last_shell / x) +
                                " of X_if; raise max_phonon_quanta");
    const double rate_per_fs = 2.0 * M_PI / hbar_ev_fs * static_cast<double>(cfg.degeneracy_g) *
                               cfg.w_if * cfg.w_if * x;
    return rate_per_fs * 1e15;
}

/// Full decay report; the Purcell factor scales the radiative channel only.
inline RateReport rate_report(double gamma_r, double gamma_nr, double purcell_factor = 1.0) {
    RateReport rep;
    rep.gamma_r = apply_purcell(gamma_r, purcell_factor);
    rep.gamma_nr = gamma_nr;
    rep.tau_r_ns = rate_to_tau_ns(rep.gamma_r);
    rep.tau_nr_ns = rate_to_tau_ns(rep.gamma_nr);
    rep.eta = quantum_efficiency(rep.gamma_r, rep.gamma_nr);
    rep.purcell_applied = purcell_factor;
    return rep;
}

// ---------------------------------------------------------------------------
// Spin configuration selection
// ---------------------------------------------------------------------------

enum class Multiplicity { singlet, doublet, triplet };

inline std::string to_string(Multiplicity m) {
    switch (m) {
        case Multiplicity::singlet: return "singlet";
        case Multiplicity::doublet: return "doublet";
        default: return "triplet";
    }
}

struct SpinConfiguration {
    Multiplicity multiplicity;
    double total_energy_ev;
};

struct StableConfiguration {
    SpinConfiguration chosen;
    bool odmr_likely; // triplet ground configuration; a hint, never a guarantee
};

/// Lowest total energy wins; a tie within 1e-6 eV is ambiguous and rejected.
inline StableConfiguration select_stable_configuration(
    const std::vector<SpinConfiguration>& configs) {
    if (configs.empty())
        throw domain_error("select_stable_configuration: empty configuration list");
    std::size_t best = 0;
    for (std::size_t i = 1; i < configs.size(); ++i)
        if (configs[i].total_energy_ev < configs[best].total_energy_ev) best = i;
    for (std::size_t i = 0; i < configs.size(); ++i)
        if (i != best &&
            std::abs(configs[i].total_energy_ev - configs[best].total_energy_ev) < 1e-6)
            throw validation_error("select_stable_configuration: ambiguous, two configurations "
                                   "within 1e-6 eV");
    return {configs[best], configs[best].multiplicity == Multiplicity::triplet};
}

} // namespace finger

#endif
