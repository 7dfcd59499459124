// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "finger/photophysics.hpp"

using namespace finger;

namespace {

DipoleRecord record_with_p(std::complex<double> px, std::complex<double> py,
                           std::complex<double> pz, double de = 2.0) {
    DipoleRecord rec;
    rec.label = "test";
    rec.e_initial_ev = 0.0;
    rec.e_final_ev = de;
    rec.p_au = {px, py, pz};
    return rec;
}

// --- independent quadrature oracle for oscillator overlaps -----------------
// Dense-grid integration of explicit Hermite-function products; shares no code
// with the recursion under test.

double hermite(int n, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    if (n == 0) return h0;
    for (int k = 1; k < n; ++k) {
        const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

double osc_wavefunction(int n, double exponent, double center, double q) {
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    const double x = std::sqrt(exponent) * (q - center);
    const double norm = std::pow(exponent / M_PI, 0.25) / std::sqrt(std::pow(2.0, n) * fact);
    return norm * hermite(n, x) * std::exp(-0.5 * x * x);
}

double quad_overlap(int m, int n, double e_i_ev, double e_f_ev, double dq) {
    using namespace constants;
    const double a = e_i_ev / (hbar_ev_fs * hbar_ev_fs) * amu_A2_fs2_to_ev;
    const double b = e_f_ev / (hbar_ev_fs * hbar_ev_fs) * amu_A2_fs2_to_ev;
    const double span = 10.0 / std::sqrt(std::min(a, b)) + std::abs(dq);
    const int n_pts = 40001;
    const double h = 2.0 * span / (n_pts - 1);
    double acc = 0.0;
    for (int i = 0; i < n_pts; ++i) {
        const double q = -span + h * i;
        const double trap = (i == 0 || i + 1 == n_pts) ? 0.5 : 1.0;
        acc += trap * osc_wavefunction(n, a, 0.0, q) * osc_wavefunction(m, b, dq, q);
    }
    return acc * h;
}

RunConfig nr_config(double temperature = 300.0) {
    RunConfig cfg;
    cfg.temperature_k = temperature;
    cfg.w_if = 0.1;
    cfg.effective_mode_initial_mev = 160.0;
    cfg.effective_mode_final_mev = 160.0;
    cfg.max_phonon_quanta = 40;
    return cfg;
}

} // namespace

TEST_CASE("transition dipole: in-plane and out-of-plane limits") {
    auto mu_x = transition_dipole(record_with_p(1.0, 0.0, 0.0));
    CHECK(mu_x.in_plane_visibility == Catch::Approx(1.0));
    REQUIRE(mu_x.dipole_angle_deg.has_value());
    CHECK(*mu_x.dipole_angle_deg == Catch::Approx(0.0).margin(1e-12));

    auto mu_z = transition_dipole(record_with_p(0.0, 0.0, 1.0));
    CHECK(mu_z.in_plane_visibility == 0.0);
    CHECK_FALSE(mu_z.dipole_angle_deg.has_value());
    CHECK_FALSE(polarization_angle(mu_z, 0.0).has_value());

    DipoleRecord degen = record_with_p(1.0, 0.0, 0.0);
    degen.e_final_ev = degen.e_initial_ev;
    CHECK_THROWS_AS(transition_dipole(degen), domain_error);
}

TEST_CASE("transition dipole unit conversion against the SI oracle") {
    // frozen from an independent SI-units script: p = 1 au, dE = 2 eV
    auto mu = transition_dipole(record_with_p(1.0, 0.0, 0.0, 2.0));
    CHECK(std::abs(mu.mu_debye[0]) == Catch::Approx(34.582222468).epsilon(1e-8));
    CHECK(mu.mu_sq_debye2 == Catch::Approx(34.582222468 * 34.582222468).epsilon(1e-8));
}

TEST_CASE("polarization angle: axis-aligned and orthogonal dipoles") {
    auto along_axis = transition_dipole(record_with_p(1.0, 0.0, 0.0));
    CHECK(*polarization_angle(along_axis, 0.0) == Catch::Approx(30.0));
    auto orthogonal = transition_dipole(record_with_p(0.0, 1.0, 0.0));
    CHECK(*polarization_angle(orthogonal, 0.0) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("polarization angle is invariant under 60-degree dipole rotations") {
    for (double theta = 0.0; theta < 90.0; theta += 7.0) {
        const double rad = theta * M_PI / 180.0;
        auto mu = transition_dipole(record_with_p(std::cos(rad), std::sin(rad), 0.0));
        const double rad2 = (theta + 60.0) * M_PI / 180.0;
        auto mu2 = transition_dipole(record_with_p(std::cos(rad2), std::sin(rad2), 0.0));
        INFO("theta=" << theta);
        CHECK(*polarization_angle(mu, 0.0) ==
              Catch::Approx(*polarization_angle(mu2, 0.0)).margin(1e-9));
        CHECK(*polarization_angle(mu, 0.0) >= 0.0);
        CHECK(*polarization_angle(mu, 0.0) <= 30.0);
    }
}

TEST_CASE("crystal axis offset shifts the folded angle") {
    auto mu = transition_dipole(record_with_p(1.0, 0.0, 0.0));
    CHECK(*polarization_angle(mu, 10.0) == Catch::Approx(fold_to_axis(90.0 - 10.0)));
}

TEST_CASE("radiative rate: benchmark and homogeneity") {
    CHECK(radiative_rate(2.066, 0.0, 1.0) == 0.0);
    CHECK(radiative_rate(2.066, 1.0, 1.0) == Catch::Approx(1.45e6).epsilon(0.02));
    const double base = radiative_rate(2.0, 3.0, 1.85);
    CHECK(radiative_rate(2.0, 6.0, 1.85) == Catch::Approx(2.0 * base).epsilon(1e-14));
    CHECK(radiative_rate(4.0, 3.0, 1.85) == Catch::Approx(8.0 * base).epsilon(1e-14));
}

TEST_CASE("rate-lifetime reciprocity on reported values") {
    CHECK(rate_to_tau_ns(5.90e7) == Catch::Approx(16.94).margin(0.01));
    CHECK(rate_to_tau_ns(6.38e7) == Catch::Approx(15.67).margin(0.01));
    RateReport rep = rate_report(5.90e7, 8.53e8);
    CHECK(rep.tau_r_ns * rep.gamma_r == Catch::Approx(1e9).epsilon(1e-12));
    CHECK(rep.tau_nr_ns * rep.gamma_nr == Catch::Approx(1e9).epsilon(1e-12));
}

TEST_CASE("quantum efficiency reproduces reported values") {
    CHECK(100.0 * quantum_efficiency(5.90e7, 8.53e8) == Catch::Approx(6.47).margin(0.05));
    CHECK(100.0 * quantum_efficiency(2.42e7, 7.47e5) == Catch::Approx(97.00).margin(0.1));
    CHECK(quantum_efficiency(1.0e7, 0.0) == 1.0);
    CHECK_THROWS_AS(quantum_efficiency(0.0, 0.0), domain_error);
}

TEST_CASE("eta is monotone decreasing in the non-radiative rate") {
    double prev = 1.1;
    for (double gnr : {0.0, 1e5, 1e6, 1e7, 1e8, 1e9}) {
        const double eta = quantum_efficiency(2.0e7, gnr);
        CHECK(eta < prev);
        CHECK(eta >= 0.0);
        CHECK(eta <= 1.0);
        prev = eta;
    }
}

TEST_CASE("Purcell scaling") {
    CHECK(apply_purcell(5.0e7, 1.0) == 5.0e7);
    RateReport rep1 = rate_report(5.0e7, 1.0e8, 1.0);
    RateReport rep2 = rate_report(5.0e7, 1.0e8, 2.0);
    CHECK(rep2.tau_r_ns == Catch::Approx(rep1.tau_r_ns / 2.0));
    CHECK(rep2.purcell_applied == 2.0);
    double prev_eta = 0.0;
    for (double f : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double eta = rate_report(5.0e7, 1.0e8, f).eta;
        CHECK(eta > prev_eta);
        prev_eta = eta;
    }
}

TEST_CASE("FC overlap recursion matches dense-grid quadrature") {
    const double ei = 0.150, ef = 0.100, dq = 0.6;
    auto ov = fc::overlap_matrix(ei, ef, dq, 5, 5);
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) {
            INFO("m=" << m << " n=" << n);
            CHECK(ov[m][n] == Catch::Approx(quad_overlap(m, n, ei, ef, dq)).margin(5e-7));
        }
}

TEST_CASE("equal-frequency 0-0 overlap equals exp(-S)") {
    using namespace constants;
    const double e = 0.160;
    for (double s_target : {0.5, 1.0, 2.0, 3.0}) {
        // S = a dq^2 / 2 with a = omega/hbar
        const double a = e / (hbar_ev_fs * hbar_ev_fs) * amu_A2_fs2_to_ev;
        const double dq = std::sqrt(2.0 * s_target / a);
        auto ov = fc::overlap_matrix(e, e, dq, 0, 0);
        INFO("S=" << s_target);
        CHECK(ov[0][0] * ov[0][0] == Catch::Approx(std::exp(-s_target)).epsilon(1e-3));
        // and against quadrature, independent of the closed form
        CHECK(ov[0][0] == Catch::Approx(quad_overlap(0, 0, e, e, dq)).margin(1e-8));
    }
}

TEST_CASE("FC Q-matrix elements match quadrature") {
    using namespace constants;
    const double ei = 0.150, ef = 0.100, dq = 0.5;
    auto q = fc::q_matrix(ei, ef, dq, 3, 3);
    const double a = ei / (hbar_ev_fs * hbar_ev_fs) * amu_A2_fs2_to_ev;
    const double b = ef / (hbar_ev_fs * hbar_ev_fs) * amu_A2_fs2_to_ev;
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
            // direct quadrature of <f m| Q |i n>
            const double span = 10.0 / std::sqrt(std::min(a, b)) + dq;
            const int n_pts = 40001;
            const double h = 2.0 * span / (n_pts - 1);
            double acc = 0.0;
            for (int i = 0; i < n_pts; ++i) {
                const double x = -span + h * i;
                const double trap = (i == 0 || i + 1 == n_pts) ? 0.5 : 1.0;
                acc += trap * osc_wavefunction(m, b, dq, x) * x *
                       osc_wavefunction(n, a, 0.0, x);
            }
            acc *= h;
            INFO("m=" << m << " n=" << n);
            CHECK(q[m][n] == Catch::Approx(acc).margin(5e-7));
        }
}

TEST_CASE("non-radiative rate limits") {
    RunConfig cfg = nr_config();
    cfg.w_if = 0.0;
    CHECK(nonradiative_rate(cfg, 0.3, 2.16) == 0.0);

    // T -> 0: only the n = 0 initial level contributes
    const double r0 = nonradiative_rate(nr_config(0.0), 0.3, 2.16);
    const double r10 = nonradiative_rate(nr_config(10.0), 0.3, 2.16);
    CHECK(r10 == Catch::Approx(r0).epsilon(1e-9));
    CHECK(r0 > 0.0);
}

TEST_CASE("non-radiative rate is monotone non-decreasing in temperature") {
    double prev = 0.0;
    for (double t : {50.0, 150.0, 300.0, 500.0, 800.0}) {
        const double r = nonradiative_rate(nr_config(t), 0.3, 2.16);
        INFO("T=" << t);
        CHECK(r >= prev * (1.0 - 1e-12));
        prev = r;
    }
}

TEST_CASE("non-radiative rate convergence checks fire") {
    RunConfig cfg = nr_config(300.0);
    cfg.max_phonon_quanta = 8; // cannot reach the 2.16 eV crossing at 160 meV
    CHECK_THROWS_AS(nonradiative_rate(cfg, 0.3, 2.16), convergence_error);

    RunConfig no_modes = nr_config();
    no_modes.effective_mode_initial_mev = 0.0;
    no_modes.effective_mode_final_mev = 0.0;
    CHECK_THROWS_AS(nonradiative_rate(no_modes, 0.3, 2.16), validation_error);
    // effective mode derived from the relaxation energy instead
    no_modes.relaxation_energy_ev = 0.3;
    CHECK(nonradiative_rate(no_modes, 0.3, 2.16) >= 0.0);
}

TEST_CASE("stable configuration selection and the ODMR heuristic") {
    using M = Multiplicity;
    auto singlet_low = select_stable_configuration(
        {{M::singlet, -100.0}, {M::doublet, -99.2}, {M::triplet, -98.9}});
    CHECK(singlet_low.chosen.multiplicity == M::singlet);
    CHECK_FALSE(singlet_low.odmr_likely);

    auto doublet_low = select_stable_configuration({{M::doublet, -50.0}, {M::triplet, -49.0}});
    CHECK(doublet_low.chosen.multiplicity == M::doublet);
    CHECK_FALSE(doublet_low.odmr_likely);

    auto triplet_low = select_stable_configuration({{M::singlet, -10.0}, {M::triplet, -11.0}});
    CHECK(triplet_low.odmr_likely);

    CHECK_THROWS_AS(select_stable_configuration(
                        {{M::singlet, -1.0}, {M::triplet, -1.0 + 1e-8}}),
                    validation_error);
    CHECK_THROWS_AS(select_stable_configuration({}), domain_error);
}
