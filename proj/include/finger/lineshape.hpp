// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_LINESHAPE_HPP
#define FINGER_LINESHAPE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "finger/constants.hpp"
#include "finger/grid.hpp"

namespace finger {

struct TimeSeries {
    double dt_fs; // t0 = 0, uniform spacing
    std::vector<std::complex<double>> samples;
    std::vector<std::string> diagnostics;
};

/// Optical spectral function A and PL intensity L on a shared emission-energy
/// grid. The phonon sideband sits at energies below zpl_energy.
struct PLSpectrum {
    EnergyGrid grid;
    std::vector<double> a_values;
    std::vector<double> l_values;
    double zpl_energy_ev;
    double gamma_inv_fs;
    double normalization_c = 0.0;
    std::string normalization_mode; // "peak" or "area"
    double raw_integral = 0.0;      // grid integral of A before renormalization
    std::vector<std::string> diagnostics;
};

/// S(t) = integral S(hbar w) exp(-i w t) d(hbar w), trapezoid over the grid.
/// S(0) recovers the total HR factor.
inline TimeSeries time_spectral_function(const Spectrum& s_of_e, double dt, std::size_t n,
                                         double sigma_hint = 0.0) {
    if (!(dt > 0.0)) throw domain_error("time_spectral_function: dt must be > 0");
    if (n < 2 || (n & (n - 1)) != 0)
        throw domain_error("time_spectral_function: n must be a power of two");
    TimeSeries ts;
    ts.dt_fs = dt;
    ts.samples.resize(n);
    if (sigma_hint > 0.0 && s_of_e.grid.spacing() * 8.0 > sigma_hint)
        ts.diagnostics.push_back("energy grid coarser than sigma/8; broadened peaks are "
                                 "under-resolved");
    const double h = s_of_e.grid.spacing();
    const std::size_t m = s_of_e.grid.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double t = dt * static_cast<double>(j);
        // phase recurrence across the uniform energy grid
        std::complex<double> phase = std::polar(1.0, -s_of_e.grid.e_min() * t /
                                                         constants::hbar_ev_fs);
        const std::complex<double> step = std::polar(1.0, -h * t / constants::hbar_ev_fs);
        std::complex<double> acc = 0.0;
        for (std::size_t l = 0; l < m; ++l) {
            const double trap = (l == 0 || l + 1 == m) ? 0.5 : 1.0;
            acc += trap * s_of_e.values[l] * phase;
            phase *= step;
        }
        ts.samples[j] = acc * h;
    }
    return ts;
}

/// G(t) = exp(S(t) - S(0)); G(0) = 1 exactly.
inline TimeSeries generating_function(const TimeSeries& s_t) {
    TimeSeries g;
    g.dt_fs = s_t.dt_fs;
    g.diagnostics = s_t.diagnostics;
    g.samples.resize(s_t.samples.size());
    const std::complex<double> s0 = s_t.samples.empty() ? 0.0 : s_t.samples[0];
    for (std::size_t j = 0; j < s_t.samples.size(); ++j)
        g.samples[j] = std::exp(s_t.samples[j] - s0);
    return g;
}

/// A on the emission-energy axis: Lorentzian ZPL at zpl_energy plus the phonon
/// sideband redward of it. Normalized so the grid integral of A is one.
inline PLSpectrum optical_spectral_function(const TimeSeries& g, double zpl_ev, double gamma,
                                            const EnergyGrid& grid) {
    if (!(gamma > 0.0)) throw domain_error("optical_spectral_function: gamma must be > 0");
    if (!grid.contains(zpl_ev))
        throw domain_error("optical_spectral_function: zpl energy outside grid");
    const std::size_t n = g.samples.size();
    const double t_end = g.dt_fs * static_cast<double>(n - 1);
    const double edge = std::abs(g.samples.back()) * std::exp(-gamma * t_end);
    if (edge > 1e-6)
        throw convergence_error(
            "generating function not damped below 1e-6 at the window edge (|G e^-gt| = " +
            std::to_string(edge) + "); increase gamma_damping or n_time_samples");

    PLSpectrum out{grid,
                   std::vector<double>(grid.size(), 0.0),
                   std::vector<double>(grid.size(), 0.0),
                   zpl_ev,
                   gamma,
                   0.0,
                   "",
                   0.0,
                   g.diagnostics};
    // A(x) = (1/pi) Re int_0^inf G(t) exp(i (zpl - x) t / hbar - gamma t) dt
    std::vector<std::complex<double>> damped(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double trap = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        damped[j] = trap * g.samples[j] * std::exp(-gamma * g.dt_fs * static_cast<double>(j));
    }
    for (std::size_t l = 0; l < grid.size(); ++l) {
        const double w = (zpl_ev - grid.energy(l)) / constants::hbar_ev_fs;
        const std::complex<double> step = std::polar(1.0, w * g.dt_fs);
        std::complex<double> phase = 1.0;
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += damped[j] * phase;
            phase *= step;
        }
        // 1/hbar converts the time integral to a density per unit energy
        out.a_values[l] = acc.real() * g.dt_fs / (M_PI * constants::hbar_ev_fs);
    }

    double integral = 0.0, peak = 0.0;
    for (std::size_t l = 0; l < grid.size(); ++l) {
        const double trap = (l == 0 || l + 1 == grid.size()) ? 0.5 : 1.0;
        integral += trap * out.a_values[l];
        peak = std::max(peak, out.a_values[l]);
    }
    integral *= grid.spacing();
    out.raw_integral = integral;
    if (std::abs(integral - 1.0) > 0.01)
        out.diagnostics.push_back("raw A integral " + std::to_string(integral) +
                                  " deviates from 1 by more than 1%; grid or window too tight");
    const double undershoot = *std::min_element(out.a_values.begin(), out.a_values.end());
    if (undershoot < -1e-6 * peak)
        out.diagnostics.push_back("A undershoots below -1e-6 of peak; sampling error suspected");
    if (integral > 0.0)
        for (double& v : out.a_values) v /= integral;
    return out;
}

enum class PLNormalization { peak, area };

/// L = C w^3 A, with C fixed by the requested normalization.
inline PLSpectrum pl_intensity(PLSpectrum spec, PLNormalization norm = PLNormalization::peak) {
    for (std::size_t l = 0; l < spec.grid.size(); ++l) {
        const double e = spec.grid.energy(l);
        spec.l_values[l] = e * e * e * spec.a_values[l];
    }
    double c;
    if (norm == PLNormalization::peak) {
        const double peak = *std::max_element(spec.l_values.begin(), spec.l_values.end());
        c = peak > 0.0 ? 1.0 / peak : 1.0;
        spec.normalization_mode = "peak";
    } else {
        double area = 0.0;
        for (std::size_t l = 0; l < spec.grid.size(); ++l) {
            const double trap = (l == 0 || l + 1 == spec.grid.size()) ? 0.5 : 1.0;
            area += trap * spec.l_values[l];
        }
        area *= spec.grid.spacing();
        c = area > 0.0 ? 1.0 / area : 1.0;
        spec.normalization_mode = "area";
    }
    for (double& v : spec.l_values) v *= c;
    spec.normalization_c = c;
    return spec;
}

} // namespace finger

#endif
