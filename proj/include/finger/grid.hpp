// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_GRID_HPP
#define FINGER_GRID_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "finger/constants.hpp"
#include "finger/errors.hpp"

namespace finger {

/// Closed uniform energy grid [e_min, e_max] with both endpoints included.
class EnergyGrid {
public:
    EnergyGrid(double e_min, double e_max, std::size_t n_points)
        : e_min_(e_min), e_max_(e_max), n_(n_points) {
        if (!(e_min < e_max))
            throw domain_error("EnergyGrid: e_min must be < e_max");
        if (n_points < 2)
            throw domain_error("EnergyGrid: need at least 2 points");
    }

    double e_min() const { return e_min_; }
    double e_max() const { return e_max_; }
    std::size_t size() const { return n_; }
    double spacing() const { return (e_max_ - e_min_) / static_cast<double>(n_ - 1); }
    double energy(std::size_t i) const { return e_min_ + spacing() * static_cast<double>(i); }

    bool contains(double e) const { return e >= e_min_ && e <= e_max_; }

    friend bool operator==(const EnergyGrid& a, const EnergyGrid& b) {
        return a.e_min_ == b.e_min_ && a.e_max_ == b.e_max_ && a.n_ == b.n_;
    }

private:
    double e_min_, e_max_;
    std::size_t n_;
};

/// Intensity samples on an EnergyGrid.
struct Spectrum {
    EnergyGrid grid;
    std::vector<double> values;

    Spectrum(EnergyGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw validation_error("Spectrum: value count does not match grid");
    }
    static Spectrum zeros(const EnergyGrid& g) {
        return Spectrum(g, std::vector<double>(g.size(), 0.0));
    }

    /// Trapezoidal integral over the grid.
    double integral() const {
        const double h = grid.spacing();
        double acc = 0.5 * (values.front() + values.back());
        for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
        return acc * h;
    }
};

inline double ev_to_nm(double e_ev) {
    if (!(e_ev > 0.0)) throw domain_error("ev_to_nm: energy must be positive");
    return constants::ev_nm_product / e_ev;
}

inline double nm_to_ev(double lambda_nm) {
    if (!(lambda_nm > 0.0)) throw domain_error("nm_to_ev: wavelength must be positive");
    return constants::ev_nm_product / lambda_nm;
}

/// Replace each stick (E_s, w) by a unit-area Gaussian of width sigma; the
/// integral over the grid equals the weight sum when all sticks sit well
/// inside the grid, and is smaller when a stick is truncated at an edge.
inline Spectrum gaussian_broaden(const std::vector<std::pair<double, double>>& sticks,
                                 double sigma, const EnergyGrid& grid) {
    if (!(sigma > 0.0)) throw domain_error("gaussian_broaden: sigma must be > 0");
    for (const auto& [e, w] : sticks) {
        if (!std::isfinite(e) || !std::isfinite(w))
            throw domain_error("gaussian_broaden: non-finite stick");
    }
    Spectrum out = Spectrum::zeros(grid);
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double e = grid.energy(i);
        double acc = 0.0;
        for (const auto& [es, w] : sticks) {
            const double x = (e - es) / sigma;
            acc += w * std::exp(-0.5 * x * x);
        }
        out.values[i] = acc * norm;
    }
    return out;
}

} // namespace finger

#endif
