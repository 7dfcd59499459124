// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_PHONONS_HPP
#define FINGER_PHONONS_HPP

#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <vector>

#include "finger/parse_util.hpp"

namespace finger {

/// One vibrational mode: energy plus a unit-normalized Cartesian displacement
/// pattern (NOT mass-weighted; the sqrt(m) weighting happens in the
/// configuration-coordinate projection).
struct PhononMode {
    double energy_mev;
    std::vector<std::array<double, 3>> displacement; // one row per atom
    bool near_zero = false; // quasi-translational, excluded from HR sums by default

    double norm_sq() const {
        double acc = 0.0;
        for (const auto& r : displacement)
            for (double x : r) acc += x * x;
        return acc;
    }
};

struct PhononModeSet {
    std::size_t n_atoms = 0;
    std::vector<PhononMode> modes;
};

/// Modes below this energy are flagged as quasi-translational.
inline constexpr double near_zero_mode_mev = 1.0;

// Format: line 1 atom count; then per mode a line "MODE k E_meV" followed by
// one "dx dy dz" line per atom.
inline PhononModeSet parse_phonons(std::istream& in, std::size_t expected_atoms) {
    detail::LineReader rd(in);
    std::string line;
    if (!rd.next_content(line)) throw format_error("empty phonon file", 1);
    const long n = detail::parse_long(detail::tokenize(line)[0], rd.lineno());
    if (n < 1) throw format_error("atom count must be >= 1", rd.lineno());
    if (static_cast<std::size_t>(n) != expected_atoms)
        throw validation_error("phonon file declares " + std::to_string(n) +
                               " atoms, geometry has " + std::to_string(expected_atoms));
    PhononModeSet set;
    set.n_atoms = static_cast<std::size_t>(n);
    while (rd.next_content(line)) {
        auto tok = detail::tokenize(line);
        if (tok.size() != 3 || tok[0] != "MODE")
            throw format_error("expected 'MODE k E_meV'", rd.lineno());
        PhononMode mode;
        mode.energy_mev = detail::parse_double(tok[2], rd.lineno());
        if (mode.energy_mev < 0.0)
            throw validation_error("mode energy must be >= 0 (line " +
                                   std::to_string(rd.lineno()) + ")");
        mode.near_zero = mode.energy_mev < near_zero_mode_mev;
        for (long a = 0; a < n; ++a) {
            if (!rd.next_content(line))
                throw format_error("mode truncated: missing displacement row " +
                                       std::to_string(a + 1),
                                   rd.lineno() + 1);
            auto d = detail::tokenize(line);
            if (d.size() != 3) throw format_error("expected 'dx dy dz'", rd.lineno());
            mode.displacement.push_back({detail::parse_double(d[0], rd.lineno()),
                                         detail::parse_double(d[1], rd.lineno()),
                                         detail::parse_double(d[2], rd.lineno())});
        }
        const double nn = mode.norm_sq();
        if (std::abs(nn - 1.0) > 1e-3)
            throw validation_error("mode eigenvector norm^2 = " + std::to_string(nn) +
                                   ", expected 1");
        set.modes.push_back(std::move(mode));
    }
    return set;
}

inline void write_phonons(std::ostream& out, const PhononModeSet& set) {
    out << set.n_atoms << "\n";
    out.precision(12);
    std::size_t k = 0;
    for (const auto& m : set.modes) {
        out << "MODE " << ++k << " " << m.energy_mev << "\n";
        for (const auto& r : m.displacement) out << r[0] << " " << r[1] << " " << r[2] << "\n";
    }
}

} // namespace finger

#endif
