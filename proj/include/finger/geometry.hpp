// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_GEOMETRY_HPP
#define FINGER_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "finger/parse_util.hpp"

namespace finger {

struct Atom {
    std::string species;
    double mass_amu;
    std::array<double, 3> position; // Angstrom
};

/// Atomic structure of one electronic state. Atom order is significant and
/// preserved; ground/excited correspondence is by index.
struct Geometry {
    std::string comment;
    std::vector<Atom> atoms;

    std::size_t n_atoms() const { return atoms.size(); }

    void validate() const {
        if (atoms.empty()) throw validation_error("geometry: needs at least one atom");
        for (const auto& a : atoms) {
            if (!(a.mass_amu > 0.0))
                throw validation_error("geometry: non-positive mass for " + a.species);
            for (double x : a.position)
                if (!std::isfinite(x))
                    throw validation_error("geometry: non-finite position for " + a.species);
        }
    }
};

// Format: line 1 comment; line 2 atom count N; then N lines "SYMBOL MASS X Y Z".
inline Geometry parse_geometry(std::istream& in) {
    detail::LineReader rd(in);
    Geometry g;
    if (!rd.next(g.comment)) throw format_error("empty geometry file", 1);
    std::string line;
    if (!rd.next(line)) throw format_error("missing atom-count line", 2);
    const long n = detail::parse_long(detail::tokenize(line).empty() ? line
                                                                     : detail::tokenize(line)[0],
                                      rd.lineno());
    if (n < 1) throw format_error("atom count must be >= 1", rd.lineno());
    for (long i = 0; i < n; ++i) {
        if (!rd.next(line))
            throw format_error("header declares " + std::to_string(n) + " atoms but atom " +
                                   std::to_string(i + 1) + " is missing",
                               rd.lineno() + 1);
        const auto tok = detail::tokenize(line);
        if (tok.size() != 5)
            throw format_error("expected 'SYMBOL MASS X Y Z'", rd.lineno());
        if (!detail::known_element(tok[0]))
            throw format_error("unknown element symbol '" + tok[0] + "'", rd.lineno());
        Atom a;
        a.species = tok[0];
        a.mass_amu = detail::parse_double(tok[1], rd.lineno());
        for (int k = 0; k < 3; ++k)
            a.position[static_cast<std::size_t>(k)] =
                detail::parse_double(tok[static_cast<std::size_t>(k + 2)], rd.lineno());
        g.atoms.push_back(std::move(a));
    }
    g.validate();
    return g;
}

inline void write_geometry(std::ostream& out, const Geometry& g) {
    out << g.comment << "\n" << g.atoms.size() << "\n";
    out.precision(12);
    for (const auto& a : g.atoms)
        out << a.species << " " << a.mass_amu << " " << a.position[0] << " " << a.position[1]
            << " " << a.position[2] << "\n";
}

} // namespace finger

#endif
