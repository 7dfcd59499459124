// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_DIPOLE_RECORD_HPP
#define FINGER_DIPOLE_RECORD_HPP

#include <array>
#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <string>

#include "finger/parse_util.hpp"

namespace finger {

enum class SpinChannel { up, down };

inline std::string to_string(SpinChannel s) { return s == SpinChannel::up ? "up" : "down"; }

/// Momentum matrix element between two orbitals, in atomic units (hbar/a0),
/// together with the orbital eigenvalues. Input to the transition dipole.
struct DipoleRecord {
    std::string label; // "excitation" or "emission"
    SpinChannel spin = SpinChannel::down;
    double e_initial_ev = 0.0;
    double e_final_ev = 0.0;
    std::array<std::complex<double>, 3> p_au{};

    void validate() const {
        if (e_initial_ev == e_final_ev)
            throw validation_error("dipole record: E_i equals E_f, dipole undefined");
        for (const auto& c : p_au)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw validation_error("dipole record: non-finite momentum element");
    }
};

// Key-value format: label, spin, E_i_eV, E_f_eV, px_re px_im, py_re py_im,
// pz_re pz_im. Keys "px"/"py"/"pz" take two numbers each.
inline DipoleRecord parse_dipole(std::istream& in) {
    detail::LineReader rd(in);
    DipoleRecord rec;
    bool have_ei = false, have_ef = false;
    std::string line;
    while (rd.next_content(line)) {
        auto tok = detail::tokenize(line);
        const std::string& key = tok[0];
        auto want = [&](std::size_t n) {
            if (tok.size() != n + 1)
                throw format_error("key '" + key + "' expects " + std::to_string(n) + " value(s)",
                                   rd.lineno());
        };
        if (key == "label") {
            want(1);
            rec.label = tok[1];
        } else if (key == "spin") {
            want(1);
            if (tok[1] == "up") rec.spin = SpinChannel::up;
            else if (tok[1] == "down") rec.spin = SpinChannel::down;
            else throw format_error("spin must be 'up' or 'down'", rd.lineno());
        } else if (key == "E_i_eV") {
            want(1);
            rec.e_initial_ev = detail::parse_double(tok[1], rd.lineno());
            have_ei = true;
        } else if (key == "E_f_eV") {
            want(1);
            rec.e_final_ev = detail::parse_double(tok[1], rd.lineno());
            have_ef = true;
        } else if (key == "px" || key == "py" || key == "pz") {
            want(2);
            const std::size_t i = static_cast<std::size_t>(key[1] - 'x');
            rec.p_au[i] = {detail::parse_double(tok[1], rd.lineno()),
                           detail::parse_double(tok[2], rd.lineno())};
        } else {
            throw format_error("unknown key '" + key + "'", rd.lineno());
        }
    }
    if (!have_ei || !have_ef) throw format_error("dipole record missing E_i_eV/E_f_eV", rd.lineno());
    rec.validate();
    return rec;
}

inline void write_dipole(std::ostream& out, const DipoleRecord& rec) {
    out.precision(12);
    out << "label " << rec.label << "\n"
        << "spin " << to_string(rec.spin) << "\n"
        << "E_i_eV " << rec.e_initial_ev << "\n"
        << "E_f_eV " << rec.e_final_ev << "\n";
    const char* names[] = {"px", "py", "pz"};
    for (int i = 0; i < 3; ++i)
        out << names[i] << " " << rec.p_au[static_cast<std::size_t>(i)].real() << " "
            << rec.p_au[static_cast<std::size_t>(i)].imag() << "\n";
}

} // namespace finger

#endif
