// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_PARSE_UTIL_HPP
#define FINGER_PARSE_UTIL_HPP

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "finger/errors.hpp"

namespace finger::detail {

/// Reads lines from a stream and tracks 1-based line numbers for diagnostics.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next raw line; returns false at end of input.
    bool next(std::string& line) {
        if (!std::getline(in_, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++lineno_;
        return true;
    }

    /// Next line that is neither blank nor a '#' comment.
    bool next_content(std::string& line) {
        while (next(line)) {
            const auto pos = line.find_first_not_of(" \t");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return true;
        }
        return false;
    }

    long lineno() const { return lineno_; }

private:
    std::istream& in_;
    long lineno_ = 0;
};

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

// Locale-independent numeric parsing: plain decimal point, no separators.
inline double parse_double(const std::string& tok, long line) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw format_error("expected a number, got '" + tok + "'", line);
    return v;
}

inline long parse_long(const std::string& tok, long line) {
    long v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw format_error("expected an integer, got '" + tok + "'", line);
    return v;
}

inline bool known_element(std::string_view symbol) {
    static constexpr std::string_view table[] = {
        "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si",
        "P", "S", "Cl", "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni",
        "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb",
        "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I", "Xe",
        "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho",
        "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg",
        "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U", "Np",
        "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr"};
    for (auto s : table)
        if (s == symbol) return true;
    return false;
}

} // namespace finger::detail

#endif
