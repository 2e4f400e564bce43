#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mspace {

/// Physical constants used only at the presentation layer; the core math is
/// unit free. Defaults are the CODATA 2018 values.
struct Constants {
    double alpha = 7.2973525693e-3;        // fine-structure constant
    double electron_mass_ev = 510998.95;   // m_e c^2 in eV
};

/// Parse key=value lines (alpha, electron_mass_ev). Blank lines and lines
/// starting with '#' are skipped; unknown keys are rejected.
inline Constants parse_constants(std::istream& in) {
    Constants c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("constants file: missing '=' on line " +
                                     std::to_string(lineno));
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        double parsed = 0.0;
        try {
            std::size_t used = 0;
            parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw std::runtime_error("constants file: bad numeric value for '" + key +
                                     "' on line " + std::to_string(lineno));
        }
        if (key == "alpha")
            c.alpha = parsed;
        else if (key == "electron_mass_ev")
            c.electron_mass_ev = parsed;
        else
            throw std::runtime_error("constants file: unknown key '" + key + "' on line " +
                                     std::to_string(lineno));
    }
    return c;
}

inline Constants load_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("constants file: cannot open " + path);
    return parse_constants(in);
}

} // namespace mspace
