// Minimal library usage: solve the first hydrogen orbits and print the
// binding energies next to the one-electron closed form.

#include <cstdio>

#include "mspace/bohr.hpp"
#include "mspace/constants.hpp"

int main() {
    const mspace::Constants c;
    const mspace::bohr::PhysicalParams hydrogen{c.electron_mass_ev, c.alpha};

    std::printf("%3s %14s %14s %12s\n", "n", "binding [eV]", "E_dirac [eV]", "radius");
    for (int n = 1; n <= 5; ++n) {
        const auto level = mspace::bohr::solve_level(hydrogen, n);
        std::printf("%3d %14.6f %14.6f %12.4g\n", n, level.binding(),
                    mspace::bohr::dirac_energy(hydrogen, n) - hydrogen.m_e, level.R);
    }
    return 0;
}
