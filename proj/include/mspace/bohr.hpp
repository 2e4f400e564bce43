#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mspace::bohr {

/// Inputs of the two-body bound problem. g is the dimensionless attractive
/// coupling (Z*alpha for a hydrogen-like atom); the signs of the two charges
/// are absorbed into g > 0. hbar = c = 1 throughout; m_e sets the scale
/// (use 1 for natural units or m_e c^2 in eV for presentation).
struct PhysicalParams {
    double m_e = 1.0;
    double g = 0.0;
};

/// Sense of circulation of the orbit. The clockwise branch negates the wave
/// number and the angular-momentum eigenvalue; both signs are physically
/// admissible.
enum class Circulation : int { positive = +1, negative = -1 };

/// One solved circular orbit. Invariants (all exact in the closed form):
///   force balance   g/R = m_e v^2 gamma
///   quantization    gamma m_e v R = n
///   energy          E = eta + V = m_e/gamma, with eta = gamma m_e and V = -g/R
///   wave number     mu R = n (sign follows the circulation)
struct BohrLevel {
    int n{};
    double v{};       // orbital speed, fraction of c
    double gamma{};   // 1/sqrt(1-v^2)
    double R{};       // orbit radius (natural length)
    double E{};       // total energy
    double eta{};     // kinetic term gamma m_e
    double V{};       // potential energy -g/R
    double mu{};      // wave number gamma m_e v, signed
    double L{};       // angular momentum gamma m_e v R, signed
    double m_e{};     // rest mass the level was solved with
    int orientation{+1};

    /// E - m_e evaluated without cancellation: -m_e v^2 / (1 + sqrt(1-v^2)).
    double binding() const { return -m_e * v * v / (1.0 + std::sqrt(1.0 - v * v)); }
};

inline void check_params(const PhysicalParams& p, const char* where) {
    if (!(p.m_e > 0.0)) throw std::domain_error(std::string(where) + ": m_e must be positive");
    if (!(p.g > 0.0)) throw std::domain_error(std::string(where) + ": coupling g must be positive");
}

/// Solve the two orbit equations for level n. Dividing the force-balance
/// equation by the quantization condition gives v = g/n in closed form; the
/// remaining quantities follow. Rejects g/n >= 1 (the orbit would reach c).
inline BohrLevel solve_level(const PhysicalParams& p, int n,
                             Circulation sense = Circulation::positive) {
    check_params(p, "solve_level");
    if (n < 1) throw std::domain_error("solve_level: n must be >= 1");
    const double v = p.g / n;
    if (!(v < 1.0))
        throw std::domain_error("solve_level: supercritical coupling, g/n = " +
                                std::to_string(v) + " >= 1 leaves no bound circular orbit");
    const double gamma = 1.0 / std::sqrt(1.0 - v * v);
    const double R = n / (p.m_e * v * gamma);
    const double eta = gamma * p.m_e;
    const double V = -p.g / R;
    const double sign = (sense == Circulation::positive) ? 1.0 : -1.0;
    BohrLevel lv;
    lv.n = n;
    lv.v = v;
    lv.gamma = gamma;
    lv.R = R;
    lv.E = p.m_e * std::sqrt(1.0 - v * v);
    lv.eta = eta;
    lv.V = V;
    lv.mu = sign * gamma * p.m_e * v;
    lv.L = sign * gamma * p.m_e * v * R;
    lv.m_e = p.m_e;
    lv.orientation = static_cast<int>(sense);
    return lv;
}

/// Energy of the standard one-electron bound state with radial quantum
/// number 0 and j = n - 1/2 (the circular-orbit case), via the textbook
/// closed form m_e * [1 + g^2/(n_r + sqrt((j+1/2)^2 - g^2))^2]^(-1/2).
/// Coincides with solve_level(n).E; the two are computed along different
/// routes on purpose.
inline double dirac_energy(const PhysicalParams& p, int n) {
    check_params(p, "dirac_energy");
    if (n < 1) throw std::domain_error("dirac_energy: n must be >= 1");
    const double j_plus_half = static_cast<double>(n);
    const double under = j_plus_half * j_plus_half - p.g * p.g;
    if (!(under > 0.0))
        throw std::domain_error("dirac_energy: supercritical coupling g >= n");
    const double n_r = 0.0;
    const double denom = n_r + std::sqrt(under);
    return p.m_e / std::sqrt(1.0 + (p.g / denom) * (p.g / denom));
}

struct TransitionResult {
    BohrLevel from;
    BohrLevel to;
    double delta_e{};   // E_from - E_to; positive for emission (n_from > n_to)

    /// Off-shell energy surplus around the departure level, as a function
    /// of the perturbed speed (see energy_imbalance below).
    double imbalance(double v_e) const;
    /// Radius the quantization condition pairs with that speed.
    double radius_at(double v_e) const;
};

inline TransitionResult transition(const PhysicalParams& p, int n_from, int n_to) {
    TransitionResult t;
    t.from = solve_level(p, n_from);
    t.to = solve_level(p, n_to);
    // difference of the cancellation-free binding forms; the rest masses drop out
    t.delta_e = t.from.binding() - t.to.binding();
    return t;
}

inline void check_offshell_speed(double v_e, const char* where) {
    if (!(v_e > 0.0 && v_e < 1.0))
        throw std::domain_error(std::string(where) + ": v_e must lie in (0,1)");
}

/// Radius the quantization condition assigns to an off-shell speed at fixed
/// n: gamma_e m_e v_e R_e = n. Strictly decreasing in v_e.
inline double offshell_radius(const PhysicalParams& p, int n, double v_e) {
    check_params(p, "offshell_radius");
    check_offshell_speed(v_e, "offshell_radius");
    if (n < 1) throw std::domain_error("offshell_radius: n must be >= 1");
    const double gamma_e = 1.0 / std::sqrt(1.0 - v_e * v_e);
    return n / (gamma_e * p.m_e * v_e);
}

/// Energy surplus of an orbit perturbed to speed v_e while the quantization
/// condition is held at level n:
///
///     dN = gamma_e m_e v_e (v - v_e),   v = g/n.
///
/// Positive for v_e < v: the electron settles on a higher orbit with a
/// larger radius. Zero exactly on shell.
inline double energy_imbalance(const PhysicalParams& p, int n, double v_e) {
    check_params(p, "energy_imbalance");
    check_offshell_speed(v_e, "energy_imbalance");
    if (n < 1) throw std::domain_error("energy_imbalance: n must be >= 1");
    const double v = p.g / n;
    const double gamma_e = 1.0 / std::sqrt(1.0 - v_e * v_e);
    return gamma_e * p.m_e * v_e * (v - v_e);
}

inline double TransitionResult::imbalance(double v_e) const {
    return energy_imbalance({from.m_e, from.v * from.n}, from.n, v_e);
}

inline double TransitionResult::radius_at(double v_e) const {
    return offshell_radius({from.m_e, from.v * from.n}, from.n, v_e);
}

/// x3-component angular momentum of the orbit state, recomputed from the
/// level's kinematic parts: gamma m_e v R, signed by circulation. Equals
/// orientation * n.
inline double angular_momentum_eigenvalue(const BohrLevel& lv) {
    return lv.orientation * lv.gamma * lv.m_e * lv.v * lv.R;
}

/// One way of writing the integer total E as orbital + spin + per-orbit
/// rotation contributions, E = O + sign*(S + B) with S = B = 1/2 and a
/// common sign. total_dirac is D = O + sign*S; in a superposition of
/// circulations the rotation term B averages to zero and D is what remains
/// of the total.
struct AngularCandidate {
    int orbital{};       // O >= 0
    int sign{};          // +1 or -1, applied to both S and B
    double total_dirac{};
};

struct AngularDecomposition {
    int total{};                                // E, integer >= 1
    double spin = 0.5;                          // S
    double rotation = 0.5;                      // B
    double phase_magnitude = std::numbers::pi;  // |alpha1| = |alpha2| = pi, same sign
    std::vector<AngularCandidate> candidates;
};

/// Enumerate all decompositions E = O +/- (S + B). The two branches are
/// O = E - 1 with '+' and O = E + 1 with '-'; E = 0 is excluded by the
/// selection rule.
inline AngularDecomposition decompose_angular_momentum(int total) {
    if (total < 1)
        throw std::domain_error("decompose_angular_momentum: selection rule requires E >= 1");
    AngularDecomposition d;
    d.total = total;
    for (int sign : {+1, -1}) {
        const int orbital = total - sign;
        if (orbital < 0) continue;
        d.candidates.push_back({orbital, sign, orbital + sign * 0.5});
    }
    return d;
}

struct OrbitPhase {
    double fit_count{};       // wavelengths fitting the circumference: |mu| R = n
    double combined_phase{};  // geometric + spin bispinor phase per orbit: +/- 2 pi
};

inline OrbitPhase orbit_phase_check(const BohrLevel& lv) {
    return {std::abs(lv.mu) * lv.R, lv.orientation * 2.0 * std::numbers::pi};
}

} // namespace mspace::bohr
