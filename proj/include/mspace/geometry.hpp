#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mspace {

// Radii this small would overflow any of the 1/r laws; treat them as the
// singular axis.
inline constexpr double min_radius = 1e-300;

/// Cartesian event in the ordinary flat space L (natural units, c = 1).
struct LPoint {
    double x0{}, x1{}, x2{}, x3{};
};

/// Polar chart on the (x1,x2) plane of L with the angle measured from the
/// x2 axis: x1 = r*sin(theta), x2 = r*cos(theta). The arc coordinate is
/// s' = r*theta.
struct PolarPoint {
    double x0{};
    double r{};
    double theta{};
    double x3{};

    double arc() const { return r * theta; }
};

/// Point of M, the companion space with coordinates (x0, s, r, x3) and
/// chart parameter R > 0 (the Bohr radius). The shared angle is
/// theta = s/R; the bijection to L matches arcs via s' = (r/R)*s.
struct MPoint {
    double x0{};
    double s{};
    double r{};
    double x3{};
    double R{1.0};

    double theta() const { return s / R; }
};

inline void check_positive_radius(double R, const char* what) {
    if (!(R > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
}

inline void check_nonsingular_radius(double r, const char* what) {
    if (!(r >= min_radius))
        throw std::domain_error(std::string(what) + " is on the singular axis (r ~ 0)");
}

/// Polar chart of an L point. theta lands in (-pi, pi]; the origin of the
/// (x1,x2) plane has no well-defined angle and is rejected.
inline PolarPoint to_polar(const LPoint& p) {
    const double r = std::hypot(p.x1, p.x2);
    if (r == 0.0)
        throw std::domain_error("to_polar: angle undefined at the (x1,x2) origin");
    double theta = std::atan2(p.x1, p.x2);
    if (theta == -std::numbers::pi) theta = std::numbers::pi;
    return {p.x0, r, theta, p.x3};
}

inline LPoint from_polar(const PolarPoint& p) {
    return {p.x0, p.r * std::sin(p.theta), p.r * std::cos(p.theta), p.x3};
}

/// Map a polar-charted L point into M: s = R*theta, r and the other
/// coordinates carry over. theta (and hence s) is taken as given and not
/// reduced mod 2*pi; orbits accumulate arc length.
inline MPoint l_to_m(const PolarPoint& p, double R) {
    check_positive_radius(R, "l_to_m: R");
    return {p.x0, R * p.theta, p.r, p.x3, R};
}

inline PolarPoint m_to_l(const MPoint& p) {
    check_nonsingular_radius(p.R, "m_to_l: R");
    return {p.x0, p.r, p.s / p.R, p.x3};
}

/// Volume-element ratio dV^M / dV^L = R/r.
inline double volume_ratio(double r, double R) {
    check_nonsingular_radius(r, "volume_ratio: r");
    check_positive_radius(R, "volume_ratio: R");
    return R / r;
}

/// Potential rescaling into M: A^M = A*r/R. Composed with a Coulomb law
/// A = f/r this is the constant f/R, which is what makes the bound-state
/// problem in M a constant-potential one.
inline double potential_to_m(double a_value, double r, double R) {
    check_positive_radius(r, "potential_to_m: r");
    check_nonsingular_radius(R, "potential_to_m: R");
    return a_value * r / R;
}

/// Tangent-space displacement at a polar-charted L point.
struct PolarDisplacement {
    double dx0{}, dtheta{}, dr{}, dx3{};
};

/// Tangent-space displacement in M coordinates.
struct MDisplacement {
    double dx0{}, ds{}, dr{}, dx3{};
};

/// Squared interval in L: dx0^2 + r^2 dtheta^2 + dr^2 + dx3^2, with the
/// quadratic form taken exactly as written (no signature imposed).
inline double metric_interval_l(const PolarPoint& at, const PolarDisplacement& d) {
    return d.dx0 * d.dx0 + at.r * at.r * d.dtheta * d.dtheta + d.dr * d.dr + d.dx3 * d.dx3;
}

/// Squared interval in M: dx0^2 + ds^2 + dr^2 + dx3^2. Position
/// independent; with ds = R*dtheta it reproduces the L form at r = R.
inline double metric_interval_m(const MDisplacement& d) {
    return d.dx0 * d.dx0 + d.ds * d.ds + d.dr * d.dr + d.dx3 * d.dx3;
}

enum class Chart { cartesian, polar };

/// Components of a four-vector in either chart. Cartesian: (V0, V1, V2, V3).
/// Polar: (V0, V_s, V_r, V3) with v1 = V_s (along the arc) and v2 = V_r
/// (along the radius), related by V1 = V_r*sin + V_s*cos and
/// V2 = V_r*cos - V_s*sin.
struct FourVector {
    double v0{}, v1{}, v2{}, v3{};
    Chart chart{Chart::cartesian};
};

/// Rotate the (1,2) block of a Cartesian four-vector into arc/radius
/// components at angle theta. The (1,2)-block norm is preserved.
inline FourVector four_vector_to_polar(const FourVector& v, double theta) {
    if (v.chart != Chart::cartesian)
        throw std::invalid_argument("four_vector_to_polar: expected a cartesian-chart vector");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {v.v0, v.v1 * c - v.v2 * s, v.v1 * s + v.v2 * c, v.v3, Chart::polar};
}

inline FourVector four_vector_to_cartesian(const FourVector& v, double theta) {
    if (v.chart != Chart::polar)
        throw std::invalid_argument("four_vector_to_cartesian: expected a polar-chart vector");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {v.v0, v.v2 * s + v.v1 * c, v.v2 * c - v.v1 * s, v.v3, Chart::cartesian};
}

} // namespace mspace
