#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mspace/algebra.hpp"
#include "mspace/bohr.hpp"
#include "mspace/geometry.hpp"

// The first-order two-body equation in reflector form,
//
//     (D - ie A~) Phi = Phi M,   Phi = reflector(phi1, phi2),
//
// splits into the two quaternion component equations
//
//     (D  - ie A~ ) phi2 = -phi1 qconj(M)
//     (D‡ - ie A~‡) phi1 =  phi2 M
//
// with D = i*i0 d/dx0 + i_s d/ds + i_r d/dr + i3 d/dx3 in the M chart.
// Imaginary-valued bookkeeping quantities are kept real at every interface:
// energies nu, eta, masses and the potential value e*A^M enter as real
// numbers and the assembly below applies the -i factors internally.

namespace mspace::dirac {

/// Mass term of the two-body equation. The scalar default is M = -i m_e i0;
/// any biquaternion with M qconj(M) = -m_e^2 (an energy-momentum square) is
/// accepted.
struct MassTerm {
    double m_e{};
    Biquaternion M;

    static MassTerm standard(double m_e) {
        if (!(m_e > 0.0)) throw std::domain_error("MassTerm: m_e must be positive");
        return {m_e, Biquaternion::scalar(Complex(0.0, -m_e))};
    }

    /// Construct from explicit components, enforcing M qconj(M) = -m_e^2.
    static MassTerm with_components(double m_e, const Biquaternion& M) {
        if (!(m_e > 0.0)) throw std::domain_error("MassTerm: m_e must be positive");
        const Biquaternion square = M * qconj(M);
        const double m2 = m_e * m_e;
        const Biquaternion expect = Biquaternion::scalar(Complex(-m2, 0.0));
        if ((square - expect).norm() > 1e-12 * m2)
            throw std::domain_error("MassTerm: M qconj(M) != -m_e^2");
        return {m_e, M};
    }

    /// M^{-1} = qconj(M) / (M qconj(M)) = -qconj(M)/m_e^2.
    Biquaternion inverse() const { return qconj(M) * Complex(-1.0 / (m_e * m_e), 0.0); }
};

/// Four-vector potential term. Cartesian components assemble over (i1, i2),
/// polar components over the arc/radius frame (i_s, i_r) at the given angle;
/// the time slot carries the -i factor:
///
///     A~ = -i A0 i0 + A_s i_s + A_r i_r + A3 i3.
struct PotentialTerm {
    double a0{}, a_s{}, a_r{}, a3{};
    Chart chart{Chart::polar};

    Biquaternion assemble(double theta = 0.0) const {
        const Biquaternion time_part = Biquaternion::scalar(Complex(0.0, -a0));
        if (chart == Chart::cartesian) return time_part + a_s * i1 + a_r * i2 + a3 * i3;
        const RotatedBasis frame = rotated_basis(theta);
        return time_part + a_s * frame.i_s + a_r * frame.i_r + a3 * i3;
    }
};

/// Assemble a real four-vector into its biquaternion form, applying the -i
/// factor to the time slot. Polar-chart vectors need the frame angle.
inline Biquaternion assemble_four_vector(const FourVector& v, double theta = 0.0) {
    return PotentialTerm{v.v0, v.v1, v.v2, v.v3, v.chart}.assemble(theta);
}

enum class WaveKind { bound, free };

/// Plane wave in M:
///
///     phi1 = exp{i(mu s - nu x0)} i0
///     phi2 = i {-i eta i0 - mu i_s} M^{-1} exp{i(mu s - nu x0)},  eta = nu - eA^M
///
/// subject to the dispersion relation (nu - eA^M)^2 = m_e^2 + mu^2. `pot`
/// stores the constant potential value e*A^M (signed; -g/R for the bound
/// orbit, 0 for the free electron). The free kind is the bound form with
/// pot = 0 and the kinetic term eta standing as the full energy.
struct PlaneWaveSolution {
    double nu{};
    double mu{};
    double pot{};
    double mass{};
    WaveKind kind{WaveKind::bound};

    double eta() const { return nu - pot; }
    double velocity() const { return mu / eta(); }

    /// Signed dispersion defect (nu - eA^M)^2 - mu^2 - m_e^2; zero for
    /// valid solutions.
    double dispersion_defect() const {
        const double e = eta();
        return e * e - mu * mu - mass * mass;
    }

    static PlaneWaveSolution bound(double nu, double mu, double pot, double mass) {
        return checked(nu, mu, pot, mass, WaveKind::bound);
    }

    static PlaneWaveSolution free_particle(double eta, double mu, double mass) {
        PlaneWaveSolution s = checked(eta, mu, 0.0, mass, WaveKind::free);
        return s;
    }

    /// Bound solution of a solved orbit: nu = E_n, mu from the level,
    /// eA^M = V = -g/R_n.
    static PlaneWaveSolution from_level(const bohr::BohrLevel& lv) {
        return checked(lv.E, lv.mu, lv.V, lv.m_e, WaveKind::bound);
    }

    static PlaneWaveSolution from_level(const bohr::PhysicalParams& params, int n) {
        return from_level(bohr::solve_level(params, n));
    }

    /// Bypasses the dispersion gate; for residual diagnostics on
    /// deliberate non-solutions.
    static PlaneWaveSolution unchecked(double nu, double mu, double pot, double mass,
                                       WaveKind kind = WaveKind::bound) {
        return {nu, mu, pot, mass, kind};
    }

private:
    static PlaneWaveSolution checked(double nu, double mu, double pot, double mass,
                                     WaveKind kind) {
        if (!(mass > 0.0)) throw std::domain_error("PlaneWaveSolution: mass must be positive");
        PlaneWaveSolution s{nu, mu, pot, mass, kind};
        if (std::abs(s.dispersion_defect()) > 1e-9 * mass * mass)
            throw std::domain_error(
                "PlaneWaveSolution: dispersion relation violated, defect = " +
                std::to_string(s.dispersion_defect()));
        return s;
    }
};

inline double dispersion_check(const PlaneWaveSolution& s) { return s.dispersion_defect(); }

/// The two quaternion blocks of Phi at one point.
struct WaveSample {
    Biquaternion phi1, phi2;
};

namespace detail {

inline Complex wave_phase(const PlaneWaveSolution& s, double x0, double arc) {
    return std::exp(Complex(0.0, s.mu * arc - s.nu * x0));
}

/// Constant coefficient of phi2 in the frame at angle theta:
/// i {-i eta i0 - mu i_s(theta)} M^{-1}.
inline Biquaternion phi2_coefficient(const PlaneWaveSolution& s, double frame_theta) {
    const MassTerm mass = MassTerm::standard(s.mass);
    const Biquaternion bracket =
        Biquaternion::scalar(Complex(0.0, -s.eta())) - s.mu * rotated_basis(frame_theta).i_s;
    return imag_unit * bracket * mass.inverse();
}

/// d/dtheta of the coefficient above; the frame turns as d i_s/dtheta = -i_r.
inline Biquaternion phi2_coefficient_dtheta(const PlaneWaveSolution& s, double frame_theta) {
    const MassTerm mass = MassTerm::standard(s.mass);
    const Biquaternion bracket_dtheta = s.mu * rotated_basis(frame_theta).i_r;
    return imag_unit * bracket_dtheta * mass.inverse();
}

inline WaveSample eval_pair(const PlaneWaveSolution& s, double x0, double arc,
                            double frame_theta) {
    const Complex ph = wave_phase(s, x0, arc);
    return {Biquaternion::scalar(ph), phi2_coefficient(s, frame_theta) * ph};
}

} // namespace detail

/// Wave function at an M point, as the reflector Phi(phi1, phi2). The
/// arc/radius frame for phi2 is taken at the point's own angle s/R.
inline BlockMatrix eval_wavefunction(const PlaneWaveSolution& s, const MPoint& p) {
    const WaveSample w = detail::eval_pair(s, p.x0, p.s, p.theta());
    return BlockMatrix::reflector(w.phi1, w.phi2);
}

/// Same, with the frame frozen at an explicit angle.
inline BlockMatrix eval_wavefunction(const PlaneWaveSolution& s, const MPoint& p,
                                     double frame_theta) {
    const WaveSample w = detail::eval_pair(s, p.x0, p.s, frame_theta);
    return BlockMatrix::reflector(w.phi1, w.phi2);
}

/// Rectangular region of M. Axes with zero extent hold a single node and
/// are not differentiated (the plane wave is constant along r and x3).
struct GridRegion {
    double R{1.0};
    double x0_min{}, x0_max{};
    double s_min{}, s_max{};
    double r_min{1.0}, r_max{1.0};
    double x3_min{}, x3_max{};
};

enum class DerivativeMode {
    central_difference,  // order-2 stencils, one-sided at region boundaries
    analytic             // exact derivatives of the phase (and frame, if local)
};

enum class FrameMode {
    frozen,  // i_s, i_r held at the residual point's angle while differentiating
    local    // the field carries its own frame at every sample point
};

struct ResidualOptions {
    DerivativeMode derivative = DerivativeMode::central_difference;
    FrameMode frame = FrameMode::frozen;
};

namespace detail {

struct Axis {
    std::size_t n{1};
    double origin{};
    double step{};

    double coord(std::size_t k) const { return origin + static_cast<double>(k) * step; }
};

inline Axis make_axis(double lo, double hi, double h, const char* name) {
    if (!(hi >= lo))
        throw std::invalid_argument(std::string("dirac_residual: empty range on axis ") + name);
    if (hi == lo) return {1, lo, 0.0};
    const auto n = static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1;
    if (n < 3)
        throw std::invalid_argument(std::string("dirac_residual: degenerate grid on axis ") +
                                    name + " (need at least 3 nodes)");
    return {n, lo, (hi - lo) / static_cast<double>(n - 1)};
}

// Order-2 first derivative of f along one axis; one-sided at the edges.
template <typename F>
Biquaternion fd_first(const F& f, const Axis& ax, std::size_t k) {
    if (ax.n == 1) return {};
    const double inv2h = 1.0 / (2.0 * ax.step);
    if (k == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) * inv2h;
    if (k == ax.n - 1)
        return (3.0 * f(ax.n - 1) - 4.0 * f(ax.n - 2) + f(ax.n - 3)) * inv2h;
    return (f(k + 1) - f(k - 1)) * inv2h;
}

} // namespace detail

/// Worst node-wise residual of the two component equations over a sampled
/// region, with the constant potential e*A^M of the solution:
///
///     res_a = D phi2 - (eA^M) phi2 + phi1 qconj(M)
///     res_b = D‡ phi1 - (eA^M) phi1 - phi2 M
///
/// In frozen-frame finite differences this converges to zero at order h^2
/// for a valid solution; the analytic mode substitutes exact derivatives and
/// vanishes to rounding. The local modes keep the frame attached to each
/// sample point and measure the frame-variation contribution instead.
inline double dirac_residual(const PlaneWaveSolution& sol, const GridRegion& region, double h,
                             const ResidualOptions& opts = {}) {
    if (!(h > 0.0)) throw std::invalid_argument("dirac_residual: h must be positive");
    if (!(region.R > 0.0)) throw std::invalid_argument("dirac_residual: R must be positive");
    if (!(region.r_min > 0.0))
        throw std::invalid_argument("dirac_residual: region must exclude r <= 0");
    if (!(std::abs(sol.mu) * h < 0.1))
        throw std::invalid_argument("dirac_residual: grid too coarse, need |mu| h < 0.1");

    const std::array<detail::Axis, 4> axes = {
        detail::make_axis(region.x0_min, region.x0_max, h, "x0"),
        detail::make_axis(region.s_min, region.s_max, h, "s"),
        detail::make_axis(region.r_min, region.r_max, h, "r"),
        detail::make_axis(region.x3_min, region.x3_max, h, "x3")};

    const MassTerm mass = MassTerm::standard(sol.mass);
    const Biquaternion m_q = mass.M;
    const Biquaternion m_qconj = qconj(mass.M);
    const Complex d0_factor(0.0, -sol.nu);  // d/dx0 of the phase
    const Complex ds_factor(0.0, sol.mu);   // d/ds of the phase

    double worst = 0.0;
    std::array<std::size_t, 4> idx{};
    for (idx[0] = 0; idx[0] < axes[0].n; ++idx[0])
        for (idx[1] = 0; idx[1] < axes[1].n; ++idx[1])
            for (idx[2] = 0; idx[2] < axes[2].n; ++idx[2])
                for (idx[3] = 0; idx[3] < axes[3].n; ++idx[3]) {
                    const double s_c = axes[1].coord(idx[1]);
                    const double theta_c = s_c / region.R;
                    const RotatedBasis frame = rotated_basis(theta_c);

                    // Field sample with the frame rule of the chosen mode.
                    auto sample = [&](const std::array<std::size_t, 4>& at) {
                        const double x0 = axes[0].coord(at[0]);
                        const double arc = axes[1].coord(at[1]);
                        const double frame_theta = (opts.frame == FrameMode::frozen)
                                                       ? theta_c
                                                       : arc / region.R;
                        return detail::eval_pair(sol, x0, arc, frame_theta);
                    };
                    const WaveSample center = sample(idx);

                    std::array<WaveSample, 4> deriv{};
                    if (opts.derivative == DerivativeMode::analytic) {
                        deriv[0] = {d0_factor * center.phi1, d0_factor * center.phi2};
                        deriv[1] = {ds_factor * center.phi1, ds_factor * center.phi2};
                        if (opts.frame == FrameMode::local) {
                            // the phi2 frame turns with s at rate 1/R
                            const Complex ph =
                                detail::wave_phase(sol, axes[0].coord(idx[0]), s_c);
                            deriv[1].phi2 =
                                deriv[1].phi2 +
                                detail::phi2_coefficient_dtheta(sol, theta_c) *
                                    (ph / region.R);
                        }
                        // the wave carries no r or x3 dependence
                    } else {
                        for (std::size_t axis = 0; axis < 4; ++axis) {
                            if (axes[axis].n == 1) continue;
                            auto phi1_at = [&](std::size_t k) {
                                auto at = idx;
                                at[axis] = k;
                                return sample(at).phi1;
                            };
                            auto phi2_at = [&](std::size_t k) {
                                auto at = idx;
                                at[axis] = k;
                                return sample(at).phi2;
                            };
                            deriv[axis] = {detail::fd_first(phi1_at, axes[axis], idx[axis]),
                                           detail::fd_first(phi2_at, axes[axis], idx[axis])};
                        }
                    }

                    const Biquaternion d_phi2 = imag_unit * deriv[0].phi2 +
                                                frame.i_s * deriv[1].phi2 +
                                                frame.i_r * deriv[2].phi2 + i3 * deriv[3].phi2;
                    const Biquaternion ddag_phi1 = imag_unit * deriv[0].phi1 -
                                                   frame.i_s * deriv[1].phi1 -
                                                   frame.i_r * deriv[2].phi1 -
                                                   i3 * deriv[3].phi1;

                    const Biquaternion res_a =
                        d_phi2 - sol.pot * center.phi2 + center.phi1 * m_qconj;
                    const Biquaternion res_b =
                        ddag_phi1 - sol.pot * center.phi1 - center.phi2 * m_q;

                    worst = std::max({worst, res_a.norm(), res_b.norm()});
                }
    return worst;
}

/// Uniformly sampled wave function over a region, each node in its own
/// local frame. Index order (x0, s, r, x3), x3 fastest.
struct SampledField {
    GridRegion region;
    std::array<double, 4> spacing{};
    std::array<std::size_t, 4> shape{};
    std::vector<WaveSample> values;

    const WaveSample& at(std::size_t ix0, std::size_t is, std::size_t ir,
                         std::size_t ix3) const {
        return values[((ix0 * shape[1] + is) * shape[2] + ir) * shape[3] + ix3];
    }
};

inline SampledField sample_field(const PlaneWaveSolution& sol, const GridRegion& region,
                                 double h) {
    if (!(h > 0.0)) throw std::invalid_argument("sample_field: h must be positive");
    if (!(region.R > 0.0)) throw std::invalid_argument("sample_field: R must be positive");
    const std::array<detail::Axis, 4> axes = {
        detail::make_axis(region.x0_min, region.x0_max, h, "x0"),
        detail::make_axis(region.s_min, region.s_max, h, "s"),
        detail::make_axis(region.r_min, region.r_max, h, "r"),
        detail::make_axis(region.x3_min, region.x3_max, h, "x3")};
    SampledField f;
    f.region = region;
    for (std::size_t a = 0; a < 4; ++a) {
        f.spacing[a] = axes[a].step;
        f.shape[a] = axes[a].n;
    }
    f.values.reserve(axes[0].n * axes[1].n * axes[2].n * axes[3].n);
    for (std::size_t a0 = 0; a0 < axes[0].n; ++a0)
        for (std::size_t a1 = 0; a1 < axes[1].n; ++a1)
            for (std::size_t a2 = 0; a2 < axes[2].n; ++a2)
                for (std::size_t a3 = 0; a3 < axes[3].n; ++a3) {
                    const double arc = axes[1].coord(a1);
                    f.values.push_back(
                        detail::eval_pair(sol, axes[0].coord(a0), arc, arc / region.R));
                }
    return f;
}

/// Worst finite-difference residual of the static potential equation for a
/// point charge: the composite second-order operator D D‡ (the wave operator
/// -d^2/dx0^2 + Laplacian) applied to A = f/a at the given L points. The
/// potential is harmonic away from the source, so this converges to zero at
/// order h^2. Points closer than 10 h to the origin are rejected.
inline double photon_residual_coulomb(double f, std::span<const LPoint> points, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("photon_residual_coulomb: h must be positive");
    auto potential = [f](double x1, double x2, double x3) {
        return f / std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
    };
    double worst = 0.0;
    for (const LPoint& p : points) {
        const double a = std::sqrt(p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3);
        if (!(a >= 10.0 * h))
            throw std::domain_error(
                "photon_residual_coulomb: sample point closer than 10 h to the origin");
        const double inv_h2 = 1.0 / (h * h);
        const double center = potential(p.x1, p.x2, p.x3);
        // static field: the x0 second difference vanishes identically
        const double d00 = (center - 2.0 * center + center) * inv_h2;
        const double d11 =
            (potential(p.x1 + h, p.x2, p.x3) - 2.0 * center + potential(p.x1 - h, p.x2, p.x3)) *
            inv_h2;
        const double d22 =
            (potential(p.x1, p.x2 + h, p.x3) - 2.0 * center + potential(p.x1, p.x2 - h, p.x3)) *
            inv_h2;
        const double d33 =
            (potential(p.x1, p.x2, p.x3 + h) - 2.0 * center + potential(p.x1, p.x2, p.x3 - h)) *
            inv_h2;
        worst = std::max(worst, std::abs(-d00 + d11 + d22 + d33));
    }
    return worst;
}

/// Least-squares slope of log(value) against log(h) for a refinement
/// series; 2.0 for a clean order-2 method.
inline double fit_loglog_slope(std::span<const std::pair<double, double>> h_and_value) {
    if (h_and_value.size() < 2)
        throw std::invalid_argument("fit_loglog_slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [h, v] : h_and_value) {
        if (!(h > 0.0 && v > 0.0))
            throw std::invalid_argument("fit_loglog_slope: values must be positive");
        const double x = std::log(h);
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const auto n = static_cast<double>(h_and_value.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace mspace::dirac
