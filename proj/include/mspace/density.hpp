#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "mspace/geometry.hpp"

namespace mspace::density {

/// Apparent probability in L of a state uniform in M: P^L = R P^M / r.
/// Cylindrical law (r is the distance from the x3 axis); identity at r = R.
inline double pl_from_pm(double p_m, double r, double R) {
    check_nonsingular_radius(r, "pl_from_pm: r");
    check_positive_radius(R, "pl_from_pm: R");
    if (!(p_m >= 0.0 && p_m <= 1.0))
        throw std::domain_error("pl_from_pm: P^M must lie in [0,1]");
    return R * p_m / r;
}

inline double sphere_area(double a) {
    check_positive_radius(a, "sphere_area: a");
    return 4.0 * std::numbers::pi * a * a;
}

namespace detail {

/// Composite midpoint rule on [0, pi].
template <typename F>
double midpoint_0_pi(const F& f, std::size_t panels) {
    if (panels == 0) throw std::invalid_argument("quadrature: need at least one panel");
    const double step = std::numbers::pi / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t k = 0; k < panels; ++k)
        sum += f((static_cast<double>(k) + 0.5) * step);
    return sum * step;
}

} // namespace detail

/// Quadrature of the surface-of-revolution integrand 2 pi a^2 sin(theta).
inline double sphere_area_quadrature(double a, std::size_t panels = 10000) {
    check_positive_radius(a, "sphere_area_quadrature: a");
    return detail::midpoint_0_pi(
        [a](double t) { return 2.0 * std::numbers::pi * a * a * std::sin(t); }, panels);
}

/// Mean distance of a point on the sphere of radius a from a fixed axis
/// through the centre. Closed form pi a / 4.
inline double mean_axis_distance(double a) {
    check_positive_radius(a, "mean_axis_distance: a");
    return std::numbers::pi * a / 4.0;
}

/// Same mean via the surface integral of a sin(theta): the integrand is
/// 2 pi a^3 sin^2(theta), divided by the sphere area.
inline double mean_axis_distance_quadrature(double a, std::size_t panels = 10000) {
    check_positive_radius(a, "mean_axis_distance_quadrature: a");
    const double integral = detail::midpoint_0_pi(
        [a](double t) {
            const double s = std::sin(t);
            return 2.0 * std::numbers::pi * a * a * a * s * s;
        },
        panels);
    return integral / sphere_area(a);
}

/// Mean inverse distance from the axis. Closed form pi / (2a).
inline double mean_axis_inverse_distance(double a) {
    check_positive_radius(a, "mean_axis_inverse_distance: a");
    return std::numbers::pi / (2.0 * a);
}

/// The sin(theta) of the surface measure cancels the 1/sin(theta) of the
/// integrand, so the quadrature integrand is the constant 2 pi a.
inline double mean_axis_inverse_distance_quadrature(double a, std::size_t panels = 10000) {
    check_positive_radius(a, "mean_axis_inverse_distance_quadrature: a");
    const double integral = detail::midpoint_0_pi(
        [a](double) { return 2.0 * std::numbers::pi * a; }, panels);
    return integral / sphere_area(a);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Uniform double in [0,1) from the top 53 bits; bit-identical across
/// platforms, unlike std::uniform_real_distribution.
inline double canonical53(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Monte Carlo estimate of both axis means. The direction is sampled
/// uniformly on the sphere via a uniform cos(theta). Note the inverse
/// estimator 1/(a sin) has heavy tails near the poles; its standard error
/// is reported and quadrature stays the authoritative value.
struct McEstimate {
    double mean_distance{};
    double mean_inverse_distance{};
    double stderr_distance{};
    double stderr_inverse_distance{};
    std::size_t samples{};
    std::uint64_t seed{};
    unsigned workers{1};
};

/// Samples are split into `workers` contiguous chunks with seeds derived
/// per chunk, so the result is a deterministic function of
/// (seed, n_samples, workers) regardless of how the chunks are scheduled.
inline McEstimate mean_axis_mc(double a, std::size_t n_samples, std::uint64_t seed,
                               unsigned workers = 1) {
    check_positive_radius(a, "mean_axis_mc: a");
    if (n_samples == 0) throw std::invalid_argument("mean_axis_mc: need at least one sample");
    if (workers == 0) throw std::invalid_argument("mean_axis_mc: need at least one worker");
    if (workers > n_samples) workers = static_cast<unsigned>(n_samples);

    double sum_d = 0.0, sum_d2 = 0.0, sum_inv = 0.0, sum_inv2 = 0.0;
    const std::size_t base = n_samples / workers;
    const std::size_t extra = n_samples % workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t chunk = base + (w < extra ? 1 : 0);
        std::mt19937_64 gen(detail::splitmix64(seed + 0x9E3779B97F4A7C15ULL * w));
        for (std::size_t k = 0; k < chunk; ++k) {
            double sin_t = 0.0;
            do {
                const double u = 2.0 * detail::canonical53(gen) - 1.0;  // cos(theta)
                sin_t = std::sqrt(1.0 - u * u);
            } while (sin_t == 0.0);  // exact pole hit would divide by zero
            const double d = a * sin_t;
            const double inv = 1.0 / d;
            sum_d += d;
            sum_d2 += d * d;
            sum_inv += inv;
            sum_inv2 += inv * inv;
        }
    }
    const auto n = static_cast<double>(n_samples);
    McEstimate e;
    e.mean_distance = sum_d / n;
    e.mean_inverse_distance = sum_inv / n;
    if (n_samples > 1) {
        const double var_d = (sum_d2 - sum_d * sum_d / n) / (n - 1.0);
        const double var_inv = (sum_inv2 - sum_inv * sum_inv / n) / (n - 1.0);
        e.stderr_distance = std::sqrt(std::max(0.0, var_d) / n);
        e.stderr_inverse_distance = std::sqrt(std::max(0.0, var_inv) / n);
    }
    e.samples = n_samples;
    e.seed = seed;
    e.workers = workers;
    return e;
}

/// Sphere-averaged apparent probability: P^L with 1/r replaced by the mean
/// inverse axis distance, giving pi R P^M / (2a). Depends on position only
/// through a, i.e. the averaged distribution is spherically symmetric.
inline double averaged_probability(double p_m, double R, double a) {
    check_positive_radius(R, "averaged_probability: R");
    if (!(p_m >= 0.0 && p_m <= 1.0))
        throw std::domain_error("averaged_probability: P^M must lie in [0,1]");
    return p_m * R * mean_axis_inverse_distance(a);
}

/// Sphere-averaged potential magnitude: f pi / (2a), an inverse-distance
/// law in a.
inline double averaged_potential(double f, double a) {
    return f * mean_axis_inverse_distance(a);
}

enum class ProfileLaw { single_state, averaged };

struct ProfileRow {
    double radius{};  // r for the single-state law, a for the averaged one
    double value{};
};

/// Tabulate one of the two probability laws over [lo, hi], linear spacing.
struct DensityProfile {
    ProfileLaw law{ProfileLaw::single_state};
    double p_m{1.0};
    double R{1.0};
    std::vector<ProfileRow> rows;
};

inline DensityProfile density_profile(ProfileLaw law, double p_m, double R, double lo,
                                      double hi, std::size_t count) {
    if (count == 0) throw std::invalid_argument("density_profile: need at least one row");
    if (!(lo > 0.0 && hi >= lo)) throw std::domain_error("density_profile: need 0 < lo <= hi");
    DensityProfile prof{law, p_m, R, {}};
    prof.rows.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0
                                    : static_cast<double>(k) / static_cast<double>(count - 1);
        const double radius = lo + t * (hi - lo);
        const double value = law == ProfileLaw::single_state
                                 ? pl_from_pm(p_m, radius, R)
                                 : averaged_probability(p_m, R, radius);
        prof.rows.push_back({radius, value});
    }
    return prof;
}

enum class AverageMethod { closed_form, quadrature, monte_carlo };

/// One sphere-average record, by any of the three routes.
struct SphereAverageResult {
    double a{};
    double mean_distance{};
    double mean_inverse_distance{};
    AverageMethod method{AverageMethod::closed_form};
    std::size_t samples{};       // monte carlo only
    std::uint64_t seed{};        // monte carlo only
    double stderr_distance{};    // monte carlo only
    double stderr_inverse_distance{};
};

struct AverageConfig {
    std::size_t panels = 10000;
    std::size_t mc_samples = 100000;
    std::uint64_t seed = 42;
    unsigned workers = 1;
};

inline SphereAverageResult sphere_average(double a, AverageMethod method,
                                          const AverageConfig& cfg = {}) {
    SphereAverageResult r;
    r.a = a;
    r.method = method;
    switch (method) {
    case AverageMethod::closed_form:
        r.mean_distance = mean_axis_distance(a);
        r.mean_inverse_distance = mean_axis_inverse_distance(a);
        break;
    case AverageMethod::quadrature:
        r.mean_distance = mean_axis_distance_quadrature(a, cfg.panels);
        r.mean_inverse_distance = mean_axis_inverse_distance_quadrature(a, cfg.panels);
        break;
    case AverageMethod::monte_carlo: {
        const McEstimate e = mean_axis_mc(a, cfg.mc_samples, cfg.seed, cfg.workers);
        r.mean_distance = e.mean_distance;
        r.mean_inverse_distance = e.mean_inverse_distance;
        r.samples = e.samples;
        r.seed = e.seed;
        r.stderr_distance = e.stderr_distance;
        r.stderr_inverse_distance = e.stderr_inverse_distance;
        break;
    }
    }
    return r;
}

} // namespace mspace::density
