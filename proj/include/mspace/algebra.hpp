#pragma once

#include <cmath>
#include <complex>

namespace mspace {

using Complex = std::complex<double>;

inline constexpr Complex imag_unit{0.0, 1.0};

/// Element of the ring of complex quaternions H^C,
///
///     q = c0*i0 + c1*i1 + c2*i2 + c3*i3,
///
/// with complex coefficients over the quaternion basis. The basis obeys
/// i0 = 1, i_r^2 = -1, i1*i2 = i3 (cyclic) and i2*i1 = -i3. Quaternion
/// conjugation (qconj) negates the i1,i2,i3 parts and leaves the complex
/// coefficients alone; complex conjugation of coefficients is a separate
/// concern and is never applied implicitly.
struct Biquaternion {
    Complex c0{}, c1{}, c2{}, c3{};

    constexpr Biquaternion() = default;
    constexpr Biquaternion(Complex s0, Complex s1, Complex s2, Complex s3)
        : c0(s0), c1(s1), c2(s2), c3(s3) {}

    /// Pure-i0 element.
    static constexpr Biquaternion scalar(Complex s) { return {s, 0.0, 0.0, 0.0}; }

    constexpr bool operator==(const Biquaternion&) const = default;

    constexpr Biquaternion operator+(const Biquaternion& o) const {
        return {c0 + o.c0, c1 + o.c1, c2 + o.c2, c3 + o.c3};
    }
    constexpr Biquaternion operator-(const Biquaternion& o) const {
        return {c0 - o.c0, c1 - o.c1, c2 - o.c2, c3 - o.c3};
    }
    constexpr Biquaternion operator-() const { return {-c0, -c1, -c2, -c3}; }

    // Hamilton product with complex coefficients.
    constexpr Biquaternion operator*(const Biquaternion& o) const {
        return {c0 * o.c0 - c1 * o.c1 - c2 * o.c2 - c3 * o.c3,
                c0 * o.c1 + c1 * o.c0 + c2 * o.c3 - c3 * o.c2,
                c0 * o.c2 - c1 * o.c3 + c2 * o.c0 + c3 * o.c1,
                c0 * o.c3 + c1 * o.c2 - c2 * o.c1 + c3 * o.c0};
    }

    /// Root-sum-square of coefficient magnitudes.
    double norm() const {
        return std::sqrt(std::norm(c0) + std::norm(c1) + std::norm(c2) + std::norm(c3));
    }
};

constexpr Biquaternion operator*(Complex s, const Biquaternion& q) {
    return {s * q.c0, s * q.c1, s * q.c2, s * q.c3};
}
constexpr Biquaternion operator*(const Biquaternion& q, Complex s) { return s * q; }
constexpr Biquaternion operator*(double s, const Biquaternion& q) { return Complex(s) * q; }
constexpr Biquaternion operator*(const Biquaternion& q, double s) { return Complex(s) * q; }

inline constexpr Biquaternion i0{1.0, 0.0, 0.0, 0.0};
inline constexpr Biquaternion i1{0.0, 1.0, 0.0, 0.0};
inline constexpr Biquaternion i2{0.0, 0.0, 1.0, 0.0};
inline constexpr Biquaternion i3{0.0, 0.0, 0.0, 1.0};

/// Quaternion conjugation: q = c0 - c1*i1 - c2*i2 - c3*i3. Complex
/// coefficients are not conjugated. Anti-automorphism: qconj(a*b) =
/// qconj(b)*qconj(a), and q*qconj(q) = c0^2+c1^2+c2^2+c3^2 (pure scalar).
constexpr Biquaternion qconj(const Biquaternion& q) {
    return {q.c0, -q.c1, -q.c2, -q.c3};
}

/// 2x2 complex matrix, row major.
struct Mat2c {
    Complex m00{}, m01{}, m10{}, m11{};

    constexpr bool operator==(const Mat2c&) const = default;

    constexpr Mat2c operator+(const Mat2c& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    constexpr Mat2c operator-(const Mat2c& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    constexpr Mat2c operator*(const Mat2c& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }

    double norm() const {
        return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
    }
};

/// Faithful 2x2 complex representation: i0 -> identity, i_r -> -i*sigma_r
/// with the standard Pauli base sigma1 = [[0,1],[1,0]], sigma2 = [[0,-i],[i,0]],
/// sigma3 = [[1,0],[0,-1]]. Ring homomorphism: matrix_of(a*b) =
/// matrix_of(a)*matrix_of(b). Exists as a representation cross-check; the
/// coefficient form is the working representation everywhere else.
constexpr Mat2c matrix_of(const Biquaternion& q) {
    return {q.c0 - imag_unit * q.c3, -imag_unit * q.c1 - q.c2,
            -imag_unit * q.c1 + q.c2, q.c0 + imag_unit * q.c3};
}

/// Quaternion frame aligned with a polar chart at angle theta:
/// i_s points along the arc, i_r along the radius,
///
///     i_s = i1*cos(theta) - i2*sin(theta),
///     i_r = i1*sin(theta) + i2*cos(theta),
///
/// inverting to i1 = i_r*sin + i_s*cos, i2 = i_r*cos - i_s*sin. The tuple
/// (i0, i_s, i_r, i3) satisfies the same multiplication table as
/// (i0, i1, i2, i3); in particular i_s*i_r = i3.
struct RotatedBasis {
    double theta{};
    Biquaternion i_s;
    Biquaternion i_r;
};

inline RotatedBasis rotated_basis(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {theta, i1 * c - i2 * s, i1 * s + i2 * c};
}

/// 2x2 matrix of biquaternions. A reflector is the off-diagonal form
/// [[0, upper], [lower, 0]]; the product of two reflectors is block
/// diagonal, and reflector * diagonal is again a reflector.
struct BlockMatrix {
    Biquaternion a11, a12, a21, a22;

    static constexpr BlockMatrix reflector(const Biquaternion& upper,
                                           const Biquaternion& lower) {
        return {{}, upper, lower, {}};
    }
    static constexpr BlockMatrix diagonal(const Biquaternion& d1, const Biquaternion& d2) {
        return {d1, {}, {}, d2};
    }
    static constexpr BlockMatrix identity() { return diagonal(i0, i0); }

    constexpr bool operator==(const BlockMatrix&) const = default;

    constexpr BlockMatrix operator+(const BlockMatrix& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    constexpr BlockMatrix operator-(const BlockMatrix& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    constexpr BlockMatrix operator*(const BlockMatrix& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }

    double norm() const {
        const double n11 = a11.norm(), n12 = a12.norm();
        const double n21 = a21.norm(), n22 = a22.norm();
        return std::sqrt(n11 * n11 + n12 * n12 + n21 * n21 + n22 * n22);
    }
};

constexpr BlockMatrix operator*(Complex s, const BlockMatrix& b) {
    return {s * b.a11, s * b.a12, s * b.a21, s * b.a22};
}
constexpr BlockMatrix operator*(const BlockMatrix& b, Complex s) { return s * b; }

} // namespace mspace
