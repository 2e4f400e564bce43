#include <catch2/catch_amalgamated.hpp>

#include "mspace/algebra.hpp"
#include "test_util.hpp"

using namespace mspace;
using testutil::random_biquaternion;

namespace {

// Structure constants of the basis: entry [a][b] is (coefficient index,
// sign) of i_a * i_b. Frozen from the defining relations i_r^2 = -1,
// i1 i2 = i3 cyclic, i2 i1 = -i3.
struct TableEntry {
    int index;
    double sign;
};
constexpr TableEntry mul_table[4][4] = {
    {{0, +1}, {1, +1}, {2, +1}, {3, +1}},
    {{1, +1}, {0, -1}, {3, +1}, {2, -1}},
    {{2, +1}, {3, -1}, {0, -1}, {1, +1}},
    {{3, +1}, {2, +1}, {1, -1}, {0, -1}},
};

const Biquaternion basis[4] = {i0, i1, i2, i3};

Biquaternion table_product(int a, int b) {
    const TableEntry e = mul_table[a][b];
    return e.sign * basis[e.index];
}

} // namespace

TEST_CASE("basis multiplication table matches exactly", "[algebra]") {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            CAPTURE(a, b);
            REQUIRE(basis[a] * basis[b] == table_product(a, b));
        }
    // the named identities spelled out
    REQUIRE(i1 * i2 == i3);
    REQUIRE(i2 * i1 == -i3);
    REQUIRE(i1 * i1 == -i0);
}

TEST_CASE("i0 is the identity", "[algebra]") {
    std::mt19937_64 gen(7);
    for (int k = 0; k < 20; ++k) {
        const Biquaternion q = random_biquaternion(gen);
        REQUIRE(i0 * q == q);
        REQUIRE(q * i0 == q);
    }
}

TEST_CASE("(i1+i2)(i1-i2) = -2 i3", "[algebra]") {
    const Biquaternion lhs = (i1 + i2) * (i1 - i2);
    REQUIRE(lhs == -2.0 * i3);
    // same product through the matrix representation
    const Mat2c oracle = matrix_of(i1 + i2) * matrix_of(i1 - i2);
    REQUIRE((oracle - matrix_of(lhs)).norm() == 0.0);
}

TEST_CASE("quaternion conjugation negates the vector part only", "[algebra]") {
    REQUIRE(qconj(i0) == i0);
    REQUIRE(qconj(i1) == -i1);
    REQUIRE(qconj(i2) == -i2);
    REQUIRE(qconj(i3) == -i3);
    // complex coefficients stay untouched
    const Biquaternion q{{1.0, 2.0}, {3.0, -4.0}, {0.0, 5.0}, {-6.0, 0.0}};
    const Biquaternion c = qconj(q);
    REQUIRE(c.c0 == q.c0);
    REQUIRE(c.c1 == -q.c1);
    REQUIRE(c.c2 == -q.c2);
    REQUIRE(c.c3 == -q.c3);
}

TEST_CASE("conjugation is an anti-automorphism: (ab)‡ = b‡ a‡", "[algebra]") {
    std::mt19937_64 gen(11);
    for (int k = 0; k < 100; ++k) {
        const Biquaternion a = random_biquaternion(gen);
        const Biquaternion b = random_biquaternion(gen);
        const Biquaternion lhs = qconj(a * b);
        const Biquaternion rhs = qconj(b) * qconj(a);
        REQUIRE((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }
}

TEST_CASE("q qconj(q) is a pure scalar equal to the coefficient square sum", "[algebra]") {
    std::mt19937_64 gen(13);
    for (int k = 0; k < 1000; ++k) {
        const Biquaternion q = random_biquaternion(gen);
        const Biquaternion p = q * qconj(q);
        const double scale = q.norm() * q.norm() + 1e-30;
        REQUIRE(std::abs(p.c1) / scale < 1e-12);
        REQUIRE(std::abs(p.c2) / scale < 1e-12);
        REQUIRE(std::abs(p.c3) / scale < 1e-12);
        const Complex expect = q.c0 * q.c0 + q.c1 * q.c1 + q.c2 * q.c2 + q.c3 * q.c3;
        REQUIRE(std::abs(p.c0 - expect) / scale < 1e-12);
    }
}

TEST_CASE("matrix_of basis images", "[algebra]") {
    // i3 = -i sigma3 = [[-i,0],[0,i]]
    const Mat2c m3 = matrix_of(i3);
    REQUIRE(m3.m00 == Complex(0.0, -1.0));
    REQUIRE(m3.m01 == Complex(0.0, 0.0));
    REQUIRE(m3.m10 == Complex(0.0, 0.0));
    REQUIRE(m3.m11 == Complex(0.0, 1.0));
    // identity image
    const Mat2c m0 = matrix_of(i0);
    REQUIRE(m0.m00 == Complex(1.0));
    REQUIRE(m0.m11 == Complex(1.0));
    REQUIRE(m0.m01 == Complex(0.0));
    REQUIRE(m0.m10 == Complex(0.0));
}

TEST_CASE("matrix_of is a ring homomorphism", "[algebra]") {
    std::mt19937_64 gen(17);
    for (int k = 0; k < 1000; ++k) {
        const Biquaternion a = random_biquaternion(gen);
        const Biquaternion b = random_biquaternion(gen);
        const Mat2c lhs = matrix_of(a * b);
        const Mat2c rhs = matrix_of(a) * matrix_of(b);
        REQUIRE((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("matrix_of(q qconj(q)) is the scalar times identity", "[algebra]") {
    std::mt19937_64 gen(19);
    for (int k = 0; k < 100; ++k) {
        const Biquaternion q = random_biquaternion(gen);
        const Complex scalar = q.c0 * q.c0 + q.c1 * q.c1 + q.c2 * q.c2 + q.c3 * q.c3;
        const Mat2c lhs = matrix_of(q * qconj(q));
        const Mat2c expect{scalar, 0.0, 0.0, scalar};
        REQUIRE((lhs - expect).norm() <= 1e-12 * (1.0 + std::abs(scalar)));
    }
}

TEST_CASE("rotated basis at the reference angles", "[algebra]") {
    const RotatedBasis at0 = rotated_basis(0.0);
    REQUIRE((at0.i_s - i1).norm() == 0.0);
    REQUIRE((at0.i_r - i2).norm() == 0.0);

    const RotatedBasis at90 = rotated_basis(std::numbers::pi / 2.0);
    REQUIRE((at90.i_s - (-i2)).norm() < 1e-15);
    REQUIRE((at90.i_r - i1).norm() < 1e-15);
}

TEST_CASE("rotated basis recombines to the fixed basis", "[algebra]") {
    std::mt19937_64 gen(23);
    for (int k = 0; k < 100; ++k) {
        const double theta = testutil::uniform(gen, -10.0, 10.0);
        const RotatedBasis rb = rotated_basis(theta);
        const double c = std::cos(theta), s = std::sin(theta);
        REQUIRE((rb.i_r * s + rb.i_s * c - i1).norm() < 1e-12);
        REQUIRE((rb.i_r * c - rb.i_s * s - i2).norm() < 1e-12);
    }
}

TEST_CASE("rotated basis keeps the multiplication table", "[algebra]") {
    std::mt19937_64 gen(29);
    for (int k = 0; k < 100; ++k) {
        const double theta = testutil::uniform(gen, -10.0, 10.0);
        const RotatedBasis rb = rotated_basis(theta);
        const Biquaternion rotated[4] = {i0, rb.i_s, rb.i_r, i3};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const TableEntry e = mul_table[a][b];
                const Biquaternion expect = e.sign * rotated[e.index];
                CAPTURE(theta, a, b);
                REQUIRE((rotated[a] * rotated[b] - expect).norm() < 1e-12);
            }
        REQUIRE((rb.i_s * rb.i_r - i3).norm() < 1e-12);
    }
}

TEST_CASE("reflector times reflector is block diagonal", "[algebra]") {
    std::mt19937_64 gen(31);
    const Biquaternion a = random_biquaternion(gen);
    const Biquaternion b = random_biquaternion(gen);
    const Biquaternion c = random_biquaternion(gen);
    const Biquaternion d = random_biquaternion(gen);
    const BlockMatrix prod =
        BlockMatrix::reflector(a, b) * BlockMatrix::reflector(c, d);
    REQUIRE((prod - BlockMatrix::diagonal(a * d, b * c)).norm() < 1e-12);
    REQUIRE(prod.a12.norm() == 0.0);
    REQUIRE(prod.a21.norm() == 0.0);

    // reflector times diagonal stays a reflector
    const BlockMatrix refl = BlockMatrix::reflector(a, b) * BlockMatrix::diagonal(c, d);
    REQUIRE(refl.a11.norm() == 0.0);
    REQUIRE(refl.a22.norm() == 0.0);
}

TEST_CASE("identity block matrix", "[algebra]") {
    std::mt19937_64 gen(37);
    const BlockMatrix x{random_biquaternion(gen), random_biquaternion(gen),
                        random_biquaternion(gen), random_biquaternion(gen)};
    REQUIRE((BlockMatrix::identity() * x - x).norm() == 0.0);
    REQUIRE((x * BlockMatrix::identity() - x).norm() == 0.0);
}

TEST_CASE("block product agrees with the flattened 4x4 product", "[algebra]") {
    std::mt19937_64 gen(41);
    for (int k = 0; k < 200; ++k) {
        const BlockMatrix a{random_biquaternion(gen), random_biquaternion(gen),
                            random_biquaternion(gen), random_biquaternion(gen)};
        const BlockMatrix b{random_biquaternion(gen), random_biquaternion(gen),
                            random_biquaternion(gen), random_biquaternion(gen)};
        const testutil::Mat4c lhs = testutil::flatten(a * b);
        const testutil::Mat4c rhs = testutil::flatten(a) * testutil::flatten(b);
        REQUIRE(lhs.max_abs_diff(rhs) < 1e-12 * (1.0 + a.norm() * b.norm()));
    }
}
