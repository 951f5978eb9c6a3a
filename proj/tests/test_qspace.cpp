#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qsl/qspace.hpp"
#include "qsl/selfcheck.hpp"

using namespace qsl;

namespace {

const Vec3 e1{1, 0, 0}, e3{0, 0, 1};

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vec3 u{n(rng), n(rng), n(rng)};
    const double l = norm(u);
    for (auto& x : u) x /= l;
    return u;
}

double frobenius2_full(const QTensor& q) {
    const Mat3 m = q.matrix();
    double s = 0;
    for (const auto& r : m)
        for (double x : r) s += x * x;
    return s;
}

}  // namespace

TEST(QTensor, ReconstructedMatrixIsSymmetricTraceless) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; ++k) {
        const QTensor q = random_qtensor(rng, 5.0);
        const Mat3 m = q.matrix();
        EXPECT_DOUBLE_EQ(m[0][0] + m[1][1] + m[2][2], 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) EXPECT_EQ(m[i][j], m[j][i]);
        EXPECT_NEAR(norm2(q), frobenius2_full(q), 1e-12 * (1 + norm2(q)));
    }
}

TEST(BulkParams, DefaultsAreBistable) {
    const BulkParams p;
    EXPECT_TRUE(p.bistable());
    EXPECT_NEAR(p.s_plus(), std::sqrt(3 * p.a / p.c), 1e-12);
    EXPECT_NEAR(p.s_plus(), 3.0, 1e-12);
    EXPECT_GE(p.c0(0.0) * p.c0(0.0), p.b * p.b / (p.c * p.c) - 2 * p.a / p.c - 1e-12);
    EXPECT_DOUBLE_EQ(p.c0(10.0), 10.0);
}

TEST(BulkEnergy, Examples) {
    const BulkParams p;
    EXPECT_EQ(bulk_energy(QTensor{}, p), 0.0);
    EXPECT_NEAR(bulk_energy(uniaxial(3, e3), p), 0.0, 1e-13);
    EXPECT_NEAR(bulk_energy(uniaxial(1, e3), p), 4.0 / 9.0, 1e-14);
}

TEST(BulkEnergy, NonnegativeWithEqualityOnlyAtMinimisers) {
    const BulkParams p;
    std::mt19937_64 rng(2);
    for (int k = 0; k < 10000; ++k) {
        const QTensor q = random_qtensor(rng, p.c0(0.0));
        const double f = bulk_energy(q, p);
        EXPECT_GE(f, 0.0);
        if (f < 1e-10) {
            const Retraction r = uniaxial_retract(q, p);
            EXPECT_TRUE(norm(q) < 1e-6 || (r.exact && std::abs(r.s - p.s_plus()) < 1e-4));
        }
    }
}

TEST(BulkGradient, Examples) {
    const BulkParams p;
    const QTensor z = bulk_gradient(QTensor{}, p);
    EXPECT_EQ(norm(z), 0.0);
    const QTensor g = bulk_gradient(uniaxial(1, e3), p);
    EXPECT_NEAR(norm(g - uniaxial(2.0 / 3.0, e3)), 0.0, 1e-14);
}

TEST(BulkGradient, MatchesFiniteDifferences) {
    const BulkParams p;
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10; ++k) {
        const QTensor q = random_qtensor(rng, 4.0);
        QTensor dir = random_qtensor(rng, 1.0);
        dir = dir / norm(dir);
        const double step = 1e-5;
        const double fd = (bulk_energy(q + dir * step, p) - bulk_energy(q - dir * step, p)) / (2 * step);
        const double an = contract(bulk_gradient(q, p), dir);
        EXPECT_NEAR(fd, an, 1e-6 * std::max(1.0, std::abs(an)));
    }
}

TEST(BulkGradient, UniaxialReduction) {
    const BulkParams p;
    std::mt19937_64 rng(4);
    for (double s : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        const Vec3 u = random_unit(rng);
        const double coef = p.a * s - p.b / 3 * s * s + 2 * p.c / 3 * s * s * s;
        const QTensor diff = bulk_gradient(uniaxial(s, u), p) - uniaxial(coef, u);
        EXPECT_LT(norm(diff), 1e-12);
    }
}

TEST(Uniaxial, Examples) {
    EXPECT_EQ(norm(uniaxial(0, e1)), 0.0);
    const Mat3 m = uniaxial(3, e3).matrix();
    EXPECT_NEAR(m[0][0], -1, 1e-15);
    EXPECT_NEAR(m[1][1], -1, 1e-15);
    EXPECT_NEAR(m[2][2], 2, 1e-15);
    EXPECT_NEAR(norm(uniaxial(2, e1)), 2 * std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_THROW(uniaxial(1, Vec3{1, 1, 0}), std::invalid_argument);
}

TEST(Uniaxial, NormIdentity) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> us(-4, 4);
    for (int k = 0; k < 100; ++k) {
        const double s = us(rng);
        EXPECT_NEAR(norm2(uniaxial(s, random_unit(rng))), 2.0 / 3.0 * s * s, 1e-12);
    }
}

TEST(Retraction, Examples) {
    const BulkParams p;
    const Retraction r = uniaxial_retract(uniaxial(2, e1), p);
    EXPECT_NEAR(r.s, 2.0, 1e-12);
    EXPECT_NEAR(std::abs(r.u[0]), 1.0, 1e-12);
    EXPECT_TRUE(r.exact);

    const Retraction z = uniaxial_retract(QTensor{}, p);
    EXPECT_EQ(z.s, 0.0);
    EXPECT_EQ(z.u, e3);
    EXPECT_TRUE(z.exact);

    const Retraction b = uniaxial_retract(QTensor{0.5, 0, 0, 0.1, 0}, p);
    EXPECT_NEAR(b.s, 0.75, 1e-12);
    EXPECT_NEAR(b.u[0], 1.0, 1e-12);  // sign-normalized
    EXPECT_FALSE(b.exact);
}

TEST(Retraction, RoundTripRandomDirectors) {
    const BulkParams p;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> us(0.01, 3.0);
    for (int k = 0; k < 1000; ++k) {
        const double s = us(rng);
        const Vec3 u = random_unit(rng);
        const Retraction r = uniaxial_retract(uniaxial(s, u), p);
        EXPECT_NEAR(r.s, s, 1e-10);
        EXPECT_NEAR(std::abs(dot(r.u, u)), 1.0, 1e-9);
        EXPECT_TRUE(r.exact);
    }
}

TEST(Retraction, ClampsAboveNematicOrder) {
    const BulkParams p;
    const Retraction r = uniaxial_retract(uniaxial(4, e3), p);
    EXPECT_EQ(r.s, 3.0);
    EXPECT_TRUE(r.clamped);
    // negative order: largest eigenvalue belongs to the orthogonal plane
    const Retraction n = uniaxial_retract(uniaxial(-1, e3), p);
    EXPECT_NEAR(n.s, 0.5, 1e-12);
    EXPECT_FALSE(n.exact);
}

TEST(Eigen, DescendingAndConsistentWithInvariants) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 500; ++k) {
        const QTensor q = random_qtensor(rng, 3.0);
        const Vec3 l = eigenvalues(q);
        EXPECT_GE(l[0], l[1]);
        EXPECT_GE(l[1], l[2]);
        EXPECT_NEAR(l[0] + l[1] + l[2], 0.0, 1e-12);
        EXPECT_NEAR(l[0] * l[0] + l[1] * l[1] + l[2] * l[2], norm2(q), 1e-10);
        EXPECT_NEAR(l[0] * l[1] * l[2], det(q), 1e-10);
        const Vec3 u = eigenvector(q, l[0]);
        const Mat3 m = q.matrix();
        for (int i = 0; i < 3; ++i)
            EXPECT_NEAR(m[i][0] * u[0] + m[i][1] * u[1] + m[i][2] * u[2], l[0] * u[i], 1e-8);
    }
}
