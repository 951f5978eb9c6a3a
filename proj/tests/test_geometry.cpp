#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qsl/geometry.hpp"

using namespace qsl;

namespace {
const double pi = std::numbers::pi;
}

TEST(Evolve, CircleRadiusLaw) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.6, 0.1);
    EXPECT_NEAR(evolve(c, 0.1).radius(), 0.4, 1e-15);
    EXPECT_DOUBLE_EQ(evolve(c, 0.0).radius(), 0.6);
    EXPECT_THROW(evolve(c, 0.14), std::invalid_argument);  // R^2 = 0.08 < 9 delta^2
    EXPECT_THROW(evolve(c, -1.0), std::invalid_argument);
    EXPECT_NEAR(c.extinction_margin_time(), 0.135, 1e-15);
}

TEST(Evolve, FlatIsStatic) {
    const auto f = AnalyticInterface::flat(0.2, 0.1);
    const auto g = evolve(f, 3.0);
    for (Vec2 x : {Vec2{0.1, 0.5}, Vec2{-0.3, -0.7}}) {
        EXPECT_EQ(signed_distance(f, x), signed_distance(g, x));
        EXPECT_EQ(interface_curvature(g), 0.0);
        EXPECT_EQ(normal_velocity(g), 0.0);
    }
}

TEST(SignedDistance, Examples) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.5, 0.1);
    EXPECT_DOUBLE_EQ(signed_distance(c, {0.25, 0}), 0.25);
    EXPECT_DOUBLE_EQ(signed_distance(c, {0.5, 0}), 0.0);
    EXPECT_DOUBLE_EQ(signed_distance(AnalyticInterface::flat(0, 0.1), {0.3, -0.2}), -0.2);
    const auto s = AnalyticInterface::slab(0, 1.0, 0.1);
    EXPECT_DOUBLE_EQ(signed_distance(s, {0.0, 0.25}), 0.75);
    EXPECT_DOUBLE_EQ(signed_distance(s, {0.0, -1.5}), -0.5);
}

TEST(SignedDistance, GradientIsUnitAndPointsIntoNematic) {
    const auto c = AnalyticInterface::circle({0.1, -0.2}, 0.5, 0.1);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    const double h = 1e-6;
    for (int k = 0; k < 200; ++k) {
        const Vec2 x{u(rng), u(rng)};
        const Vec2 n = distance_gradient(c, x);
        EXPECT_NEAR(norm(n), 1.0, 1e-14);
        const Vec2 fd{(signed_distance(c, x + Vec2{h, 0}) - signed_distance(c, x - Vec2{h, 0})) / (2 * h),
                      (signed_distance(c, x + Vec2{0, h}) - signed_distance(c, x - Vec2{0, h})) / (2 * h)};
        EXPECT_NEAR(norm(n - fd), 0.0, 1e-8);
    }
}

TEST(SignedDistance, LaplacianIsMinusCurvatureOnInterface) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.5, 0.1);
    const double h = 1e-3;
    for (int k = 0; k < 16; ++k) {
        const double th = 2 * pi * k / 16;
        const Vec2 x{0.5 * std::cos(th), 0.5 * std::sin(th)};
        const double lap = (signed_distance(c, x + Vec2{h, 0}) + signed_distance(c, x - Vec2{h, 0}) +
                            signed_distance(c, x + Vec2{0, h}) + signed_distance(c, x - Vec2{0, h}) -
                            4 * signed_distance(c, x)) / (h * h);
        EXPECT_NEAR(lap, -interface_curvature(c), 1e-5);
        EXPECT_NEAR(distance_laplacian(c, x), -2.0, 1e-14);
    }
}

TEST(Cutoffs, PhiSandwich) {
    for (int k = 0; k <= 100; ++k) {
        const double x = -0.5 + k / 100.0;
        const double phi = cutoff_phi(x);
        EXPECT_GE(phi, 1 - 4 * x * x - 1e-15);
        EXPECT_LE(phi, 1 - x * x / 2 + 1e-15);
    }
    EXPECT_EQ(cutoff_phi(1.0), 0.0);
    EXPECT_EQ(cutoff_phi(-1.5), 0.0);
    EXPECT_NEAR(cutoff_phi(0.5), 0.5, 1e-15);
}

TEST(Cutoffs, ZetaAndInitialBlend) {
    const double d = 0.1;
    EXPECT_EQ(cutoff_zeta(0.0, d), 1.0);
    EXPECT_EQ(cutoff_zeta(0.1, d), 1.0);
    EXPECT_EQ(cutoff_zeta(-0.2, d), 0.0);
    EXPECT_EQ(cutoff_zeta(0.3, d), 0.0);
    EXPECT_NEAR(cutoff_zeta(0.15, d), 0.5, 1e-15);
    EXPECT_EQ(cutoff_initial(0.5), 1.0);
    EXPECT_EQ(cutoff_initial(-1.0), 0.0);
    EXPECT_NEAR(cutoff_initial(0.75), 0.5, 1e-15);
}

TEST(Xi, Examples) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.5, 0.1);
    const Vec2 on{0.5, 0};
    EXPECT_NEAR(norm(xi_field(c, on)), 1.0, 1e-15);
    EXPECT_NEAR(xi_field(c, on).x, -1.0, 1e-15);  // inward: into the nematic disc
    EXPECT_EQ(norm(xi_field(c, {0.35, 0})), 0.0);
    EXPECT_EQ(norm(xi_field(c, {0.61, 0})), 0.0);
    const Vec2 half = xi_field(c, {0.45, 0});
    EXPECT_NEAR(norm(half), 0.5, 1e-14);
    EXPECT_NEAR(half.x, -0.5, 1e-14);
}

TEST(Xi, DivergenceIsMinusCurvatureOnInterfaceAndMatchesStencil) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.5, 0.1);
    const double h = 1e-5;
    for (int k = 0; k < 8; ++k) {
        const double th = 2 * pi * k / 8;
        for (double r : {0.5, 0.47, 0.53, 0.42}) {
            const Vec2 x{r * std::cos(th), r * std::sin(th)};
            const double fd = (xi_field(c, x + Vec2{h, 0}).x - xi_field(c, x - Vec2{h, 0}).x +
                               xi_field(c, x + Vec2{0, h}).y - xi_field(c, x - Vec2{0, h}).y) / (2 * h);
            EXPECT_NEAR(xi_divergence(c, x), fd, 1e-6);
            EXPECT_NEAR(sample(c, x).div_xi, xi_divergence(c, x), 1e-15);
        }
        EXPECT_NEAR(xi_divergence(c, {0.5 * std::cos(th), 0.5 * std::sin(th)}), -interface_curvature(c), 1e-12);
    }
}

TEST(Xi, LengthDefect) {
    // |xi| <= 1 - k min(d^2, 1) with a positive k
    const auto c = AnalyticInterface::circle({0, 0}, 0.6, 0.1);
    double k = INFINITY;
    for (double r = 0.0; r < 1.4; r += 0.003) {
        const double d = signed_distance(c, {r, 0});
        if (std::abs(d) < 1e-9) continue;
        const double defect = 1 - norm(xi_field(c, {r, 0}));
        k = std::min(k, defect / std::min(d * d, 1.0));
    }
    EXPECT_GT(k, 0.0);
}

TEST(CurvatureExtension, Examples) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.5, 0.1);
    const Vec2 H = curvature_ext(c, {0.5, 0});
    EXPECT_NEAR(H.x, -2.0, 1e-14);  // 2 n with n = -e_x
    EXPECT_NEAR(H.y, 0.0, 1e-14);
    EXPECT_EQ(norm(curvature_ext(c, {0.25, 0})), 0.0);
    EXPECT_EQ(norm(curvature_ext(c, {0.75, 0})), 0.0);
    EXPECT_EQ(norm(curvature_ext(AnalyticInterface::flat(0, 0.1), {0, 0})), 0.0);
}

TEST(CurvatureExtension, ConstantAlongXiInsideTube) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.5, 0.1);
    const double h = 1e-5;
    for (double r : {0.45, 0.48, 0.52, 0.55}) {
        const Vec2 x{r * std::cos(0.3), r * std::sin(0.3)};
        const Vec2 xi = xi_field(c, x);
        const Vec2 d = (curvature_ext(c, x + xi * h) - curvature_ext(c, x - xi * h)) / (2 * h);
        EXPECT_LT(norm(d), 1e-8);
    }
}

TEST(Theta, Examples) {
    EXPECT_DOUBLE_EQ(theta_trunc(0.05, 0.1), -0.05);
    EXPECT_DOUBLE_EQ(theta_trunc(0.5, 0.1), -0.1);
    EXPECT_DOUBLE_EQ(theta_trunc(-0.5, 0.1), 0.1);
}

TEST(Theta, Coercivity) {
    const double delta = 0.1;
    for (double r = -3; r <= 3; r += 0.01) {
        const double m = std::min(std::abs(r), 1.0);
        EXPECT_GE(std::abs(theta_trunc(r, delta)), delta * m - 1e-15);
        EXPECT_LE(std::abs(theta_trunc(r, delta)), m + 1e-15);
    }
}

TEST(VelocityExtension, ZeroReferenceAndProjectionFixedPoint) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.5, 0.1);
    EXPECT_EQ(norm(velocity_ext(c, zero_velocity, {0.3, 0.1})), 0.0);
    VelocityFn rot = [](Vec2 x, double) { return Vec2{-x.y, x.x}; };
    const Vec2 on{0.5 * std::cos(1.0), 0.5 * std::sin(1.0)};
    EXPECT_NEAR(norm(velocity_ext(c, rot, on) - rot(on, 0)), 0.0, 1e-15);
    // constant along normals: (xi . grad) v~ = 0
    const double h = 1e-5;
    for (double r : {0.42, 0.5, 0.58}) {
        const Vec2 x{r * std::cos(1.0), r * std::sin(1.0)};
        const Vec2 xi = xi_field(c, x);
        const Vec2 d = (velocity_ext(c, rot, x + xi * h) - velocity_ext(c, rot, x - xi * h)) / (2 * h);
        EXPECT_LT(norm(d), 1e-8);
    }
}

TEST(Transport, DistanceTransportedByCurvature) {
    // d_t + (H + v~) . grad d = 0 inside the delta tube, by finite differences
    const auto c0 = AnalyticInterface::circle({0, 0}, 0.6, 0.1);
    const double t = 0.05, tau = 1e-6;
    const auto c = evolve(c0, t);
    for (double r : {c.radius() - 0.05, c.radius(), c.radius() + 0.05}) {
        const Vec2 x{r * std::cos(0.7), r * std::sin(0.7)};
        const double dt_d = (signed_distance(evolve(c0, t + tau), x) - signed_distance(evolve(c0, t - tau), x)) /
                            (2 * tau);
        const double adv = dot(curvature_ext(c, x) + velocity_ext(c, zero_velocity, x), distance_gradient(c, x));
        EXPECT_NEAR(dt_d + adv, 0.0, 1e-6);
    }
}

TEST(Sample, BundlesPointFunctions) {
    const auto c = AnalyticInterface::circle({0, 0}, 0.5, 0.1);
    const Vec2 x{0.47, 0.02};
    const GeomSample s = sample(c, x);
    EXPECT_EQ(s.d, signed_distance(c, x));
    EXPECT_EQ(norm(s.xi - xi_field(c, x)), 0.0);
    EXPECT_EQ(norm(s.Hvec - curvature_ext(c, x)), 0.0);
    EXPECT_EQ(s.theta, theta_trunc(s.d, 0.1));
    EXPECT_EQ(s.H_scalar, 2.0);
}
