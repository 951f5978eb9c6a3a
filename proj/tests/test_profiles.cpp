#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>

#include "qsl/profiles.hpp"
#include "qsl/selfcheck.hpp"

using namespace qsl;

namespace {
const BulkParams P;
const Vec3 e1{1, 0, 0}, e3{0, 0, 1};
}  // namespace

TEST(UniaxialPotential, Examples) {
    EXPECT_EQ(f_uni(0, P), 0.0);
    EXPECT_NEAR(f_uni(3, P), 0.0, 1e-14);
    EXPECT_NEAR(f_uni(1.5, P), 9.0 / 16.0, 1e-14);
    EXPECT_NEAR(f_uni(1, P), 4.0 / 9.0, 1e-14);
}

TEST(UniaxialPotential, FactorisesAtBistablePoint) {
    for (double s = -1; s <= 4; s += 0.05)
        EXPECT_NEAR(f_uni(s, P), P.c / 9 * s * s * (s - 3) * (s - 3), 1e-12);
}

TEST(UniaxialPotential, MatchesBulkEnergyOnUniaxialTensors) {
    for (double s = 0; s <= 3; s += 0.1) EXPECT_NEAR(f_uni(s, P), bulk_energy(uniaxial(s, e1), P), 1e-13);
}

TEST(WaveProfile, Examples) {
    EXPECT_DOUBLE_EQ(wave_profile(0, P), 1.5);
    EXPECT_NEAR(wave_profile(2 / std::sqrt(3.0), P), 1.5 * (1 + std::tanh(1.0)), 1e-14);
    EXPECT_NEAR(wave_profile(2 / std::sqrt(3.0), P), 2.6423912, 1e-7);
    EXPECT_NEAR(wave_profile(-40, P), 0.0, 1e-14);
    EXPECT_NEAR(wave_profile(40, P), 3.0, 1e-14);
}

TEST(WaveProfile, SolvesTravellingWaveOde) {
    for (int k = 0; k <= 100; ++k) {
        const double z = -5 + 0.1 * k;
        const double S = wave_profile(z, P);
        const double r = -wave_profile_d2(z, P) + P.a * S - P.b / 3 * S * S + 2 * P.c / 3 * S * S * S;
        EXPECT_LT(std::abs(r), 1e-10) << "z = " << z;
    }
}

TEST(WaveProfile, DerivativesMatchFiniteDifferences) {
    const double h = 1e-5;
    for (double z = -4; z <= 4; z += 0.25) {
        EXPECT_NEAR(wave_profile_d1(z, P), (wave_profile(z + h, P) - wave_profile(z - h, P)) / (2 * h), 1e-8);
        EXPECT_NEAR(wave_profile_d2(z, P), (wave_profile_d1(z + h, P) - wave_profile_d1(z - h, P)) / (2 * h), 1e-8);
        EXPECT_GT(wave_profile_d1(z, P), 0.0);
    }
}

TEST(QuasiDistance, Examples) {
    const double sigma = std::sqrt(3.0);
    EXPECT_NEAR(quasi_dist_uni(3, P), 0.0, 1e-14);
    EXPECT_NEAR(quasi_dist_uni(0, P), sigma, 1e-14);
    EXPECT_NEAR(quasi_dist_uni(1.5, P), sigma / 2, 1e-14);
}

TEST(QuasiDistance, MatchesQuadratureOnInterval) {
    for (double s0 = 0; s0 <= 3; s0 += 0.25) {
        auto f = [](double t) { return 2 / std::sqrt(3.0) * std::sqrt(std::max(0.0, f_uni(t, P))); };
        const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, s0, 3.0, 15, 1e-15);
        EXPECT_NEAR(quasi_dist_uni(s0, P), q, 1e-12);
    }
}

TEST(QuasiDistance, DecreasingWithClosedFormDerivative) {
    const double h = 1e-6;
    for (int k = 1; k < 100; ++k) {
        const double s = 3.0 * k / 100;
        const double fd = (quasi_dist_uni(s + h, P) - quasi_dist_uni(s - h, P)) / (2 * h);
        EXPECT_NEAR(fd, quasi_dist_uni_d1(s, P), 1e-8);
        EXPECT_LE(quasi_dist_uni_d1(s, P), 0.0);
        EXPECT_LT(quasi_dist_uni(s + 0.01, P), quasi_dist_uni(s, P));
    }
}

TEST(QuasiDistance, ClampsOutOfRangeAndCounts) {
    ClampCounter c;
    EXPECT_NEAR(quasi_dist_uni(-0.5, P, &c), std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(quasi_dist_uni(3.5, P, &c), 0.0, 1e-14);
    EXPECT_NEAR(quasi_dist_uni(1.0, P, &c), quasi_dist_uni(1.0, P), 0.0);
    EXPECT_EQ(c.value(), 2u);
}

TEST(QuasiDistance, RejectsNonBistableParameters) {
    EXPECT_THROW(quasi_dist_uni(0.0, BulkParams{3, 10, 1}), std::invalid_argument);
}

TEST(SurfaceTension, ClosedFormAgainstQuadrature) {
    EXPECT_NEAR(surface_tension(P), std::sqrt(3.0), 1e-12);
    auto f = [](double t) { return 2 / std::sqrt(3.0) * std::sqrt(std::max(0.0, f_uni(t, P))); };
    const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 3.0, 15, 1e-15);
    EXPECT_NEAR(surface_tension(P), q, 1e-12);
    EXPECT_NEAR(surface_tension(P) / 2, quasi_dist_uni(1.5, P), 1e-14);
    const ProfileTables t(P);
    EXPECT_NEAR(t.sigma, std::sqrt(3.0), 1e-12);
    EXPECT_DOUBLE_EQ(t.s_plus, 3.0);
}

TEST(Psi, PointExamples) {
    EXPECT_NEAR(psi_point(QTensor{}, P), std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(psi_point(uniaxial(3, e3), P), 0.0, 1e-12);
    EXPECT_NEAR(psi_point(uniaxial(1.5, e1), P), std::sqrt(3.0) / 2, 1e-12);
    std::mt19937_64 rng(8);
    for (double s = 0; s <= 3; s += 0.1) {
        const Vec3 u = uniaxial_retract(random_qtensor(rng, 1.0), P).u;
        EXPECT_NEAR(psi_point(uniaxial(s, u), P), quasi_dist_uni(s, P), 1e-11);
    }
}

TEST(Psi, DerivativeExamples) {
    EXPECT_EQ(norm(dquasi_point(QTensor{}, P)), 0.0);
    const QTensor q = uniaxial(1.5, e3);
    const QTensor d = dquasi_point(q, P);
    EXPECT_NEAR(norm(d), std::sqrt(2.0) * 0.75, 1e-12);
    EXPECT_NEAR(contract(d, q) / (norm(d) * norm(q)), -1.0, 1e-12);
    EXPECT_NEAR(norm(d), std::sqrt(2 * bulk_energy(q, P)), 1e-12);
}

TEST(Psi, DerivativeMatchesFiniteDifferenceAlongOrder) {
    const double h = 1e-6;
    for (double s = 0.2; s < 2.9; s += 0.3) {
        const double fd = (psi_point(uniaxial(s + h, e1), P) - psi_point(uniaxial(s - h, e1), P)) / (2 * h);
        const double an = contract(dquasi_point(uniaxial(s, e1), P), uniaxial(1.0, e1));
        EXPECT_NEAR(fd, an, 1e-6);
    }
}

TEST(Psi, LipschitzBoundOnRandomTensors) {
    std::mt19937_64 rng(9);
    const double c0 = P.c0(0.0);
    for (int k = 0; k < 10000; ++k) {
        const QTensor q = random_qtensor(rng, c0);
        for (double eps : {0.05, 0.1})
            EXPECT_LE(norm(dquasi_point(q, P)), std::sqrt(2 * (bulk_energy(q, P) + eps * eps * eps)));
    }
}

TEST(Psi, SampleAgreesWithPointFunctions) {
    std::mt19937_64 rng(10);
    for (int k = 0; k < 100; ++k) {
        const QTensor q = random_qtensor(rng, 4.0);
        const PsiSample s = psi_sample(q, P);
        EXPECT_EQ(s.psi, psi_point(q, P));
        EXPECT_EQ(norm(s.dpsi - dquasi_point(q, P)), 0.0);
    }
}

TEST(SelfCheck, AllLinesPass) {
    for (const auto& line : run_selfcheck()) EXPECT_TRUE(line.pass) << line.name << ": " << line.detail;
}
