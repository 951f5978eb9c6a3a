#pragma once

// Fast property checks of the structure functions, exposed through the
// `check` subcommand: surface tension against numerical quadrature, the
// travelling-wave residual, and the quasi-distance identities.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsl/profiles.hpp"
#include "qsl/qspace.hpp"

namespace qsl {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Random symmetric traceless tensor with Frobenius norm uniform in [0, rmax].
inline QTensor random_qtensor(std::mt19937_64& rng, double rmax) {
    std::normal_distribution<double> n01;
    std::uniform_real_distribution<double> u01;
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) m[i][j] = m[j][i] = n01(rng);
    const double tr = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    for (int i = 0; i < 3; ++i) m[i][i] -= tr;
    QTensor q = QTensor::from_matrix(m);
    const double nq = norm(q);
    return nq > 0 ? q * (rmax * u01(rng) / nq) : q;
}

inline std::vector<CheckLine> run_selfcheck(const BulkParams& p = {}, std::uint64_t seed = 20240611) {
    std::vector<CheckLine> out;
    char buf[256];

    {
        const double sp = p.s_plus();
        auto integrand = [&](double s) { return 2.0 / std::sqrt(3.0) * std::sqrt(std::max(0.0, f_uni(s, p))); };
        double err = 0;
        const double quad = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, sp, 15,
                                                                                           1e-15, &err);
        const double sigma = surface_tension(p);
        const double d = std::abs(sigma - quad);
        std::snprintf(buf, sizeof buf, "sigma = %.15f, quadrature = %.15f, |diff| = %.2e", sigma, quad, d);
        out.push_back({"surface_tension", d <= 1e-12, buf});
    }
    {
        double worst = 0;
        for (int k = 0; k <= 100; ++k) {
            const double z = -5.0 + 0.1 * k;
            const double S = wave_profile(z, p);
            const double r = -wave_profile_d2(z, p) + p.a * S - p.b / 3.0 * S * S + 2.0 / 3.0 * p.c * S * S * S;
            worst = std::max(worst, std::abs(r));
        }
        std::snprintf(buf, sizeof buf, "max ODE residual on 101 points = %.2e", worst);
        out.push_back({"travelling_wave", worst <= 1e-10, buf});
    }
    {
        const double sigma = surface_tension(p);
        const double sp = p.s_plus();
        const double e1 = std::abs(quasi_dist_uni(0.0, p) - sigma);
        const double e2 = std::abs(quasi_dist_uni(sp, p));
        const double e3 = std::abs(quasi_dist_uni(0.5 * sp, p) - 0.5 * sigma);
        std::mt19937_64 rng(seed);
        const double c0 = p.c0(0.0);
        double excess = -INFINITY;
        for (int k = 0; k < 10000; ++k) {
            const QTensor q = random_qtensor(rng, c0);
            for (double eps : {0.05, 0.1}) {
                const double lhs = norm(dquasi_point(q, p));
                const double rhs = std::sqrt(2.0 * (bulk_energy(q, p) + eps * eps * eps));
                excess = std::max(excess, lhs - rhs);
            }
        }
        std::uniform_real_distribution<double> us(0.0, sp);
        double eq = 0;
        for (int k = 0; k < 1000; ++k) {
            const double s = us(rng);
            const QTensor q = random_qtensor(rng, 1.0);
            const Retraction dir = uniaxial_retract(q, p);
            const QTensor u = uniaxial(s, dir.u);
            eq = std::max(eq, std::abs(norm(dquasi_point(u, p)) - std::sqrt(2.0 * bulk_energy(u, p))));
        }
        const bool pass = e1 <= 1e-12 && e2 <= 1e-12 && e3 <= 1e-12 && excess <= 0.0 && eq <= 1e-10;
        std::snprintf(buf, sizeof buf,
                      "g identities %.1e/%.1e/%.1e, max Lipschitz excess %.2e, uniaxial equality gap %.2e", e1, e2,
                      e3, excess, eq);
        out.push_back({"quasi_distance", pass, buf});
    }
    return out;
}

}  // namespace qsl
