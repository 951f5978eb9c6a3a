#pragma once

// Relative-entropy diagnostics of a diffuse state against a sharp reference
// interface: psi = d^F(Q), the diffuse normal and curvature, the relative
// entropy E, the bulk error E_vol, the two dissipation integrals and the
// coercivity quantities controlled by E.
//
// Calibration orientation: psi falls from sigma in the isotropic phase to 0
// in the nematic phase, so grad psi points out of Omega+. The calibration
// field paired with grad psi is therefore -xi (xi = phi(d/delta) grad d
// points into Omega+); with it E vanishes to O(eps) for well-prepared data
// and both dissipation integrands vanish for an exact shrinking circle.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qsl/geometry.hpp"
#include "qsl/grid.hpp"
#include "qsl/profiles.hpp"
#include "qsl/qspace.hpp"
#include "qsl/solver.hpp"

namespace qsl {

/// The calibration field paired with grad psi.
inline Vec2 calibration_field(const AnalyticInterface& g, Vec2 x) { return -xi_field(g, x); }

/// Pair of spatial partial derivatives of Q at one point.
struct QGradient {
    QTensor dx{};
    QTensor dy{};
};

inline double norm2(const QGradient& g) { return norm2(g.dx) + norm2(g.dy); }

inline QGradient at(const Gradient<QTensor>& g, std::size_t k) { return {g.dx[k], g.dy[k]}; }

/// Component of grad Q along D d^F / |D d^F| in Q-space; zero where D d^F = 0.
inline QGradient projection_pi(const QTensor& dpsi, const QGradient& g) {
    const double n = norm(dpsi);
    if (n == 0.0) return {};
    const QTensor e = dpsi / n;
    return {e * contract(e, g.dx), e * contract(e, g.dy)};
}

inline Vec2 chain_gradient(const QTensor& dpsi, const QGradient& g) {
    return {contract(dpsi, g.dx), contract(dpsi, g.dy)};
}

inline double regularized_bulk(const QTensor& q, const BulkParams& p, double eps) {
    return bulk_energy(q, p) + eps * eps * eps;
}

namespace detail {
// Centred differences in the interior, one-sided at walls: for fields such as
// psi whose boundary value is not zero.
inline Field<Vec2> scalar_gradient_free(const Field<double>& f) {
    const Grid2D& g = f.grid();
    if (g.periodic()) return gradient(f);
    Field<Vec2> out(g);
    auto diff = [&](int lo, int hi, double a, double b) { return (b - a) / ((hi - lo) * g.h); };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int il = std::max(i - 1, 0), ir = std::min(i + 1, g.nx - 1);
            const int jl = std::max(j - 1, 0), jr = std::min(j + 1, g.ny - 1);
            out(i, j) = {diff(il, ir, f(il, j), f(ir, j)), diff(jl, jr, f(i, jl), f(i, jr))};
        }
    return out;
}
}  // namespace detail

struct PsiFields {
    Field<double> psi;
    Field<Vec2> grad_chain;     ///< D d^F(Q) : grad Q
    Field<Vec2> grad_discrete;  ///< finite differences of psi
    Field<Vec2> normal;         ///< grad_chain / |grad_chain|, zero below 1e-12
    double discrepancy_l1 = 0;  ///< int |grad_chain - grad_discrete|
};

inline PsiFields psi_and_normal(const Field<QTensor>& Q, const BulkParams& p, ClampCounter* clamps = nullptr) {
    const Grid2D& g = Q.grid();
    const auto G = gradient_components(Q);
    PsiFields out{Field<double>(g), Field<Vec2>(g), Field<Vec2>(g), Field<Vec2>(g), 0.0};
    for (std::size_t k = 0; k < Q.size(); ++k) {
        const PsiSample s = psi_sample(Q[k], p, clamps);
        out.psi[k] = s.psi;
        const Vec2 gp = chain_gradient(s.dpsi, at(G, k));
        out.grad_chain[k] = gp;
        const double n = norm(gp);
        out.normal[k] = n > 1e-12 ? gp / n : Vec2{};
    }
    out.grad_discrete = detail::scalar_gradient_free(out.psi);
    double s = 0;
    for (std::size_t k = 0; k < Q.size(); ++k) s += norm(out.grad_chain[k] - out.grad_discrete[k]);
    out.discrepancy_l1 = s * g.cell_area();
    return out;
}

/// H_eps = -(eps Lap Q - DF(Q)/eps) : grad Q / |grad Q|, zero where |grad Q| < 1e-12.
inline Field<Vec2> approx_curvature(const Field<QTensor>& Q, const BulkParams& p, double eps) {
    const Grid2D& g = Q.grid();
    const auto G = gradient_components(Q);
    const Field<QTensor> lap = laplacian(Q);
    Field<Vec2> out(g);
    for (std::size_t k = 0; k < Q.size(); ++k) {
        const QGradient gk = at(G, k);
        const double n = std::sqrt(norm2(gk));
        if (n < 1e-12) continue;
        const QTensor w = lap[k] * eps - bulk_gradient(Q[k], p) / eps;
        out[k] = Vec2{contract(w, gk.dx), contract(w, gk.dy)} * (-1.0 / n);
    }
    return out;
}

/// Pointwise integrands shared by E and the coercivity report.
struct EntropyDensity {
    double gl = 0;        ///< eps/2 |grad Q|^2 + F_eps / eps
    Vec2 grad_psi{};      ///< chain-rule grad psi
    double psi = 0;
    QTensor dpsi{};
    double f_eps = 0;
};

inline EntropyDensity entropy_density(const QTensor& q, const QGradient& g, const BulkParams& p, double eps,
                                      ClampCounter* clamps) {
    EntropyDensity d;
    const PsiSample s = psi_sample(q, p, clamps);
    d.psi = s.psi;
    d.dpsi = s.dpsi;
    d.f_eps = regularized_bulk(q, p, eps);
    d.gl = 0.5 * eps * norm2(g) + d.f_eps / eps;
    d.grad_psi = chain_gradient(s.dpsi, g);
    return d;
}

/// E = int 1/2 |v_eps - v|^2 + eps/2 |grad Q|^2 + F_eps/eps - xi_cal . grad psi,
/// with the reference velocity v = 0.
inline double relative_entropy(const SimState& s, const AnalyticInterface& iface, ClampCounter* clamps = nullptr) {
    const Grid2D& g = s.grid();
    const auto G = gradient_components(s.Q);
    double sum = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
            const EntropyDensity d = entropy_density(s.Q[k], at(G, k), s.params, s.eps, clamps);
            sum += d.gl - dot(calibration_field(iface, g.center(i, j)), d.grad_psi);
        }
    return kinetic_energy(s.v) + sum * g.cell_area();
}

/// E_vol = int (sigma chi - psi) theta(d), chi the indicator of Omega- (d < 0).
inline double bulk_error(const Field<QTensor>& Q, const BulkParams& p, const AnalyticInterface& iface,
                         ClampCounter* clamps = nullptr) {
    const Grid2D& g = Q.grid();
    const double sigma = surface_tension(p);
    double sum = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = signed_distance(iface, g.center(i, j));
            const double chi = d < 0 ? 1.0 : 0.0;
            sum += (sigma * chi - psi_point(Q(i, j), p, clamps)) * theta_trunc(d, iface.delta);
        }
    return sum * g.cell_area();
}

struct DissipationIncrement {
    double parallel = 0;   ///< dt (1/4 eps) int |eps(dQ/dt + v.grad Q) - div xi_cal D d^F|^2
    double transport = 0;  ///< dt (eps/4) int |dQ/dt + v.grad Q + (H.grad)Q|^2
};

/// Left-point increments of the two dissipation integrals over one step:
/// dQ/dt = (Q_next - Q)/dt, everything else evaluated at the earlier state.
inline DissipationIncrement dissipation_terms(const SimState& now, const Field<QTensor>& Q_next, double dt,
                                              const AnalyticInterface& iface, ClampCounter* clamps = nullptr) {
    const Grid2D& g = now.grid();
    const double eps = now.eps;
    const auto G = gradient_components(now.Q);
    const Field<QTensor> adv = advect(cell_velocity(now.v), now.Q);
    const Field<Vec2> xi = sample_field<Vec2>(g, [&](Vec2 x) { return calibration_field(iface, x); });
    const Field<double> div_xi = divergence(xi);
    double par = 0, tr = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
            const QTensor D = (Q_next[k] - now.Q[k]) / dt + adv[k];
            QTensor r = D * eps;
            if (div_xi[k] != 0.0) r -= dquasi_point(now.Q[k], now.params, clamps) * div_xi[k];
            par += norm2(r);
            const Vec2 H = curvature_ext(iface, g.center(i, j));
            tr += norm2(D + G.dx[k] * H.x + G.dy[k] * H.y);
        }
    const double area = g.cell_area();
    return {dt * par * area / (4.0 * eps), dt * tr * area * eps / 4.0};
}

/// Labelled left-hand sides of the coercivity estimates.
struct CoercivityReport {
    static constexpr int count = 6;
    static constexpr const char* labels[count] = {"normal_tilt",    "equipartition_gap", "projected_balance",
                                                  "tangential_gradient", "xi_alignment", "distance_weighted"};
    double values[count] = {};
    double E = 0;
};

inline CoercivityReport coercivity_report(const SimState& s, const AnalyticInterface& iface,
                                          ClampCounter* clamps = nullptr) {
    const Grid2D& g = s.grid();
    const double eps = s.eps;
    const double se = std::sqrt(eps);
    const auto G = gradient_components(s.Q);
    CoercivityReport rep;
    double E = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
            const Vec2 x = g.center(i, j);
            const QGradient gk = at(G, k);
            const EntropyDensity d = entropy_density(s.Q[k], gk, s.params, eps, clamps);
            const Vec2 xi = calibration_field(iface, x);
            const double gp = norm(d.grad_psi);
            const Vec2 n = gp > 1e-12 ? d.grad_psi / gp : Vec2{};
            const QGradient pg = projection_pi(d.dpsi, gk);
            const QGradient tang{gk.dx - pg.dx, gk.dy - pg.dy};
            const double dist = signed_distance(iface, x);
            const double bal = se * std::sqrt(norm2(pg)) - std::sqrt(2.0 * d.f_eps) / se;

            rep.values[0] += dot(n - xi, n - xi) * gp;
            rep.values[1] += d.gl - gp;
            rep.values[2] += 0.5 * bal * bal;
            rep.values[3] += 0.5 * eps * norm2(tang);
            rep.values[4] += (1.0 - dot(xi, n)) * gp;
            rep.values[5] += (d.gl + gp) * std::min(dist * dist, 1.0);
            E += d.gl - dot(xi, d.grad_psi);
        }
    const double area = g.cell_area();
    for (double& v : rep.values) v *= area;
    rep.E = kinetic_energy(s.v) + E * area;
    return rep;
}

struct RadiusMeasurement {
    double radius = std::numeric_limits<double>::quiet_NaN();
    bool found = false;
    int rays_missing = 0;
};

/// Mean over angular rays from `center` of the radius where the retracted
/// scalar order falls through s_plus/2 (bilinear interpolation of s).
inline RadiusMeasurement measured_radius(const Field<QTensor>& Q, const BulkParams& p, Vec2 center,
                                         int rays = 64) {
    const Grid2D& g = Q.grid();
    Field<double> s(g);
    for (std::size_t k = 0; k < Q.size(); ++k) s[k] = uniaxial_retract(Q[k], p).s;
    const double level = 0.5 * p.s_plus();
    auto interp = [&](Vec2 x) {
        const double fx = std::clamp((x.x - g.x0) / g.h - 0.5, 0.0, g.nx - 1.0);
        const double fy = std::clamp((x.y - g.y0) / g.h - 0.5, 0.0, g.ny - 1.0);
        const int i = std::min(static_cast<int>(fx), g.nx - 2), j = std::min(static_cast<int>(fy), g.ny - 2);
        const double tx = fx - i, ty = fy - j;
        return (1 - tx) * (1 - ty) * s(i, j) + tx * (1 - ty) * s(i + 1, j) + (1 - tx) * ty * s(i, j + 1) +
               tx * ty * s(i + 1, j + 1);
    };
    const double rmax = std::min({g.x0 + g.nx * g.h - center.x, center.x - g.x0, g.y0 + g.ny * g.h - center.y,
                                  center.y - g.y0});
    const double dr = 0.25 * g.h;
    RadiusMeasurement m;
    double sum = 0;
    int hits = 0;
    for (int r = 0; r < rays; ++r) {
        const double th = 2.0 * std::numbers::pi * r / rays;
        const Vec2 dir{std::cos(th), std::sin(th)};
        double prev = interp(center);
        bool hit = false;
        for (double rho = dr; rho <= rmax; rho += dr) {
            const double cur = interp(center + dir * rho);
            if ((prev - level) * (cur - level) <= 0.0 && prev != cur) {
                sum += rho - dr + dr * (prev - level) / (prev - cur);
                hit = true;
                break;
            }
            prev = cur;
        }
        if (hit) ++hits;
        else ++m.rays_missing;
    }
    if (hits > 0 && m.rays_missing == 0) {
        m.radius = sum / hits;
        m.found = true;
    }
    return m;
}

/// Largest violation of |D d^F(Q)| <= sqrt(2 F_eps(Q)) over the grid (<= 0 when it holds).
inline double lipschitz_excess(const Field<QTensor>& Q, const BulkParams& p, double eps) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const QTensor& q : Q.data()) {
        const double lhs = norm(dquasi_point(q, p));
        const double rhs = std::sqrt(2.0 * std::max(0.0, regularized_bulk(q, p, eps)));
        worst = std::max(worst, lhs - rhs);
    }
    return worst;
}

}  // namespace qsl
