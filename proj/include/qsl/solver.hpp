#pragma once

// Time integration of the coupled Navier-Stokes / Q-tensor system
//
//   dv/dt + (v.grad)v - Lap v + grad p = -eps div(grad Q (.) grad Q),  div v = 0,
//   dQ/dt + (v.grad)Q = Lap Q - DF(Q)/eps^2,
//
// with v = 0 and Q = 0 on the walls. One step advances Q with the linear part
// a Q/eps^2 implicit and the rest of DF explicit, then advances v by an
// implicit viscous solve followed by a pressure projection. Both equations
// use the state at the beginning of the step for their coupling terms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include "qsl/errors.hpp"
#include "qsl/geometry.hpp"
#include "qsl/grid.hpp"
#include "qsl/linsolve.hpp"
#include "qsl/profiles.hpp"
#include "qsl/qspace.hpp"

namespace qsl {

/// Default step rule min(eps^2/20, h^2/4).
inline double default_dt(double eps, double h) { return std::min(eps * eps / 20.0, h * h / 4.0); }

struct SolverConfig {
    double eps = 0.1;
    BulkParams params{};
    double dt = 0.0;  ///< 0 selects default_dt
    double cg_rtol = 1e-10;
    int cg_max_iter = 2000;
    bool freeze_velocity = false;  ///< skip the flow update (v stays as given)
    double energy_slack = 1e-8;    ///< relative slack of the per-step energy check
    double divergence_tol = 1e-10;
    bool check_energy = true;
};

/// One solver snapshot.
struct SimState {
    double t = 0;
    long step = 0;
    double eps = 0.1;
    double dt = 0;
    BulkParams params{};
    MacField v;
    Field<double> p;
    Field<QTensor> Q;

    const Grid2D& grid() const { return Q.grid(); }
};

struct EnergyParts {
    double kinetic = 0;
    double ginzburg_landau = 0;
    double total() const { return kinetic + ginzburg_landau; }
};

/// Discrete Dirichlet energy -1/2 <Q, Lap Q>, i.e. 1/2 int |grad Q|^2 in the
/// form matched to the five-point Laplacian and its boundary treatment.
inline double gradient_energy(const Field<QTensor>& Q) { return -0.5 * inner(Q, laplacian(Q)); }

inline double bulk_integral(const Field<QTensor>& Q, const BulkParams& p, double eps) {
    double s = 0;
    const double e3 = eps * eps * eps;
    for (const QTensor& q : Q.data()) s += bulk_energy(q, p) + e3;
    return s * Q.grid().cell_area();
}

/// Kinetic energy and int eps/2 |grad Q|^2 + F_eps(Q)/eps, F_eps = F + eps^3.
inline EnergyParts total_energy(const SimState& s) {
    EnergyParts e;
    e.kinetic = kinetic_energy(s.v);
    e.ginzburg_landau = s.eps * gradient_energy(s.Q) + bulk_integral(s.Q, s.params, s.eps) / s.eps;
    return e;
}

inline double max_norm(const Field<QTensor>& Q) {
    double m = 0;
    for (const QTensor& q : Q.data()) m = std::max(m, norm2(q));
    return std::sqrt(m);
}

/// Symmetric 2x2 field M_ij = d_i Q : d_j Q at cell centres.
struct StressField {
    Field<double> xx, xy, yy;
};

inline StressField gradient_stress(const Field<QTensor>& Q) {
    const auto g = gradient_components(Q);
    StressField m{Field<double>(Q.grid()), Field<double>(Q.grid()), Field<double>(Q.grid())};
    for (std::size_t k = 0; k < Q.size(); ++k) {
        m.xx[k] = contract(g.dx[k], g.dx[k]);
        m.xy[k] = contract(g.dx[k], g.dy[k]);
        m.yy[k] = contract(g.dy[k], g.dy[k]);
    }
    return m;
}

namespace detail {
// Values outside a wall grid mirror the first interior cell.
inline double even_ghost(const Field<double>& f, int i, int j) {
    const Grid2D& g = f.grid();
    if (g.periodic()) return f((i + g.nx) % g.nx, (j + g.ny) % g.ny);
    i = std::clamp(i, 0, g.nx - 1);
    j = std::clamp(j, 0, g.ny - 1);
    return f(i, j);
}
}  // namespace detail

/// -eps div M on the velocity faces: normal stresses by compact differences
/// across the face, shear stresses averaged to the face corners.
inline MacField capillary_force(const Field<QTensor>& Q, double eps) {
    const Grid2D& g = Q.grid();
    const StressField m = gradient_stress(Q);
    MacField f(g);
    const double ih = 1.0 / g.h;
    auto mxy = [&](int i, int j) { return detail::even_ghost(m.xy, i, j); };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < f.nux(); ++i) {
            if (!f.u_active(i)) continue;
            const double dxx = (detail::even_ghost(m.xx, i, j) - detail::even_ghost(m.xx, i - 1, j)) * ih;
            const double top = 0.25 * (mxy(i - 1, j) + mxy(i, j) + mxy(i - 1, j + 1) + mxy(i, j + 1));
            const double bot = 0.25 * (mxy(i - 1, j - 1) + mxy(i, j - 1) + mxy(i - 1, j) + mxy(i, j));
            f.u(i, j) = -eps * (dxx + (top - bot) * ih);
        }
    for (int j = 0; j < f.nvy(); ++j) {
        if (!f.v_active(j)) continue;
        for (int i = 0; i < g.nx; ++i) {
            const double dyy = (detail::even_ghost(m.yy, i, j) - detail::even_ghost(m.yy, i, j - 1)) * ih;
            const double right = 0.25 * (mxy(i, j - 1) + mxy(i + 1, j - 1) + mxy(i, j) + mxy(i + 1, j));
            const double left = 0.25 * (mxy(i - 1, j - 1) + mxy(i, j - 1) + mxy(i - 1, j) + mxy(i, j));
            f.v(i, j) = -eps * (dyy + (right - left) * ih);
        }
    }
    return f;
}

/// Semi-implicit Q update:
/// (I/dt - Lap + a/eps^2) Q' = Q/dt - (v.grad)Q - (DF(Q) - aQ)/eps^2.
inline Field<QTensor> q_step(const SimState& s, const SolverConfig& cfg, CgResult* info = nullptr) {
    const double dt = s.dt;
    const double ie2 = 1.0 / (s.eps * s.eps);
    const double a = s.params.a;
    Field<QTensor> rhs(s.grid());
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        const QTensor& q = s.Q[k];
        rhs[k] = q / dt - (bulk_gradient(q, s.params) - q * a) * ie2;
    }
    const bool moving = [&] {
        for (double x : s.v.u_data())
            if (x != 0.0) return true;
        for (double x : s.v.v_data())
            if (x != 0.0) return true;
        return false;
    }();
    if (moving) rhs -= advect(cell_velocity(s.v), s.Q);

    const double diag = 1.0 / dt + a * ie2;
    auto apply = [diag](const Field<QTensor>& x) {
        Field<QTensor> y = laplacian(x);
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = x[k] * diag - y[k];
        return y;
    };
    Field<QTensor> out = s.Q;
    const CgResult res = conjugate_gradient(apply, rhs, out, cfg.cg_rtol, cfg.cg_max_iter);
    if (info) *info = res;
    if (!res.converged) {
        std::ostringstream os;
        os << "Q solve did not converge at step " << s.step << " (residual " << res.residual << " after "
           << res.iterations << " iterations)";
        throw SolverNonConvergence(os.str());
    }
    return out;
}

struct FlowUpdate {
    MacField v;
    Field<double> p;
    CgResult viscous;
};

/// Chorin projection: (I/dt - Lap) v* = v/dt - (v.grad)v + force, then
/// Lap phi = div v*/dt, v' = v* - dt grad phi, p' = phi (zero mean).
inline FlowUpdate ns_step(const SimState& s, const MacField& force, PoissonSolver& poisson,
                          const SolverConfig& cfg) {
    const double dt = s.dt;
    MacField rhs = s.v * (1.0 / dt);
    rhs -= mac_advect(s.v);
    rhs += force;
    rhs.enforce_walls();

    const double idt = 1.0 / dt;
    auto apply = [idt](const MacField& x) {
        MacField y = mac_laplacian(x);
        y *= -1.0;
        axpy(idt, x, y);
        return y;
    };
    FlowUpdate out;
    out.v = s.v;
    out.viscous = conjugate_gradient(apply, rhs, out.v, cfg.cg_rtol, cfg.cg_max_iter);
    if (!out.viscous.converged) {
        std::ostringstream os;
        os << "viscous solve did not converge at step " << s.step << " (residual " << out.viscous.residual << ")";
        throw SolverNonConvergence(os.str());
    }
    out.v.enforce_walls();
    Field<double> div = mac_divergence(out.v);
    div *= idt;
    out.p = poisson.solve(div);
    MacField gp = mac_gradient(out.p);
    axpy(-dt, gp, out.v);
    out.v.enforce_walls();
    return out;
}

using DirectorFn = std::function<Vec3(Vec2)>;

inline DirectorFn constant_director(Vec3 u) {
    if (std::abs(norm(u) - 1.0) > 1e-12) throw ConfigError("director must be a unit vector");
    return [u](Vec2) { return u; };
}

/// Distance from the interface to the domain boundary (infinite for periodic grids).
inline double boundary_clearance(const AnalyticInterface& iface, const Grid2D& g) {
    if (g.periodic()) return INFINITY;
    const double Lx = g.half_width_x(), Ly = g.half_width_y();
    switch (iface.kind) {
        case InterfaceKind::circle: {
            const double r = iface.radius();
            const double cx = iface.center.x, cy = iface.center.y;
            return std::min({Lx - (cx + r), (cx - r) + Lx, Ly - (cy + r), (cy - r) + Ly});
        }
        case InterfaceKind::flat:
        case InterfaceKind::slab: return 0.0;  // a straight front meets the walls
    }
    return 0.0;
}

/// Well-prepared data Q0 = S~(u0 (x) u0 - I/3) with
/// S~ = zeta~(d/delta) S(d/eps) + (1 - zeta~(d/delta)) s_plus chi(Omega+), v0 = 0.
inline SimState build_initial(const AnalyticInterface& iface, const Grid2D& grid, double eps,
                              const BulkParams& params, const DirectorFn& u0, double dt = 0.0) {
    if (boundary_clearance(iface, grid) < 3.0 * iface.delta)
        throw ConfigError("interface closer than 3 delta to the boundary");
    const AnalyticInterface g0 = evolve(iface, 0.0);
    const double sp = params.s_plus();
    SimState s;
    s.eps = eps;
    s.params = params;
    s.dt = dt > 0 ? dt : default_dt(eps, grid.h);
    s.v = MacField(grid);
    s.p = Field<double>(grid);
    s.Q = Field<QTensor>(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const Vec2 x = grid.center(i, j);
            const Vec3 u = u0(x);
            if (std::abs(norm(u) - 1.0) > 1e-12) throw ConfigError("initial director is not unit-normalized");
            const double d = signed_distance(g0, x);
            const double zt = cutoff_initial(d / g0.delta);
            const double st = zt * wave_profile(d / eps, params) + (1.0 - zt) * (d > 0 ? sp : 0.0);
            s.Q(i, j) = uniaxial(st, u);
        }
    return s;
}

/// Per-step bookkeeping of the invariant checks.
struct StepStats {
    double max_q = 0;                 ///< largest |Q| seen
    double max_energy_increase = 0;   ///< max of (E_{n+1} - E_n)/|E_n|, may be negative
    double max_divergence = 0;
    int max_q_iterations = 0;
    int max_viscous_iterations = 0;
};

/// Owns a state and advances it, enforcing the hard invariants on every step.
class Simulation {
public:
    Simulation(SimState initial, SolverConfig cfg)
        : state_(std::move(initial)), cfg_(cfg), poisson_(std::make_unique<PoissonSolver>(state_.grid())) {
        if (cfg_.dt > 0) state_.dt = cfg_.dt;
        state_.eps = cfg_.eps;
        state_.params = cfg_.params;
        c0_ = cfg_.params.c0(max_norm(state_.Q));
        energy_ = total_energy(state_);
        stats_.max_q = max_norm(state_.Q);
        stats_.max_energy_increase = -INFINITY;
    }

    const SimState& state() const { return state_; }
    const SolverConfig& config() const { return cfg_; }
    double c0() const { return c0_; }
    const EnergyParts& energy() const { return energy_; }
    const StepStats& stats() const { return stats_; }

    /// Advances one step; throws InvariantViolation / SolverNonConvergence.
    void step() {
        SimState next;
        next.eps = state_.eps;
        next.dt = state_.dt;
        next.params = state_.params;
        next.t = state_.t + state_.dt;
        next.step = state_.step + 1;

        CgResult qinfo;
        next.Q = q_step(state_, cfg_, &qinfo);
        stats_.max_q_iterations = std::max(stats_.max_q_iterations, qinfo.iterations);
        if (cfg_.freeze_velocity) {
            next.v = state_.v;
            next.p = state_.p;
        } else {
            const MacField force = capillary_force(state_.Q, state_.eps);
            FlowUpdate flow = ns_step(state_, force, *poisson_, cfg_);
            stats_.max_viscous_iterations = std::max(stats_.max_viscous_iterations, flow.viscous.iterations);
            next.v = std::move(flow.v);
            next.p = std::move(flow.p);
            const double div = max_abs(mac_divergence(next.v));
            stats_.max_divergence = std::max(stats_.max_divergence, div);
            if (div > cfg_.divergence_tol) throw violation("divergence", next, "max |div v| = ", div);
        }
        if (!next.Q.all_finite() || !next.v.all_finite())
            throw InvariantViolation("finite", "non-finite value at step " + std::to_string(next.step));

        const double mq = max_norm(next.Q);
        stats_.max_q = std::max(stats_.max_q, mq);
        if (mq > c0_ * (1.0 + 1e-12)) throw violation("max_principle", next, "max |Q| = ", mq);

        const EnergyParts e = total_energy(next);
        const double rel = (e.total() - energy_.total()) / std::abs(energy_.total());
        stats_.max_energy_increase = std::max(stats_.max_energy_increase, rel);
        if (cfg_.check_energy && rel > cfg_.energy_slack)
            throw violation("energy", next, "relative energy increase ", rel);

        energy_ = e;
        state_ = std::move(next);
    }

private:
    static InvariantViolation violation(const std::string& which, const SimState& s, const std::string& what,
                                        double value) {
        std::ostringstream os;
        os << what << value << " at step " << s.step << " (t = " << s.t << ")";
        return InvariantViolation(which, os.str());
    }

    SimState state_;
    SolverConfig cfg_;
    std::unique_ptr<PoissonSolver> poisson_;
    double c0_ = 0;
    EnergyParts energy_{};
    StepStats stats_{};
};

}  // namespace qsl
