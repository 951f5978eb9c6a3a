#pragma once

// Closed-form evolving interfaces in 2D and the geometric apparatus built on
// them: signed distance, normal, extended curvature, the cutoff extension
// xi of the normal, the truncation theta and the constant normal extension
// of a velocity field.
//
// Orientation: d > 0 in the nematic region Omega+, n = grad d points into
// Omega+, Laplacian(d) = -H on the interface. A nematic disc therefore has
// H = +1/R and shrinks with V = H, i.e. R(t)^2 = R0^2 - 2t.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsl {

struct Vec2 {
    double x = 0, y = 0;

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend Vec2 operator/(Vec2 a, double s) { return a *= (1.0 / s); }
    friend Vec2 operator-(Vec2 a) { return a *= -1.0; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

/// Even cutoff phi(x) = cos^2(pi x / 2) on |x| <= 1, zero outside.
inline double cutoff_phi(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * std::numbers::pi * x);
    return c * c;
}
inline double cutoff_phi_d1(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return -0.5 * std::numbers::pi * std::sin(std::numbers::pi * x);
}

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 on [0, 1], clamped outside.
inline double smoothstep5(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

/// zeta: 1 on |d| <= delta, 0 on |d| >= 2 delta.
inline double cutoff_zeta(double d, double delta) { return 1.0 - smoothstep5((std::abs(d) - delta) / delta); }

/// Cutoff of the initial-data blend: 1 for |s| <= 1/2, 0 for |s| >= 1.
inline double cutoff_initial(double s) { return 1.0 - smoothstep5(2.0 * std::abs(s) - 1.0); }

/// Piecewise-linear truncation: -delta for r >= delta, -r in between, +delta for r <= -delta.
inline double theta_trunc(double r, double delta) {
    if (r >= delta) return -delta;
    if (r <= -delta) return delta;
    return -r;
}

enum class InterfaceKind { circle, flat, slab };

inline std::string to_string(InterfaceKind k) {
    switch (k) {
        case InterfaceKind::circle: return "circle";
        case InterfaceKind::flat: return "flat";
        case InterfaceKind::slab: return "slab";
    }
    return "?";
}

/// Geometry sampled at one point.
struct GeomSample {
    double d = 0;        ///< signed distance, > 0 in Omega+
    Vec2 n{};            ///< grad d
    double H_scalar = 0; ///< curvature at the projected point
    Vec2 xi{};           ///< phi(d/delta) grad d
    Vec2 Hvec{};         ///< H(P x) n zeta
    double theta = 0;    ///< theta_trunc(d)
    double div_xi = 0;   ///< analytic divergence of xi
};

/// A closed-form interface. `circle`: nematic disc of radius R(t) around
/// `center`; `flat`: nematic half-plane y > y0; `slab`: nematic band
/// |y - y0| < half_width (two parallel flat fronts, for periodic strips).
struct AnalyticInterface {
    InterfaceKind kind = InterfaceKind::circle;
    Vec2 center{};
    double R0 = 0.6;
    double y0 = 0.0;
    double half_width = 0.0;
    double delta = 0.1;
    double t = 0.0;  ///< time the interface has been evolved to

    static AnalyticInterface circle(Vec2 c, double r0, double delta) {
        AnalyticInterface g;
        g.kind = InterfaceKind::circle;
        g.center = c;
        g.R0 = r0;
        g.delta = delta;
        return g;
    }
    static AnalyticInterface flat(double y0, double delta) {
        AnalyticInterface g;
        g.kind = InterfaceKind::flat;
        g.y0 = y0;
        g.delta = delta;
        return g;
    }
    static AnalyticInterface slab(double y0, double half_width, double delta) {
        AnalyticInterface g;
        g.kind = InterfaceKind::slab;
        g.y0 = y0;
        g.half_width = half_width;
        g.delta = delta;
        return g;
    }

    /// Radius law R(t) = sqrt(R0^2 - 2t) (circle only).
    double radius(double time) const {
        const double r2 = R0 * R0 - 2.0 * time;
        return r2 > 0 ? std::sqrt(r2) : 0.0;
    }
    double radius() const { return radius(t); }

    /// Time at which the disc shrinks to the 3 delta margin.
    double extinction_margin_time() const { return 0.5 * (R0 * R0 - 9.0 * delta * delta); }
};

/// The interface at time t >= 0. Circles closer to extinction than 3 delta
/// are a configuration error.
inline AnalyticInterface evolve(const AnalyticInterface& g, double time) {
    if (time < 0.0) throw std::invalid_argument("evolve: negative time");
    AnalyticInterface out = g;
    out.t = time;
    if (g.kind == InterfaceKind::circle) {
        const double r2 = g.R0 * g.R0 - 2.0 * time;
        if (r2 <= 9.0 * g.delta * g.delta)
            throw std::invalid_argument("evolve: circle within 3 delta of extinction at t = " +
                                        std::to_string(time));
    }
    return out;
}

inline double signed_distance(const AnalyticInterface& g, Vec2 x) {
    switch (g.kind) {
        case InterfaceKind::circle: return g.radius() - norm(x - g.center);
        case InterfaceKind::flat: return x.y - g.y0;
        case InterfaceKind::slab: return g.half_width - std::abs(x.y - g.y0);
    }
    return 0.0;
}

/// grad d (unit). At the centre of a disc the direction is undefined; e_x is returned.
inline Vec2 distance_gradient(const AnalyticInterface& g, Vec2 x) {
    switch (g.kind) {
        case InterfaceKind::circle: {
            const Vec2 r = x - g.center;
            const double rn = norm(r);
            if (rn == 0.0) return {1.0, 0.0};
            return -r / rn;
        }
        case InterfaceKind::flat: return {0.0, 1.0};
        case InterfaceKind::slab: return {0.0, x.y >= g.y0 ? -1.0 : 1.0};
    }
    return {};
}

/// Laplacian of d away from the ridge (circle: -1/|x - c|).
inline double distance_laplacian(const AnalyticInterface& g, Vec2 x) {
    if (g.kind != InterfaceKind::circle) return 0.0;
    const double rn = norm(x - g.center);
    return rn > 0 ? -1.0 / rn : 0.0;
}

/// Curvature of the interface (constant along it for every supported kind).
inline double interface_curvature(const AnalyticInterface& g) {
    return g.kind == InterfaceKind::circle ? 1.0 / g.radius() : 0.0;
}

/// Normal velocity V = H of the sharp interface.
inline double normal_velocity(const AnalyticInterface& g) { return interface_curvature(g); }

/// Orthogonal projection onto the interface.
inline Vec2 project(const AnalyticInterface& g, Vec2 x) {
    return x - signed_distance(g, x) * distance_gradient(g, x);
}

/// xi = phi(d/delta) grad d.
inline Vec2 xi_field(const AnalyticInterface& g, Vec2 x) {
    return cutoff_phi(signed_distance(g, x) / g.delta) * distance_gradient(g, x);
}

/// div xi = phi'(d/delta)/delta |grad d|^2 + phi(d/delta) Laplacian(d).
inline double xi_divergence(const AnalyticInterface& g, Vec2 x) {
    const double d = signed_distance(g, x);
    return cutoff_phi_d1(d / g.delta) / g.delta + cutoff_phi(d / g.delta) * distance_laplacian(g, x);
}

/// Extended curvature vector H(P x) n zeta(d).
inline Vec2 curvature_ext(const AnalyticInterface& g, Vec2 x) {
    const double d = signed_distance(g, x);
    return interface_curvature(g) * cutoff_zeta(d, g.delta) * distance_gradient(g, x);
}

using VelocityFn = std::function<Vec2(Vec2, double)>;

/// Constant extension of a limit velocity along normals inside Gamma(3 delta);
/// outside the tube the reference velocity itself is returned.
inline Vec2 velocity_ext(const AnalyticInterface& g, const VelocityFn& v, Vec2 x) {
    if (std::abs(signed_distance(g, x)) < 3.0 * g.delta) return v(project(g, x), g.t);
    return v(x, g.t);
}

/// The reference limit velocity of every analytic interface here: v = 0.
inline Vec2 zero_velocity(Vec2, double) { return {}; }

inline GeomSample sample(const AnalyticInterface& g, Vec2 x) {
    GeomSample s;
    s.d = signed_distance(g, x);
    s.n = distance_gradient(g, x);
    s.H_scalar = interface_curvature(g);
    const double phi = cutoff_phi(s.d / g.delta);
    s.xi = phi * s.n;
    s.Hvec = s.H_scalar * cutoff_zeta(s.d, g.delta) * s.n;
    s.theta = theta_trunc(s.d, g.delta);
    s.div_xi = cutoff_phi_d1(s.d / g.delta) / g.delta + phi * distance_laplacian(g, x);
    return s;
}

}  // namespace qsl
