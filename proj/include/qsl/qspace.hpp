#pragma once

// Symmetric traceless 3x3 tensors (Q-space), the Landau-de Gennes bulk
// potential and the spectral retraction onto the uniaxial branch.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsl {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// A point of the five-dimensional space of symmetric traceless 3x3 matrices.
///
/// Only the independent entries are stored; q33 = -q11 - q22 is reconstructed,
/// so symmetry and tracelessness hold by construction.
struct QTensor {
    double q11 = 0, q12 = 0, q13 = 0, q22 = 0, q23 = 0;

    double q33() const { return -q11 - q22; }

    Mat3 matrix() const {
        return {{{q11, q12, q13}, {q12, q22, q23}, {q13, q23, q33()}}};
    }

    /// Projects an arbitrary 3x3 matrix onto Q-space (symmetric part minus trace).
    static QTensor from_matrix(const Mat3& m) {
        const double tr3 = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
        return {m[0][0] - tr3, 0.5 * (m[0][1] + m[1][0]), 0.5 * (m[0][2] + m[2][0]), m[1][1] - tr3,
                0.5 * (m[1][2] + m[2][1])};
    }

    QTensor& operator+=(const QTensor& o) {
        q11 += o.q11; q12 += o.q12; q13 += o.q13; q22 += o.q22; q23 += o.q23;
        return *this;
    }
    QTensor& operator-=(const QTensor& o) {
        q11 -= o.q11; q12 -= o.q12; q13 -= o.q13; q22 -= o.q22; q23 -= o.q23;
        return *this;
    }
    QTensor& operator*=(double s) {
        q11 *= s; q12 *= s; q13 *= s; q22 *= s; q23 *= s;
        return *this;
    }
    friend QTensor operator+(QTensor a, const QTensor& b) { return a += b; }
    friend QTensor operator-(QTensor a, const QTensor& b) { return a -= b; }
    friend QTensor operator*(QTensor a, double s) { return a *= s; }
    friend QTensor operator*(double s, QTensor a) { return a *= s; }
    friend QTensor operator/(QTensor a, double s) { return a *= (1.0 / s); }
    friend QTensor operator-(QTensor a) { return a *= -1.0; }
};

/// Frobenius contraction Q : P over all nine entries.
inline double contract(const QTensor& a, const QTensor& b) {
    return a.q11 * b.q11 + a.q22 * b.q22 + a.q33() * b.q33() +
           2.0 * (a.q12 * b.q12 + a.q13 * b.q13 + a.q23 * b.q23);
}
inline double norm2(const QTensor& q) { return contract(q, q); }
inline double norm(const QTensor& q) { return std::sqrt(norm2(q)); }

inline double det(const QTensor& q) {
    const double q33 = q.q33();
    return q.q11 * (q.q22 * q33 - q.q23 * q.q23) - q.q12 * (q.q12 * q33 - q.q23 * q.q13) +
           q.q13 * (q.q12 * q.q23 - q.q22 * q.q13);
}

/// tr(Q^3); for traceless Q this equals 3 det Q.
inline double trace_cube(const QTensor& q) { return 3.0 * det(q); }

inline Mat3 square(const QTensor& q) {
    const Mat3 m = q.matrix();
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i][j] = m[i][0] * m[0][j] + m[i][1] * m[1][j] + m[i][2] * m[2][j];
    return r;
}

/// Coefficients of the bulk potential a/2 tr Q^2 - b/3 tr Q^3 + c/4 (tr Q^2)^2.
struct BulkParams {
    double a = 3.0;
    double b = 9.0;
    double c = 1.0;

    /// Nematic scalar order (b + sqrt(b^2 - 24ac)) / (4c).
    double s_plus() const { return (b + std::sqrt(b * b - 24.0 * a * c)) / (4.0 * c); }

    /// b^2 = 27ac: isotropic and nematic states are both global minimisers.
    bool bistable(double tol = 1e-12) const { return std::abs(b * b - 27.0 * a * c) <= tol * b * b; }

    /// Radius above which DF(Q):Q > 0, i.e. sqrt(b^2/c^2 - 2a/c).
    double mu() const { return std::sqrt(std::max(0.0, b * b / (c * c) - 2.0 * a / c)); }

    /// Maximum-principle bound c0 for initial data with sup-norm q0_sup.
    double c0(double q0_sup) const { return std::max(mu(), q0_sup); }

    void validate() const {
        if (!(a > 0 && b > 0 && c > 0))
            throw std::invalid_argument("bulk coefficients a, b, c must be positive");
        if (b * b < 24.0 * a * c)
            throw std::invalid_argument("b^2 < 24ac: no nematic minimiser");
    }
};

inline double bulk_energy(const QTensor& q, const BulkParams& p) {
    const double t2 = norm2(q);
    return 0.5 * p.a * t2 - p.b / 3.0 * trace_cube(q) + 0.25 * p.c * t2 * t2;
}

/// Variation of the bulk energy within Q-space:
/// aQ - b(Q^2 - |Q|^2 I/3) + c|Q|^2 Q.
inline QTensor bulk_gradient(const QTensor& q, const BulkParams& p) {
    const double t2 = norm2(q);
    const Mat3 q2 = square(q);
    const double third = t2 / 3.0;
    QTensor dev{q2[0][0] - third, q2[0][1], q2[0][2], q2[1][1] - third, q2[1][2]};
    return q * (p.a + p.c * t2) - dev * p.b;
}

/// s (u (x) u - I/3). Rejects u that is not a unit vector to 1e-12.
inline QTensor uniaxial(double s, const Vec3& u) {
    if (std::abs(norm(u) - 1.0) > 1e-12)
        throw std::invalid_argument("uniaxial: director must be a unit vector");
    return {s * (u[0] * u[0] - 1.0 / 3.0), s * u[0] * u[1], s * u[0] * u[2], s * (u[1] * u[1] - 1.0 / 3.0),
            s * u[1] * u[2]};
}

/// Eigenvalues of a symmetric traceless tensor, descending.
inline Vec3 eigenvalues(const QTensor& q) {
    const double p = 0.5 * norm2(q);  // lambda^3 - p lambda - det = 0
    if (p <= 0.0) return {0.0, 0.0, 0.0};
    const double r = std::sqrt(p / 3.0);
    double arg = det(q) / (2.0 * r * r * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    constexpr double two_pi_3 = 2.0943951023931954923;
    double l1 = 2.0 * r * std::cos(theta);
    // one Newton step on the characteristic cubic tightens the simple root
    const double d = det(q);
    const double fp = 3.0 * l1 * l1 - p;
    if (std::abs(fp) > 1e-300) l1 -= (l1 * l1 * l1 - p * l1 - d) / fp;
    const double l3 = 2.0 * r * std::cos(theta + two_pi_3);
    const double l2 = -l1 - l3;
    return {l1, std::max(std::min(l2, l1), l3), l3};
}

namespace detail {

inline Vec3 sign_normalized(Vec3 u) {
    const double n = norm(u);
    for (auto& x : u) x /= n;
    for (double x : u) {
        if (std::abs(x) > 1e-12) {
            if (x < 0)
                for (auto& y : u) y = -y;
            break;
        }
    }
    return u;
}

}  // namespace detail

/// Unit eigenvector of the eigenvalue lam, sign-normalized so that its first
/// non-negligible component is positive. For a (near-)double eigenvalue the
/// coordinate axis with the largest component in the eigenspace is used.
inline Vec3 eigenvector(const QTensor& q, double lam) {
    Mat3 m = q.matrix();
    for (int i = 0; i < 3; ++i) m[i][i] -= lam;
    const Vec3 r0{m[0][0], m[0][1], m[0][2]};
    const Vec3 r1{m[1][0], m[1][1], m[1][2]};
    const Vec3 r2{m[2][0], m[2][1], m[2][2]};
    const Vec3 c[3] = {cross(r0, r1), cross(r0, r2), cross(r1, r2)};
    int best = 0;
    double bn = dot(c[0], c[0]);
    for (int k = 1; k < 3; ++k) {
        const double n = dot(c[k], c[k]);
        if (n > bn) { bn = n; best = k; }
    }
    double scale = 0;
    for (auto& row : m)
        for (double x : row) scale = std::max(scale, std::abs(x));
    if (bn > 1e-20 * scale * scale * scale * scale && bn > 0) return detail::sign_normalized(c[best]);

    // rank <= 1: the eigenspace is the orthogonal complement of the dominant row
    const Vec3 rows[3] = {r0, r1, r2};
    int wr = 0;
    for (int k = 1; k < 3; ++k)
        if (dot(rows[k], rows[k]) > dot(rows[wr], rows[wr])) wr = k;
    const double wn = norm(rows[wr]);
    if (wn == 0.0) return {0.0, 0.0, 1.0};
    const Vec3 w{rows[wr][0] / wn, rows[wr][1] / wn, rows[wr][2] / wn};
    Vec3 bestv{};
    double bestn = -1;
    for (int i = 0; i < 3; ++i) {
        Vec3 e{};
        e[i] = 1.0;
        const double proj = w[i];
        const Vec3 v{e[0] - proj * w[0], e[1] - proj * w[1], e[2] - proj * w[2]};
        const double n = norm(v);
        if (n > bestn + 1e-12) { bestn = n; bestv = v; }
    }
    return detail::sign_normalized(bestv);
}

struct Retraction {
    double s = 0;          ///< scalar order, clamped to [0, s_plus]
    Vec3 u{0, 0, 1};       ///< director (unit eigenvector of the largest eigenvalue)
    bool exact = true;     ///< Q was uniaxial with non-negative order
    bool clamped = false;  ///< raw 3/2 lambda_max exceeded s_plus
};

/// Nearest uniaxial state with the same leading eigenpair:
/// s = 3/2 lambda_max clamped to [0, s_plus], u its eigenvector.
inline Retraction uniaxial_retract(const QTensor& q, const BulkParams& p) {
    Retraction r;
    if (norm(q) < 1e-14) return r;  // isotropic point, u = e3 by convention
    const Vec3 lam = eigenvalues(q);
    const double raw = 1.5 * lam[0];
    r.u = eigenvector(q, lam[0]);
    // gap between the two smaller eigenvalues, measured as the distance from
    // the uniaxial reconstruction; well conditioned when lambda_max is simple
    const QTensor resid = q - uniaxial(raw, r.u);
    const double gap = std::sqrt(2.0) * norm(resid);
    r.exact = gap <= 1e-9;
    const double sp = p.s_plus();
    r.clamped = raw > sp;
    r.s = std::clamp(raw, 0.0, sp);
    return r;
}

}  // namespace qsl
