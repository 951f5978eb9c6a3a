#pragma once

// One-dimensional structure functions of the bistable potential: the
// uniaxial reduction f(s), the tanh travelling wave, the quasi-distance
// g(s) to the nematic manifold, and the pointwise psi / D d^F maps.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qsl/qspace.hpp"

namespace qsl {

/// Bulk energy along the uniaxial branch, (s^2/27)(9a - 2bs + 3cs^2).
inline double f_uni(double s, const BulkParams& p) {
    return s * s / 27.0 * (9.0 * p.a - 2.0 * p.b * s + 3.0 * p.c * s * s);
}

inline double df_uni(double s, const BulkParams& p) {
    return (18.0 * p.a * s - 6.0 * p.b * s * s + 12.0 * p.c * s * s * s) / 27.0;
}

/// Increasing heteroclinic S(z) = (s_plus/2)(1 + tanh(sqrt(a) z / 2)).
inline double wave_profile(double z, const BulkParams& p) {
    return 0.5 * p.s_plus() * (1.0 + std::tanh(0.5 * std::sqrt(p.a) * z));
}

/// S'(z), S''(z) in closed form.
inline double wave_profile_d1(double z, const BulkParams& p) {
    const double k = 0.5 * std::sqrt(p.a);
    const double t = std::tanh(k * z);
    return 0.5 * p.s_plus() * k * (1.0 - t * t);
}
inline double wave_profile_d2(double z, const BulkParams& p) {
    const double k = 0.5 * std::sqrt(p.a);
    const double t = std::tanh(k * z);
    return -p.s_plus() * k * k * t * (1.0 - t * t);
}

/// Counts evaluations whose scalar order had to be clamped into [0, s_plus].
/// One counter per run; atomic so a data-parallel sweep over cells may share it.
class ClampCounter {
public:
    void add(std::uint64_t n = 1) { count_.fetch_add(n, std::memory_order_relaxed); }
    std::uint64_t value() const { return count_.load(std::memory_order_relaxed); }
    void reset() { count_.store(0); }

private:
    std::atomic<std::uint64_t> count_{0};
};

namespace detail {

inline void require_bistable(const BulkParams& p) {
    if (!p.bistable(1e-10))
        throw std::invalid_argument("closed-form quasi-distance requires b^2 = 27ac");
}

// antiderivative of sqrt(f) = (sqrt(c)/3) tau (s_plus - tau)
inline double sqrt_f_antiderivative(double tau, double sp) {
    return sp * tau * tau / 2.0 - tau * tau * tau / 3.0;
}

}  // namespace detail

/// Quasi-distance from s0 (uniaxial, s0 in [0, s_plus]) to the nematic
/// manifold: g(s0) = (2/sqrt 3) int_{s0}^{s_plus} sqrt f. Out-of-range s0 is
/// clamped and, when a counter is supplied, recorded.
inline double quasi_dist_uni(double s0, const BulkParams& p, ClampCounter* clamps = nullptr) {
    detail::require_bistable(p);
    const double sp = p.s_plus();
    if (s0 < 0.0 || s0 > sp) {
        if (clamps) clamps->add();
        s0 = std::clamp(s0, 0.0, sp);
    }
    const double pref = 2.0 / std::sqrt(3.0) * std::sqrt(p.c) / 3.0;
    return pref * (detail::sqrt_f_antiderivative(sp, sp) - detail::sqrt_f_antiderivative(s0, sp));
}

/// g'(s) = -(2/sqrt 3) sqrt f(s) on [0, s_plus].
inline double quasi_dist_uni_d1(double s, const BulkParams& p) {
    return -2.0 / std::sqrt(3.0) * std::sqrt(std::max(0.0, f_uni(s, p)));
}

/// Energy per unit length of the optimal transition layer, g(0).
inline double surface_tension(const BulkParams& p) { return quasi_dist_uni(0.0, p); }

/// Immutable bundle of the potential and its derived constants.
struct ProfileTables {
    BulkParams params;
    double sigma;
    double s_plus;

    explicit ProfileTables(const BulkParams& p)
        : params(p), sigma(surface_tension(p)), s_plus(p.s_plus()) {}
};

/// psi = d^F(Q), evaluated as g of the retracted scalar order.
inline double psi_point(const QTensor& q, const BulkParams& p, ClampCounter* clamps = nullptr) {
    const Retraction r = uniaxial_retract(q, p);
    if (clamps && r.clamped) clamps->add();
    return quasi_dist_uni(r.s, p);
}

/// D d^F(Q) = -sqrt 2 sqrt f(s) Q/|Q|, the chain rule of g through the
/// retraction along the uniaxial branch. Zero at the isotropic point.
inline QTensor dquasi_point(const QTensor& q, const BulkParams& p, ClampCounter* clamps = nullptr) {
    const double nq = norm(q);
    if (nq < 1e-14) return {};
    const Retraction r = uniaxial_retract(q, p);
    if (clamps && r.clamped) clamps->add();
    const double mag = std::sqrt(2.0) * std::sqrt(std::max(0.0, f_uni(r.s, p)));
    return q * (-mag / nq);
}

/// The psi value and D d^F from a single retraction.
struct PsiSample {
    double psi = 0;
    QTensor dpsi{};
};

inline PsiSample psi_sample(const QTensor& q, const BulkParams& p, ClampCounter* clamps = nullptr) {
    PsiSample out;
    const double nq = norm(q);
    const Retraction r = uniaxial_retract(q, p);
    if (clamps && r.clamped) clamps->add();
    out.psi = quasi_dist_uni(r.s, p);
    if (nq >= 1e-14) {
        const double mag = std::sqrt(2.0) * std::sqrt(std::max(0.0, f_uni(r.s, p)));
        out.dpsi = q * (-mag / nq);
    }
    return out;
}

}  // namespace qsl
