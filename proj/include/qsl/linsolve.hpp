#pragma once

// Matrix-free conjugate gradients and a spectral Poisson solver for the
// pressure projection (cosine transform for zero-flux walls, Fourier
// transform for periodic grids).

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/errors.hpp"
#include "qsl/grid.hpp"

namespace qsl {

struct CgResult {
    int iterations = 0;
    double residual = 0;  ///< final ||b - Ax|| / ||b||
    bool converged = false;
};

/// Solves A x = b for SPD A. `x` holds the initial guess on entry.
/// V needs inner(V, V), axpy(alpha, x, y) and xpby(x, beta, y).
template <class V, class Apply>
CgResult conjugate_gradient(Apply&& apply, const V& b, V& x, double rtol, int max_iter) {
    CgResult res;
    const double bnorm = std::sqrt(inner(b, b));
    if (bnorm == 0.0) {
        x = b;  // zero right-hand side: zero solution
        res.converged = true;
        return res;
    }
    V r = b;
    {
        const V ax = apply(x);
        axpy(-1.0, ax, r);
    }
    double rr = inner(r, r);
    res.residual = std::sqrt(rr) / bnorm;
    if (res.residual <= rtol) {
        res.converged = true;
        return res;
    }
    V p = r;
    for (int k = 1; k <= max_iter; ++k) {
        const V ap = apply(p);
        const double pap = inner(p, ap);
        if (!(pap > 0.0)) break;
        const double alpha = rr / pap;
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        const double rr_new = inner(r, r);
        res.iterations = k;
        res.residual = std::sqrt(rr_new) / bnorm;
        if (res.residual <= rtol) {
            res.converged = true;
            return res;
        }
        xpby(r, rr_new / rr, p);
        rr = rr_new;
    }
    return res;
}

namespace detail {
// FFTW planning is not thread-safe; execution on distinct plans is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace detail

/// Direct solver for the compact cell-centred Laplacian L p = rhs, where L is
/// mac_divergence(mac_gradient(.)): zero normal flux at walls for
/// zero-Dirichlet velocity grids, periodic otherwise. The constant mode is
/// removed, so the solution has zero mean.
class PoissonSolver {
public:
    explicit PoissonSolver(const Grid2D& g) : grid_(g), buf_(g.size()), eig_(g.size()) {
        const int nx = g.nx, ny = g.ny;
        const double ih2 = 1.0 / (g.h * g.h);
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        if (g.periodic()) {
            spec_.resize(2 * static_cast<std::size_t>(ny) * (nx / 2 + 1));
            fwd_ = fftw_plan_dft_r2c_2d(ny, nx, buf_.data(), reinterpret_cast<fftw_complex*>(spec_.data()),
                                        FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_c2r_2d(ny, nx, reinterpret_cast<fftw_complex*>(spec_.data()), buf_.data(),
                                        FFTW_ESTIMATE);
            eig_.assign(static_cast<std::size_t>(ny) * (nx / 2 + 1), 0.0);
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i <= nx / 2; ++i)
                    eig_[static_cast<std::size_t>(j) * (nx / 2 + 1) + i] =
                        (2.0 * std::cos(2.0 * std::numbers::pi * i / nx) - 2.0 +
                         2.0 * std::cos(2.0 * std::numbers::pi * j / ny) - 2.0) * ih2;
            norm_ = 1.0 / (static_cast<double>(nx) * ny);
        } else {
            fwd_ = fftw_plan_r2r_2d(ny, nx, buf_.data(), buf_.data(), FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
            bwd_ = fftw_plan_r2r_2d(ny, nx, buf_.data(), buf_.data(), FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i)
                    eig_[static_cast<std::size_t>(j) * nx + i] =
                        (2.0 * std::cos(std::numbers::pi * i / nx) - 2.0 + 2.0 * std::cos(std::numbers::pi * j / ny) -
                         2.0) * ih2;
            norm_ = 1.0 / (4.0 * nx * ny);
        }
        if (!fwd_ || !bwd_) throw std::runtime_error("fftw planning failed");
    }
    ~PoissonSolver() {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        if (fwd_) fftw_destroy_plan(fwd_);
        if (bwd_) fftw_destroy_plan(bwd_);
    }
    PoissonSolver(const PoissonSolver&) = delete;
    PoissonSolver& operator=(const PoissonSolver&) = delete;

    /// Solves and returns the zero-mean solution; the mean of rhs is discarded.
    Field<double> solve(const Field<double>& rhs) {
        const std::size_t n = grid_.size();
        for (std::size_t k = 0; k < n; ++k) buf_[k] = rhs[k];
        fftw_execute(fwd_);
        if (grid_.periodic()) {
            for (std::size_t k = 0; k < spec_.size(); k += 2) {
                const double e = eig_[k / 2];
                const double s = (k == 0) ? 0.0 : norm_ / e;
                spec_[k] *= s;
                spec_[k + 1] *= s;
            }
        } else {
            buf_[0] = 0.0;
            for (std::size_t k = 1; k < n; ++k) buf_[k] *= norm_ / eig_[k];
        }
        fftw_execute(bwd_);
        Field<double> out(grid_);
        for (std::size_t k = 0; k < n; ++k) out[k] = buf_[k];
        return out;
    }

    const Grid2D& grid() const { return grid_; }

private:
    Grid2D grid_;
    std::vector<double> buf_;
    std::vector<double> spec_;  // interleaved complex for the periodic case
    std::vector<double> eig_;
    double norm_ = 1.0;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

}  // namespace qsl
