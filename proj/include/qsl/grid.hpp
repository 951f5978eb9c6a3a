#pragma once

// Uniform 2D grids, cell-centred and staggered (MAC) fields, and second-order
// finite-difference operators with zero-Dirichlet or periodic boundaries.
//
// Cell (i, j) has centre (x0 + (i + 1/2) h, y0 + (j + 1/2) h). Storage is
// row-major: index j * nx + i. Zero-Dirichlet ghosts reflect the first
// interior value through the wall (ghost = -interior), which places the
// boundary value 0 on the wall face.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/geometry.hpp"
#include "qsl/qspace.hpp"

namespace qsl {

enum class Boundary { dirichlet_zero, periodic };

inline std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "dirichlet_zero"; }

struct Grid2D {
    int nx = 0;
    int ny = 0;
    double h = 0;
    double x0 = 0;  ///< lower-left corner
    double y0 = 0;
    Boundary bc = Boundary::dirichlet_zero;

    /// The centred rectangle [-nx h/2, nx h/2] x [-ny h/2, ny h/2].
    static Grid2D centered(int nx, int ny, double h, Boundary bc) {
        if (nx < 2 || ny < 2 || !(h > 0)) throw std::invalid_argument("grid: need nx, ny >= 2 and h > 0");
        return Grid2D{nx, ny, h, -0.5 * nx * h, -0.5 * ny * h, bc};
    }
    /// The square [-L, L]^2 with n cells per side.
    static Grid2D square(double L, int n, Boundary bc) { return centered(n, n, 2.0 * L / n, bc); }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    double cell_area() const { return h * h; }
    double half_width_x() const { return 0.5 * nx * h; }
    double half_width_y() const { return 0.5 * ny * h; }
    Vec2 center(int i, int j) const { return {x0 + (i + 0.5) * h, y0 + (j + 0.5) * h}; }
    bool periodic() const { return bc == Boundary::periodic; }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

// Q-space / vector / scalar inner products used by fields generically.
inline double inner_value(double a, double b) { return a * b; }
inline double inner_value(const Vec2& a, const Vec2& b) { return dot(a, b); }
inline double inner_value(const QTensor& a, const QTensor& b) { return contract(a, b); }

inline bool finite_value(double a) { return std::isfinite(a); }
inline bool finite_value(const Vec2& a) { return std::isfinite(a.x) && std::isfinite(a.y); }
inline bool finite_value(const QTensor& a) {
    return std::isfinite(a.q11) && std::isfinite(a.q12) && std::isfinite(a.q13) && std::isfinite(a.q22) &&
           std::isfinite(a.q23);
}

/// Cell-centred samples of T over a grid.
template <class T>
class Field {
public:
    Field() = default;
    explicit Field(const Grid2D& g, T init = T{}) : grid_(g), data_(g.size(), init) {}

    const Grid2D& grid() const { return grid_; }
    std::size_t size() const { return data_.size(); }
    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    T& operator[](std::size_t k) { return data_[k]; }
    const T& operator[](std::size_t k) const { return data_[k]; }

    /// Value at (i, j) where either index may lie one cell outside the grid.
    T ghost(int i, int j) const {
        const int nx = grid_.nx, ny = grid_.ny;
        if (grid_.periodic()) {
            i = (i + nx) % nx;
            j = (j + ny) % ny;
            return (*this)(i, j);
        }
        double sign = 1.0;
        if (i < 0) { i = -1 - i; sign = -sign; }
        if (i >= nx) { i = 2 * nx - 1 - i; sign = -sign; }
        if (j < 0) { j = -1 - j; sign = -sign; }
        if (j >= ny) { j = 2 * ny - 1 - j; sign = -sign; }
        return (*this)(i, j) * sign;
    }

    bool all_finite() const {
        for (const T& v : data_)
            if (!finite_value(v)) return false;
        return true;
    }

    Field& operator+=(const Field& o) {
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Field& operator-=(const Field& o) {
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Field& operator*=(double s) {
        for (auto& v : data_) v *= s;
        return *this;
    }
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(Field a, double s) { return a *= s; }
    friend Field operator*(double s, Field a) { return a *= s; }

private:
    Grid2D grid_{};
    std::vector<T> data_;
};

template <class T>
double inner(const Field<T>& a, const Field<T>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += inner_value(a[k], b[k]);
    return s * a.grid().cell_area();
}

/// y += alpha x
template <class T>
void axpy(double alpha, const Field<T>& x, Field<T>& y) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += x[k] * alpha;
}

/// y = x + beta y
template <class T>
void xpby(const Field<T>& x, double beta, Field<T>& y) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = x[k] + y[k] * beta;
}

/// Midpoint-rule integral h^2 sum f.
inline double integrate(const Field<double>& f) {
    double s = 0;
    for (double v : f.data()) s += v;
    return s * f.grid().cell_area();
}

template <class T, class Fn>
Field<T> sample_field(const Grid2D& g, Fn&& fn) {
    Field<T> f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f(i, j) = fn(g.center(i, j));
    return f;
}

/// Five-point Laplacian.
template <class T>
Field<T> laplacian(const Field<T>& f) {
    const Grid2D& g = f.grid();
    Field<T> out(g);
    const double ih2 = 1.0 / (g.h * g.h);
    for (int j = 0; j < g.ny; ++j) {
        const bool jin = j > 0 && j < g.ny - 1;
        for (int i = 0; i < g.nx; ++i) {
            const T& c = f(i, j);
            if (jin && i > 0 && i < g.nx - 1) {
                out(i, j) = (f(i - 1, j) + f(i + 1, j) + f(i, j - 1) + f(i, j + 1) - c * 4.0) * ih2;
            } else {
                out(i, j) =
                    (f.ghost(i - 1, j) + f.ghost(i + 1, j) + f.ghost(i, j - 1) + f.ghost(i, j + 1) - c * 4.0) * ih2;
            }
        }
    }
    return out;
}

/// Centred partial derivatives (d/dx f, d/dy f).
template <class T>
struct Gradient {
    Field<T> dx;
    Field<T> dy;
};

template <class T>
Gradient<T> gradient_components(const Field<T>& f) {
    const Grid2D& g = f.grid();
    Gradient<T> out{Field<T>(g), Field<T>(g)};
    const double i2h = 0.5 / g.h;
    for (int j = 0; j < g.ny; ++j) {
        const bool jin = j > 0 && j < g.ny - 1;
        for (int i = 0; i < g.nx; ++i) {
            if (jin && i > 0 && i < g.nx - 1) {
                out.dx(i, j) = (f(i + 1, j) - f(i - 1, j)) * i2h;
                out.dy(i, j) = (f(i, j + 1) - f(i, j - 1)) * i2h;
            } else {
                out.dx(i, j) = (f.ghost(i + 1, j) - f.ghost(i - 1, j)) * i2h;
                out.dy(i, j) = (f.ghost(i, j + 1) - f.ghost(i, j - 1)) * i2h;
            }
        }
    }
    return out;
}

/// Centred gradient of a scalar field.
inline Field<Vec2> gradient(const Field<double>& f) {
    const auto c = gradient_components(f);
    Field<Vec2> out(f.grid());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = {c.dx[k], c.dy[k]};
    return out;
}

/// Centred divergence of a cell-centred vector field; the negative adjoint of
/// `gradient` for periodic grids.
inline Field<double> divergence(const Field<Vec2>& v) {
    const Grid2D& g = v.grid();
    Field<double> out(g);
    const double i2h = 0.5 / g.h;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = (v.ghost(i + 1, j).x - v.ghost(i - 1, j).x + v.ghost(i, j + 1).y - v.ghost(i, j - 1).y) * i2h;
    return out;
}

/// Centred (v . grad) f with v sampled at cell centres.
template <class T>
Field<T> advect(const Field<Vec2>& v, const Field<T>& f) {
    const Grid2D& g = f.grid();
    Field<T> out(g);
    const double i2h = 0.5 / g.h;
    for (int j = 0; j < g.ny; ++j) {
        const bool jin = j > 0 && j < g.ny - 1;
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 w = v(i, j);
            if (w.x == 0.0 && w.y == 0.0) continue;
            if (jin && i > 0 && i < g.nx - 1)
                out(i, j) = (f(i + 1, j) - f(i - 1, j)) * (w.x * i2h) + (f(i, j + 1) - f(i, j - 1)) * (w.y * i2h);
            else
                out(i, j) = (f.ghost(i + 1, j) - f.ghost(i - 1, j)) * (w.x * i2h) +
                            (f.ghost(i, j + 1) - f.ghost(i, j - 1)) * (w.y * i2h);
        }
    }
    return out;
}

/// Staggered velocity: u on x-faces, v on y-faces. Face (i, j) of u is the
/// left face of cell (i, j); for zero-Dirichlet grids an extra column i = nx
/// holds the right wall, and wall-normal faces are pinned to zero.
class MacField {
public:
    MacField() = default;
    explicit MacField(const Grid2D& g)
        : grid_(g),
          nux_(g.periodic() ? g.nx : g.nx + 1),
          nvy_(g.periodic() ? g.ny : g.ny + 1),
          u_(static_cast<std::size_t>(nux_) * g.ny, 0.0),
          v_(static_cast<std::size_t>(g.nx) * nvy_, 0.0) {}

    const Grid2D& grid() const { return grid_; }
    int nux() const { return nux_; }
    int nvy() const { return nvy_; }

    double& u(int i, int j) { return u_[static_cast<std::size_t>(j) * nux_ + i]; }
    double u(int i, int j) const { return u_[static_cast<std::size_t>(j) * nux_ + i]; }
    double& v(int i, int j) { return v_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    double v(int i, int j) const { return v_[static_cast<std::size_t>(j) * grid_.nx + i]; }

    std::vector<double>& u_data() { return u_; }
    std::vector<double>& v_data() { return v_; }
    const std::vector<double>& u_data() const { return u_; }
    const std::vector<double>& v_data() const { return v_; }

    /// u with out-of-range indices resolved by the boundary condition.
    double u_ghost(int i, int j) const {
        const int nx = grid_.nx, ny = grid_.ny;
        if (grid_.periodic()) return u((i + nx) % nx, (j + ny) % ny);
        if (i < 0 || i > nx) return 0.0;
        if (j < 0) return -u(i, -1 - j);
        if (j >= ny) return -u(i, 2 * ny - 1 - j);
        return u(i, j);
    }
    double v_ghost(int i, int j) const {
        const int nx = grid_.nx, ny = grid_.ny;
        if (grid_.periodic()) return v((i + nx) % nx, (j + ny) % ny);
        if (j < 0 || j > ny) return 0.0;
        if (i < 0) return -v(-1 - i, j);
        if (i >= nx) return -v(2 * nx - 1 - i, j);
        return v(i, j);
    }

    /// Wall-normal faces are not unknowns for zero-Dirichlet grids.
    bool u_active(int i) const { return grid_.periodic() || (i > 0 && i < grid_.nx); }
    bool v_active(int j) const { return grid_.periodic() || (j > 0 && j < grid_.ny); }

    void enforce_walls() {
        if (grid_.periodic()) return;
        for (int j = 0; j < grid_.ny; ++j) u(0, j) = u(grid_.nx, j) = 0.0;
        for (int i = 0; i < grid_.nx; ++i) v(i, 0) = v(i, grid_.ny) = 0.0;
    }

    bool all_finite() const {
        for (double x : u_)
            if (!std::isfinite(x)) return false;
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    MacField& operator+=(const MacField& o) {
        for (std::size_t k = 0; k < u_.size(); ++k) u_[k] += o.u_[k];
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
        return *this;
    }
    MacField& operator-=(const MacField& o) {
        for (std::size_t k = 0; k < u_.size(); ++k) u_[k] -= o.u_[k];
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
        return *this;
    }
    MacField& operator*=(double s) {
        for (auto& x : u_) x *= s;
        for (auto& x : v_) x *= s;
        return *this;
    }
    friend MacField operator+(MacField a, const MacField& b) { return a += b; }
    friend MacField operator-(MacField a, const MacField& b) { return a -= b; }
    friend MacField operator*(MacField a, double s) { return a *= s; }
    friend MacField operator*(double s, MacField a) { return a *= s; }

private:
    Grid2D grid_{};
    int nux_ = 0;
    int nvy_ = 0;
    std::vector<double> u_;
    std::vector<double> v_;
};

/// Sum over face unknowns times h^2 (wall-normal faces carry zero).
inline double inner(const MacField& a, const MacField& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.u_data().size(); ++k) s += a.u_data()[k] * b.u_data()[k];
    for (std::size_t k = 0; k < a.v_data().size(); ++k) s += a.v_data()[k] * b.v_data()[k];
    return s * a.grid().cell_area();
}
inline void axpy(double alpha, const MacField& x, MacField& y) {
    for (std::size_t k = 0; k < y.u_data().size(); ++k) y.u_data()[k] += alpha * x.u_data()[k];
    for (std::size_t k = 0; k < y.v_data().size(); ++k) y.v_data()[k] += alpha * x.v_data()[k];
}
inline void xpby(const MacField& x, double beta, MacField& y) {
    for (std::size_t k = 0; k < y.u_data().size(); ++k) y.u_data()[k] = x.u_data()[k] + beta * y.u_data()[k];
    for (std::size_t k = 0; k < y.v_data().size(); ++k) y.v_data()[k] = x.v_data()[k] + beta * y.v_data()[k];
}

/// Compact face divergence, cell-centred result.
inline Field<double> mac_divergence(const MacField& w) {
    const Grid2D& g = w.grid();
    Field<double> out(g);
    const double ih = 1.0 / g.h;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = (w.u_ghost(i + 1, j) - w.u(i, j) + w.v_ghost(i, j + 1) - w.v(i, j)) * ih;
    return out;
}

/// Compact face gradient of a cell-centred scalar; wall-normal faces zero.
inline MacField mac_gradient(const Field<double>& p) {
    const Grid2D& g = p.grid();
    MacField out(g);
    const double ih = 1.0 / g.h;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < out.nux(); ++i)
            if (out.u_active(i)) out.u(i, j) = (p(i % g.nx, j) - p((i - 1 + g.nx) % g.nx, j)) * ih;
    for (int j = 0; j < out.nvy(); ++j)
        if (out.v_active(j))
            for (int i = 0; i < g.nx; ++i) out.v(i, j) = (p(i, j % g.ny) - p(i, (j - 1 + g.ny) % g.ny)) * ih;
    return out;
}

/// Componentwise five-point Laplacian on the face unknowns.
inline MacField mac_laplacian(const MacField& w) {
    const Grid2D& g = w.grid();
    MacField out(g);
    const double ih2 = 1.0 / (g.h * g.h);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < w.nux(); ++i)
            if (w.u_active(i))
                out.u(i, j) = (w.u_ghost(i - 1, j) + w.u_ghost(i + 1, j) + w.u_ghost(i, j - 1) +
                               w.u_ghost(i, j + 1) - 4.0 * w.u(i, j)) * ih2;
    for (int j = 0; j < w.nvy(); ++j)
        if (w.v_active(j))
            for (int i = 0; i < g.nx; ++i)
                out.v(i, j) = (w.v_ghost(i - 1, j) + w.v_ghost(i + 1, j) + w.v_ghost(i, j - 1) +
                               w.v_ghost(i, j + 1) - 4.0 * w.v(i, j)) * ih2;
    return out;
}

/// Face velocities averaged to cell centres.
inline Field<Vec2> cell_velocity(const MacField& w) {
    const Grid2D& g = w.grid();
    Field<Vec2> out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = {0.5 * (w.u(i, j) + w.u_ghost(i + 1, j)), 0.5 * (w.v(i, j) + w.v_ghost(i, j + 1))};
    return out;
}

/// Centred (w . grad) w evaluated on the faces.
inline MacField mac_advect(const MacField& w) {
    const Grid2D& g = w.grid();
    MacField out(g);
    const double i2h = 0.5 / g.h;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < w.nux(); ++i) {
            if (!w.u_active(i)) continue;
            // v at the u-face: average of the four surrounding y-faces
            const double vbar =
                0.25 * (w.v_ghost(i - 1, j) + w.v_ghost(i, j) + w.v_ghost(i - 1, j + 1) + w.v_ghost(i, j + 1));
            const double uu = w.u(i, j);
            out.u(i, j) = uu * (w.u_ghost(i + 1, j) - w.u_ghost(i - 1, j)) * i2h +
                          vbar * (w.u_ghost(i, j + 1) - w.u_ghost(i, j - 1)) * i2h;
        }
    for (int j = 0; j < w.nvy(); ++j) {
        if (!w.v_active(j)) continue;
        for (int i = 0; i < g.nx; ++i) {
            const double ubar =
                0.25 * (w.u_ghost(i, j - 1) + w.u_ghost(i + 1, j - 1) + w.u_ghost(i, j) + w.u_ghost(i + 1, j));
            const double vv = w.v(i, j);
            out.v(i, j) = ubar * (w.v_ghost(i + 1, j) - w.v_ghost(i - 1, j)) * i2h +
                          vv * (w.v_ghost(i, j + 1) - w.v_ghost(i, j - 1)) * i2h;
        }
    }
    return out;
}

/// Kinetic energy 1/2 int |w|^2 on the faces.
inline double kinetic_energy(const MacField& w) { return 0.5 * inner(w, w); }

inline double max_abs(const Field<double>& f) {
    double m = 0;
    for (double v : f.data()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace qsl
