#pragma once

// Periodic spectral grid on the box (0,1) x (0,1) x (-h,h) and the scalar
// fields living on it. Horizontal wavenumbers are integer multiples of 2*pi,
// vertical ones multiples of pi/h (period 2h). Transforms are plain 3D c2c
// DFTs; coefficients are of the interpolant
//     f(x,y,z) = sum_m c_m exp(i(kx x + ky y + kz (z+h))).
//
// Conventions:
//   * odd-order derivatives zero the Nyquist plane (its sine partner is not
//     representable); even orders multiply by -k^2 everywhere,
//   * dealiasing keeps |mode| <= floor(N/3) per axis (2/3 rule),
//   * the vertical antiderivative anchors at z = -h and carries the z-mean
//     mode as an exact linear profile in physical space.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace peq {

using Complex = std::complex<double>;

enum class Axis { X, Y, Z };
enum class Rep { Physical, Spectral };
enum class Direction { Forward, Backward };

struct Grid {
    int nx = 0, ny = 0, nz = 0;
    double h = 0.0;

    static constexpr double Lx = 1.0;
    static constexpr double Ly = 1.0;

    double dx() const { return Lx / nx; }
    double dy() const { return Ly / ny; }
    double dz() const { return 2.0 * h / nz; }

    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }
    double z(int k) const { return -h + k * dz(); }

    std::size_t size() const {
        return static_cast<std::size_t>(nx) * ny * static_cast<std::size_t>(nz);
    }
    std::size_t size2d() const { return static_cast<std::size_t>(nx) * ny; }

    double volume() const { return Lx * Ly * 2.0 * h; }
    double cell_volume() const { return dx() * dy() * dz(); }
    double cell_area() const { return dx() * dy(); }

    // z-fastest layout, shared by physical values and spectral coefficients.
    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * ny + j) * nz + k;
    }
    std::size_t idx2d(int i, int j) const {
        return static_cast<std::size_t>(i) * ny + j;
    }

    // Signed mode index for DFT slot m on an n-point axis.
    static int signed_mode(int m, int n) { return (m <= n / 2) ? m : m - n; }

    double kx(int m) const { return 2.0 * M_PI * signed_mode(m, nx); }
    double ky(int m) const { return 2.0 * M_PI * signed_mode(m, ny); }
    double kz(int m) const { return (M_PI / h) * signed_mode(m, nz); }

    static int dealias_cutoff(int n) { return n / 3; }

    bool operator==(const Grid&) const = default;
};

// pre: nx, ny, nz even and >= 4; h > 0.
Grid make_grid(int nx, int ny, int nz, double h);

// One real scalar field, held either as collocation values or as DFT
// coefficients (conjugate-symmetric up to round-off).
class Field3 {
  public:
    Field3() = default;
    Field3(const Grid& g, Rep rep);

    static Field3 zeros(const Grid& g, Rep rep = Rep::Physical) { return Field3(g, rep); }

    template <class F>
    static Field3 sample(const Grid& g, F&& fn) {
        Field3 f(g, Rep::Physical);
        std::size_t p = 0;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                for (int k = 0; k < g.nz; ++k, ++p)
                    f.phys_[p] = fn(g.x(i), g.y(j), g.z(k));
        return f;
    }

    const Grid& grid() const { return grid_; }
    Rep rep() const { return rep_; }
    bool empty() const { return grid_.nx == 0; }

    std::span<double> phys();
    std::span<const double> phys() const;
    std::span<Complex> spec();
    std::span<const Complex> spec() const;

    double& at(int i, int j, int k) { return phys()[grid_.idx(i, j, k)]; }
    double at(int i, int j, int k) const { return phys()[grid_.idx(i, j, k)]; }
    Complex& coef(int i, int j, int k) { return spec()[grid_.idx(i, j, k)]; }
    Complex coef(int i, int j, int k) const { return spec()[grid_.idx(i, j, k)]; }

  private:
    friend Field3 transform(const Field3&, Direction);

    Grid grid_{};
    Rep rep_ = Rep::Physical;
    std::vector<double> phys_;
    std::vector<Complex> spec_;
};

// 2D field on M = (0,1)^2 (vertical averages, surface pressure).
class Field2 {
  public:
    Field2() = default;
    Field2(const Grid& g, Rep rep);

    static Field2 zeros(const Grid& g, Rep rep = Rep::Physical) { return Field2(g, rep); }

    template <class F>
    static Field2 sample(const Grid& g, F&& fn) {
        Field2 f(g, Rep::Physical);
        std::size_t p = 0;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j, ++p)
                f.phys_[p] = fn(g.x(i), g.y(j));
        return f;
    }

    const Grid& grid() const { return grid_; }
    Rep rep() const { return rep_; }

    std::span<double> phys();
    std::span<const double> phys() const;
    std::span<Complex> spec();
    std::span<const Complex> spec() const;

    double& at(int i, int j) { return phys()[grid_.idx2d(i, j)]; }
    double at(int i, int j) const { return phys()[grid_.idx2d(i, j)]; }
    Complex& coef(int i, int j) { return spec()[grid_.idx2d(i, j)]; }
    Complex coef(int i, int j) const { return spec()[grid_.idx2d(i, j)]; }

  private:
    friend Field2 transform(const Field2&, Direction);

    Grid grid_{};
    Rep rep_ = Rep::Physical;
    std::vector<double> phys_;
    std::vector<Complex> spec_;
};

// Strict transforms: the representation tag must match the direction.
Field3 transform(const Field3& f, Direction dir);
Field2 transform(const Field2& f, Direction dir);

// Lenient helpers (no-op when already there).
Field3 to_spectral(Field3 f);
Field3 to_physical(Field3 f);
Field2 to_spectral(Field2 f);
Field2 to_physical(Field2 f);

// Exact differentiation of the trigonometric interpolant. order is 1 or 2.
Field3 derivative(const Field3& f, Axis axis, int order = 1);
Field2 derivative(const Field2& f, Axis axis, int order = 1);  // Axis::X|Y only

// 2/3-rule truncation (spectral in, spectral out).
Field3 dealias(Field3 f);

// F(x,y,z) = int_{-h}^{z} f(x,y,xi) dxi. Physical output: the z-mean mode
// contributes the exact linear profile mean*(z+h), which is not 2h-periodic.
Field3 vertical_antiderivative(const Field3& f);

// Same, but with the z-mean mode dropped (spectral in, spectral out).
// Exactly the antiderivative whenever the input has no z-mean.
Field3 vertical_antiderivative_zero_mean(Field3 f);

// --- small arithmetic helpers (matching representations required) ---
Field3& operator+=(Field3& a, const Field3& b);
Field3& operator-=(Field3& a, const Field3& b);
Field3& operator*=(Field3& a, double s);
Field3 operator+(Field3 a, const Field3& b);
Field3 operator-(Field3 a, const Field3& b);
Field3 operator*(double s, Field3 a);
Field2& operator+=(Field2& a, const Field2& b);
Field2& operator-=(Field2& a, const Field2& b);
Field2& operator*=(Field2& a, double s);
Field2 operator*(double s, Field2 a);

// Pointwise product of physical fields.
Field3 pmul(const Field3& a, const Field3& b);

double max_abs(const Field3& f);  // physical
bool all_finite(const Field3& f);

// FFT thread count (default 1; PEQ_THREADS env consulted on first use).
// Must be called before the first transform to have any effect.
void set_fft_threads(int n);

namespace testhooks {
// Selftest fault injection: when true, dealias() keeps every mode.
extern bool corrupt_dealias;
}  // namespace testhooks

}  // namespace peq
