#pragma once

// Test-only oracles, independent of the library's spectral path:
//   * composite Simpson quadrature for frozen integral values,
//   * collocation inner products / norms written out longhand,
//   * seeded band-limited random fields that represent the same analytic
//     trigonometric polynomial on every grid (coefficients drawn from a
//     fixed-seed generator, bandwidth well inside the 2/3 cutoff).

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "peq/grid.hpp"

namespace testor {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
}

template <class F>
double simpson(F&& f, double a, double b, int n = 2000) {
    if (n % 2 != 0) ++n;
    const double dx = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * dx) * (i % 2 ? 4.0 : 2.0);
    return s * dx / 3.0;
}

// Collocation quadrature, written independently of peq::norm/inner.
inline double quad_inner(const peq::Field3& a, const peq::Field3& b) {
    auto pa = a.phys();
    auto pb = b.phys();
    double s = 0.0;
    for (std::size_t p = 0; p < pa.size(); ++p) s += pa[p] * pb[p];
    return s * a.grid().cell_volume();
}

inline double quad_l2(const peq::Field3& a) { return std::sqrt(quad_inner(a, a)); }

inline double u01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

// Random real trig polynomial with |mode| <= band per axis. Identical
// analytic content on any grid large enough to hold the band.
inline peq::Field3 random_field(const peq::Grid& g, std::uint64_t seed, int band = 3,
                                double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    peq::Field3 f(g, peq::Rep::Spectral);
    auto slot = [](int m, int n) { return ((m % n) + n) % n; };
    for (int mx = -band; mx <= band; ++mx)
        for (int my = -band; my <= band; ++my)
            for (int mz = -band; mz <= band; ++mz) {
                // visit each conjugate pair once, leader chosen lexicographically
                if (std::make_tuple(mx, my, mz) < std::make_tuple(-mx, -my, -mz)) continue;
                const double re = amplitude * (u01(rng) - 0.5);
                const double im = amplitude * (u01(rng) - 0.5);
                if (mx == 0 && my == 0 && mz == 0) {
                    f.coef(0, 0, 0) += peq::Complex(re, 0.0);
                    continue;
                }
                const peq::Complex w(re, im);
                f.coef(slot(mx, g.nx), slot(my, g.ny), slot(mz, g.nz)) += 0.5 * w;
                f.coef(slot(-mx, g.nx), slot(-my, g.ny), slot(-mz, g.nz)) += 0.5 * std::conj(w);
            }
    return to_physical(std::move(f));
}

enum class ZParity { Even, Odd };

// Random field with definite parity in z (spectral symmetrization of the
// unconstrained draw; either way a band-limited trig polynomial).
inline peq::Field3 random_field_z(const peq::Grid& g, std::uint64_t seed, ZParity parity,
                                  int band = 3, double amplitude = 1.0) {
    peq::Field3 f = to_spectral(random_field(g, seed, band, amplitude));
    peq::Field3 out(g, peq::Rep::Spectral);
    const double sgn = (parity == ZParity::Even) ? 1.0 : -1.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const int kr = (g.nz - k) % g.nz;
                out.coef(i, j, k) = 0.5 * (f.coef(i, j, k) + sgn * f.coef(i, j, kr));
            }
    return to_physical(std::move(out));
}

}  // namespace testor
