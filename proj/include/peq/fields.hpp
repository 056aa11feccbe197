#pragma once

// State container for the prognostic pair (v1, v2, T), physical parameters,
// the vertical-average / fluctuation split, the diagnostic vertical velocity
// and hydrostatic pressure, and the norm panel entries.

#include <stdexcept>

#include "peq/grid.hpp"

namespace peq {

struct Params {
    double h = 1.0;        // half-height; must match the grid
    double f0 = 0.0;       // Coriolis parameter (any sign)
    double nu_h = 1.0;     // horizontal viscosity
    double nu_z = 1.0;     // vertical viscosity (delta in the regularized runs)
    double kappa_h = 1.0;  // horizontal diffusivity
    double eps = 0.0;      // vertical temperature diffusivity

    void validate() const {
        if (!(h > 0.0)) throw std::invalid_argument("params: h must be positive");
        if (nu_h < 0 || nu_z < 0 || kappa_h < 0 || eps < 0)
            throw std::invalid_argument("params: diffusivities must be nonnegative");
    }
};

// Prognostic snapshot. Everything else (w, p, p_s) is recomputed on demand.
struct State {
    Field3 v1, v2, T;
    double time = 0.0;

    const Grid& grid() const { return v1.grid(); }
};

State zero_state(const Grid& g);

// One timestamped row of monitored norms and identity residuals.
struct DiagRecord {
    double time = 0;
    double L2_v = 0, L6_v = 0, Linf_T = 0, L2_T = 0;
    double L2_grad_v = 0, L2_gradH_T = 0;
    double L2_gradH_vbar = 0, L2_laplH_vbar = 0;  // 2D norms of the vertical average
    double L6_dz_v = 0, L2_grad_u = 0, L2_lapl2_u = 0;
    double L2_laplH_v = 0, L2_lapl_T = 0;
    double energy_residual = 0;
    double symmetry_residual = 0;
    double u_eq_residual = 0;  // 0 when nu_h != nu_z (not applicable)
};

enum class NormKind { L2, L4, L6, Linf, H1, H2 };

// (1/2h) int_{-h}^{h} f dz, exact for the trigonometric interpolant.
Field2 vertical_average(const Field3& f);

// f minus its vertical average (result has zero vertical average).
Field3 fluctuation(const Field3& f);

// z-uniform embedding of a 2D field.
Field3 broadcast_z(const Field2& f);

// w = -int_{-h}^{z} div_H v dxi; vanishes at z = -h by construction and at
// z = +h whenever div_H vbar = 0.
Field3 diagnose_w(const Field3& v1, const Field3& v2);

// p = ps - int_{-h}^{z} T dxi (hydrostatic balance dp/dz = -T).
Field3 reconstruct_pressure(const Field3& T, const Field2& ps);

// Lp by collocation quadrature, Linf over collocation points, H1/H2 as the
// root of the sum of squared L2 norms over derivative multi-indices
// (|alpha| <= 1 resp. 2, mixed derivatives counted once), computed spectrally.
double norm(const Field3& f, NormKind kind);

// L2 inner product by collocation quadrature (physical inputs).
double inner(const Field3& a, const Field3& b);

// ||(a,b)||_p of the two-component field with pointwise magnitude sqrt(a^2+b^2).
double vector_norm(const Field3& a, const Field3& b, NormKind kind);

// 2D helpers on M for the vbar panel entries.
double norm2d_l2(const Field2& f);
double vector_norm2d_l2(const Field2& a, const Field2& b);

// sqrt(sum of squared L2 norms of all |alpha| = 2 derivatives), used for the
// nabla^2 u panel entry.
double hessian_l2(const Field3& f);

// H2 squared of the pair (v, T), the blow-up functional.
double h2_squared(const State& s);

}  // namespace peq
