#pragma once

// Right-hand side of the reformulated system: momentum advection in
// convective form with the diagnosed vertical velocity, Coriolis, hydrostatic
// buoyancy through the vertical integral of T, the surface-pressure Poisson
// solve keeping the vertical mean divergence-free, horizontal-only
// temperature diffusion plus the eps and delta regularization terms. All
// quadratic products are 2/3-dealiased.

#include <utility>

#include "peq/fields.hpp"

namespace peq {

struct Tendency {
    Field3 dv1, dv2, dT;  // physical
    Field2 ps;            // surface pressure used (physical, zero-mean gauge)
};

// f0 k x v = f0 (-v2, v1).
std::pair<Field3, Field3> coriolis(const Field3& v1, const Field3& v2, double f0);

// Solves lap_H ps = rhs on M with the zero-mean gauge. rhs must have zero
// mean (beyond 1e-10 relative -> solvability error).
Field2 solve_surface_pressure(const Field2& rhs);

// Helmholtz-Leray on the vertical average, applied as a z-uniform correction.
std::pair<Field3, Field3> barotropic_project(Field3 v1, Field3 v2);

// ||div_H vbar||_{L2(M)}.
double barotropic_residual(const Field3& v1, const Field3& v2);

// Full tendency. Pre: s satisfies the barotropic constraint
// (||div_H vbar|| < 1e-10 (1 + ||v||_2)), params.h matches the grid.
Tendency tendency(const State& s, const Params& p);

namespace detail {

// Spectral working set for the time stepper.
struct SpecState {
    Field3 v1, v2, T;
};

SpecState to_spec(const State& s);
State to_state(const SpecState& s, double time);

// Pressure-projected tendency without the stiff diffusion terms (those are
// integrated exactly by the stepper). Spectral in, spectral out.
SpecState explicit_rhs(const SpecState& s, const Params& p, Field2* ps_out = nullptr);

// Same plus diffusion; backs the public tendency().
SpecState full_rhs(const SpecState& s, const Params& p, Field2* ps_out = nullptr);

void barotropic_project_spec(Field3& v1, Field3& v2);

}  // namespace detail

}  // namespace peq
