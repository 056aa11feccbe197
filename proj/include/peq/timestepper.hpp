#pragma once

// Time integration: the linear diffusion operators are diagonal in spectral
// space and integrated exactly by per-mode exponentials; advection, Coriolis
// and pressure are explicit Runge-Kutta stages. The anisotropic temperature
// operator needs no special casing, its symbol simply lacks kz^2 when eps=0.
// Only the advective CFL restricts dt.

#include <functional>

#include "peq/dynamics.hpp"
#include "peq/errors.hpp"

namespace peq {

enum class Scheme { RK3_IMF, RK2_IMF, EULER_IMF };

struct StepConfig {
    double dt = 0.0;  // <= 0: choose by CFL each step
    double t_end = 0.0;
    double cfl = 0.5;
    Scheme scheme = Scheme::RK3_IMF;
    int resymmetrize_every = 0;  // 0 = never
    double blowup_guard = 1e8;   // threshold on ||v||_H2^2 + ||T||_H2^2
};

// c.cfl * min(dx/max|v1|, dy/max|v2|, dz/max|w|), capped at 0.1.
double cfl_dt(const State& s, const Params& p, const StepConfig& c);

// One step of size dt. Throws BlowupError on NaN/Inf or guard violation.
State step(const State& s, const Params& p, const StepConfig& c, double dt);

struct RunSinks {
    int diag_every = 1;        // steps between diagnostic callbacks
    int checkpoint_every = 0;  // 0 = never
    std::function<void(const State&, long)> on_diag;
    std::function<void(const State&, long)> on_checkpoint;
};

// Iterates step() until t_end (one diagnostic callback is always issued for
// the initial state). Applies symmetrize() every resymmetrize_every steps.
State run(State s0, const Params& p, const StepConfig& c, const RunSinks& sinks);

}  // namespace peq
