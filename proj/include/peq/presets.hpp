#pragma once

// Named analytic initial conditions. Every preset lands in the invariant
// class (v even in z, T odd), is band-limited below the 2/3 cutoff, and has a
// divergence-free vertical mean, so runs start inside every constraint the
// dynamics maintain. Each preset anchors one acceptance experiment.

#include <cstdint>

#include "peq/config.hpp"
#include "peq/fields.hpp"

namespace peq {

State preset_rest(const Grid& g);
// uniform v = (amplitude, 0): the inertial-oscillation solution under f0.
State preset_inertial(const Grid& g, double amplitude);
// v = (0, amplitude sin(2 pi x)): a single viscously decaying mode.
State preset_mode_decay(const Grid& g, double amplitude);
// T = amplitude sin(pi z/h) sin(2 pi x), v = 0 (odd in z as required).
State preset_thermal(const Grid& g, double amplitude);
// Seeded band-limited fields projected into the invariant class and
// barotropically projected. Identical analytic content on every grid.
State preset_random_h(const Grid& g, std::uint64_t seed, double amplitude);

// Dispatch on cfg.ic; "checkpoint:<path>" resumes from a checkpoint file.
State make_initial_state(const RunConfig& cfg, const Grid& g);

// Fixed smooth perturbation direction for twin runs: in the invariant class
// with zero vertical mean, so s0 + delta*pert needs no re-projection and
// d(0) = delta^2 (||pert_v||^2 + ||pert_T||^2) exactly.
struct Perturbation {
    Field3 dv1, dv2, dT;
};
Perturbation twin_perturbation(const Grid& g);

}  // namespace peq
