#pragma once

// Flat key=value run configuration plus command-line overrides (last wins).

#include <cstdint>
#include <string>

#include "peq/timestepper.hpp"

namespace peq {

struct RunConfig {
    int nx = 32, ny = 32, nz = 32;
    double h = 1.0;

    double f0 = 0.0;
    double nu_h = 1.0, nu_z = 1.0;
    double kappa_h = 1.0;
    double eps = 0.0;

    double dt = 0.0;  // 0 = auto (CFL)
    double cfl = 0.5;
    double t_end = 0.0;
    Scheme scheme = Scheme::RK3_IMF;
    int resymmetrize_every = 0;
    double blowup_guard = 1e8;

    // "rest" | "inertial" | "mode-decay" | "thermal" | "random-h" |
    // "checkpoint:<path>"
    std::string ic = "rest";
    std::uint64_t seed = 1;
    double ic_amplitude = 0.1;

    int diag_every = 1;
    int checkpoint_every = 0;
    std::string outdir = "out";
    bool deterministic = true;

    Params params() const {
        Params p;
        p.h = h;
        p.f0 = f0;
        p.nu_h = nu_h;
        p.nu_z = nu_z;
        p.kappa_h = kappa_h;
        p.eps = eps;
        return p;
    }

    StepConfig step_config() const {
        StepConfig c;
        c.dt = dt;
        c.t_end = t_end;
        c.cfl = cfl;
        c.scheme = scheme;
        c.resymmetrize_every = resymmetrize_every;
        c.blowup_guard = blowup_guard;
        return c;
    }

    void validate() const;  // throws ConfigError
};

// '#' starts a comment; blank lines ignored; unknown keys rejected.
RunConfig parse_config_file(const std::string& path);

// "key=value" override on an existing config.
void apply_override(RunConfig& cfg, const std::string& assignment);

// outdir, unless the PEQ_OUTPUT_DIR environment variable is set.
std::string resolve_outdir(const RunConfig& cfg);

const char* scheme_name(Scheme s);

}  // namespace peq
