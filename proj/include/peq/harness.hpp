#pragma once

// Experiment drivers behind the CLI: the plain run, the twin-run continuous
// dependence study, the eps-regularization sweep, and the selftest battery.
// The *_run functions do the computation; cmd_* add file output and map
// errors onto exit codes (0 ok, 2 config, 3 blow-up, 4 I/O).

#include <string>
#include <vector>

#include "peq/config.hpp"
#include "peq/estimates.hpp"

namespace peq {

struct TwinResult {
    GronwallReport report;           // d0, fitted C, (t, d, envelope) series
    std::vector<double> phi_series;  // phi of the unperturbed run at the samples
    double amplification = 0.0;      // d(t_end)/d(0), 0 when d0 == 0
};

// Runs the configured initial state and its delta-perturbed twin in lockstep
// (same dt sequence) and fits the Gronwall envelope to the measured d(t).
TwinResult twin_run(const RunConfig& cfg, double delta, std::uint64_t seed);

struct EpsilonResult {
    std::vector<double> eps;
    std::vector<double> D;       // ||v_eps - v_0||_2 + ||T_eps - T_0||_2 at t_end
    std::vector<double> sup_h2;  // sup_t (||v||_H2^2 + ||T||_H2^2) per eps
    double slope = 0.0;          // log-log least-squares slope of D vs eps (eps > 0)
    double h2_ratio = 1.0;       // max/min of sup_h2 over eps
};

// Identical initial data integrated once per eps; eps_list must contain 0.
// When outdir is nonempty a diagnostics CSV is written per eps.
EpsilonResult epsilon_run(const RunConfig& cfg, const std::vector<double>& eps_list,
                          const std::string& outdir = "");

int cmd_run(const RunConfig& cfg);
int cmd_twin(const RunConfig& cfg, double delta, std::uint64_t seed);
int cmd_epsilon(const RunConfig& cfg, const std::vector<double>& eps_list);
int cmd_selftest(int n, bool corrupt_dealias);

}  // namespace peq
