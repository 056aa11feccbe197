#pragma once

// Executable forms of the analytical apparatus: the semi-discrete energy
// identity residual, the Gronwall weight phi and envelope, the anisotropic
// inequality ratios (measured constants, never asserted against closed
// forms), the dz-momentum consistency residual, and the monitored norm panel.

#include <span>
#include <vector>

#include "peq/dynamics.hpp"

namespace peq {

enum class IneqVariant { Lemma22First, Lemma22Second, Interp34 };

struct InequalityReport {
    double lhs = 0.0;
    double rhs_unit = 0.0;  // right side evaluated with C = 1
    double ratio = 0.0;     // lhs / rhs_unit, 0 when lhs = 0
    IneqVariant variant = IneqVariant::Lemma22First;
};

struct GronwallPoint {
    double t = 0.0;
    double d = 0.0;         // measured squared L2 difference
    double envelope = 0.0;  // C exp(C int phi) d0
};

struct GronwallReport {
    double d0 = 0.0;
    double c_fit = 0.0;
    std::vector<GronwallPoint> series;
};

// | <tendency,(v,T)> + dissipation - boundary-production | normalized by
// (1 + |LHS| + |RHS|). The time derivative side is the inner product with
// the instantaneous tendency, never a finite difference of stored states.
double energy_identity_residual(const State& s, const Params& p);

// 1 + ||v||_2^4 + ||dz v||_2^4 + ||v||^2||grad_H v||^2 + ||dz v||^2||grad_H dz v||^2
//   + the same four terms for T. Always >= 1.
double phi(const State& s2);

// envelope(t_k) = C exp(C int_0^{t_k} phi) d0, trapezoidal quadrature.
std::vector<double> gronwall_envelope(std::span<const double> t, std::span<const double> phi_samples,
                                      double C, double d0);

// Smallest C on the grid {2^k : k = 0..60} whose envelope dominates the
// measured d(t) at every sample.
double fit_gronwall_c(std::span<const double> t, std::span<const double> phi_samples,
                      std::span<const double> d, double d0);

// Lemma-style ratios: lhs = |int_M (int f dz)(int g w dz) dxdy| for the two
// anisotropic variants; for Interp34 f is the field v and lhs = ||grad_H v||_4^2.
InequalityReport inequality_ratio(const Field3& f, const Field3& g, const Field3& w,
                                  IneqVariant variant);

// Relative discrepancy between dz(momentum tendency) and the equation
// satisfied by u = dz v. Requires nu_h == nu_z.
double u_equation_residual(const State& s, const Params& p);

// Fills every DiagRecord field (u_eq_residual is 0 when nu_h != nu_z).
DiagRecord norm_panel(const State& s, const Params& p);

}  // namespace peq
