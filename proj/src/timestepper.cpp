#include "peq/timestepper.hpp"

#include <cmath>
#include <stdexcept>

#include "peq/symmetry.hpp"

namespace peq {

namespace {

using detail::SpecState;

// multiply coefficients by exp(-(ch kH^2 + cz kz^2) tau)
void apply_factor(Field3& f, double ch, double cz, double tau) {
    const Grid& g = f.grid();
    auto c = f.spec();
    std::size_t p = 0;
    for (int i = 0; i < g.nx; ++i) {
        const double kx2 = g.kx(i) * g.kx(i);
        for (int j = 0; j < g.ny; ++j) {
            const double kh2 = kx2 + g.ky(j) * g.ky(j);
            for (int k = 0; k < g.nz; ++k, ++p) {
                const double lam = ch * kh2 + cz * g.kz(k) * g.kz(k);
                if (lam != 0.0) c[p] *= std::exp(-lam * tau);
            }
        }
    }
}

void apply_factor(SpecState& s, const Params& p, double tau) {
    if (tau == 0.0) return;
    apply_factor(s.v1, p.nu_h, p.nu_z, tau);
    apply_factor(s.v2, p.nu_h, p.nu_z, tau);
    apply_factor(s.T, p.kappa_h, p.eps, tau);
}

void axpy(SpecState& y, double a, const SpecState& x) {
    auto add = [a](Field3& yy, const Field3& xx) {
        auto cy = yy.spec();
        auto cx = xx.spec();
        for (std::size_t p = 0; p < cy.size(); ++p) cy[p] += a * cx[p];
    };
    add(y.v1, x.v1);
    add(y.v2, x.v2);
    add(y.T, x.T);
}

void project(SpecState& s) { detail::barotropic_project_spec(s.v1, s.v2); }

SpecState step_spec(const SpecState& u0, const Params& p, Scheme scheme, double dt) {
    switch (scheme) {
        case Scheme::EULER_IMF: {
            SpecState n1 = detail::explicit_rhs(u0, p);
            SpecState u = u0;
            axpy(u, dt, n1);
            apply_factor(u, p, dt);
            project(u);
            return u;
        }
        case Scheme::RK2_IMF: {
            SpecState n1 = detail::explicit_rhs(u0, p);
            SpecState a = u0;
            axpy(a, dt, n1);
            apply_factor(a, p, dt);
            project(a);
            SpecState n2 = detail::explicit_rhs(a, p);
            SpecState u = u0;
            axpy(u, dt / 2, n1);
            apply_factor(u, p, dt);
            axpy(u, dt / 2, n2);
            project(u);
            return u;
        }
        case Scheme::RK3_IMF:
        default: {
            // Heun 3rd order with stage times 0, dt/3, 2dt/3; integrating
            // factors only ever act over nonnegative intervals.
            SpecState n1 = detail::explicit_rhs(u0, p);
            SpecState a = u0;
            axpy(a, dt / 3, n1);
            apply_factor(a, p, dt / 3);
            project(a);
            SpecState n2 = detail::explicit_rhs(a, p);
            apply_factor(n2, p, dt / 3);
            SpecState b = u0;
            apply_factor(b, p, 2 * dt / 3);
            axpy(b, 2 * dt / 3, n2);
            project(b);
            SpecState n3 = detail::explicit_rhs(b, p);
            apply_factor(n3, p, dt / 3);
            SpecState u = u0;
            axpy(u, dt / 4, n1);
            apply_factor(u, p, dt);
            axpy(u, 3 * dt / 4, n3);
            project(u);
            return u;
        }
    }
}

void check_blowup(const SpecState& u, double time, double guard) {
    if (!all_finite(u.v1) || !all_finite(u.v2) || !all_finite(u.T))
        throw BlowupError(time, "blow-up: non-finite state at t = " + std::to_string(time));
    const double nv1 = norm(u.v1, NormKind::H2);
    const double nv2 = norm(u.v2, NormKind::H2);
    const double nt = norm(u.T, NormKind::H2);
    const double h2 = nv1 * nv1 + nv2 * nv2 + nt * nt;
    if (!(h2 <= guard))
        throw BlowupError(time, "blow-up: H2 guard exceeded at t = " + std::to_string(time) +
                                    " (value " + std::to_string(h2) + ")");
}

}  // namespace

double cfl_dt(const State& s, const Params& p, const StepConfig& c) {
    (void)p;
    constexpr double dt_max = 0.1;
    const Grid& g = s.grid();
    double dt = dt_max / c.cfl;  // so the cap binds exactly when velocities vanish
    const double m1 = max_abs(to_physical(s.v1));
    const double m2 = max_abs(to_physical(s.v2));
    const double mw = max_abs(diagnose_w(s.v1, s.v2));
    if (m1 > 0.0) dt = std::min(dt, g.dx() / m1);
    if (m2 > 0.0) dt = std::min(dt, g.dy() / m2);
    if (mw > 0.0) dt = std::min(dt, g.dz() / mw);
    return std::min(c.cfl * dt, dt_max);
}

State step(const State& s, const Params& p, const StepConfig& c, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    p.validate();
    SpecState u = detail::to_spec(s);
    SpecState next = step_spec(u, p, c.scheme, dt);
    check_blowup(next, s.time + dt, c.blowup_guard);
    return detail::to_state(next, s.time + dt);
}

State run(State s0, const Params& p, const StepConfig& c, const RunSinks& sinks) {
    if (c.t_end < s0.time) throw std::invalid_argument("run: t_end before initial time");

    State s = std::move(s0);
    if (sinks.on_diag) sinks.on_diag(s, 0);

    const double t_eps = 1e-12 * std::max(1.0, std::abs(c.t_end));
    long stepidx = 0;
    bool diag_current = true;
    while (c.t_end - s.time > t_eps) {
        double dt = (c.dt > 0.0) ? c.dt : cfl_dt(s, p, c);
        if (s.time + dt > c.t_end) dt = c.t_end - s.time;
        s = step(s, p, c, dt);
        ++stepidx;
        if (c.resymmetrize_every > 0 && stepidx % c.resymmetrize_every == 0) s = symmetrize(s);
        diag_current = false;
        if (sinks.on_diag && sinks.diag_every > 0 && stepidx % sinks.diag_every == 0) {
            sinks.on_diag(s, stepidx);
            diag_current = true;
        }
        if (sinks.on_checkpoint && sinks.checkpoint_every > 0 &&
            stepidx % sinks.checkpoint_every == 0)
            sinks.on_checkpoint(s, stepidx);
    }
    if (sinks.on_diag && !diag_current) sinks.on_diag(s, stepidx);
    return s;
}

}  // namespace peq
