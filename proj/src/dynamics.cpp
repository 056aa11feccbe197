#include "peq/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace peq {

std::pair<Field3, Field3> coriolis(const Field3& v1, const Field3& v2, double f0) {
    Field3 c1 = v2;
    c1 *= -f0;
    Field3 c2 = v1;
    c2 *= f0;
    return {std::move(c1), std::move(c2)};
}

Field2 solve_surface_pressure(const Field2& rhs) {
    const bool phys_in = (rhs.rep() == Rep::Physical);
    Field2 r = to_spectral(rhs);
    const Grid& g = r.grid();

    double cmax = 0.0;
    for (auto v : r.spec()) cmax = std::max(cmax, std::abs(v));
    if (std::abs(r.coef(0, 0)) > 1e-10 * (1.0 + cmax))
        throw std::invalid_argument("solve_surface_pressure: rhs has nonzero mean");

    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double kh2 = g.kx(i) * g.kx(i) + g.ky(j) * g.ky(j);
            if (kh2 == 0.0)
                r.coef(i, j) = Complex(0.0, 0.0);  // gauge
            else
                r.coef(i, j) /= -kh2;
        }
    return phys_in ? to_physical(std::move(r)) : r;
}

namespace detail {

void barotropic_project_spec(Field3& v1, Field3& v2) {
    const Grid& g = v1.grid();
    for (int i = 0; i < g.nx; ++i) {
        const double kx = (i == g.nx / 2) ? 0.0 : g.kx(i);
        for (int j = 0; j < g.ny; ++j) {
            const double ky = (j == g.ny / 2) ? 0.0 : g.ky(j);
            const double kh2 = kx * kx + ky * ky;
            if (kh2 == 0.0) continue;
            const Complex m1 = v1.coef(i, j, 0);
            const Complex m2 = v2.coef(i, j, 0);
            const Complex div = Complex(0.0, kx) * m1 + Complex(0.0, ky) * m2;
            const Complex chi = div / (-kh2);
            v1.coef(i, j, 0) -= Complex(0.0, kx) * chi;
            v2.coef(i, j, 0) -= Complex(0.0, ky) * chi;
        }
    }
}

SpecState to_spec(const State& s) {
    return {to_spectral(s.v1), to_spectral(s.v2), to_spectral(s.T)};
}

State to_state(const SpecState& s, double time) {
    State out;
    out.v1 = to_physical(s.v1);
    out.v2 = to_physical(s.v2);
    out.T = to_physical(s.T);
    out.time = time;
    return out;
}

namespace {

// nonlinear + Coriolis + buoyancy + pressure, optionally + diffusion
SpecState rhs_impl(const SpecState& s, const Params& prm, bool with_diffusion, Field2* ps_out) {
    const Grid& g = s.v1.grid();

    Field3 v1 = to_physical(s.v1);
    Field3 v2 = to_physical(s.v2);
    Field3 dxv1 = to_physical(derivative(s.v1, Axis::X, 1));
    Field3 dyv1 = to_physical(derivative(s.v1, Axis::Y, 1));
    Field3 dxv2 = to_physical(derivative(s.v2, Axis::X, 1));
    Field3 dyv2 = to_physical(derivative(s.v2, Axis::Y, 1));
    Field3 u1 = to_physical(derivative(s.v1, Axis::Z, 1));
    Field3 u2 = to_physical(derivative(s.v2, Axis::Z, 1));
    Field3 dxT = to_physical(derivative(s.T, Axis::X, 1));
    Field3 dyT = to_physical(derivative(s.T, Axis::Y, 1));
    Field3 dzT = to_physical(derivative(s.T, Axis::Z, 1));

    // w = -int_{-h}^z div_H v; the z-mean of div_H v is div_H vbar, zero under
    // the constraint, so the periodic antiderivative is the whole of w here.
    Field3 divH = derivative(s.v1, Axis::X, 1);
    divH += derivative(s.v2, Axis::Y, 1);
    Field3 w = to_physical(vertical_antiderivative_zero_mean(std::move(divH)));
    w *= -1.0;

    Field3 adv1 = pmul(v1, dxv1) + pmul(v2, dyv1) + pmul(w, u1);
    Field3 adv2 = pmul(v1, dxv2) + pmul(v2, dyv2) + pmul(w, u2);
    Field3 advT = pmul(v1, dxT) + pmul(v2, dyT) + pmul(w, dzT);
    {
        Field3 wh = w;
        wh *= 1.0 / prm.h;  // background stratification w * (1/h)
        advT += wh;
    }

    SpecState n;
    n.v1 = dealias(to_spectral(std::move(adv1)));
    n.v1 *= -1.0;
    n.v2 = dealias(to_spectral(std::move(adv2)));
    n.v2 *= -1.0;
    n.T = dealias(to_spectral(std::move(advT)));
    n.T *= -1.0;

    // -f0 k x v = (f0 v2, -f0 v1)
    if (prm.f0 != 0.0) {
        Field3 c = s.v2;
        c *= prm.f0;
        n.v1 += c;
        c = s.v1;
        c *= -prm.f0;
        n.v2 += c;
    }

    // + grad_H int_{-h}^z T (T odd in z has no z-mean; linear part dropped)
    Field3 buoy = vertical_antiderivative_zero_mean(s.T);
    n.v1 += derivative(buoy, Axis::X, 1);
    n.v2 += derivative(buoy, Axis::Y, 1);

    if (with_diffusion) {
        auto add_diffusion = [&g](Field3& out, const Field3& in, double ch, double cz) {
            std::size_t p = 0;
            auto co = out.spec();
            auto ci = in.spec();
            for (int i = 0; i < g.nx; ++i) {
                const double kx2 = g.kx(i) * g.kx(i);
                for (int j = 0; j < g.ny; ++j) {
                    const double kh2 = kx2 + g.ky(j) * g.ky(j);
                    for (int k = 0; k < g.nz; ++k, ++p)
                        co[p] += -(ch * kh2 + cz * g.kz(k) * g.kz(k)) * ci[p];
                }
            }
        };
        add_diffusion(n.v1, s.v1, prm.nu_h, prm.nu_z);
        add_diffusion(n.v2, s.v2, prm.nu_h, prm.nu_z);
        add_diffusion(n.T, s.T, prm.kappa_h, prm.eps);
    }

    // surface pressure: lap_H ps = div_H of the vertical mean of n
    Field2 rhs2(g, Rep::Spectral);
    Field2 ps(g, Rep::Spectral);
    for (int i = 0; i < g.nx; ++i) {
        const double kx = (i == g.nx / 2) ? 0.0 : g.kx(i);
        for (int j = 0; j < g.ny; ++j) {
            const double ky = (j == g.ny / 2) ? 0.0 : g.ky(j);
            rhs2.coef(i, j) =
                Complex(0.0, kx) * n.v1.coef(i, j, 0) + Complex(0.0, ky) * n.v2.coef(i, j, 0);
        }
    }
    ps = solve_surface_pressure(rhs2);
    for (int i = 0; i < g.nx; ++i) {
        const double kx = (i == g.nx / 2) ? 0.0 : g.kx(i);
        for (int j = 0; j < g.ny; ++j) {
            const double ky = (j == g.ny / 2) ? 0.0 : g.ky(j);
            n.v1.coef(i, j, 0) -= Complex(0.0, kx) * ps.coef(i, j);
            n.v2.coef(i, j, 0) -= Complex(0.0, ky) * ps.coef(i, j);
        }
    }
    if (ps_out) *ps_out = to_physical(std::move(ps));
    return n;
}

}  // namespace

SpecState explicit_rhs(const SpecState& s, const Params& p, Field2* ps_out) {
    return rhs_impl(s, p, false, ps_out);
}

SpecState full_rhs(const SpecState& s, const Params& p, Field2* ps_out) {
    return rhs_impl(s, p, true, ps_out);
}

}  // namespace detail

std::pair<Field3, Field3> barotropic_project(Field3 v1, Field3 v2) {
    const bool phys_in = (v1.rep() == Rep::Physical);
    Field3 s1 = to_spectral(std::move(v1));
    Field3 s2 = to_spectral(std::move(v2));
    detail::barotropic_project_spec(s1, s2);
    if (phys_in) return {to_physical(std::move(s1)), to_physical(std::move(s2))};
    return {std::move(s1), std::move(s2)};
}

double barotropic_residual(const Field3& v1, const Field3& v2) {
    Field2 m1 = vertical_average(v1);
    Field2 m2 = vertical_average(v2);
    Field2 div = to_spectral(derivative(m1, Axis::X, 1));
    div += to_spectral(derivative(m2, Axis::Y, 1));
    return norm2d_l2(div);
}

Tendency tendency(const State& s, const Params& p) {
    p.validate();
    const Grid& g = s.grid();
    if (std::abs(p.h - g.h) > 1e-12 * g.h)
        throw std::invalid_argument("tendency: params.h does not match the grid");
    const double vnorm = vector_norm(s.v1, s.v2, NormKind::L2);
    if (barotropic_residual(s.v1, s.v2) > 1e-10 * (1.0 + vnorm))
        throw std::invalid_argument("tendency: barotropic constraint violated");

    detail::SpecState ss = detail::to_spec(s);
    Tendency out;
    detail::SpecState n = detail::full_rhs(ss, p, &out.ps);
    out.dv1 = to_physical(std::move(n.v1));
    out.dv2 = to_physical(std::move(n.v2));
    out.dT = to_physical(std::move(n.T));
    return out;
}

}  // namespace peq
