#include "peq/estimates.hpp"

#include <cmath>
#include <stdexcept>

#include "peq/symmetry.hpp"

namespace peq {

namespace {

double l2sq(const Field3& f) {
    double n = norm(f, NormKind::L2);
    return n * n;
}

double gradH_l2sq(const Field3& f) {
    Field3 s = to_spectral(f);
    return l2sq(derivative(s, Axis::X, 1)) + l2sq(derivative(s, Axis::Y, 1));
}

double grad_l2sq(const Field3& f) {
    Field3 s = to_spectral(f);
    return l2sq(derivative(s, Axis::X, 1)) + l2sq(derivative(s, Axis::Y, 1)) +
           l2sq(derivative(s, Axis::Z, 1));
}

}  // namespace

double energy_identity_residual(const State& s, const Params& p) {
    Tendency td = tendency(s, p);

    const double ddt = inner(td.dv1, s.v1) + inner(td.dv2, s.v2) + inner(td.dT, s.T);

    const double diss = p.nu_h * (gradH_l2sq(s.v1) + gradH_l2sq(s.v2)) +
                        p.nu_z * (l2sq(derivative(to_spectral(s.v1), Axis::Z, 1)) +
                                  l2sq(derivative(to_spectral(s.v2), Axis::Z, 1))) +
                        p.kappa_h * gradH_l2sq(s.T) +
                        p.eps * l2sq(derivative(to_spectral(s.T), Axis::Z, 1));

    // production terms; the zero-mean antiderivative matches the tendency's
    // convention and the exact operator on the invariant class
    Field3 intT = vertical_antiderivative_zero_mean(to_spectral(s.T));
    double rhs = inner(derivative(intT, Axis::X, 1), s.v1) +
                 inner(derivative(intT, Axis::Y, 1), s.v2);

    Field3 divH = derivative(to_spectral(s.v1), Axis::X, 1);
    divH += derivative(to_spectral(s.v2), Axis::Y, 1);
    Field3 intdiv = vertical_antiderivative_zero_mean(std::move(divH));
    rhs += inner(intdiv, s.T) / p.h;

    const double lhs = ddt + diss;
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

double phi(const State& s2) {
    const double nv2 = l2sq(s2.v1) + l2sq(s2.v2);
    Field3 u1 = derivative(to_spectral(s2.v1), Axis::Z, 1);
    Field3 u2 = derivative(to_spectral(s2.v2), Axis::Z, 1);
    const double ndz2 = l2sq(u1) + l2sq(u2);
    const double ngH2 = gradH_l2sq(s2.v1) + gradH_l2sq(s2.v2);
    const double ngHdz2 = gradH_l2sq(u1) + gradH_l2sq(u2);

    const double nT2 = l2sq(s2.T);
    Field3 uT = derivative(to_spectral(s2.T), Axis::Z, 1);
    const double ndzT2 = l2sq(uT);
    const double ngHT2 = gradH_l2sq(s2.T);
    const double ngHdzT2 = gradH_l2sq(uT);

    return 1.0 + nv2 * nv2 + ndz2 * ndz2 + nv2 * ngH2 + ndz2 * ngHdz2 + nT2 * nT2 +
           ndzT2 * ndzT2 + nT2 * ngHT2 + ndzT2 * ngHdzT2;
}

std::vector<double> gronwall_envelope(std::span<const double> t, std::span<const double> phi_samples,
                                      double C, double d0) {
    if (t.empty() || t.size() != phi_samples.size())
        throw std::invalid_argument("gronwall_envelope: empty or mismatched series");
    for (double ph : phi_samples)
        if (!(ph >= 1.0)) throw std::invalid_argument("gronwall_envelope: phi samples must be >= 1");
    std::vector<double> env(t.size());
    double integral = 0.0;
    env[0] = C * d0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        integral += 0.5 * (phi_samples[i] + phi_samples[i - 1]) * (t[i] - t[i - 1]);
        env[i] = C * std::exp(C * integral) * d0;
    }
    return env;
}

double fit_gronwall_c(std::span<const double> t, std::span<const double> phi_samples,
                      std::span<const double> d, double d0) {
    double c = 1.0;
    for (int k = 0; k <= 60; ++k, c *= 2.0) {
        std::vector<double> env = gronwall_envelope(t, phi_samples, c, d0);
        bool dominates = true;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] > env[i] * (1.0 + 1e-12)) {
                dominates = false;
                break;
            }
        if (dominates) return c;
    }
    return c;
}

InequalityReport inequality_ratio(const Field3& f, const Field3& g, const Field3& w,
                                  IneqVariant variant) {
    InequalityReport rep;
    rep.variant = variant;

    if (variant == IneqVariant::Interp34) {
        Field3 s = to_spectral(f);
        Field3 fx = to_physical(derivative(s, Axis::X, 1));
        Field3 fy = to_physical(derivative(s, Axis::Y, 1));
        const Grid& gr = f.grid();
        double s4 = 0.0;
        auto px = fx.phys();
        auto py = fy.phys();
        for (std::size_t q = 0; q < px.size(); ++q) {
            const double m2 = px[q] * px[q] + py[q] * py[q];
            s4 += m2 * m2;
        }
        rep.lhs = std::sqrt(gr.cell_volume() * s4);  // ||grad_H f||_4^2

        double gHg = 0.0;  // ||grad_H grad f||_2
        for (Axis a : {Axis::X, Axis::Y})
            for (Axis b : {Axis::X, Axis::Y, Axis::Z}) gHg += l2sq(derivative(derivative(s, a, 1), b, 1));
        Field3 lap = derivative(s, Axis::X, 2) + derivative(s, Axis::Y, 2);
        const double gHlap =
            std::sqrt(l2sq(derivative(lap, Axis::X, 1)) + l2sq(derivative(lap, Axis::Y, 1)));
        rep.rhs_unit = norm(f, NormKind::L6) * std::pow(gHg, 0.25) * std::sqrt(gHlap);
        rep.ratio = (rep.lhs > 0.0 && rep.rhs_unit > 0.0) ? rep.lhs / rep.rhs_unit : 0.0;
        return rep;
    }

    if (!(f.grid() == g.grid()) || !(f.grid() == w.grid()))
        throw std::invalid_argument("inequality_ratio: fields on different grids");

    const double two_h = 2.0 * f.grid().h;
    Field2 intf = vertical_average(to_physical(f));
    intf *= two_h;
    Field2 intgw = vertical_average(pmul(to_physical(g), to_physical(w)));
    intgw *= two_h;
    double lhs = 0.0;
    {
        auto a = intf.phys();
        auto b = intgw.phys();
        for (std::size_t q = 0; q < a.size(); ++q) lhs += a[q] * b[q];
        lhs = std::abs(lhs * f.grid().cell_area());
    }
    rep.lhs = lhs;

    const double nf = norm(f, NormKind::L2);
    const double ng = norm(g, NormKind::L2);
    const double nw = norm(w, NormKind::L2);
    const double gf = std::sqrt(gradH_l2sq(f));
    const double gg = std::sqrt(gradH_l2sq(g));
    const double gw = std::sqrt(gradH_l2sq(w));

    const double wfac = std::sqrt(nw) * (std::sqrt(nw) + std::sqrt(gw));
    if (variant == IneqVariant::Lemma22First)
        rep.rhs_unit = std::sqrt(nf) * (std::sqrt(nf) + std::sqrt(gf)) * ng * wfac;
    else
        rep.rhs_unit = nf * std::sqrt(ng) * (std::sqrt(ng) + std::sqrt(gg)) * wfac;

    rep.ratio = (rep.lhs > 0.0 && rep.rhs_unit > 0.0) ? rep.lhs / rep.rhs_unit : 0.0;
    return rep;
}

double u_equation_residual(const State& s, const Params& p) {
    if (std::abs(p.nu_h - p.nu_z) > 1e-14 * (p.nu_h + p.nu_z))
        throw std::invalid_argument(
            "u_equation_residual: requires isotropic viscosity (nu_h == nu_z)");
    const double nu = p.nu_h;

    Tendency td = tendency(s, p);
    Field3 lhs1 = derivative(to_spectral(td.dv1), Axis::Z, 1);
    Field3 lhs2 = derivative(to_spectral(td.dv2), Axis::Z, 1);

    detail::SpecState ss = detail::to_spec(s);
    Field3 u1s = derivative(ss.v1, Axis::Z, 1);
    Field3 u2s = derivative(ss.v2, Axis::Z, 1);
    Field3 v1 = to_physical(ss.v1);
    Field3 v2 = to_physical(ss.v2);
    Field3 u1 = to_physical(u1s);
    Field3 u2 = to_physical(u2s);

    Field3 divHs = derivative(ss.v1, Axis::X, 1);
    divHs += derivative(ss.v2, Axis::Y, 1);
    Field3 divH = to_physical(divHs);
    Field3 w = to_physical(vertical_antiderivative_zero_mean(std::move(divHs)));
    w *= -1.0;

    auto component_rhs = [&](const Field3& us, const Field3& u_phys, const Field3& vc_s,
                             const Field3& other_u, double cor_sign) {
        // nu lap u - (v.grad_H)u - w dz u - (u.grad_H)v + (div_H v) u
        //   - f0 (k x u)_c + grad_H T |_c
        Field3 rhs(s.grid(), Rep::Spectral);
        {
            Field3 lap = derivative(us, Axis::X, 2) + derivative(us, Axis::Y, 2) +
                         derivative(us, Axis::Z, 2);
            lap *= nu;
            rhs += lap;
        }
        Field3 advec = pmul(v1, to_physical(derivative(us, Axis::X, 1))) +
                       pmul(v2, to_physical(derivative(us, Axis::Y, 1))) +
                       pmul(w, to_physical(derivative(us, Axis::Z, 1))) +
                       pmul(u1, to_physical(derivative(vc_s, Axis::X, 1))) +
                       pmul(u2, to_physical(derivative(vc_s, Axis::Y, 1)));
        Field3 stretch = pmul(divH, u_phys);
        rhs -= dealias(to_spectral(std::move(advec)));
        rhs += dealias(to_spectral(std::move(stretch)));
        Field3 cor = other_u;
        cor *= cor_sign * p.f0;
        rhs += to_spectral(std::move(cor));
        return rhs;
    };

    Field3 rhs1 = component_rhs(u1s, u1, ss.v1, u2, +1.0);
    rhs1 += derivative(ss.T, Axis::X, 1);
    Field3 rhs2 = component_rhs(u2s, u2, ss.v2, u1, -1.0);
    rhs2 += derivative(ss.T, Axis::Y, 1);

    const double dn = std::sqrt(l2sq(lhs1 - rhs1) + l2sq(lhs2 - rhs2));
    const double nl = std::sqrt(l2sq(lhs1) + l2sq(lhs2));
    const double nr = std::sqrt(l2sq(rhs1) + l2sq(rhs2));
    return dn / (1.0 + nl + nr);
}

DiagRecord norm_panel(const State& s, const Params& p) {
    DiagRecord r;
    r.time = s.time;

    detail::SpecState ss = detail::to_spec(s);

    r.L2_v = vector_norm(s.v1, s.v2, NormKind::L2);
    r.L6_v = vector_norm(s.v1, s.v2, NormKind::L6);
    r.Linf_T = norm(s.T, NormKind::Linf);
    r.L2_T = norm(s.T, NormKind::L2);

    r.L2_grad_v = std::sqrt(grad_l2sq(ss.v1) + grad_l2sq(ss.v2));
    r.L2_gradH_T = std::sqrt(gradH_l2sq(ss.T));

    Field2 m1 = vertical_average(ss.v1);
    Field2 m2 = vertical_average(ss.v2);
    {
        auto g2 = [](const Field2& m) {
            Field2 sx = derivative(m, Axis::X, 1);
            Field2 sy = derivative(m, Axis::Y, 1);
            const double a = norm2d_l2(sx), b = norm2d_l2(sy);
            return a * a + b * b;
        };
        r.L2_gradH_vbar = std::sqrt(g2(m1) + g2(m2));
        auto lap2 = [](const Field2& m) {
            Field2 l = derivative(m, Axis::X, 2);
            l += derivative(m, Axis::Y, 2);
            const double n = norm2d_l2(l);
            return n * n;
        };
        r.L2_laplH_vbar = std::sqrt(lap2(m1) + lap2(m2));
    }

    Field3 u1 = derivative(ss.v1, Axis::Z, 1);
    Field3 u2 = derivative(ss.v2, Axis::Z, 1);
    r.L6_dz_v = vector_norm(u1, u2, NormKind::L6);
    r.L2_grad_u = std::sqrt(grad_l2sq(u1) + grad_l2sq(u2));
    {
        const double h1 = hessian_l2(u1), h2 = hessian_l2(u2);
        r.L2_lapl2_u = std::sqrt(h1 * h1 + h2 * h2);
    }

    auto laplH_l2sq = [](const Field3& f) {
        Field3 l = derivative(f, Axis::X, 2) + derivative(f, Axis::Y, 2);
        return l2sq(l);
    };
    r.L2_laplH_v = std::sqrt(laplH_l2sq(ss.v1) + laplH_l2sq(ss.v2));
    {
        Field3 lapT = derivative(ss.T, Axis::X, 2) + derivative(ss.T, Axis::Y, 2) +
                      derivative(ss.T, Axis::Z, 2);
        r.L2_lapl_T = norm(lapT, NormKind::L2);
    }

    r.energy_residual = energy_identity_residual(s, p);
    r.symmetry_residual = symmetry_residual(s);
    const bool isotropic = std::abs(p.nu_h - p.nu_z) <= 1e-14 * (p.nu_h + p.nu_z);
    r.u_eq_residual = isotropic ? u_equation_residual(s, p) : 0.0;
    return r;
}

}  // namespace peq
