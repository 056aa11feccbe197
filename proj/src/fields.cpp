#include "peq/fields.hpp"

#include <algorithm>
#include <cmath>

namespace peq {

State zero_state(const Grid& g) {
    State s;
    s.v1 = Field3::zeros(g);
    s.v2 = Field3::zeros(g);
    s.T = Field3::zeros(g);
    return s;
}

Field2 vertical_average(const Field3& f) {
    const Grid& g = f.grid();
    Field2 out(g, Rep::Physical);
    if (f.rep() == Rep::Physical) {
        auto p = f.phys();
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) {
                const std::size_t base = g.idx(i, j, 0);
                double s = 0.0;
                for (int k = 0; k < g.nz; ++k) s += p[base + k];
                out.at(i, j) = s / g.nz;
            }
        return out;
    }
    // spectral: the z-mean is the kz = 0 coefficient plane
    Field2 plane(g, Rep::Spectral);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) plane.coef(i, j) = f.coef(i, j, 0);
    return to_physical(std::move(plane));
}

Field3 broadcast_z(const Field2& f) {
    const Grid& g = f.grid();
    Field2 p = to_physical(f);
    Field3 out(g, Rep::Physical);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double v = p.at(i, j);
            for (int k = 0; k < g.nz; ++k) out.at(i, j, k) = v;
        }
    return out;
}

Field3 fluctuation(const Field3& f) {
    Field3 p = to_physical(f);
    return p - broadcast_z(vertical_average(p));
}

Field3 diagnose_w(const Field3& v1, const Field3& v2) {
    Field3 div = derivative(to_spectral(v1), Axis::X, 1);
    div += derivative(to_spectral(v2), Axis::Y, 1);
    Field3 w = vertical_antiderivative(div);
    w *= -1.0;
    return w;
}

Field3 reconstruct_pressure(const Field3& T, const Field2& ps) {
    Field3 p = vertical_antiderivative(T);
    p *= -1.0;
    return p + broadcast_z(ps);
}

namespace {

double lp_norm(std::span<const double> v, double cellvol, int p) {
    double s = 0.0;
    for (double x : v) {
        double a2 = x * x;
        s += (p == 2) ? a2 : (p == 4 ? a2 * a2 : a2 * a2 * a2);
    }
    return std::pow(cellvol * s, 1.0 / p);
}

// sum over |alpha| = order multi-indices of |k^alpha|^2 |c|^2 per mode
double sobolev_sum(const Field3& sf, int order) {
    const Grid& g = sf.grid();
    auto c = sf.spec();
    double total = 0.0;
    std::size_t p = 0;
    for (int i = 0; i < g.nx; ++i) {
        const double kx = (i == g.nx / 2) ? 0.0 : g.kx(i);  // odd-order convention
        for (int j = 0; j < g.ny; ++j) {
            const double ky = (j == g.ny / 2) ? 0.0 : g.ky(j);
            for (int k = 0; k < g.nz; ++k, ++p) {
                const double kz = (k == g.nz / 2) ? 0.0 : g.kz(k);
                const double m2 = std::norm(c[p]);
                if (m2 == 0.0) continue;
                const double kx2 = kx * kx, ky2 = ky * ky, kz2 = kz * kz;
                if (order == 1) {
                    total += (kx2 + ky2 + kz2) * m2;
                } else {
                    // xx, yy, zz use the full -k^2 symbol; mixed terms once
                    const double KX2 = g.kx(i) * g.kx(i);
                    const double KY2 = g.ky(j) * g.ky(j);
                    const double KZ2 = g.kz(k) * g.kz(k);
                    total += (KX2 * KX2 + KY2 * KY2 + KZ2 * KZ2 + kx2 * ky2 + kx2 * kz2 +
                              ky2 * kz2) *
                             m2;
                }
            }
        }
    }
    return total * g.volume();
}

}  // namespace

double norm(const Field3& f, NormKind kind) {
    const Grid& g = f.grid();
    switch (kind) {
        case NormKind::L2:
        case NormKind::L4:
        case NormKind::L6: {
            Field3 p = to_physical(f);
            int pw = (kind == NormKind::L2) ? 2 : (kind == NormKind::L4 ? 4 : 6);
            return lp_norm(p.phys(), g.cell_volume(), pw);
        }
        case NormKind::Linf: {
            Field3 p = to_physical(f);
            return max_abs(p);
        }
        case NormKind::H1:
        case NormKind::H2: {
            Field3 s = to_spectral(f);
            double l2sq = 0.0;
            for (auto v : s.spec()) l2sq += std::norm(v);
            l2sq *= g.volume();
            double total = l2sq + sobolev_sum(s, 1);
            if (kind == NormKind::H2) total += sobolev_sum(s, 2);
            return std::sqrt(total);
        }
    }
    return 0.0;
}

double inner(const Field3& a, const Field3& b) {
    Field3 pa = to_physical(a);
    Field3 pb = to_physical(b);
    if (!(pa.grid() == pb.grid())) throw std::invalid_argument("inner: mismatched grids");
    auto va = pa.phys();
    auto vb = pb.phys();
    double s = 0.0;
    for (std::size_t p = 0; p < va.size(); ++p) s += va[p] * vb[p];
    return s * pa.grid().cell_volume();
}

double vector_norm(const Field3& a, const Field3& b, NormKind kind) {
    Field3 pa = to_physical(a);
    Field3 pb = to_physical(b);
    auto va = pa.phys();
    auto vb = pb.phys();
    const Grid& g = pa.grid();
    if (kind == NormKind::Linf) {
        double m = 0.0;
        for (std::size_t p = 0; p < va.size(); ++p)
            m = std::max(m, va[p] * va[p] + vb[p] * vb[p]);
        return std::sqrt(m);
    }
    if (kind != NormKind::L2 && kind != NormKind::L4 && kind != NormKind::L6)
        throw std::invalid_argument("vector_norm: Lp or Linf only");
    int pw = (kind == NormKind::L2) ? 2 : (kind == NormKind::L4 ? 4 : 6);
    double s = 0.0;
    for (std::size_t p = 0; p < va.size(); ++p) {
        double m2 = va[p] * va[p] + vb[p] * vb[p];
        s += (pw == 2) ? m2 : (pw == 4 ? m2 * m2 : m2 * m2 * m2);
    }
    return std::pow(g.cell_volume() * s, 1.0 / pw);
}

double norm2d_l2(const Field2& f) {
    Field2 p = to_physical(f);
    double s = 0.0;
    for (double v : p.phys()) s += v * v;
    return std::sqrt(s * p.grid().cell_area());
}

double vector_norm2d_l2(const Field2& a, const Field2& b) {
    Field2 pa = to_physical(a);
    Field2 pb = to_physical(b);
    auto va = pa.phys();
    auto vb = pb.phys();
    double s = 0.0;
    for (std::size_t p = 0; p < va.size(); ++p) s += va[p] * va[p] + vb[p] * vb[p];
    return std::sqrt(s * pa.grid().cell_area());
}

double hessian_l2(const Field3& f) {
    Field3 s = to_spectral(f);
    return std::sqrt(sobolev_sum(s, 2));
}

double h2_squared(const State& s) {
    double nv1 = norm(s.v1, NormKind::H2);
    double nv2 = norm(s.v2, NormKind::H2);
    double nt = norm(s.T, NormKind::H2);
    return nv1 * nv1 + nv2 * nv2 + nt * nt;
}

}  // namespace peq
