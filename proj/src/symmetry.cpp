#include "peq/symmetry.hpp"

#include <cmath>

#include "peq/errors.hpp"

namespace peq {

Field3 reflect_z(const Field3& f) {
    Field3 p = to_physical(f);
    const Grid& g = p.grid();
    Field3 out(g, Rep::Physical);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) out.at(i, j, k) = p.at(i, j, (g.nz - k) % g.nz);
    return out;
}

Field3 even_part(const Field3& f) {
    Field3 p = to_physical(f);
    Field3 r = reflect_z(p);
    r += p;
    r *= 0.5;
    return r;
}

Field3 odd_part(const Field3& f) {
    Field3 p = to_physical(f);
    Field3 r = p - reflect_z(p);
    r *= 0.5;
    return r;
}

Field3 extend(const HalfField& f, Parity parity) {
    const int nz = 2 * (f.nzh - 1);
    Grid g = make_grid(f.nx, f.ny, nz, f.h);
    const int kmid = nz / 2;

    if (parity == Parity::Odd) {
        double trace = 0.0;
        for (int i = 0; i < f.nx; ++i)
            for (int j = 0; j < f.ny; ++j)
                trace = std::max({trace, std::abs(f.at(i, j, 0)), std::abs(f.at(i, j, kmid))});
        if (trace > 1e-8)
            throw CompatibilityError("odd extension: boundary trace " + std::to_string(trace) +
                                     " exceeds 1e-8 at z = -h or z = 0");
    }

    Field3 out(g, Rep::Physical);
    const double sgn = (parity == Parity::Even) ? 1.0 : -1.0;
    for (int i = 0; i < f.nx; ++i)
        for (int j = 0; j < f.ny; ++j) {
            for (int k = 0; k <= kmid; ++k) out.at(i, j, k) = f.at(i, j, k);
            for (int k = kmid + 1; k < nz; ++k) out.at(i, j, k) = sgn * f.at(i, j, nz - k);
            if (parity == Parity::Odd) {
                out.at(i, j, 0) = 0.0;
                out.at(i, j, kmid) = 0.0;
            }
        }
    return out;
}

HalfField restrict_lower(const Field3& f) {
    Field3 p = to_physical(f);
    const Grid& g = p.grid();
    HalfField out;
    out.nx = g.nx;
    out.ny = g.ny;
    out.nzh = g.nz / 2 + 1;
    out.h = g.h;
    out.values.assign(std::size_t(g.nx) * g.ny * out.nzh, 0.0);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < out.nzh; ++k) out.at(i, j, k) = p.at(i, j, k);
    return out;
}

double extension_defect(const HalfField& f, Parity parity) {
    const int kmid = f.nzh - 1;

    if (parity == Parity::Odd) {
        double s0 = 0.0, s1 = 0.0;
        for (int i = 0; i < f.nx; ++i)
            for (int j = 0; j < f.ny; ++j) {
                s0 += f.at(i, j, 0) * f.at(i, j, 0);
                s1 += f.at(i, j, kmid) * f.at(i, j, kmid);
            }
        const double area = 1.0 / (double(f.nx) * f.ny);
        return std::sqrt(s0 * area) + std::sqrt(s1 * area);
    }

    // Even: a compatible profile has vanishing z-derivative at both walls;
    // a kink leaves an O(1) spectral derivative there.
    Field3 ext = extend(f, Parity::Even);
    Field3 dz = derivative(ext, Axis::Z, 1);
    const Grid& g = ext.grid();
    auto trace_l2 = [&](int k) {
        double s = 0.0;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) s += dz.at(i, j, k) * dz.at(i, j, k);
        return std::sqrt(s * g.cell_area());
    };
    return trace_l2(0) + trace_l2(kmid);
}

State symmetrize(const State& s) {
    State out;
    out.time = s.time;
    out.v1 = even_part(s.v1);
    out.v2 = even_part(s.v2);
    out.T = odd_part(s.T);
    return out;
}

double symmetry_residual(const State& s) {
    return vector_norm(odd_part(s.v1), odd_part(s.v2), NormKind::L2) +
           norm(even_part(s.T), NormKind::L2);
}

}  // namespace peq
