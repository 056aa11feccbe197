#pragma once

// Even/odd machinery about z = 0: the extension between the physical
// half-domain M x (-h, 0) and the symmetric domain M x (-h, h), projection
// onto the invariant class (v even, T odd), and its residual. The uniform
// grid maps z -> -z to a point permutation, so all parity operations are
// exact permutations plus negations.

#include <vector>

#include "peq/fields.hpp"
#include "peq/grid.hpp"

namespace peq {

enum class Parity { Even, Odd };

// Scalar samples on the nz/2 + 1 levels z_k = -h + 2h k/nz, k = 0..nz/2,
// i.e. the closed lower half [-h, 0]. Layout matches Field3 (z fastest).
struct HalfField {
    int nx = 0, ny = 0, nzh = 0;  // nzh = nz/2 + 1 levels
    double h = 0.0;
    std::vector<double> values;

    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * ny + j) * nzh + k;
    }
    double at(int i, int j, int k) const { return values[idx(i, j, k)]; }
    double& at(int i, int j, int k) { return values[idx(i, j, k)]; }
};

// f(x, y, -z) (exact grid permutation).
Field3 reflect_z(const Field3& f);

Field3 even_part(const Field3& f);
Field3 odd_part(const Field3& f);

// Mirror a half-field about z = 0 onto the full grid. Odd extensions require
// |f| <= 1e-8 at both traces z = -h and z = 0 (CompatibilityError otherwise);
// the trace levels are then zeroed so the output is odd to round-off.
Field3 extend(const HalfField& f, Parity parity);

// Samples on the closed lower half; restrict_lower(extend(f, p)) == f for
// compatible f.
HalfField restrict_lower(const Field3& f);

// L2-over-M trace magnitudes that must vanish for a smooth extension:
// for Odd the traces of f itself at z in {-h, 0}, for Even the traces of the
// spectral z-derivative of the extension (a kink shows up as a large value).
double extension_defect(const HalfField& f, Parity parity);

// Projection onto the invariant class: v <- even part, T <- odd part.
State symmetrize(const State& s);

// ||odd part of v||_2 + ||even part of T||_2.
double symmetry_residual(const State& s);

}  // namespace peq
