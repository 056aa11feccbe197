#pragma once

// Binary checkpoint format, bit-exact:
//   magic "PEQC", u32 version (= 1), u32 nx, ny, nz,
//   f64 h, f0, nu_h, nu_z, kappa_h, eps, time,
//   then v1, v2, T collocation values (z fastest, then y, then x),
// all integers and reals little-endian.

#include <string>

#include "peq/fields.hpp"

namespace peq {

struct Checkpoint {
    State state;
    Params params;
};

void write_checkpoint(const std::string& path, const State& s, const Params& p);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace peq
