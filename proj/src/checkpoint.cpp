#include "peq/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "peq/errors.hpp"

namespace peq {

namespace {

constexpr char kMagic[4] = {'P', 'E', 'Q', 'C'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double x) {
    const std::uint64_t v = std::bit_cast<std::uint64_t>(x);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

double get_f64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

void put_field(std::ostream& out, const Field3& f) {
    for (double x : f.phys()) put_f64(out, x);
}

void get_field(std::istream& in, Field3& f) {
    for (double& x : f.phys()) x = get_f64(in);
}

}  // namespace

void write_checkpoint(const std::string& path, const State& s, const Params& p) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("checkpoint: cannot open '" + path + "' for writing");
    const Grid& g = s.grid();

    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, std::uint32_t(g.nx));
    put_u32(out, std::uint32_t(g.ny));
    put_u32(out, std::uint32_t(g.nz));
    put_f64(out, g.h);
    put_f64(out, p.f0);
    put_f64(out, p.nu_h);
    put_f64(out, p.nu_z);
    put_f64(out, p.kappa_h);
    put_f64(out, p.eps);
    put_f64(out, s.time);
    put_field(out, to_physical(s.v1));
    put_field(out, to_physical(s.v2));
    put_field(out, to_physical(s.T));
    if (!out) throw IoError("checkpoint: write failed for '" + path + "'");
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("checkpoint: cannot open '" + path + "'");

    in.seekg(0, std::ios::end);
    const std::streamoff fsize = in.tellg();
    in.seekg(0, std::ios::beg);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("checkpoint: bad magic in '" + path + "'");
    const std::uint32_t version = get_u32(in);
    if (version != kVersion)
        throw IoError("checkpoint: unsupported format version " + std::to_string(version));

    const std::uint32_t nx = get_u32(in), ny = get_u32(in), nz = get_u32(in);
    const double h = get_f64(in);

    Checkpoint cp;
    cp.params.h = h;
    cp.params.f0 = get_f64(in);
    cp.params.nu_h = get_f64(in);
    cp.params.nu_z = get_f64(in);
    cp.params.kappa_h = get_f64(in);
    cp.params.eps = get_f64(in);
    const double time = get_f64(in);
    if (!in) throw IoError("checkpoint: truncated header in '" + path + "'");

    Grid g;
    try {
        g = make_grid(int(nx), int(ny), int(nz), h);
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("checkpoint: bad header: ") + e.what());
    }

    const std::streamoff expect = 4 + 4 + 3 * 4 + 7 * 8 + std::streamoff(3 * g.size() * 8);
    if (fsize != expect)
        throw IoError("checkpoint: payload size mismatch in '" + path + "' (expected " +
                      std::to_string(expect) + " bytes, found " + std::to_string(fsize) + ")");

    cp.state.v1 = Field3::zeros(g);
    cp.state.v2 = Field3::zeros(g);
    cp.state.T = Field3::zeros(g);
    cp.state.time = time;
    get_field(in, cp.state.v1);
    get_field(in, cp.state.v2);
    get_field(in, cp.state.T);
    if (!in) throw IoError("checkpoint: truncated payload in '" + path + "'");
    return cp;
}

}  // namespace peq
