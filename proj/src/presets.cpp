#include "peq/presets.hpp"

#include <cmath>
#include <random>

#include "peq/checkpoint.hpp"
#include "peq/dynamics.hpp"
#include "peq/errors.hpp"
#include "peq/symmetry.hpp"

namespace peq {

State preset_rest(const Grid& g) { return zero_state(g); }

State preset_inertial(const Grid& g, double amplitude) {
    State s = zero_state(g);
    for (auto& v : s.v1.phys()) v = amplitude;
    return s;
}

State preset_mode_decay(const Grid& g, double amplitude) {
    State s = zero_state(g);
    s.v2 = Field3::sample(g, [amplitude](double x, double, double) {
        return amplitude * std::sin(2 * M_PI * x);
    });
    return s;
}

State preset_thermal(const Grid& g, double amplitude) {
    State s = zero_state(g);
    const double h = g.h;
    s.T = Field3::sample(g, [amplitude, h](double x, double, double z) {
        return amplitude * std::sin(M_PI * z / h) * std::sin(2 * M_PI * x);
    });
    return s;
}

namespace {

double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

// sum over horizontal modes |mx|,|my| <= bh and vertical cos/sin profiles up
// to bz of randomly weighted waves; an analytic trig polynomial independent
// of the grid resolution.
Field3 random_trig(const Grid& g, std::mt19937_64& rng, int bh, int bz, bool even_z) {
    struct Term {
        double a, ph;
        int mx, my, mz;
    };
    std::vector<Term> terms;
    for (int mx = -bh; mx <= bh; ++mx)
        for (int my = -bh; my <= bh; ++my)
            for (int mz = even_z ? 0 : 1; mz <= bz; ++mz) {
                Term t;
                t.a = u01(rng) - 0.5;
                t.ph = 2 * M_PI * u01(rng);
                t.mx = mx;
                t.my = my;
                t.mz = mz;
                terms.push_back(t);
            }
    const double h = g.h;
    return Field3::sample(g, [&](double x, double y, double z) {
        double v = 0.0;
        for (const Term& t : terms) {
            const double hor = std::cos(2 * M_PI * (t.mx * x + t.my * y) + t.ph);
            const double ver = even_z ? std::cos(M_PI * t.mz * z / h) : std::sin(M_PI * t.mz * z / h);
            v += t.a * hor * ver;
        }
        return v;
    });
}

}  // namespace

State preset_random_h(const Grid& g, std::uint64_t seed, double amplitude) {
    std::mt19937_64 rng(seed);
    const int bh = 3, bz = 3;

    State s = zero_state(g);
    s.v1 = random_trig(g, rng, bh, bz, /*even_z=*/true);
    s.v2 = random_trig(g, rng, bh, bz, /*even_z=*/true);
    s.T = random_trig(g, rng, bh, bz, /*even_z=*/false);

    auto [p1, p2] = barotropic_project(std::move(s.v1), std::move(s.v2));
    s.v1 = std::move(p1);
    s.v2 = std::move(p2);

    const double scale = std::max({max_abs(s.v1), max_abs(s.v2), max_abs(s.T), 1e-300});
    const double c = amplitude / scale;
    s.v1 *= c;
    s.v2 *= c;
    s.T *= c;
    return s;
}

State make_initial_state(const RunConfig& cfg, const Grid& g) {
    if (cfg.ic.rfind("checkpoint:", 0) == 0) {
        Checkpoint cp = read_checkpoint(cfg.ic.substr(11));
        if (!(cp.state.grid() == g))
            throw ConfigError("initial state: checkpoint grid does not match the configured grid");
        return std::move(cp.state);
    }
    if (cfg.ic == "rest") return preset_rest(g);
    if (cfg.ic == "inertial") return preset_inertial(g, cfg.ic_amplitude);
    if (cfg.ic == "mode-decay") return preset_mode_decay(g, cfg.ic_amplitude);
    if (cfg.ic == "thermal") return preset_thermal(g, cfg.ic_amplitude);
    if (cfg.ic == "random-h") return preset_random_h(g, cfg.seed, cfg.ic_amplitude);
    throw ConfigError("initial state: unknown preset '" + cfg.ic + "'");
}

Perturbation twin_perturbation(const Grid& g) {
    // zero vertical mean (cos(pi z/h) and sin(pi z/h) profiles), v even, T odd
    const double h = g.h;
    Perturbation p;
    p.dv1 = Field3::sample(g, [h](double, double y, double z) {
        return std::sin(2 * M_PI * y) * std::cos(M_PI * z / h);
    });
    p.dv2 = Field3::sample(g, [h](double x, double, double z) {
        return std::sin(2 * M_PI * x) * std::cos(M_PI * z / h);
    });
    p.dT = Field3::sample(g, [h](double x, double, double z) {
        return std::sin(2 * M_PI * x) * std::sin(M_PI * z / h);
    });
    return p;
}

}  // namespace peq
