#include "peq/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "peq/checkpoint.hpp"
#include "peq/diag_csv.hpp"
#include "peq/errors.hpp"
#include "peq/presets.hpp"
#include "peq/symmetry.hpp"

namespace fs = std::filesystem;

namespace peq {

namespace {

double d_squared(const State& a, const State& b) {
    auto sq = [](double x) { return x * x; };
    return sq(norm(a.v1 - b.v1, NormKind::L2)) + sq(norm(a.v2 - b.v2, NormKind::L2)) +
           sq(norm(a.T - b.T, NormKind::L2));
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const BlowupError*>(&e)) return 3;
    if (dynamic_cast<const IoError*>(&e)) return 4;
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    return 1;
}

}  // namespace

TwinResult twin_run(const RunConfig& cfg_in, double delta, std::uint64_t seed) {
    if (delta < 0.0) throw ConfigError("twin: delta must be >= 0");
    RunConfig cfg = cfg_in;
    cfg.seed = seed;
    cfg.validate();
    if (cfg.deterministic) set_fft_threads(1);

    const Grid g = make_grid(cfg.nx, cfg.ny, cfg.nz, cfg.h);
    const Params prm = cfg.params();
    StepConfig sc = cfg.step_config();

    State base = make_initial_state(cfg, g);
    Perturbation pert = twin_perturbation(g);
    State twin = base;
    twin.v1 += delta * pert.dv1;
    twin.v2 += delta * pert.dv2;
    twin.T += delta * pert.dT;

    // lockstep: freeze dt from the base state when running on auto
    const double dt = (cfg.dt > 0.0) ? cfg.dt : cfl_dt(base, prm, sc);

    TwinResult res;
    std::vector<double> t, d;
    auto sample = [&](const State& b, const State& p) {
        t.push_back(b.time);
        d.push_back(d_squared(p, b));
        res.phi_series.push_back(phi(b));
    };
    sample(base, twin);

    long stepidx = 0;
    const double t_eps = 1e-12 * std::max(1.0, std::abs(cfg.t_end));
    while (cfg.t_end - base.time > t_eps) {
        double step_dt = dt;
        if (base.time + step_dt > cfg.t_end) step_dt = cfg.t_end - base.time;
        base = step(base, prm, sc, step_dt);
        twin = step(twin, prm, sc, step_dt);
        ++stepidx;
        if (stepidx % cfg.diag_every == 0 || !(cfg.t_end - base.time > t_eps)) sample(base, twin);
    }

    res.report.d0 = d.front();
    res.report.c_fit = fit_gronwall_c(t, res.phi_series, d, res.report.d0);
    std::vector<double> env = gronwall_envelope(t, res.phi_series, res.report.c_fit, res.report.d0);
    res.report.series.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) res.report.series[i] = {t[i], d[i], env[i]};
    res.amplification = (res.report.d0 > 0.0) ? d.back() / res.report.d0 : 0.0;
    return res;
}

EpsilonResult epsilon_run(const RunConfig& cfg_in, const std::vector<double>& eps_list,
                          const std::string& outdir) {
    if (eps_list.empty()) throw ConfigError("epsilon: eps list must be nonempty");
    bool has_zero = false;
    for (double e : eps_list) {
        if (e < 0.0) throw ConfigError("epsilon: eps values must be >= 0");
        if (e == 0.0) has_zero = true;
    }
    if (!has_zero) throw ConfigError("epsilon: eps list must include 0 as the baseline");

    RunConfig cfg = cfg_in;
    cfg.validate();
    if (cfg.deterministic) set_fft_threads(1);
    const Grid g = make_grid(cfg.nx, cfg.ny, cfg.nz, cfg.h);

    EpsilonResult res;
    res.eps = eps_list;
    std::vector<State> finals;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        RunConfig rc = cfg;
        rc.eps = eps_list[i];
        const Params prm = rc.params();
        State s0 = make_initial_state(rc, g);

        double sup_h2 = 0.0;
        std::unique_ptr<DiagCsv> csv;
        if (!outdir.empty()) {
            fs::create_directories(fs::path(outdir) / ("eps_" + std::to_string(i)));
            csv = std::make_unique<DiagCsv>(
                (fs::path(outdir) / ("eps_" + std::to_string(i)) / "diag.csv").string());
        }
        RunSinks sinks;
        sinks.diag_every = 1;  // track the sup over every step
        sinks.on_diag = [&](const State& s, long stepidx) {
            sup_h2 = std::max(sup_h2, h2_squared(s));
            if (csv && stepidx % cfg.diag_every == 0) csv->write(norm_panel(s, prm));
        };
        finals.push_back(run(s0, prm, rc.step_config(), sinks));
        res.sup_h2.push_back(sup_h2);
    }

    std::size_t i0 = 0;
    while (eps_list[i0] != 0.0) ++i0;
    for (std::size_t i = 0; i < eps_list.size(); ++i)
        res.D.push_back(vector_norm(finals[i].v1 - finals[i0].v1, finals[i].v2 - finals[i0].v2,
                                    NormKind::L2) +
                        norm(finals[i].T - finals[i0].T, NormKind::L2));

    // least-squares slope of log D against log eps over the nonzero entries
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (eps_list[i] <= 0.0 || res.D[i] <= 0.0) continue;
        const double lx = std::log(eps_list[i]), ly = std::log(res.D[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m >= 2) res.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    double mn = res.sup_h2.front(), mx = res.sup_h2.front();
    for (double v : res.sup_h2) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    res.h2_ratio = (mn > 0.0) ? mx / mn : 1.0;
    return res;
}

int cmd_run(const RunConfig& cfg) {
    try {
        cfg.validate();
        if (cfg.deterministic) set_fft_threads(1);
        const Grid g = make_grid(cfg.nx, cfg.ny, cfg.nz, cfg.h);
        const Params prm = cfg.params();
        State s0 = make_initial_state(cfg, g);

        const std::string outdir = resolve_outdir(cfg);
        std::error_code ec;
        fs::create_directories(outdir, ec);
        if (ec) throw IoError("run: cannot create output directory '" + outdir + "'");

        DiagCsv csv((fs::path(outdir) / "diag.csv").string());
        RunSinks sinks;
        sinks.diag_every = cfg.diag_every;
        sinks.checkpoint_every = cfg.checkpoint_every;
        sinks.on_diag = [&](const State& s, long) { csv.write(norm_panel(s, prm)); };
        sinks.on_checkpoint = [&](const State& s, long stepidx) {
            char name[64];
            std::snprintf(name, sizeof(name), "checkpoint_%06ld.peqc", stepidx);
            write_checkpoint((fs::path(outdir) / name).string(), s, prm);
        };

        State final_state = run(std::move(s0), prm, cfg.step_config(), sinks);
        write_checkpoint((fs::path(outdir) / "final.peqc").string(), final_state, prm);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "peq run: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_twin(const RunConfig& cfg, double delta, std::uint64_t seed) {
    try {
        TwinResult res = twin_run(cfg, delta, seed);

        const std::string outdir = resolve_outdir(cfg);
        std::error_code ec;
        fs::create_directories(outdir, ec);
        if (ec) throw IoError("twin: cannot create output directory '" + outdir + "'");
        std::ofstream out(fs::path(outdir) / "twin.csv", std::ios::trunc);
        if (!out) throw IoError("twin: cannot write report");
        out << "time,d,phi,envelope,c_fit\n";
        for (std::size_t i = 0; i < res.report.series.size(); ++i) {
            const auto& p = res.report.series[i];
            out << format_g17(p.t) << ',' << format_g17(p.d) << ','
                << format_g17(res.phi_series[i]) << ',' << format_g17(p.envelope) << ','
                << format_g17(res.report.c_fit) << '\n';
        }
        std::cout << "twin: d0 = " << format_g17(res.report.d0)
                  << ", amplification = " << format_g17(res.amplification)
                  << ", fitted C = " << format_g17(res.report.c_fit) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "peq twin: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_epsilon(const RunConfig& cfg, const std::vector<double>& eps_list) {
    try {
        const std::string outdir = resolve_outdir(cfg);
        std::error_code ec;
        fs::create_directories(outdir, ec);
        if (ec) throw IoError("epsilon: cannot create output directory '" + outdir + "'");

        EpsilonResult res = epsilon_run(cfg, eps_list, outdir);

        std::ofstream out(fs::path(outdir) / "epsilon.csv", std::ios::trunc);
        if (!out) throw IoError("epsilon: cannot write report");
        out << "eps,D,sup_h2\n";
        for (std::size_t i = 0; i < res.eps.size(); ++i)
            out << format_g17(res.eps[i]) << ',' << format_g17(res.D[i]) << ','
                << format_g17(res.sup_h2[i]) << '\n';
        std::cout << "epsilon: slope = " << format_g17(res.slope)
                  << ", sup_h2 max/min = " << format_g17(res.h2_ratio) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "peq epsilon: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------
namespace {

struct SelftestReporter {
    bool all_ok = true;
    void item(const std::string& name, bool ok, double value, double threshold) {
        all_ok = all_ok && ok;
        std::printf("%s %-24s (value=%.3e, threshold=%.3e)\n", ok ? "PASS" : "FAIL", name.c_str(),
                    value, threshold);
    }
};

// Band-edge state in the invariant class: products of these modes alias on
// the collocation grid, so this state detects a broken dealias cutoff.
State band_edge_state(const Grid& g) {
    const int c = Grid::dealias_cutoff(g.nx);
    const double h = g.h;
    State s = zero_state(g);
    s.v1 = Field3::sample(g, [c, h](double x, double y, double z) {
        return std::cos(2 * M_PI * c * x) * std::cos(M_PI * z / h) + std::sin(2 * M_PI * y);
    });
    s.v2 = Field3::sample(g, [c, h](double x, double y, double z) {
        return std::sin(2 * M_PI * c * y) * std::cos(M_PI * z / h) + std::cos(2 * M_PI * x);
    });
    s.T = Field3::sample(g, [c, h](double x, double y, double z) {
        return std::sin(M_PI * z / h) * (std::sin(2 * M_PI * c * x) + std::cos(2 * M_PI * y));
    });
    auto [p1, p2] = barotropic_project(std::move(s.v1), std::move(s.v2));
    s.v1 = std::move(p1);
    s.v2 = std::move(p2);
    return s;
}

}  // namespace

int cmd_selftest(int n, bool corrupt_dealias) {
    const auto t_start = std::chrono::steady_clock::now();
    SelftestReporter rep;
    try {
        set_fft_threads(1);
        const Grid g = make_grid(n, n, n, 1.0);

        {  // spectral integration by parts
            State s = preset_random_h(g, 7, 1.0);
            double worst = 0.0;
            for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
                const double lhs = inner(derivative(s.v1, ax, 1), s.T);
                const double rhs = -inner(s.v1, derivative(s.T, ax, 1));
                const double scale =
                    1.0 + norm(derivative(s.v1, ax, 1), NormKind::L2) * norm(s.T, NormKind::L2);
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
            rep.item("integration-by-parts", worst < 1e-12, worst, 1e-12);
        }

        {  // Parseval
            State s = preset_random_h(g, 8, 1.0);
            const double a = norm(s.v1, NormKind::L2);
            Field3 c = to_spectral(s.v1);
            double spec2 = 0.0;
            for (auto v : c.spec()) spec2 += std::norm(v);
            const double b = std::sqrt(spec2 * g.volume());
            const double err = std::abs(a - b) / (1.0 + b);
            rep.item("parseval", err < 1e-12, err, 1e-12);
        }

        {  // parity machinery
            State s = preset_random_h(g, 9, 1.0);
            const double r0 = symmetry_residual(s);
            State s2 = symmetrize(symmetrize(s));
            const double drift = max_abs(s2.v1 - symmetrize(s).v1);
            rep.item("parity-projection", r0 < 1e-12 && drift < 1e-14, r0 + drift, 1e-12);
        }

        {  // barotropic projection
            State s = band_edge_state(g);
            const double res =
                barotropic_residual(s.v1, s.v2) / (1.0 + vector_norm(s.v1, s.v2, NormKind::L2));
            rep.item("barotropic-constraint", res < 1e-12, res, 1e-12);
        }

        {  // advection skew-symmetry via the inviscid tendency
            testhooks::corrupt_dealias = corrupt_dealias;
            State s = band_edge_state(g);
            Params prm;
            prm.h = g.h;
            prm.nu_h = prm.nu_z = prm.kappa_h = prm.eps = 0.0;
            Tendency td = tendency(s, prm);
            const double work = inner(td.dv1, s.v1) + inner(td.dv2, s.v2);
            const double scale = 1.0 + vector_norm(td.dv1, td.dv2, NormKind::L2) *
                                           vector_norm(s.v1, s.v2, NormKind::L2);
            const double rel = std::abs(work) / scale;
            testhooks::corrupt_dealias = false;
            rep.item("advection-skew-symmetry", rel < 1e-9, rel, 1e-9);
        }

        {  // energy identity
            State s = preset_random_h(g, 10, 0.5);
            Params prm;
            prm.h = g.h;
            const double res = energy_identity_residual(s, prm);
            rep.item("energy-identity", res < 1e-8, res, 1e-8);
        }

        {  // exact single-mode decay over one step
            State s = preset_mode_decay(g, 1.0);
            Params prm;
            prm.h = g.h;
            StepConfig sc;
            const double dt = 0.01;
            State s1 = step(s, prm, sc, dt);
            const double want = std::exp(-4.0 * M_PI * M_PI * dt);
            double worst = 0.0;
            for (int i = 0; i < g.nx; ++i) {
                const double a = s.v2.at(i, 0, 0);
                const double b = s1.v2.at(i, 0, 0);
                worst = std::max(worst, std::abs(b - a * want));
            }
            rep.item("integrating-factor-decay", worst < 1e-12, worst, 1e-12);
        }

        {  // inertial oscillation, short run
            Params prm;
            prm.h = g.h;
            prm.f0 = 1.0;
            StepConfig sc;
            sc.dt = M_PI / 800.0;
            sc.t_end = M_PI / 8.0;
            State s = preset_inertial(g, 1.0);
            State f = run(s, prm, sc, RunSinks{});
            const double want1 = std::cos(f.time), want2 = -std::sin(f.time);
            const double err = std::max(std::abs(f.v1.at(0, 0, 0) - want1),
                                        std::abs(f.v2.at(0, 0, 0) - want2));
            rep.item("inertial-oscillation", err < 1e-8, err, 1e-8);
        }

        {  // horizontally uniform T(z) is an exact steady state
            State s = zero_state(g);
            s.T = Field3::sample(g, [&](double, double, double z) { return std::sin(M_PI * z / g.h); });
            Params prm;
            prm.h = g.h;
            StepConfig sc;
            State cur = s;
            for (int i = 0; i < 10; ++i) cur = step(cur, prm, sc, 0.05);
            const double change =
                std::max({max_abs(cur.v1 - s.v1), max_abs(cur.v2 - s.v2), max_abs(cur.T - s.T)});
            rep.item("anisotropy-steady-state", change < 1e-13, change, 1e-13);
        }

        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        rep.item("runtime-budget-60s", elapsed < 60.0, elapsed, 60.0);
    } catch (const std::exception& e) {
        testhooks::corrupt_dealias = false;
        std::cerr << "peq selftest: " << e.what() << "\n";
        return 1;
    }
    return rep.all_ok ? 0 : 1;
}

}  // namespace peq
