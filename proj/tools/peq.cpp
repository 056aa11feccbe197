// peq: pseudo-spectral simulator for the hydrostatic primitive equations with
// horizontal-only temperature diffusion, plus its verification harnesses.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "peq/config.hpp"
#include "peq/errors.hpp"
#include "peq/harness.hpp"

namespace {

peq::RunConfig build_config(const std::string& config_path, const std::vector<std::string>& sets) {
    peq::RunConfig cfg;
    if (!config_path.empty()) cfg = peq::parse_config_file(config_path);
    for (const auto& kv : sets) peq::apply_override(cfg, kv);
    return cfg;
}

std::vector<double> parse_eps_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw peq::ConfigError("epsilon: bad value '" + tok + "' in eps list");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral primitive-equations simulator and verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--set", sets, "override, e.g. --set nx=32 (repeatable, last wins)");
    };

    CLI::App* run = app.add_subcommand("run", "integrate and write diagnostics/checkpoints");
    add_common(run);

    CLI::App* twin = app.add_subcommand("twin", "twin-run continuous-dependence experiment");
    add_common(twin);
    double delta = 1e-6;
    std::uint64_t seed = 1;
    twin->add_option("--delta", delta, "perturbation size")->required();
    twin->add_option("--seed", seed, "seed for the base initial state");

    CLI::App* epsilon = app.add_subcommand("epsilon", "vertical-diffusivity limit study");
    add_common(epsilon);
    std::string eps_csv = "0,1e-4,1e-3,1e-2";
    epsilon->add_option("--eps-list", eps_csv, "comma-separated eps values (must include 0)");

    CLI::App* selftest = app.add_subcommand("selftest", "run the invariant battery");
    int selftest_n = 16;
    bool corrupt = false;
    selftest->add_option("--grid", selftest_n, "cubic grid size (default 16)");
    selftest->add_flag("--corrupt-dealias", corrupt,
                       "fault-injection hook: disable the dealias cutoff");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return peq::cmd_run(build_config(config_path, sets));
        if (twin->parsed()) return peq::cmd_twin(build_config(config_path, sets), delta, seed);
        if (epsilon->parsed())
            return peq::cmd_epsilon(build_config(config_path, sets), parse_eps_list(eps_csv));
        if (selftest->parsed()) return peq::cmd_selftest(selftest_n, corrupt);
    } catch (const peq::ConfigError& e) {
        std::cerr << "peq: " << e.what() << "\n";
        return 2;
    } catch (const peq::IoError& e) {
        std::cerr << "peq: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "peq: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
