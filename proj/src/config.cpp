#include "peq/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "peq/errors.hpp"

namespace peq {

namespace {

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("config: bad boolean value for " + key + ": '" + v + "'");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::RK3_IMF: return "rk3";
        case Scheme::RK2_IMF: return "rk2";
        case Scheme::EULER_IMF: return "euler";
    }
    return "rk3";
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("config: expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string val = trim(assignment.substr(eq + 1));

    if (key == "nx") cfg.nx = int(parse_long(key, val));
    else if (key == "ny") cfg.ny = int(parse_long(key, val));
    else if (key == "nz") cfg.nz = int(parse_long(key, val));
    else if (key == "h") cfg.h = parse_double(key, val);
    else if (key == "f0") cfg.f0 = parse_double(key, val);
    else if (key == "nu_h") cfg.nu_h = parse_double(key, val);
    else if (key == "nu_z") cfg.nu_z = parse_double(key, val);
    else if (key == "kappa_h") cfg.kappa_h = parse_double(key, val);
    else if (key == "eps") cfg.eps = parse_double(key, val);
    else if (key == "dt") cfg.dt = (val == "auto") ? 0.0 : parse_double(key, val);
    else if (key == "cfl") cfg.cfl = parse_double(key, val);
    else if (key == "t_end") cfg.t_end = parse_double(key, val);
    else if (key == "scheme") {
        if (val == "rk3") cfg.scheme = Scheme::RK3_IMF;
        else if (val == "rk2") cfg.scheme = Scheme::RK2_IMF;
        else if (val == "euler") cfg.scheme = Scheme::EULER_IMF;
        else throw ConfigError("config: unknown scheme '" + val + "' (rk3|rk2|euler)");
    } else if (key == "resymmetrize_every") cfg.resymmetrize_every = int(parse_long(key, val));
    else if (key == "blowup_guard") cfg.blowup_guard = parse_double(key, val);
    else if (key == "ic") cfg.ic = val;
    else if (key == "seed") cfg.seed = std::uint64_t(parse_long(key, val));
    else if (key == "ic_amplitude") cfg.ic_amplitude = parse_double(key, val);
    else if (key == "diag_every") cfg.diag_every = int(parse_long(key, val));
    else if (key == "checkpoint_every") cfg.checkpoint_every = int(parse_long(key, val));
    else if (key == "outdir") cfg.outdir = val;
    else if (key == "deterministic") cfg.deterministic = parse_bool(key, val);
    else throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            apply_override(cfg, line);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

void RunConfig::validate() const {
    auto even_ok = [](int n) { return n >= 4 && n % 2 == 0; };
    if (!even_ok(nx) || !even_ok(ny) || !even_ok(nz))
        throw ConfigError("config: nx, ny, nz must be even and >= 4");
    if (!(h > 0.0)) throw ConfigError("config: h must be positive");
    if (nu_h < 0 || nu_z < 0 || kappa_h < 0 || eps < 0)
        throw ConfigError("config: diffusivities must be nonnegative");
    if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("config: cfl must be in (0, 1]");
    if (dt < 0.0) throw ConfigError("config: dt must be positive or auto");
    if (t_end < 0.0) throw ConfigError("config: t_end must be nonnegative");
    if (resymmetrize_every < 0) throw ConfigError("config: resymmetrize_every must be >= 0");
    if (diag_every < 1) throw ConfigError("config: diag_every must be >= 1");
    if (checkpoint_every < 0) throw ConfigError("config: checkpoint_every must be >= 0");
    if (!(blowup_guard > 0.0)) throw ConfigError("config: blowup_guard must be positive");
    if (ic_amplitude < 0.0) throw ConfigError("config: ic_amplitude must be >= 0");
}

std::string resolve_outdir(const RunConfig& cfg) {
    if (const char* env = std::getenv("PEQ_OUTPUT_DIR"))
        if (*env) return env;
    return cfg.outdir;
}

}  // namespace peq
