#pragma once

#include <stdexcept>
#include <string>

namespace peq {

// Bad config file / option value. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem / format failures. CLI exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integration produced NaN/Inf or tripped the H2 guard. CLI exit code 3.
struct BlowupError : std::runtime_error {
    double time;
    explicit BlowupError(double t, const std::string& what)
        : std::runtime_error(what), time(t) {}
};

// Odd extension with a nonvanishing boundary trace.
struct CompatibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace peq
