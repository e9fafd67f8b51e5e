#pragma once
#include <stdexcept>
#include <string>

namespace eitmotion {

// Bad input: parameter ranges, malformed config, unsupported geometry.
// CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine ran out of budget before reaching its tolerance
// (quadrature subdivision, order doubling, FD resolution, MC stationarity).
// CLI maps this to exit code 3.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A binary or structured input file does not match its documented layout
// (bad magic, truncated payload, malformed header). CLI maps this to exit
// code 2 like any other bad input.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace eitmotion
