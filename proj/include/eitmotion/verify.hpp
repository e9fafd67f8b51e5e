#pragma once
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace eitmotion {

// Built-in cross-validation: every suite computes the same physics along two
// independent routes and gates the measured disagreement.
//   dicke-vs-general    diffusion-limit window formula against the full
//                       velocity-averaged susceptibility, 50 random draws
//                       deep in the collision-dominated regime
//                       (gate: relative error)
//   ramsey-fd-vs-analytic  closed-form wall-return correction against a
//                       Richardson-extrapolated finite-difference boundary
//                       value solve, 101 detunings, both beam geometries
//                       (gate: relative error)
//   mc-vs-general       stochastic kinetic ensemble against the algebraic
//                       velocity average at matched parameters
//                       (gate: multiple of the jackknife sigma)

struct SuiteResult {
    std::string name;
    bool passed = false;
    double tolerance = 0.0;       // the gate actually applied
    std::string tolerance_kind;   // "relative-error" or "sigma-multiple"
    double worst_error = 0.0;     // in the same units as the tolerance
    std::string detail;           // one-line summary of the worst case
    nlohmann::json cases = nlohmann::json::array(); // per-case measurements
};

std::vector<std::string> verify_suite_names();

// ValidationError for an unknown suite name. The override replaces the
// suite's default gate (same units as `tolerance` above).
SuiteResult run_verify_suite(const std::string& name,
                             std::optional<double> tolerance_override = {});

nlohmann::json verify_report(const std::vector<SuiteResult>& results);

} // namespace eitmotion
