#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eitmotion/kinetic_mc.hpp"
#include "eitmotion/params.hpp"

namespace eitmotion {

// Strictly validated run description for the command line tool. Parsing is
// schema-first: unknown keys anywhere raise a ValidationError naming the
// full field path, as do missing required keys and out-of-range values.
// Each subcommand consumes its own block; `medium` and `beams` are shared.

struct SpectrumConfig {
    std::string engine;          // general | dicke | ramsey-1d | ramsey-2d
    double delta_min = 0.0;      // two-photon detuning grid, inclusive
    double delta_max = 0.0;
    int n_points = 0;
    std::array<double, 3> k_perp{0.0, 0.0, 0.0};
    double omega = 0.0;          // envelope frequency for general/dicke
    double radius = 0.0;         // beam radius, ramsey engines only
    std::string output;          // CSV path
};

struct FwhmScanConfig {
    double k_min = 0.0;          // residual wavevector range, log-spaced
    double k_max = 0.0;
    int n_k = 0;
    std::vector<double> gammas;  // collision rates to scan, must be nonempty
    int n_delta = 801;           // detuning samples per width measurement
    double span_factor = 8.0;    // grid half-span in predicted-width units
    std::string output;          // CSV path; warnings go to output + ".warnings"
};

struct FilterImageConfig {
    std::string input;           // CF64 path
    std::string output;          // CF64 path
    std::string preview_pgm;     // optional PGM of |output|
    double propagation_length = 0.0;
    bool include_diffraction = true;
};

struct EvolveConfig {
    std::string mode;            // store | slowlight
    std::string input;           // CF64 path
    std::string output;          // CF64 path
    double t = 0.0;
};

struct McRunConfig {
    McConfig mc;
    std::array<double, 3> k_perp{0.0, 0.0, 0.0};
    double omega = 0.0;
};

struct VerifyConfig {
    std::string report;              // JSON report path, empty = stdout only
    std::vector<std::string> suites; // empty = all
    nlohmann::json tolerance_overrides = nlohmann::json::object();
};

struct RunConfig {
    std::optional<MediumParams> medium;
    std::optional<BeamParams> beams;
    std::optional<SpectrumConfig> spectrum;
    std::optional<FwhmScanConfig> fwhm_scan;
    std::optional<FilterImageConfig> filter_image;
    std::optional<EvolveConfig> evolve;
    std::optional<McRunConfig> monte_carlo;
    std::optional<VerifyConfig> verify;

    const MediumParams& need_medium() const; // ValidationError when absent
    const BeamParams& need_beams() const;
};

// FormatError on unreadable file or malformed JSON.
nlohmann::json load_json_file(const std::string& path);

RunConfig parse_run_config(const nlohmann::json& root);

} // namespace eitmotion
