#include "eitmotion/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "eitmotion/errors.hpp"

namespace eitmotion {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw ValidationError(path + ": must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ValidationError(path + "." + it.key() + ": unknown key");
    }
}

const json& require(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key))
        throw ValidationError(path + "." + key + ": required, no default");
    return j.at(key);
}

double as_number(const json& v, const std::string& field) {
    if (!v.is_number())
        throw ValidationError(field + ": must be a number");
    return v.get<double>();
}

double num_at(const json& j, const std::string& path, const char* key) {
    return as_number(require(j, path, key), path + "." + key);
}

double num_or(const json& j, const std::string& path, const char* key, double def) {
    return j.contains(key) ? as_number(j.at(key), path + "." + key) : def;
}

long long int_at(const json& j, const std::string& path, const char* key) {
    const json& v = require(j, path, key);
    if (!v.is_number_integer())
        throw ValidationError(path + "." + key + ": must be an integer");
    return v.get<long long>();
}

std::string str_at(const json& j, const std::string& path, const char* key) {
    const json& v = require(j, path, key);
    if (!v.is_string())
        throw ValidationError(path + "." + key + ": must be a string");
    return v.get<std::string>();
}

std::string str_or(const json& j, const std::string& path, const char* key,
                   const std::string& def) {
    if (!j.contains(key))
        return def;
    if (!j.at(key).is_string())
        throw ValidationError(path + "." + key + ": must be a string");
    return j.at(key).get<std::string>();
}

bool bool_or(const json& j, const std::string& path, const char* key, bool def) {
    if (!j.contains(key))
        return def;
    if (!j.at(key).is_boolean())
        throw ValidationError(path + "." + key + ": must be a boolean");
    return j.at(key).get<bool>();
}

std::array<double, 3> vec3_or(const json& j, const std::string& path, const char* key,
                              std::array<double, 3> def) {
    if (!j.contains(key))
        return def;
    const json& v = j.at(key);
    const std::string field = path + "." + key;
    if (!v.is_array() || v.size() != 3)
        throw ValidationError(field + ": must be an array of 3 numbers");
    return {as_number(v[0], field), as_number(v[1], field), as_number(v[2], field)};
}

// a complex value is either a plain number or a [re, im] pair
Complex complex_or(const json& j, const std::string& path, const char* key,
                   Complex def) {
    if (!j.contains(key))
        return def;
    const json& v = j.at(key);
    const std::string field = path + "." + key;
    if (v.is_number())
        return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2)
        return Complex(as_number(v[0], field), as_number(v[1], field));
    throw ValidationError(field + ": must be a number or a [re, im] pair");
}

MediumParams parse_medium(const json& j) {
    check_keys(j, "medium",
               {"v_th", "gamma", "Gamma_d", "Gamma_21", "omega_21", "coupling"});
    MediumParams m;
    m.v_th = num_at(j, "medium", "v_th");
    m.gamma = num_at(j, "medium", "gamma");
    m.Gamma_d = num_at(j, "medium", "Gamma_d");
    m.Gamma_21 = num_at(j, "medium", "Gamma_21");
    m.omega_21 = num_or(j, "medium", "omega_21", 0.0);
    m.coupling = num_or(j, "medium", "coupling", 1.0);
    m.validate();
    return m;
}

BeamParams parse_beams(const json& j) {
    check_keys(j, "beams", {"q1", "delta_q", "Omega_2", "Delta_1", "Delta"});
    BeamParams b;
    b.q1 = num_at(j, "beams", "q1");
    b.delta_q = vec3_or(j, "beams", "delta_q", {0.0, 0.0, 0.0});
    b.Omega_2 = complex_or(j, "beams", "Omega_2", {0.0, 0.0});
    b.Delta_1 = num_or(j, "beams", "Delta_1", 0.0);
    b.Delta = num_or(j, "beams", "Delta", 0.0);
    b.validate();
    return b;
}

SpectrumConfig parse_spectrum(const json& j) {
    check_keys(j, "spectrum", {"engine", "delta_min", "delta_max", "n_points", "k_perp",
                               "omega", "radius", "output"});
    SpectrumConfig s;
    s.engine = str_at(j, "spectrum", "engine");
    if (s.engine != "general" && s.engine != "dicke" && s.engine != "ramsey-1d" &&
        s.engine != "ramsey-2d")
        throw ValidationError("spectrum.engine: must be one of general, dicke, "
                              "ramsey-1d, ramsey-2d");
    s.delta_min = num_at(j, "spectrum", "delta_min");
    s.delta_max = num_at(j, "spectrum", "delta_max");
    if (!(s.delta_min < s.delta_max))
        throw ValidationError("spectrum.delta_min: must be below delta_max");
    s.n_points = static_cast<int>(int_at(j, "spectrum", "n_points"));
    if (s.n_points < 3)
        throw ValidationError("spectrum.n_points: must be at least 3");
    s.k_perp = vec3_or(j, "spectrum", "k_perp", {0.0, 0.0, 0.0});
    s.omega = num_or(j, "spectrum", "omega", 0.0);
    s.radius = num_or(j, "spectrum", "radius", 0.0);
    if (s.engine.rfind("ramsey", 0) == 0 && !(s.radius > 0.0))
        throw ValidationError("spectrum.radius: ramsey engines need a positive "
                              "beam radius");
    s.output = str_at(j, "spectrum", "output");
    return s;
}

FwhmScanConfig parse_fwhm_scan(const json& j) {
    check_keys(j, "fwhm_scan",
               {"k_min", "k_max", "n_k", "gammas", "n_delta", "span_factor", "output"});
    FwhmScanConfig f;
    f.k_min = num_at(j, "fwhm_scan", "k_min");
    f.k_max = num_at(j, "fwhm_scan", "k_max");
    if (!(f.k_min > 0.0) || !(f.k_max > f.k_min))
        throw ValidationError("fwhm_scan.k_min: need 0 < k_min < k_max for a "
                              "log-spaced grid");
    f.n_k = static_cast<int>(int_at(j, "fwhm_scan", "n_k"));
    if (f.n_k < 2)
        throw ValidationError("fwhm_scan.n_k: must be at least 2");
    const json& g = require(j, "fwhm_scan", "gammas");
    if (!g.is_array() || g.empty())
        throw ValidationError("fwhm_scan.gammas: must be a nonempty array of "
                              "collision rates");
    for (size_t i = 0; i < g.size(); ++i) {
        const double v = as_number(g[i], "fwhm_scan.gammas");
        if (!(v > 0.0))
            throw ValidationError("fwhm_scan.gammas: entries must be positive");
        f.gammas.push_back(v);
    }
    f.n_delta = static_cast<int>(
        j.contains("n_delta") ? int_at(j, "fwhm_scan", "n_delta") : 801);
    if (f.n_delta < 31)
        throw ValidationError("fwhm_scan.n_delta: must be at least 31");
    f.span_factor = num_or(j, "fwhm_scan", "span_factor", 8.0);
    if (!(f.span_factor > 1.0))
        throw ValidationError("fwhm_scan.span_factor: must exceed 1");
    f.output = str_at(j, "fwhm_scan", "output");
    return f;
}

FilterImageConfig parse_filter_image(const json& j) {
    check_keys(j, "filter_image", {"input", "output", "preview_pgm",
                                   "propagation_length", "include_diffraction"});
    FilterImageConfig f;
    f.input = str_at(j, "filter_image", "input");
    f.output = str_at(j, "filter_image", "output");
    f.preview_pgm = str_or(j, "filter_image", "preview_pgm", "");
    f.propagation_length = num_at(j, "filter_image", "propagation_length");
    f.include_diffraction = bool_or(j, "filter_image", "include_diffraction", true);
    return f;
}

EvolveConfig parse_evolve(const json& j) {
    check_keys(j, "evolve", {"mode", "input", "output", "t"});
    EvolveConfig e;
    e.mode = str_at(j, "evolve", "mode");
    if (e.mode != "store" && e.mode != "slowlight")
        throw ValidationError("evolve.mode: must be store or slowlight");
    e.input = str_at(j, "evolve", "input");
    e.output = str_at(j, "evolve", "output");
    e.t = num_at(j, "evolve", "t");
    if (!(e.t >= 0.0))
        throw ValidationError("evolve.t: must be nonnegative");
    return e;
}

McRunConfig parse_monte_carlo(const json& j) {
    check_keys(j, "monte_carlo",
               {"n_atoms", "dt", "t_total", "seed", "probe_drive", "k_perp", "omega"});
    McRunConfig c;
    c.mc.n_atoms = int_at(j, "monte_carlo", "n_atoms");
    c.mc.dt = num_at(j, "monte_carlo", "dt");
    c.mc.t_total = num_at(j, "monte_carlo", "t_total");
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_unsigned() && !s.is_number_integer())
            throw ValidationError("monte_carlo.seed: must be an integer");
        c.mc.seed = s.get<uint64_t>();
    } // left unset otherwise; simulate_chi rejects a missing seed
    c.mc.probe_drive = num_or(j, "monte_carlo", "probe_drive", 1.0);
    c.k_perp = vec3_or(j, "monte_carlo", "k_perp", {0.0, 0.0, 0.0});
    c.omega = num_or(j, "monte_carlo", "omega", 0.0);
    return c;
}

VerifyConfig parse_verify(const json& j) {
    check_keys(j, "verify", {"report", "suites", "tolerance_overrides"});
    VerifyConfig v;
    v.report = str_or(j, "verify", "report", "");
    if (j.contains("suites")) {
        const json& s = j.at("suites");
        if (!s.is_array())
            throw ValidationError("verify.suites: must be an array of suite names");
        for (const auto& e : s) {
            if (!e.is_string())
                throw ValidationError("verify.suites: entries must be strings");
            v.suites.push_back(e.get<std::string>());
        }
    }
    if (j.contains("tolerance_overrides")) {
        const json& t = j.at("tolerance_overrides");
        if (!t.is_object())
            throw ValidationError("verify.tolerance_overrides: must be an object "
                                  "of suite name to tolerance");
        for (auto it = t.begin(); it != t.end(); ++it)
            as_number(it.value(), "verify.tolerance_overrides." + it.key());
        v.tolerance_overrides = t;
    }
    return v;
}

} // namespace

const MediumParams& RunConfig::need_medium() const {
    if (!medium)
        throw ValidationError("medium: required, no default");
    return *medium;
}

const BeamParams& RunConfig::need_beams() const {
    if (!beams)
        throw ValidationError("beams: required, no default");
    return *beams;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("config: cannot open '" + path + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw FormatError("config: '" + path + "' is not valid JSON");
    return j;
}

RunConfig parse_run_config(const nlohmann::json& root) {
    check_keys(root, "config", {"medium", "beams", "spectrum", "fwhm_scan",
                                "filter_image", "evolve", "monte_carlo", "verify"});
    RunConfig rc;
    if (root.contains("medium"))
        rc.medium = parse_medium(root.at("medium"));
    if (root.contains("beams"))
        rc.beams = parse_beams(root.at("beams"));
    if (root.contains("spectrum"))
        rc.spectrum = parse_spectrum(root.at("spectrum"));
    if (root.contains("fwhm_scan"))
        rc.fwhm_scan = parse_fwhm_scan(root.at("fwhm_scan"));
    if (root.contains("filter_image"))
        rc.filter_image = parse_filter_image(root.at("filter_image"));
    if (root.contains("evolve"))
        rc.evolve = parse_evolve(root.at("evolve"));
    if (root.contains("monte_carlo"))
        rc.monte_carlo = parse_monte_carlo(root.at("monte_carlo"));
    if (root.contains("verify"))
        rc.verify = parse_verify(root.at("verify"));
    return rc;
}

} // namespace eitmotion
