#include "eitmotion/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "eitmotion/dicke_filter.hpp"
#include "eitmotion/errors.hpp"
#include "eitmotion/kinetic_mc.hpp"
#include "eitmotion/ramsey.hpp"
#include "eitmotion/susceptibility.hpp"
#include "eitmotion/velocity_integrals.hpp"

namespace eitmotion {

namespace {

std::string format_sci(double v) {
    std::ostringstream os;
    os.precision(6);
    os << std::scientific << v;
    return os.str();
}

SuiteResult suite_dicke_vs_general(double tol) {
    SuiteResult res;
    res.name = "dicke-vs-general";
    res.tolerance = tol;
    res.tolerance_kind = "relative-error";

    std::mt19937 gen(20260815u);
    auto uni = [&gen](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    };
    auto log_uni = [&uni](double lo, double hi) {
        return std::exp(uni(std::log(lo), std::log(hi)));
    };

    res.worst_error = 0.0;
    for (int draw = 0; draw < 50; ++draw) {
        MediumParams m;
        m.v_th = uni(50.0, 300.0);
        m.Gamma_d = log_uni(1e7, 1e9);
        m.Gamma_21 = log_uni(1e2, 1e4);

        BeamParams b;
        b.q1 = log_uni(1e6, 1e7);
        const double k = log_uni(1e2, 2e3);
        const std::array<double, 3> k_perp{k, 0.0, 0.0};
        // deep diffusive regime: collisions at least 100x the residual
        // two-photon Doppler rate
        m.gamma = 100.0 * m.v_th * k * log_uni(1.0, 30.0);

        const double K = one_photon_K(m, b.q1, 0.0).real();
        const double power = log_uni(1e3, 1e5) / K; // Re K |Omega_2|^2 in 1e3..1e5
        b.Omega_2 = {std::sqrt(power), 0.0};

        const double width = gamma_hom(m, b) + m.diffusion() * k * k;
        b.Delta = uni(-5.0, 5.0) * width;

        const Complex general = chi31_general(m, b, 0.0, k_perp);
        const Complex dicke = chi31_dicke(k_perp, 0.0, m, b);
        const double err = std::abs(general - dicke) / std::abs(dicke);

        nlohmann::json c;
        c["gamma"] = m.gamma;
        c["v_th"] = m.v_th;
        c["k"] = k;
        c["Delta"] = b.Delta;
        c["window_width"] = width;
        c["relative_error"] = err;
        res.cases.push_back(c);
        if (err > res.worst_error) {
            res.worst_error = err;
            res.detail = "worst draw: gamma/(v_th k) = " +
                         format_sci(m.gamma / (m.v_th * k)) +
                         ", Delta/width = " + format_sci(b.Delta / width) +
                         ", relative error " + format_sci(err);
        }
    }
    res.passed = res.worst_error <= tol;
    return res;
}

SuiteResult suite_ramsey_fd_vs_analytic(double tol) {
    SuiteResult res;
    res.name = "ramsey-fd-vs-analytic";
    res.tolerance = tol;
    res.tolerance_kind = "relative-error";

    RamseyParams p;
    p.Gamma = 100.0;
    p.K_pow = 2e3;
    p.D = 1e-3;
    const double a = 1e-4;
    const double drive = 1.0;

    res.worst_error = 0.0;
    for (const auto dim : {RamseyGeometry::Dim::sheet_1d, RamseyGeometry::Dim::cylinder_2d}) {
        RamseyGeometry geom;
        geom.a = a;
        geom.dim = dim;
        const char* label =
            (dim == RamseyGeometry::Dim::sheet_1d) ? "sheet-1d" : "cylinder-2d";
        for (int i = 0; i < 101; ++i) {
            const double delta = -1e4 + 2e4 * i / 100.0;
            const Complex analytic = s_correction(delta, geom, p);
            const Complex fd = fd_oracle(delta, geom, p, drive);
            const double err = std::abs(analytic - fd) / std::abs(analytic);
            if (err > res.worst_error) {
                res.worst_error = err;
                res.detail = std::string("worst case: ") + label + " at Delta = " +
                             format_sci(delta) + ", relative error " + format_sci(err);
            }
            if (i % 20 == 0) {
                nlohmann::json c;
                c["geometry"] = label;
                c["Delta"] = delta;
                c["relative_error"] = err;
                res.cases.push_back(c);
            }
        }
    }
    res.passed = res.worst_error <= tol;
    return res;
}

SuiteResult suite_mc_vs_general(double tol_sigma) {
    SuiteResult res;
    res.name = "mc-vs-general";
    res.tolerance = tol_sigma;
    res.tolerance_kind = "sigma-multiple";

    MediumParams m;
    m.v_th = 1.6;
    m.gamma = 1.0;
    m.Gamma_d = 8.0;
    m.Gamma_21 = 0.02;
    BeamParams b;
    b.q1 = 1.875;
    b.Omega_2 = {std::sqrt(0.5), 0.0};
    const std::array<double, 3> k{1.0, 0.0, 0.0};
    const double ghom =
        m.Gamma_21 + one_photon_K(m, b.q1, 0.0).real() * std::norm(b.Omega_2);

    McConfig cfg;
    cfg.n_atoms = 10000;
    cfg.dt = 0.011;
    cfg.t_total = 4.2 * 5.0 / ghom;
    cfg.seed = 20260815u;

    res.worst_error = 0.0;
    for (const double delta : {0.0, 0.8, -2.4}) {
        b.Delta = delta;
        const McResult mc = simulate_chi(k, 0.0, m, b, cfg);
        const Complex ref = chi31_general(m, b, 0.0, k);
        const double sigma_multiple = std::abs(mc.chi - ref) / mc.stderr_chi;

        nlohmann::json c;
        c["Delta"] = delta;
        c["chi_mc"] = {mc.chi.real(), mc.chi.imag()};
        c["chi_general"] = {ref.real(), ref.imag()};
        c["abs_error"] = std::abs(mc.chi - ref);
        c["jackknife_sigma"] = mc.stderr_chi;
        c["sigma_multiple"] = sigma_multiple;
        res.cases.push_back(c);
        if (sigma_multiple > res.worst_error) {
            res.worst_error = sigma_multiple;
            res.detail = "worst detuning " + format_sci(delta) + ": |error| = " +
                         format_sci(std::abs(mc.chi - ref)) + " at jackknife sigma " +
                         format_sci(mc.stderr_chi) + " (" +
                         format_sci(sigma_multiple) + " sigma)";
        }
    }
    res.passed = res.worst_error <= tol_sigma;
    return res;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"dicke-vs-general", "ramsey-fd-vs-analytic", "mc-vs-general"};
}

SuiteResult run_verify_suite(const std::string& name,
                             std::optional<double> tolerance_override) {
    if (name == "dicke-vs-general")
        return suite_dicke_vs_general(tolerance_override.value_or(0.05));
    if (name == "ramsey-fd-vs-analytic")
        return suite_ramsey_fd_vs_analytic(tolerance_override.value_or(1e-4));
    if (name == "mc-vs-general")
        return suite_mc_vs_general(tolerance_override.value_or(3.0));
    throw ValidationError("verify: unknown suite '" + name + "'");
}

nlohmann::json verify_report(const std::vector<SuiteResult>& results) {
    nlohmann::json rep;
    rep["suites"] = nlohmann::json::array();
    bool all = true;
    for (const SuiteResult& r : results) {
        nlohmann::json j;
        j["name"] = r.name;
        j["passed"] = r.passed;
        j["tolerance"] = r.tolerance;
        j["tolerance_kind"] = r.tolerance_kind;
        j["worst_error"] = r.worst_error;
        j["detail"] = r.detail;
        j["cases"] = r.cases;
        rep["suites"].push_back(j);
        all = all && r.passed;
    }
    rep["all_passed"] = all;
    return rep;
}

} // namespace eitmotion
