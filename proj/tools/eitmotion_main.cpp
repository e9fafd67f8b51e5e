#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eitmotion/cf64.hpp"
#include "eitmotion/config.hpp"
#include "eitmotion/dicke_filter.hpp"
#include "eitmotion/diffusion_dynamics.hpp"
#include "eitmotion/errors.hpp"
#include "eitmotion/kinetic_mc.hpp"
#include "eitmotion/ramsey.hpp"
#include "eitmotion/susceptibility.hpp"
#include "eitmotion/velocity_integrals.hpp"
#include "eitmotion/verify.hpp"

namespace {

using namespace eitmotion;

// 17 significant digits, locale-independent, enough to reproduce any double
std::string fmt17(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string fmt_vec3(const std::array<double, 3>& v) {
    return "[" + fmt17(v[0]) + ", " + fmt17(v[1]) + ", " + fmt17(v[2]) + "]";
}

std::string fmt_complex(const Complex& v) {
    return "[" + fmt17(v.real()) + ", " + fmt17(v.imag()) + "]";
}

// all text outputs go through temp-file-plus-rename like the binary ones
void atomic_write_text(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp =
        target.parent_path() /
        (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ValidationError("cannot create '" + tmp.string() + "'");
        out << content;
        if (!out)
            throw ValidationError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ValidationError("atomic rename to '" + path + "' failed: " + ec.message());
    }
}

void echo_physics(std::ostringstream& os, const MediumParams& m, const BeamParams& b) {
    os << "# medium.v_th = " << fmt17(m.v_th) << "\n";
    os << "# medium.gamma = " << fmt17(m.gamma) << "\n";
    os << "# medium.Gamma_d = " << fmt17(m.Gamma_d) << "\n";
    os << "# medium.Gamma_21 = " << fmt17(m.Gamma_21) << "\n";
    os << "# medium.omega_21 = " << fmt17(m.omega_21) << "\n";
    os << "# medium.coupling = " << fmt17(m.coupling) << "\n";
    os << "# beams.q1 = " << fmt17(b.q1) << "\n";
    os << "# beams.delta_q = " << fmt_vec3(b.delta_q) << "\n";
    os << "# beams.Omega_2 = " << fmt_complex(b.Omega_2) << "\n";
    os << "# beams.Delta_1 = " << fmt17(b.Delta_1) << "\n";
    os << "# beams.Delta = " << fmt17(b.Delta) << "\n";
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

int cmd_spectrum(const RunConfig& rc) {
    if (!rc.spectrum)
        throw ValidationError("spectrum: required, no default");
    const SpectrumConfig& sc = *rc.spectrum;
    const MediumParams& m = rc.need_medium();
    const BeamParams& b = rc.need_beams();
    const std::vector<double> grid = linear_grid(sc.delta_min, sc.delta_max, sc.n_points);

    std::ostringstream os;
    os << "# tool = eitmotion spectrum\n";
    os << "# engine = " << sc.engine << "\n";
    echo_physics(os, m, b);
    os << "# spectrum.k_perp = " << fmt_vec3(sc.k_perp) << "\n";
    os << "# spectrum.omega = " << fmt17(sc.omega) << "\n";

    if (sc.engine == "general" || sc.engine == "dicke") {
        Spectrum chi;
        chi.axis = grid;
        chi.values.resize(grid.size());
        BeamParams bd = b;
        for (size_t i = 0; i < grid.size(); ++i) {
            bd.Delta = grid[i];
            chi.values[i] = (sc.engine == "general")
                                ? chi31_general(m, bd, sc.omega, sc.k_perp)
                                : chi31_dicke(sc.k_perp, sc.omega, m, bd);
        }
        const Spectrum trans = transmission_from_chi(chi);
        os << "delta,re_chi,im_chi,transmission_normalized\n";
        for (size_t i = 0; i < grid.size(); ++i)
            os << fmt17(grid[i]) << "," << fmt17(chi.values[i].real()) << ","
               << fmt17(chi.values[i].imag()) << "," << fmt17(trans.values[i].real())
               << "\n";
    } else {
        RamseyGeometry geom;
        geom.a = sc.radius;
        geom.dim = (sc.engine == "ramsey-1d") ? RamseyGeometry::Dim::sheet_1d
                                              : RamseyGeometry::Dim::cylinder_2d;
        const double W = std::norm(b.Omega_2);
        const Complex Kc = one_photon_K(m, b.q1, b.Delta_1);
        const double dqx = b.delta_q[0] + sc.k_perp[0];
        const double dqy = b.delta_q[1] + sc.k_perp[1];
        const double dqz = b.delta_q[2] + sc.k_perp[2];
        RamseyParams p;
        p.D = m.diffusion();
        p.Gamma = m.Gamma_21 + p.D * (dqx * dqx + dqy * dqy + dqz * dqz);
        p.K_pow = Kc.real() * W;
        os << "# spectrum.radius = " << fmt17(sc.radius) << "\n";
        os << "# derived.K = " << fmt17(Kc.real()) << "\n";
        os << "# derived.K_pow = " << fmt17(p.K_pow) << "\n";
        os << "# derived.Gamma = " << fmt17(p.Gamma) << "\n";
        os << "# derived.D = " << fmt17(p.D) << "\n";
        const RamseySpectra sp = power_spectrum(grid, geom, p, Kc.real());
        os << "delta,re_P,im_P,transmission_normalized\n";
        for (size_t i = 0; i < grid.size(); ++i)
            os << fmt17(grid[i]) << "," << fmt17(sp.absorption.values[i].real()) << ","
               << fmt17(sp.absorption.values[i].imag()) << ","
               << fmt17(sp.transmission.values[i].real()) << "\n";
    }
    atomic_write_text(sc.output, os.str());
    return 0;
}

int cmd_fwhm_scan(const RunConfig& rc) {
    if (!rc.fwhm_scan)
        throw ValidationError("fwhm_scan: required, no default");
    const FwhmScanConfig& fc = *rc.fwhm_scan;
    const MediumParams& m = rc.need_medium();
    const BeamParams& b = rc.need_beams();

    std::ostringstream os, warn;
    os << "# tool = eitmotion fwhm-scan\n";
    echo_physics(os, m, b);
    int measured = 0, failed = 0;
    std::ostringstream rows;
    std::ostringstream floors;
    for (const double g : fc.gammas) {
        MediumParams mg = m;
        mg.gamma = g;
        const double floor = 2.0 * gamma_hom(mg, b);
        floors << "# floor[gamma = " << fmt17(g) << "] = " << fmt17(floor) << "\n";
        for (int i = 0; i < fc.n_k; ++i) {
            const double k =
                fc.k_min * std::pow(fc.k_max / fc.k_min,
                                    static_cast<double>(i) / (fc.n_k - 1));
            const double analytic = fwhm_analytic(k, mg);
            const double predicted = analytic + floor;
            double width = std::numeric_limits<double>::quiet_NaN();
            try {
                const std::vector<double> grid = linear_grid(
                    -0.5 * fc.span_factor * predicted, 0.5 * fc.span_factor * predicted,
                    fc.n_delta);
                const Spectrum t = transmission_scan(grid, {k, 0.0, 0.0}, mg, b);
                width = fwhm(t).width;
            } catch (const ValidationError& e) {
                warn << "k = " << fmt17(k) << ", gamma = " << fmt17(g) << ": "
                     << e.what() << "\n";
                ++failed;
            }
            ++measured;
            rows << fmt17(k) << "," << fmt17(g) << "," << fmt17(width) << ","
                 << fmt17(analytic) << "\n";
        }
    }
    os << floors.str();
    os << "k,gamma,fwhm_measured,fwhm_analytic\n";
    os << rows.str();
    atomic_write_text(fc.output, os.str());
    if (failed > 0)
        atomic_write_text(fc.output + ".warnings", warn.str());
    if (failed > 0.05 * measured) {
        std::cerr << "fwhm-scan: " << failed << " of " << measured
                  << " widths could not be measured\n";
        return 3;
    }
    return 0;
}

int cmd_filter_image(const RunConfig& rc) {
    if (!rc.filter_image)
        throw ValidationError("filter_image: required, no default");
    const FilterImageConfig& fc = *rc.filter_image;
    FilterParams fp;
    fp.medium = rc.need_medium();
    fp.beams = rc.need_beams();
    fp.include_diffraction = fc.include_diffraction;
    fp.propagation_length = fc.propagation_length;

    const Cf64File in = read_cf64(fc.input);
    const FilterResult r = apply_filter(in.field, fp);
    nlohmann::json extra = in.extra;
    extra["propagation_length"] = fc.propagation_length;
    extra["include_diffraction"] = fc.include_diffraction;
    extra["edge_energy_fraction"] = r.edge_energy_fraction;
    extra["aliasing_warning"] = r.aliasing_warning;
    if (r.aliasing_warning)
        std::cerr << "filter-image: warning: " << fmt17(100.0 * r.edge_energy_fraction)
                  << "% of the input spectral energy sits in the outer 10% of "
                     "k-space; refine the grid\n";
    write_cf64(fc.output, r.field, in.unit, extra);
    if (!fc.preview_pgm.empty())
        write_pgm_magnitude(fc.preview_pgm, r.field);
    return 0;
}

int cmd_evolve(const RunConfig& rc) {
    if (!rc.evolve)
        throw ValidationError("evolve: required, no default");
    const EvolveConfig& ec = *rc.evolve;
    const MediumParams& m = rc.need_medium();
    const Cf64File in = read_cf64(ec.input);
    const double t0 = in.extra.contains("t") ? in.extra["t"].get<double>() : 0.0;

    nlohmann::json extra = in.extra;
    if (ec.mode == "store") {
        StoredCoherence st;
        st.field = in.field;
        st.t = t0;
        const StoredCoherence out = evolve_stored(st, ec.t, m);
        const Complex applied =
            std::exp(Complex(-m.Gamma_21 * ec.t, -m.omega_21 * ec.t));
        extra["t"] = out.t;
        extra["mode"] = "store";
        extra["carrier"] = {applied.real(), applied.imag()};
        extra["carrier_applied"] = true; // factor already multiplied into the field
        write_cf64(ec.output, out.field, in.unit, extra);
    } else {
        const BeamParams& b = rc.need_beams();
        const SlowLightParams slp = group_velocity(m, b);
        const SlowLightStep out = evolve_slow_light(in.field, ec.t, slp);
        extra["t"] = t0 + ec.t;
        extra["mode"] = "slowlight";
        extra["carrier"] = {out.carrier.real(), out.carrier.imag()};
        extra["carrier_applied"] = false; // envelope only; multiply by carrier
        extra["V_g"] = slp.V_g;
        extra["Gamma_0"] = slp.Gamma_0;
        extra["D"] = slp.D;
        write_cf64(ec.output, out.field, in.unit, extra);
    }
    return 0;
}

int cmd_verify(const RunConfig* rc, bool list_only) {
    if (list_only) {
        for (const std::string& n : verify_suite_names())
            std::cout << n << "\n";
        return 0;
    }
    VerifyConfig vc;
    if (rc && rc->verify)
        vc = *rc->verify;
    std::vector<std::string> names =
        vc.suites.empty() ? verify_suite_names() : vc.suites;

    std::vector<SuiteResult> results;
    for (const std::string& n : names) {
        std::optional<double> tol;
        if (vc.tolerance_overrides.contains(n))
            tol = vc.tolerance_overrides[n].get<double>();
        const SuiteResult r = run_verify_suite(n, tol);
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name
                  << ": worst error " << fmt17(r.worst_error) << " against "
                  << r.tolerance_kind << " gate " << fmt17(r.tolerance) << "\n"
                  << "       " << r.detail << "\n";
        results.push_back(r);
    }
    const nlohmann::json rep = verify_report(results);
    if (!vc.report.empty())
        atomic_write_text(vc.report, rep.dump(2) + "\n");
    else
        std::cout << rep.dump(2) << "\n";
    return rep["all_passed"].get<bool>() ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"probe response of a thermal three-level vapor: spectra, "
                 "transparency filtering, stored/slow light, cross-checks"};
    app.require_subcommand(1);

    std::string cfg_spectrum, cfg_fwhm, cfg_filter, cfg_evolve, cfg_verify;
    bool list_suites = false;

    CLI::App* sp = app.add_subcommand("spectrum", "probe spectrum to CSV");
    sp->add_option("config", cfg_spectrum, "JSON run config")->required();
    CLI::App* fw = app.add_subcommand("fwhm-scan",
                                      "transparency width vs residual wavevector");
    fw->add_option("config", cfg_fwhm, "JSON run config")->required();
    CLI::App* fi = app.add_subcommand("filter-image",
                                      "propagate a complex image through the vapor");
    fi->add_option("config", cfg_filter, "JSON run config")->required();
    CLI::App* ev = app.add_subcommand("evolve", "stored or traveling envelope dynamics");
    ev->add_option("config", cfg_evolve, "JSON run config")->required();
    CLI::App* vf = app.add_subcommand("verify", "built-in dual-route cross checks");
    vf->add_option("config", cfg_verify, "JSON run config");
    vf->add_flag("--list", list_suites, "enumerate suites without running them");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // bad usage is a config error
    }

    try {
        if (sp->parsed())
            return cmd_spectrum(parse_run_config(load_json_file(cfg_spectrum)));
        if (fw->parsed())
            return cmd_fwhm_scan(parse_run_config(load_json_file(cfg_fwhm)));
        if (fi->parsed())
            return cmd_filter_image(parse_run_config(load_json_file(cfg_filter)));
        if (ev->parsed())
            return cmd_evolve(parse_run_config(load_json_file(cfg_evolve)));
        if (vf->parsed()) {
            if (list_suites)
                return cmd_verify(nullptr, true);
            if (cfg_verify.empty())
                throw ValidationError("verify: config required unless --list is given");
            const RunConfig rc = parse_run_config(load_json_file(cfg_verify));
            return cmd_verify(&rc, false);
        }
    } catch (const ConvergenceError& e) {
        std::cerr << "error (convergence): " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error (config): " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error (format): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
