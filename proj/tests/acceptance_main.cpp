// Acceptance gate for the thermal-motion EIT library. Each numbered check
// prints exactly one [PASS]/[FAIL] line with the measured numbers; the binary
// exits nonzero if any check fails.
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "eitmotion/dicke_filter.hpp"
#include "eitmotion/diffusion_dynamics.hpp"
#include "eitmotion/field2d.hpp"
#include "eitmotion/kinetic_mc.hpp"
#include "eitmotion/params.hpp"
#include "eitmotion/ramsey.hpp"
#include "eitmotion/susceptibility.hpp"
#include "eitmotion/velocity_integrals.hpp"
#include "eitmotion/verify.hpp"

using namespace eitmotion;

namespace {

int g_failures = 0;

void record(int num, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", num, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---- shared media ----------------------------------------------------------

// hot-vapor benchmark: widths measured against the closed-form crossover curve
MediumParams width_medium(double gamma) {
    MediumParams m;
    m.v_th = 170.0;
    m.gamma = gamma;
    m.Gamma_d = 1.0e8;
    m.Gamma_21 = 1.0e3;
    return m;
}

BeamParams width_beams() {
    BeamParams b;
    b.q1 = 7.4e6;
    b.Omega_2 = std::sqrt(4.0e9); // |Omega_2|^2 / Gamma_d = 40
    return b;
}

// collision-dominated (diffusive) vapor shared by the image/evolution checks
MediumParams dicke_medium() {
    MediumParams m;
    m.v_th = 170.0;
    m.gamma = 1.7e7;
    m.Gamma_d = 1.0e8;
    m.Gamma_21 = 1.0e3;
    return m;
}

BeamParams dicke_beams(const MediumParams& m) {
    BeamParams b;
    b.q1 = 7.4e6;
    b.Omega_2 = std::sqrt(3.0e3 / one_photon_K(m, b.q1, 0.0).real());
    return b;
}

ComplexField2D blank_field(int n, double d) {
    ComplexField2D f;
    f.nx = f.ny = n;
    f.dx = f.dy = d;
    f.values.assign(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
    return f;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- criteria 1 & 2: width-vs-k curves and their asymptotic exponents ------

struct WidthPoint {
    double gamma, k, motional; // measured width minus the homogeneous floor
};

void criteria_width_curves() {
    const auto t0 = std::chrono::steady_clock::now();
    const BeamParams b = width_beams();
    const std::vector<double> gammas = {1.6e4, 1.6e5, 1.6e6};
    const int n_k = 20;

    std::vector<WidthPoint> pts;
    double worst_rel = 0.0, worst_k = 0.0, worst_gamma = 0.0;
    for (const double gamma : gammas) {
        const MediumParams m = width_medium(gamma);
        // homogeneous floor measured the same way as the widths themselves,
        // from the k = 0 spectrum, so its lineshape bias cancels on subtraction
        const double floor_pred = 2.0 * gamma_hom(m, b);
        std::vector<double> fgrid(801);
        for (int j = 0; j < 801; ++j)
            fgrid[static_cast<size_t>(j)] =
                -4.0 * floor_pred + 8.0 * floor_pred * j / 800.0;
        const double floor =
            fwhm(transmission_scan(fgrid, {0.0, 0.0, 0.0}, m, b)).width;
        for (int i = 0; i < n_k; ++i) {
            const double k =
                5.0e1 * std::pow(3.0e5 / 5.0e1, static_cast<double>(i) / (n_k - 1));
            const double analytic = fwhm_analytic(k, m);
            const double predicted = analytic + floor;
            std::vector<double> grid(801);
            for (int j = 0; j < 801; ++j)
                grid[static_cast<size_t>(j)] =
                    -4.0 * predicted + 8.0 * predicted * j / 800.0;
            const Spectrum t = transmission_scan(grid, {k, 0.0, 0.0}, m, b);
            const double measured = fwhm(t).width;
            const double motional = measured - floor;
            const double rel = std::abs(motional - analytic) / analytic;
            if (rel > worst_rel) {
                worst_rel = rel;
                worst_k = k;
                worst_gamma = gamma;
            }
            pts.push_back({gamma, k, motional});
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    record(1, "floor-subtracted widths track the crossover formula",
           worst_rel <= 0.10 && elapsed < 300.0,
           "worst relative deviation " + fmt(worst_rel) + " (gate 0.10) at k = " +
               fmt(worst_k) + " 1/m, gamma = " + fmt(worst_gamma) + " 1/s over 60 " +
               "(k, gamma) points; " + fmt(elapsed) + " s (gate 300 s)");

    // exponents: ballistic branch (v_th k / gamma >> 1) linear in k, diffusive
    // branch (v_th k / gamma << 1) quadratic in k
    std::vector<double> lx1, ly1, lx2, ly2;
    for (const WidthPoint& p : pts) {
        const double eta = 170.0 * p.k / p.gamma;
        if (p.gamma == 1.6e4 && eta > 10.0) {
            lx1.push_back(std::log(p.k));
            ly1.push_back(std::log(p.motional));
        }
        if (p.gamma == 1.6e6 && eta < 0.1) {
            lx2.push_back(std::log(p.k));
            ly2.push_back(std::log(p.motional));
        }
    }
    const double slope1 = least_squares_slope(lx1, ly1);
    const double slope2 = least_squares_slope(lx2, ly2);
    record(2, "width-vs-k exponents in the two regimes",
           std::abs(slope1 - 1.0) <= 0.1 && std::abs(slope2 - 2.0) <= 0.1,
           "ballistic slope " + fmt(slope1) + " over " + fmt((double)lx1.size()) +
               " points (gate 1.0 +- 0.1), diffusive slope " + fmt(slope2) +
               " over " + fmt((double)lx2.size()) + " points (gate 2.0 +- 0.1)");
}

// ---- criterion 3: general vs diffusive-limit susceptibility ----------------

void criterion_dicke_equivalence() {
    const SuiteResult r = run_verify_suite("dicke-vs-general", std::nullopt);
    record(3, "velocity-averaged and diffusive-limit susceptibilities agree",
           r.passed, "worst |chi_general - chi_dicke|/|chi_dicke| = " +
                         fmt(r.worst_error) + " (gate " + fmt(r.tolerance) +
                         ") over 50 random draws with gamma >= 100 v_th |dq + k|");
}

// ---- criterion 4: finite-beam (Ramsey) spectra ------------------------------

// width of the absorption dip against the far-wing level, by interpolated
// half-depth crossings
double dip_fwhm(const std::vector<double>& grid, const std::vector<double>& re_p,
                double* depth_out) {
    const double far = re_p.front();
    const size_t c = re_p.size() / 2;
    const double depth = far - re_p[c];
    if (depth_out)
        *depth_out = depth;
    const double half = far - 0.5 * depth;
    double lo = 0.0, hi = 0.0;
    for (size_t i = c; i > 0; --i)
        if (re_p[i - 1] >= half && re_p[i] < half) {
            lo = grid[i - 1] + (grid[i] - grid[i - 1]) * (half - re_p[i - 1]) /
                                   (re_p[i] - re_p[i - 1]);
            break;
        }
    for (size_t i = c; i + 1 < re_p.size(); ++i)
        if (re_p[i] < half && re_p[i + 1] >= half) {
            hi = grid[i] + (grid[i + 1] - grid[i]) * (half - re_p[i]) /
                               (re_p[i + 1] - re_p[i]);
            break;
        }
    return hi - lo;
}

void criterion_ramsey() {
    const SuiteResult r = run_verify_suite("ramsey-fd-vs-analytic", std::nullopt);

    RamseyParams p;
    p.Gamma = 100.0;
    p.K_pow = 2.0e3;
    p.D = 1.0e-3;
    std::vector<double> grid(8001);
    for (int i = 0; i < 8001; ++i)
        grid[static_cast<size_t>(i)] = -4.0e4 + 8.0e4 * i / 8000.0;

    RamseyGeometry sheet;
    sheet.a = 1.0e-4;
    sheet.dim = RamseyGeometry::Dim::sheet_1d;
    RamseyGeometry cyl = sheet;
    cyl.dim = RamseyGeometry::Dim::cylinder_2d;

    const double K = 1.0e-8;
    const RamseySpectra ss = power_spectrum(grid, sheet, p, K);
    const RamseySpectra cs = power_spectrum(grid, cyl, p, K);
    std::vector<double> re_s, re_c;
    for (const Complex& v : ss.absorption.values)
        re_s.push_back(v.real());
    for (const Complex& v : cs.absorption.values)
        re_c.push_back(v.real());

    double depth_s = 0.0, depth_c = 0.0;
    const double w_s = dip_fwhm(grid, re_s, &depth_s);
    const double w_c = dip_fwhm(grid, re_c, &depth_c);

    const bool widths_ok = w_s > 200.0 && w_s < 4200.0 && w_c > 200.0 && w_c < 4200.0;
    record(4, "finite-beam return-narrowed spectra match the diffusion oracle",
           r.passed && widths_ok && depth_c < depth_s,
           "worst oracle deviation " + fmt(r.worst_error) + " (gate " +
               fmt(r.tolerance) + "); dip widths sheet " + fmt(w_s) + ", cylinder " +
               fmt(w_c) + " 1/s (gate inside (200, 4200)); dip depths sheet " +
               fmt(depth_s) + " > cylinder " + fmt(depth_c));
}

// ---- criterion 5: field-free storage is a diffusion semigroup --------------

void criterion_storage() {
    const MediumParams m = dicke_medium();
    const double D = m.diffusion();
    const int n = 256;
    const double dx = 7.0e-4, sigma0 = 5.0e-3, t = 2.9e-3;

    ComplexField2D f = blank_field(n, dx);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double x = (ix - n / 2) * dx, y = (iy - n / 2) * dx;
            f.at(ix, iy) = std::exp(-0.5 * (x * x + y * y) / (sigma0 * sigma0));
        }

    StoredCoherence st;
    st.field = f;
    const StoredCoherence out = evolve_stored(st, t, m);
    // amplitude-weighted second moment: the Gaussian width parameter sigma^2
    auto variance_x = [n](const ComplexField2D& g) {
        double num = 0.0, den = 0.0;
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const double x = (ix - n / 2) * g.dx;
                const double w = std::abs(g.at(ix, iy));
                num += w * x * x;
                den += w;
            }
        return num / den;
    };
    const double growth = variance_x(out.field) - variance_x(f);
    const double rel_var = std::abs(growth - 2.0 * D * t) / (2.0 * D * t);

    // energy must fall strictly under pure diffusion (no decoherence term)
    MediumParams m0 = m;
    m0.Gamma_21 = 0.0;
    bool energy_strict = true;
    StoredCoherence s2;
    s2.field = f;
    double prev = s2.field.energy();
    for (int step = 0; step < 5; ++step) {
        s2 = evolve_stored(s2, 5.0e-4, m0);
        const double e = s2.field.energy();
        if (!(e < prev))
            energy_strict = false;
        prev = e;
    }

    // a mode that is odd across x = 0 keeps its null plane
    ComplexField2D odd = blank_field(n, dx);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double x = (ix - n / 2) * dx, y = (iy - n / 2) * dx;
            odd.at(ix, iy) =
                x * std::exp(-0.5 * (x * x + y * y) / (sigma0 * sigma0));
        }
    StoredCoherence so;
    so.field = odd;
    const StoredCoherence oo = evolve_stored(so, t, m);
    double peak = 0.0, null_plane = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix)
            peak = std::max(peak, std::abs(oo.field.at(ix, iy)));
        null_plane = std::max(null_plane, std::abs(oo.field.at(n / 2, iy)));
    }

    record(5, "stored coherence spreads as a diffusion semigroup",
           rel_var <= 5.0e-3 && energy_strict && null_plane <= 1.0e-13 * peak,
           "variance growth off by " + fmt(rel_var) + " relative (gate 5e-3); "
           "energy strictly decreasing over 5 steps at zero decoherence: " +
               std::string(energy_strict ? "yes" : "NO") +
               "; odd-mode null plane residual " + fmt(null_plane / peak) +
               " of peak (gate 1e-13)");
}

// ---- criterion 6: slow-light complex diffusion stays Gaussian --------------

void criterion_slow_light() {
    // strong light-matter coupling so the group velocity is genuinely slow
    // and diffusion (not diffraction over a near-c path) shapes the envelope
    MediumParams m = dicke_medium();
    const BeamParams b = dicke_beams(m);
    m.coupling = 40.0 / one_photon_K(m, b.q1, 0.0).real();
    const SlowLightParams slp = group_velocity(m, b);

    const int n = 256;
    const double dx = 7.0e-4, sigma0 = 5.0e-3;
    ComplexField2D f = blank_field(n, dx);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double x = (ix - n / 2) * dx, y = (iy - n / 2) * dx;
            f.at(ix, iy) = std::exp(-0.5 * (x * x + y * y) / (sigma0 * sigma0));
        }

    const double t = 2.0e-3;
    const SlowLightStep out = evolve_slow_light(f, t, slp);

    // self-similar solution: sigma^2 -> sigma0^2 + 2 (D + i V_g/(2 q1)) t,
    // amplitude scaled by sigma0^2 / sigma^2 in two dimensions
    const Complex s2 = sigma0 * sigma0 + 2.0 * Complex(slp.D, slp.V_g / (2.0 * slp.q1)) * t;
    const Complex amp = sigma0 * sigma0 / s2;
    double worst = 0.0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double x = (ix - n / 2) * dx, y = (iy - n / 2) * dx;
            const Complex model = amp * std::exp(-0.5 * (x * x + y * y) / s2);
            worst = std::max(worst, std::abs(out.field.at(ix, iy) - model));
        }
    const double residual = worst / std::abs(amp);

    bool energy_monotone = true;
    ComplexField2D g = f;
    double prev = g.energy();
    for (int step = 0; step < 5; ++step) {
        g = evolve_slow_light(g, 5.0e-4, slp).field;
        const double e = g.energy();
        if (!(e < prev))
            energy_monotone = false;
        prev = e;
    }

    record(6, "slow-light envelope stays Gaussian under complex diffusion",
           residual < 1.0e-6 && energy_monotone,
           "worst deviation from the self-similar Gaussian " + fmt(residual) +
               " of peak (gate 1e-6); envelope energy strictly decreasing over 5 "
               "steps with D = " + fmt(slp.D) + " m^2/s: " +
               std::string(energy_monotone ? "yes" : "NO"));
}

// ---- criterion 7: spatial-frequency filter behaviors -----------------------

void criterion_filter() {
    const MediumParams m = dicke_medium();
    const BeamParams b = dicke_beams(m);

    // (a) a single-|k| annular mode propagates without changing shape
    MediumParams weak = m;
    weak.coupling = 1.0 / one_photon_K(m, b.q1, 0.0).real();
    const int n = 256;
    const double dx = 6.8e-4, k0 = 1.5e3;
    ComplexField2D ring = blank_field(n, dx);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double x = (ix - n / 2) * dx, y = (iy - n / 2) * dx;
            ring.at(ix, iy) = std::cyl_bessel_j(0, k0 * std::hypot(x, y));
        }
    FilterParams fp;
    fp.medium = weak;
    fp.beams = b;
    fp.include_diffraction = true;
    fp.propagation_length = 0.4;
    const FilterResult fr = apply_filter(ring, fp);
    Complex inner = 0.0;
    double n_in = 0.0, n_out = 0.0;
    for (size_t i = 0; i < ring.values.size(); ++i) {
        inner += fr.field.values[i] * std::conj(ring.values[i]);
        n_in += std::norm(ring.values[i]);
        n_out += std::norm(fr.field.values[i]);
    }
    const double corr = std::abs(inner) / std::sqrt(n_in * n_out);

    // (b) opposite-phase line pair: the dark midline survives propagation
    MediumParams strong = m;
    strong.coupling = 40.0 / one_photon_K(m, b.q1, 0.0).real();
    const int nl = 64;
    const double dxl = 6.8e-4, w = 1.5 * dxl, sep = 4.0 * dxl;
    ComplexField2D lines = blank_field(nl, dxl);
    for (int iy = 0; iy < nl; ++iy)
        for (int ix = 0; ix < nl; ++ix) {
            const double x = (ix - nl / 2) * dxl;
            lines.at(ix, iy) = std::exp(-0.5 * std::pow((x - sep / 2) / w, 2)) -
                               std::exp(-0.5 * std::pow((x + sep / 2) / w, 2));
        }
    FilterParams fpl;
    fpl.medium = strong;
    fpl.beams = b;
    fpl.include_diffraction = false;
    fpl.propagation_length = 0.4;
    const FilterResult lr = apply_filter(lines, fpl);
    double peak_int = 0.0;
    for (const Complex& v : lr.field.values)
        peak_int = std::max(peak_int, std::norm(v));
    const double mid_int = std::norm(lr.field.at(nl / 2, nl / 2));

    // (c) the window half-width in k is sqrt(gamma_hom / D)
    const double ghom = gamma_hom(m, b);
    const double D = m.diffusion();
    const double l0 = window_L({0.0, 0.0, 0.0}, 0.0, m, b).real();
    double lo = 0.0, hi = 1.0e5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (window_L({mid, 0.0, 0.0}, 0.0, m, b).real() > 0.5 * l0)
            lo = mid;
        else
            hi = mid;
    }
    const double k_half = 0.5 * (lo + hi);
    const double k_expected = std::sqrt(ghom / D);
    const double rel_k = std::abs(k_half - k_expected) / k_expected;

    record(7, "spatial-frequency filter behaviors",
           corr >= 0.999 && mid_int < 0.01 * peak_int && rel_k <= 0.01,
           "annular-mode shape correlation " + fmt(corr) + " (gate 0.999); "
           "midline intensity " + fmt(mid_int / peak_int) +
               " of peak (gate 0.01); window half-width " + fmt(k_half) +
               " vs sqrt(gamma_hom/D) = " + fmt(k_expected) + " 1/m, off by " +
               fmt(rel_k) + " (gate 0.01)");
}

// ---- criterion 8: kinetic Monte-Carlo oracle --------------------------------

void criterion_kinetic_mc() {
    // compressed units with v_th |k| / gamma = 1.6
    MediumParams m;
    m.v_th = 1.6;
    m.gamma = 1.0;
    m.Gamma_d = 8.0;
    m.Gamma_21 = 0.02;
    BeamParams b;
    b.q1 = 1.875;
    b.Omega_2 = std::sqrt(0.5);
    const std::array<double, 3> k = {1.0, 0.0, 0.0};

    const double ghom = gamma_hom(m, b);
    McConfig cfg;
    cfg.n_atoms = 100000;
    cfg.dt = 0.011;
    cfg.t_total = 4.2 * 5.0 / ghom;
    cfg.seed = 20260815;

    const std::vector<double> detunings = {0.0, 0.8, -0.8, 2.4, -2.4};
    double worst_sigmas = 0.0, worst_delta = 0.0, worst_ks = 0.0;
    bool ok = true;
    for (const double delta : detunings) {
        BeamParams bd = b;
        bd.Delta = delta;
        const McResult r = simulate_chi(k, 0.0, m, bd, cfg);
        const Complex ref = chi31_general(m, bd, 0.0, k);
        const double sigmas = std::abs(r.chi - ref) / r.stderr_chi;
        if (sigmas > worst_sigmas) {
            worst_sigmas = sigmas;
            worst_delta = delta;
        }
        worst_ks = std::max(worst_ks, r.ks_vz);
        if (sigmas > 3.0)
            ok = false;
    }
    const double ks_gate = 1.628 / std::sqrt(100000.0); // alpha = 0.01
    if (worst_ks >= ks_gate)
        ok = false;

    record(8, "kinetic Monte-Carlo susceptibility matches the velocity average",
           ok,
           "worst deviation " + fmt(worst_sigmas) +
               " jackknife sigma (gate 3) at Delta = " + fmt(worst_delta) +
               "; worst velocity-marginal KS distance " + fmt(worst_ks) +
               " (gate " + fmt(ks_gate) + ") at 100000 atoms");
}

} // namespace

int main() {
    try {
        criteria_width_curves();
        criterion_dicke_equivalence();
        criterion_ramsey();
        criterion_storage();
        criterion_slow_light();
        criterion_filter();
        criterion_kinetic_mc();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 1;
    }
    if (g_failures > 0) {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
