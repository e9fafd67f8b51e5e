#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "eitmotion/errors.hpp"
#include "eitmotion/ramsey.hpp"

using eitmotion::Complex;
using eitmotion::RamseyGeometry;
using eitmotion::RamseyParams;

namespace {

// Warm-cell numbers: Gamma = 100/s residual width, 2000/s power term,
// D = 10 cm^2/s, 0.1 mm beam.
RamseyParams cell_params() { return {100.0, 2000.0, 1.0e-3}; }

RamseyGeometry sheet(double a = 1.0e-4) {
    return {a, RamseyGeometry::Dim::sheet_1d};
}
RamseyGeometry cylinder(double a = 1.0e-4) {
    return {a, RamseyGeometry::Dim::cylinder_2d};
}

double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::abs(want);
}

std::vector<double> linspace(double lo, double hi, size_t n) {
    std::vector<double> g(n);
    for (size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return g;
}

} // namespace

TEST_CASE("healing wavenumbers: frozen values and branch choice") {
    const RamseyParams p = cell_params();

    struct Row {
        double Delta;
        Complex k1, k2;
    };
    // High-precision evaluation of the two square roots.
    const Row table[] = {
        {0.0, {1449.1376746189438423, 0.0}, {316.22776601683792991, 0.0}},
        {500.0,
         {1459.229816460089026, -171.3232536643673171},
         {552.22366454149647855, -452.71511536466201499}},
        {-3200.0,
         {1721.5591540520655803, 929.39008005275358249},
         {1284.8272488386180461, 1245.3036012789058579}},
        {1.0e4,
         {2481.7454702306978143, -2014.7110410703038222},
         {2247.2761276154544635, -2224.915727336725978}},
    };
    for (const Row& r : table) {
        const auto [k1, k2] = eitmotion::k1_k2(r.Delta, p);
        CHECK(rel_err(k1, r.k1) < 1e-14);
        CHECK(rel_err(k2, r.k2) < 1e-14);
    }

    const auto [k10, k20] = eitmotion::k1_k2(0.0, p);
    CHECK(k10.imag() == 0.0);
    CHECK(k20.imag() == 0.0);

    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const auto [k1, k2] = eitmotion::k1_k2(u(rng), p);
        CHECK(k1.real() > 0.0);
        CHECK(k2.real() > 0.0);
    }

    RamseyParams bad = p;
    bad.D = 0.0;
    CHECK_THROWS_AS(eitmotion::k1_k2(0.0, bad), eitmotion::ValidationError);
}

TEST_CASE("beam-escape correction: frozen values, size limits, symmetry") {
    const RamseyParams p = cell_params();

    struct Row {
        double Delta;
        Complex sheet_val, cyl_val;
    };
    const Row table[] = {
        {0.0, {0.59841950412445023565, 0.0}, {0.96135897905574523258, 0.0}},
        {500.0,
         {0.77389912327548421289, -0.079056939990991177318},
         {0.9676973917887871165, 0.00055578632051877010258}},
        {-3200.0,
         {0.82070430345734806928, -0.038730424938914245308},
         {0.96692590783683923213, -0.025348842966975316946}},
        {1.0e4,
         {0.7622960950058285794, 0.12610609225474266509},
         {0.94876172407100075664, 0.068498726873431602635}},
    };
    for (const Row& r : table) {
        CHECK(rel_err(eitmotion::s_correction(r.Delta, sheet(), p), r.sheet_val) < 1e-13);
        CHECK(rel_err(eitmotion::s_correction(r.Delta, cylinder(), p), r.cyl_val) < 1e-13);
    }

    // Wide beam: plane-wave limit, correction vanishes. k1(0) a = 1e4.
    const double a_wide = 1.0e4 / 1449.1376746189438;
    CHECK(std::abs(eitmotion::s_correction(0.0, sheet(a_wide), p)) < 1e-3);
    CHECK(std::abs(eitmotion::s_correction(0.0, cylinder(a_wide), p)) < 1e-3);

    // Needle beam: atoms leave immediately and come back, full correction.
    // The sheet approaches 1 linearly, S - 1 = -(k1/k2) k1 a + O((k1 a)^2),
    // so the deviation at k1 a = 1e-4 is (k1/k2)*1e-4 = 4.6e-4 here.
    const double a_thin = 1.0e-4 / 1449.1376746189438;
    const Complex s_thin = eitmotion::s_correction(0.0, sheet(a_thin), p);
    CHECK(std::abs(s_thin - 1.0) < 5e-4);
    const Complex s_half = eitmotion::s_correction(0.0, sheet(a_thin / 2.0), p);
    CHECK(std::abs(std::abs(s_half - 1.0) - 0.5 * std::abs(s_thin - 1.0)) <
          1e-3 * std::abs(s_thin - 1.0));
    CHECK(std::abs(eitmotion::s_correction(0.0, sheet(1e-4 * a_thin), p) - 1.0) < 1e-6);
    CHECK(std::abs(eitmotion::s_correction(0.0, cylinder(a_thin), p) - 1.0) < 1e-4);

    // Detuning parity and the no-gain bound.
    for (double Delta : {30.0, 500.0, 4.7e3, 6.0e4}) {
        for (const RamseyGeometry& g : {sheet(), cylinder()}) {
            const Complex plus = eitmotion::s_correction(Delta, g, p);
            const Complex minus = eitmotion::s_correction(-Delta, g, p);
            CHECK(std::abs(minus - std::conj(plus)) < 1e-15 * std::abs(plus) + 1e-300);
            const double corr = 1.0 - plus.real();
            CHECK(corr >= 0.0);
            CHECK(corr <= 1.0);
        }
    }
}

TEST_CASE("finite-difference oracle reproduces both closed forms") {
    const RamseyParams p = cell_params();
    const Complex drive(0.8, -0.6);
    for (double Delta : {0.0, 500.0, -500.0, 2357.0, -3200.0, 1.0e4, -1.0e4}) {
        for (const RamseyGeometry& g : {sheet(), cylinder()}) {
            const Complex analytic = eitmotion::s_correction(Delta, g, p);
            const Complex fd = eitmotion::fd_oracle(Delta, g, p, drive);
            CHECK(std::abs(fd - analytic) <= 1e-4 * std::abs(analytic));
        }
    }

    // The equivalent correction is independent of the drive amplitude.
    const Complex s1 = eitmotion::fd_oracle(500.0, sheet(), p, Complex(1.0, 0.0));
    const Complex s2 = eitmotion::fd_oracle(500.0, sheet(), p, Complex(-2.0, 3.0));
    CHECK(std::abs(s1 - s2) < 1e-9);

    // Wide beam: the bulk solution forgets the boundary, correction ~ 1/(k1 a).
    const double a_wide = 2.0;
    const Complex s_wide =
        eitmotion::fd_oracle(0.0, sheet(a_wide), p, drive, 200001);
    CHECK(std::abs(s_wide) < 1.5e-4);

    // A coarse grid on a fast-oscillating exterior trips the Richardson gate.
    CHECK_THROWS_AS(eitmotion::fd_oracle(1.0e5, sheet(), p, drive, 64),
                    eitmotion::ConvergenceError);
    // No exterior decay: domain cannot be truncated.
    RamseyParams open_exterior = p;
    open_exterior.Gamma = 0.0;
    CHECK_THROWS_AS(eitmotion::fd_oracle(0.0, sheet(), open_exterior, drive),
                    eitmotion::ValidationError);
}

TEST_CASE("absorption spectrum: Lorentzian reduction and Ramsey narrowing") {
    const RamseyParams p = cell_params();
    const double K = 9.0e-10;
    const auto grid = linspace(-1.0e4, 1.0e4, 2001);

    // Plane-wave limit via a wide beam: power-broadened Lorentzian of
    // FWHM 2(Gamma + K_pow) = 4200.
    const auto wide = eitmotion::power_spectrum(grid, sheet(2.0), p, K);
    const auto w_wide = eitmotion::fwhm(wide.transmission);
    CHECK(std::abs(w_wide.width - 4200.0) < 0.001 * 4200.0);

    // Finite sheet: central feature narrower than the power-broadened
    // Lorentzian but wider than the non-power-broadened floor 2*Gamma.
    const auto sp = eitmotion::power_spectrum(grid, sheet(), p, K);
    const auto w_sheet = eitmotion::fwhm(sp.transmission);
    CHECK(w_sheet.width < 4200.0 * 0.999);
    CHECK(w_sheet.width > 200.0 * 1.001);

    // Cylinder: weaker narrowing, shallower transparency dip at line centre.
    const auto cp = eitmotion::power_spectrum(grid, cylinder(), p, K);
    const size_t mid = grid.size() / 2;
    CHECK(cp.absorption.values[mid].real() > sp.absorption.values[mid].real());

    // Wings recover the bare one-photon absorption K.
    CHECK(std::abs(sp.absorption.values.front().real() - K) < 0.2 * K);
    CHECK(sp.absorption.values.front().real() < K);

    // Even spectrum on a symmetric grid.
    for (size_t i = 0; i < grid.size(); ++i) {
        const size_t j = grid.size() - 1 - i;
        CHECK(std::abs(sp.absorption.values[i].real() -
                       sp.absorption.values[j].real()) < 1e-13 * K);
    }

    // Cusp: at matched FWHM the sheet peak is sharper at the centre than the
    // Lorentzian, i.e. |T''(0)| exceeds 8/FWHM^2.
    const double h = grid[mid + 1] - grid[mid];
    const double t2 = (sp.transmission.values[mid + 1].real() -
                       2.0 * sp.transmission.values[mid].real() +
                       sp.transmission.values[mid - 1].real()) /
                      (h * h);
    CHECK(std::abs(t2) > 8.0 / (w_sheet.width * w_sheet.width));
}

TEST_CASE("sheet coherence profile: continuity, decay, equation residual") {
    const RamseyParams p = cell_params();
    const RamseyGeometry g = sheet();
    const double Delta = 500.0;
    const Complex drive(1.0, 0.4);
    const auto [k1, k2] = eitmotion::k1_k2(Delta, p);

    // Value continuity across the beam edge (offsets small enough that the
    // genuine slope contributes nothing at this precision).
    const double eps = 1e-12 * g.a;
    const auto edge = eitmotion::coherence_profile_1d(
        {-g.a - eps, -g.a + eps, 0.0, g.a - eps, g.a + eps}, Delta, g, p, drive);
    CHECK(std::abs(edge[3] - edge[4]) < 1e-10 * std::abs(edge[3]));
    CHECK(std::abs(edge[0] - edge[1]) < 1e-10 * std::abs(edge[0]));

    // Slope continuity as the closed-form identity A k1 sinh(k1 a) = -k2 B,
    // with A recovered from the returned centre value and B from the edge.
    const Complex Rp = -drive / (k1 * k1 * p.D);
    const Complex A = edge[2] - Rp;
    const Complex lhs = A * k1 * std::sinh(k1 * g.a);
    const Complex rhs = -k2 * edge[4];
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));

    // Exponential decay outside.
    const double far = g.a + 12.0 / k2.real();
    const auto tails = eitmotion::coherence_profile_1d({far, -far}, Delta, g, p, drive);
    CHECK(std::abs(tails[0]) < 1e-4 * std::abs(edge[4]));
    CHECK(std::abs(tails[1] - tails[0]) < 1e-14 * std::abs(tails[0]) + 1e-300);

    // Central-difference residual of D R'' - (Gamma + K_pow w - i Delta) R = w drive
    // on fine grids that avoid straddling the edge.
    auto residual_scan = [&](double lo, double hi, bool inside) {
        const size_t n = 1025; // dx balances truncation against roundoff
        const double dx = (hi - lo) / double(n - 1);
        std::vector<double> xs(n);
        for (size_t i = 0; i < n; ++i) xs[i] = lo + double(i) * dx;
        const auto R = eitmotion::coherence_profile_1d(xs, Delta, g, p, drive);
        const Complex c = inside ? Complex(p.Gamma + p.K_pow, -Delta)
                                 : Complex(p.Gamma, -Delta);
        const Complex src = inside ? drive : Complex(0.0, 0.0);
        double worst = 0.0;
        for (size_t i = 1; i + 1 < n; ++i) {
            const Complex d2 = (R[i - 1] - 2.0 * R[i] + R[i + 1]) / (dx * dx);
            worst = std::max(worst, std::abs(p.D * d2 - c * R[i] - src));
        }
        return worst / std::abs(drive);
    };
    CHECK(residual_scan(-0.9 * g.a, 0.9 * g.a, true) < 1e-6);
    CHECK(residual_scan(1.05 * g.a, g.a + 3.0 / k2.real(), false) < 1e-6);

    CHECK_THROWS_AS(
        eitmotion::coherence_profile_1d({0.0, 1.0}, Delta, cylinder(), p, drive),
        eitmotion::ValidationError);
}
