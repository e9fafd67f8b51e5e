#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "eitmotion/errors.hpp"
#include "eitmotion/special_functions.hpp"
#include "eitmotion/susceptibility.hpp"
#include "eitmotion/velocity_integrals.hpp"
#include "oracles.hpp"

using eitmotion::BeamParams;
using eitmotion::Complex;
using eitmotion::MediumParams;
using eitmotion::Spectrum;

namespace {

double rel_err(Complex a, Complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

// shared scan geometry: residual two-photon wavevector applied transverse to
// the probe axis, so the residual Doppler samples the full Maxwellian
// independently of the one-photon velocity selection along z
Spectrum window_scan(const MediumParams& m, const BeamParams& b, double k, double span, int n) {
    return eitmotion::transmission_scan(linspace(-span, span, n), {k, 0.0, 0.0}, m, b);
}

MediumParams narrowband_vapor(double gamma) {
    MediumParams m;
    m.v_th = 170.0;
    m.gamma = gamma;
    m.Gamma_d = 1e8;
    m.Gamma_21 = 1e3;
    return m;
}

BeamParams weak_probe(double W) {
    BeamParams b;
    b.q1 = 7.4e6;
    b.Omega_2 = Complex(std::sqrt(W), 0.0);
    return b;
}

double power_floor(const MediumParams& m, const BeamParams& b) {
    const double K = eitmotion::one_photon_K(m, b.q1, b.Delta_1).real();
    return 2.0 * (m.Gamma_21 + K * std::norm(b.Omega_2));
}

} // namespace

TEST_CASE("analytic width formula: limits and crossover") {
    MediumParams m = narrowband_vapor(1.6e6);
    const double a = std::sqrt(2.0 / std::numbers::ln2);

    // diffusive limit: 2 D k^2
    {
        const double k = 1e-3 * m.gamma / m.v_th;
        const double expect = 2.0 * m.diffusion() * k * k;
        CHECK(std::abs(eitmotion::fwhm_analytic(k, m) - expect) < 1e-3 * expect);
    }
    // ballistic limit: 2 sqrt(2 ln 2) v_th k
    {
        const double k = 1e3 * m.gamma / (a * m.v_th);
        const double expect = 2.0 * std::sqrt(2.0 * std::numbers::ln2) * m.v_th * k;
        CHECK(std::abs(eitmotion::fwhm_analytic(k, m) - expect) < 5e-3 * expect);
    }
    // crossover x = 1: H(1) = 1/e exactly
    {
        const double k = m.gamma / (a * m.v_th);
        const double expect = 2.0 * std::numbers::ln2 * m.gamma * std::exp(-1.0);
        CHECK(std::abs(eitmotion::fwhm_analytic(k, m) - expect) < 1e-12 * expect);
        CHECK(std::abs(eitmotion::brownian_H(1.0) - std::exp(-1.0)) < 1e-14);
    }
    // collisionless medium falls back to the ballistic form
    {
        MediumParams m0 = m;
        m0.gamma = 0.0;
        const double k = 2.2e4;
        const double expect = 2.0 * std::sqrt(2.0 * std::numbers::ln2) * m0.v_th * k;
        CHECK(std::abs(eitmotion::fwhm_analytic(k, m0) - expect) < 1e-12 * expect);
    }
    CHECK(eitmotion::fwhm_analytic(0.0, m) == 0.0);
    CHECK_THROWS_AS(eitmotion::fwhm_analytic(-1.0, m), eitmotion::ValidationError);
}

TEST_CASE("width measurement: exact profiles and failure modes") {
    const double G = 1e4;
    Spectrum s;
    s.axis = linspace(-10.0 * G, 10.0 * G, 2001);
    s.normalization = Spectrum::Normalization::unit_peak;

    s.values.clear();
    for (const double d : s.axis) s.values.emplace_back(1.0 / (1.0 + (d / G) * (d / G)), 0.0);
    CHECK(std::abs(eitmotion::fwhm(s).width - 2.0 * G) < 2e-3 * 2.0 * G);
    CHECK(eitmotion::fwhm(s).peak_height == doctest::Approx(1.0));

    const double sigma = 3e3;
    s.axis = linspace(-10.0 * sigma, 10.0 * sigma, 2001);
    s.values.clear();
    for (const double d : s.axis) s.values.emplace_back(std::exp(-0.5 * d * d / (sigma * sigma)), 0.0);
    const double expect = 2.0 * std::sqrt(2.0 * std::numbers::ln2) * sigma;
    CHECK(std::abs(eitmotion::fwhm(s).width - expect) < 1e-3 * expect);

    // monotone data: the peak sits on an endpoint
    s.values.clear();
    for (const double d : s.axis) s.values.emplace_back(d, 0.0);
    CHECK_THROWS_AS(eitmotion::fwhm(s), eitmotion::ValidationError);

    // interior peak but the half level is never reached on the grid
    s.values.clear();
    for (size_t i = 0; i < s.axis.size(); ++i) {
        const double u = double(i) / double(s.axis.size() - 1) - 0.5;
        s.values.emplace_back(1.0 - 0.1 * u * u, 0.0);
    }
    CHECK_THROWS_AS(eitmotion::fwhm(s), eitmotion::ValidationError);
}

TEST_CASE("general susceptibility: drive-off reduction to the one-photon kernel") {
    oracles::Rng rng(77);
    for (int i = 0; i < 20; ++i) {
        MediumParams m;
        m.v_th = rng.uniform(50.0, 400.0);
        m.gamma = std::pow(10.0, rng.uniform(3.0, 7.0));
        m.Gamma_d = std::pow(10.0, rng.uniform(6.0, 9.0));
        m.Gamma_21 = std::pow(10.0, rng.uniform(1.0, 5.0));
        m.coupling = rng.uniform(0.5, 3.0);
        BeamParams b;
        b.q1 = rng.uniform(1e6, 1e7);
        b.Delta_1 = rng.uniform(-2e9, 2e9);
        b.Delta = rng.uniform(-1e6, 1e6);
        b.Omega_2 = Complex(0.0, 0.0);

        const Complex got = eitmotion::chi31_general(m, b, 0.0, {0, 0, 0});
        const Complex expect =
            Complex(0.0, m.coupling) * eitmotion::one_photon_K(m, b.q1, b.Delta_1);
        CHECK(rel_err(got, expect) < 1e-8);
    }

    // coupling enters linearly
    MediumParams m = narrowband_vapor(1.6e5);
    BeamParams b = weak_probe(4e9);
    const Complex c1 = eitmotion::chi31_general(m, b, 0.0, {0, 0, 0});
    m.coupling = 2.5;
    const Complex c2 = eitmotion::chi31_general(m, b, 0.0, {0, 0, 0});
    CHECK(rel_err(c2, 2.5 * c1) < 1e-14);
}

TEST_CASE("transmission scan: featureless input, narrow grid, parity") {
    const MediumParams m = narrowband_vapor(1.6e5);

    // no drive: no window, normalized transmission identically zero
    const BeamParams dark = weak_probe(0.0);
    const Spectrum flat = window_scan(m, dark, 1.5e3, 1e6, 41);
    for (const Complex v : flat.values) CHECK(v == Complex(0.0, 0.0));

    // absorption minimum on a grid endpoint: the window is not bracketed
    const BeamParams b = weak_probe(4e9);
    const double w = eitmotion::fwhm_analytic(1.5e3, m) + power_floor(m, b);
    CHECK_THROWS_AS(
        eitmotion::transmission_scan(linspace(0.7 * w, 8.0 * w, 41), {1.5e3, 0, 0}, m, b),
        eitmotion::ValidationError);

    // symmetric window when no cross terms couple the two Doppler axes
    const Spectrum sym = window_scan(m, b, 1.5e3, 4.0 * w, 81);
    const size_t n = sym.values.size();
    for (size_t i = 0; i < n; ++i)
        CHECK(std::abs(sym.values[i].real() - sym.values[n - 1 - i].real()) < 1e-10);
}

TEST_CASE("transparency window is the diffusive-limit Lorentzian at small eta") {
    const double k = 1.5e3;
    const double vk = 170.0 * k;
    MediumParams m;
    m.v_th = 170.0;
    m.gamma = vk / 0.16;
    m.Gamma_d = 2500.0 * vk;
    m.Gamma_21 = 0.025 * vk;
    BeamParams b;
    b.q1 = 7.4e6;
    b.Omega_2 = Complex(std::sqrt(m.Gamma_d * m.Gamma_21 / 25.0), 0.0);

    const double hwhm = 0.5 * power_floor(m, b) + m.diffusion() * k * k;
    const Spectrum t = window_scan(m, b, k, 5.0 * 2.0 * hwhm, 201);
    double worst = 0.0;
    for (size_t i = 0; i < t.axis.size(); ++i) {
        const double u = t.axis[i] / hwhm;
        const double lorentz = 1.0 / (1.0 + u * u);
        worst = std::max(worst, std::abs(t.values[i].real() - lorentz));
    }
    CHECK(worst < 0.02);
}

TEST_CASE("transparency window is the Voigt convolution at large eta") {
    const double k = 1.5e3;
    const double vk = 170.0 * k;
    MediumParams m;
    m.v_th = 170.0;
    m.gamma = vk / 16.0;
    m.Gamma_d = 2500.0 * vk;
    m.Gamma_21 = 0.025 * vk;
    BeamParams b;
    b.q1 = 7.4e6;
    b.Omega_2 = Complex(std::sqrt(m.Gamma_d * m.Gamma_21 / 25.0), 0.0);

    const double sigma = vk;                      // residual-Doppler spread
    const double gh = 0.5 * power_floor(m, b);    // homogeneous half width
    const double span = 5.0 * sigma;
    const Spectrum t = window_scan(m, b, k, span, 121);

    // independent reference: numerical convolution of the homogeneous
    // Lorentzian with the residual-Doppler Gaussian, normalized the same way
    // the scan is (baseline from the grid endpoints)
    auto voigt = [&](double delta) {
        auto f = [&](long double u) {
            const long double du = (long double)delta - u;
            return oracles::CplxL(
                expl(-u * u / (2.0L * (long double)sigma * sigma)) /
                    (du * du + (long double)gh * gh),
                0.0L);
        };
        return (double)oracles::simpson_adapt(f, -10.0L * sigma, 10.0L * sigma,
                                              1e-9L / sigma, 512)
            .real();
    };
    const double base = voigt(span);
    const double peak = voigt(0.0);
    double worst = 0.0;
    for (size_t i = 0; i < t.axis.size(); ++i) {
        const double ref = (voigt(t.axis[i]) - base) / (peak - base);
        worst = std::max(worst, std::abs(t.values[i].real() - ref));
    }
    // the frozen-velocity convolution ignores collisional narrowing, whose
    // relative scale here is 1/eta ~ 6%; it bounds the shape only loosely
    CHECK(worst < 0.06);

    // refined reference: strong-collision model, where each class keeps the
    // full dephasing width Gamma_21 + gamma + power and the velocity
    // redistribution is resummed as V / (1 - gamma V)
    const double gt = gh + m.gamma; // G21 + power + gamma
    auto vkernel = [&](double delta) {
        auto f = [&](long double u) {
            const long double g = expl(-u * u / (2.0L * (long double)sigma * sigma)) /
                                  (sqrtl(2.0L * oracles::kPiL) * sigma);
            return g / oracles::CplxL(gt, delta - (double)u);
        };
        return oracles::simpson_adapt(f, -10.0L * sigma, 10.0L * sigma, 1e-12L / sigma, 512);
    };
    auto prof = [&](double delta) {
        const oracles::CplxL v = vkernel(delta);
        return (double)(v / (1.0L - (long double)m.gamma * v)).real();
    };
    const double rbase = prof(span);
    const double rpeak = prof(0.0);
    double rworst = 0.0;
    for (size_t i = 0; i < t.axis.size(); ++i) {
        const double ref = (prof(t.axis[i]) - rbase) / (rpeak - rbase);
        rworst = std::max(rworst, std::abs(t.values[i].real() - ref));
    }
    CHECK(rworst < 0.03);
}

TEST_CASE("measured window width tracks the interpolation formula near crossover") {
    const MediumParams m = narrowband_vapor(1.6e6);
    const BeamParams b = weak_probe(4e9);
    const double k = 1.5e3;
    const double fa = eitmotion::fwhm_analytic(k, m);
    const double span = 6.0 * (fa + power_floor(m, b));
    const double measured = eitmotion::fwhm(window_scan(m, b, k, span, 401)).width;
    CHECK(measured / fa == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("window width decreases with collision rate at fixed wavevector") {
    const BeamParams b = weak_probe(4e9);
    const double k = 1e4;
    double prev = 1e300;
    for (const double gamma : {1.6e4, 1.6e5, 1.6e6}) {
        const MediumParams m = narrowband_vapor(gamma);
        const double span = 6.0 * (eitmotion::fwhm_analytic(k, m) + power_floor(m, b));
        const double width = eitmotion::fwhm(window_scan(m, b, k, span, 401)).width;
        CHECK(width <= prev);
        prev = width;
    }
}
