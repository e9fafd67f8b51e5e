#include "eitmotion/susceptibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eitmotion/errors.hpp"
#include "eitmotion/special_functions.hpp"

namespace eitmotion {

namespace {

void check_axis(const std::vector<double>& axis) {
    if (axis.size() < 2) throw ValidationError("grid must have at least 2 points");
    for (size_t i = 0; i < axis.size(); ++i) {
        if (!std::isfinite(axis[i])) throw ValidationError("grid values must be finite");
        if (i > 0 && !(axis[i] > axis[i - 1]))
            throw ValidationError("grid must be strictly increasing");
    }
}

} // namespace

Complex chi31_general(const MediumParams& m, const BeamParams& b, double omega,
                      const std::array<double, 3>& k_perp, const GSetOptions& opt) {
    const GSet s = g_set(m, b, omega, k_perp, opt);
    const double W = std::norm(b.Omega_2);
    const Complex ig(0.0, m.gamma);
    const Complex f1 = 1.0 - ig * s.G1;
    const Complex f2 = 1.0 - ig * s.G2;
    const Complex gd = f1 * f2 + m.gamma * m.gamma * W * s.G * s.G;
    return -m.coupling * (s.G1 * f2 + ig * W * s.G * s.G) / gd;
}

Spectrum chi_scan(const std::vector<double>& delta_grid, const std::array<double, 3>& k_perp,
                  const MediumParams& m, const BeamParams& b, const GSetOptions& opt) {
    check_axis(delta_grid);
    Spectrum out;
    out.axis = delta_grid;
    out.values.reserve(delta_grid.size());
    BeamParams bd = b;
    for (const double delta : delta_grid) {
        bd.Delta = delta;
        out.values.push_back(chi31_general(m, bd, 0.0, k_perp, opt));
    }
    out.normalization = Spectrum::Normalization::raw;
    return out;
}

Spectrum transmission_from_chi(const Spectrum& chi) {
    check_axis(chi.axis);
    if (chi.values.size() != chi.axis.size())
        throw ValidationError("spectrum axis/values size mismatch");
    const size_t n = chi.values.size();
    std::vector<double> im(n);
    for (size_t i = 0; i < n; ++i) {
        if (!std::isfinite(chi.values[i].real()) || !std::isfinite(chi.values[i].imag()))
            throw ValidationError("spectrum values must be finite");
        im[i] = chi.values[i].imag();
    }
    const double base = 0.5 * (im.front() + im.back());
    const size_t arg_min = std::min_element(im.begin(), im.end()) - im.begin();
    const double depth = base - im[arg_min];
    const double scale = std::max({std::abs(base), std::abs(im[arg_min]), 1e-300});

    Spectrum out;
    out.axis = chi.axis;
    out.values.assign(n, Complex(0.0, 0.0));
    out.normalization = Spectrum::Normalization::unit_peak;
    if (depth <= 1e-10 * scale) return out; // featureless: no window to normalize

    if (arg_min == 0 || arg_min == n - 1)
        throw ValidationError("delta grid too narrow: transparency window touches an endpoint");

    for (size_t i = 0; i < n; ++i) {
        const double t = (base - im[i]) / depth;
        out.values[i] = Complex(std::clamp(t, 0.0, 1.0), 0.0);
    }
    return out;
}

Spectrum transmission_scan(const std::vector<double>& delta_grid,
                           const std::array<double, 3>& k_perp, const MediumParams& m,
                           const BeamParams& b, const GSetOptions& opt) {
    return transmission_from_chi(chi_scan(delta_grid, k_perp, m, b, opt));
}

FwhmResult fwhm(const Spectrum& s) {
    check_axis(s.axis);
    if (s.values.size() != s.axis.size())
        throw ValidationError("spectrum axis/values size mismatch");
    const size_t n = s.values.size();
    if (n < 5) throw ValidationError("spectrum too short for a width measurement");

    size_t p = 0;
    for (size_t i = 1; i < n; ++i)
        if (s.values[i].real() > s.values[p].real()) p = i;
    if (p == 0 || p == n - 1)
        throw ValidationError("spectrum peak lies on a grid endpoint");

    const double peak = s.values[p].real();
    const double half = 0.5 * peak;
    auto cross = [&](int dir) {
        size_t i = p;
        while (true) {
            const size_t j = i + dir;
            if (j >= n) throw ValidationError("half level never crossed on one side");
            const double a = s.values[i].real(), c = s.values[j].real();
            if (c <= half) {
                const double f = (a - half) / (a - c);
                return s.axis[i] + f * (s.axis[j] - s.axis[i]);
            }
            i = j;
        }
    };
    const double left = cross(-1);
    const double right = cross(+1);

    FwhmResult r;
    r.width = right - left;
    r.peak_height = peak;
    return r;
}

double fwhm_analytic(double k, const MediumParams& m) {
    m.validate();
    if (!std::isfinite(k) || k < 0.0) throw ValidationError("k must be >= 0");
    const double ln2 = std::numbers::ln2;
    const double a = std::sqrt(2.0 / ln2);
    if (m.gamma == 0.0) return 2.0 * std::sqrt(2.0 * ln2) * m.v_th * k; // ballistic limit
    return 2.0 * ln2 * m.gamma * brownian_H(a * m.v_th * k / m.gamma);
}

} // namespace eitmotion
