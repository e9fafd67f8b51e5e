#include "eitmotion/ramsey.hpp"

#include <algorithm>
#include <cmath>

#include "eitmotion/errors.hpp"
#include "eitmotion/special_functions.hpp"

namespace eitmotion {

namespace {

// tanh(z) -> 1 with error 2 e^{-2 Re z}: below double epsilon past Re z = 19.
Complex safe_tanh(Complex z) {
    if (z.real() > 19.0) return Complex(1.0, 0.0);
    return std::tanh(z);
}

// cosh(k x)/cosh(k a) for 0 <= x <= a without overflowing the factors.
Complex cosh_ratio(Complex k, double x, double a) {
    const Complex ex = std::exp(k * (x - a));
    const Complex num = 1.0 + std::exp(-2.0 * k * x);
    const Complex den = 1.0 + std::exp(-2.0 * k * a);
    return ex * num / den;
}

void check_grid(const std::vector<double>& axis) {
    if (axis.size() < 2) throw ValidationError("grid needs at least 2 points");
    for (size_t i = 0; i < axis.size(); ++i) {
        if (!std::isfinite(axis[i])) throw ValidationError("grid values must be finite");
        if (i > 0 && axis[i] <= axis[i - 1])
            throw ValidationError("grid must be strictly increasing");
    }
}

} // namespace

void RamseyGeometry::validate() const {
    if (!std::isfinite(a) || !(a > 0.0))
        throw ValidationError("RamseyGeometry.a must be > 0");
}

void RamseyParams::validate() const {
    if (!std::isfinite(Gamma) || Gamma < 0.0)
        throw ValidationError("RamseyParams.Gamma must be >= 0");
    if (!std::isfinite(K_pow) || K_pow < 0.0)
        throw ValidationError("RamseyParams.K_pow must be >= 0");
    if (!std::isfinite(D) || !(D > 0.0))
        throw ValidationError("RamseyParams.D must be > 0");
}

std::pair<Complex, Complex> k1_k2(double Delta, const RamseyParams& p) {
    p.validate();
    if (!std::isfinite(Delta)) throw ValidationError("Delta must be finite");
    Complex k1 = std::sqrt(Complex(p.Gamma + p.K_pow, -Delta) / p.D);
    Complex k2 = std::sqrt(Complex(p.Gamma, -Delta) / p.D);
    if (k1.real() < 0.0) k1 = -k1;
    if (k2.real() < 0.0) k2 = -k2;
    return {k1, k2};
}

Complex s_correction(double Delta, const RamseyGeometry& geom, const RamseyParams& p) {
    geom.validate();
    const auto [k1, k2] = k1_k2(Delta, p);
    // No decay outside the beam at all: atoms wander arbitrarily far before
    // returning, the correction washes out.
    if (k2 == Complex(0.0, 0.0)) return Complex(0.0, 0.0);

    const Complex z1 = k1 * geom.a;
    if (geom.dim == RamseyGeometry::Dim::sheet_1d) {
        const Complex th = safe_tanh(z1);
        return (th / z1) / (1.0 + (k1 / k2) * th);
    }
    const Complex z2 = k2 * geom.a;
    const Complex bracket = 1.0 / bessel_I_ratio(z1) + (k1 / k2) * bessel_K_ratio(z2);
    return (2.0 / z1) / bracket;
}

RamseySpectra power_spectrum(const std::vector<double>& delta_grid,
                             const RamseyGeometry& geom, const RamseyParams& p,
                             double K) {
    check_grid(delta_grid);
    if (!std::isfinite(K) || !(K > 0.0))
        throw ValidationError("power_spectrum: K must be > 0");

    RamseySpectra out;
    out.absorption.axis = delta_grid;
    out.absorption.values.resize(delta_grid.size());
    out.absorption.normalization = Spectrum::Normalization::raw;
    out.transmission.axis = delta_grid;
    out.transmission.values.resize(delta_grid.size());
    out.transmission.normalization = Spectrum::Normalization::unit_peak;

    std::vector<double> depth(delta_grid.size());
    for (size_t i = 0; i < delta_grid.size(); ++i) {
        const double Delta = delta_grid[i];
        const Complex S = s_correction(Delta, geom, p);
        const Complex window =
            K * p.K_pow * (1.0 - S) / Complex(p.Gamma + p.K_pow, -Delta);
        out.absorption.values[i] = K - window;
        depth[i] = window.real();
    }
    const double peak = *std::max_element(depth.begin(), depth.end());
    for (size_t i = 0; i < delta_grid.size(); ++i)
        out.transmission.values[i] =
            Complex(peak > 0.0 ? depth[i] / peak : 0.0, 0.0);
    return out;
}

std::vector<Complex> coherence_profile_1d(const std::vector<double>& x_grid,
                                          double Delta, const RamseyGeometry& geom,
                                          const RamseyParams& p, Complex drive) {
    geom.validate();
    if (geom.dim != RamseyGeometry::Dim::sheet_1d)
        throw ValidationError("coherence_profile_1d: sheet geometry only");
    const auto [k1, k2] = k1_k2(Delta, p);
    if (k2 == Complex(0.0, 0.0))
        throw ValidationError("coherence_profile_1d: no exterior decay (Gamma = 0, Delta = 0)");

    const Complex Rp = -drive / (k1 * k1 * p.D);
    const Complex th = safe_tanh(k1 * geom.a);
    // A cosh(k1 a) = -k2 Rp / (k1 tanh + k2); edge value B = Rp k1 th / (k1 th + k2).
    const Complex a_cosh_edge = -k2 * Rp / (k1 * th + k2);
    const Complex B = Rp + a_cosh_edge;

    std::vector<Complex> out(x_grid.size());
    for (size_t i = 0; i < x_grid.size(); ++i) {
        const double ax = std::abs(x_grid[i]);
        if (!std::isfinite(ax)) throw ValidationError("x grid must be finite");
        if (ax <= geom.a)
            out[i] = Rp + a_cosh_edge * cosh_ratio(k1, ax, geom.a);
        else
            out[i] = B * std::exp(-k2 * (ax - geom.a));
    }
    return out;
}

Complex fd_oracle(double Delta, const RamseyGeometry& geom, const RamseyParams& p,
                  Complex drive, int min_points) {
    geom.validate();
    if (drive == Complex(0.0, 0.0))
        throw ValidationError("fd_oracle: drive must be nonzero");
    if (min_points < 32) throw ValidationError("fd_oracle: min_points too small");
    const auto [k1, k2] = k1_k2(Delta, p);
    if (!(k2.real() > 0.0))
        throw ValidationError("fd_oracle: no exterior decay (Gamma = 0, Delta = 0)");

    const bool cylinder = geom.dim == RamseyGeometry::Dim::cylinder_2d;
    const double a = geom.a;
    const double L = a + 20.0 / k2.real();
    const Complex c_out(p.Gamma, -Delta);
    const Complex c_in = c_out + p.K_pow;

    auto solve = [&](int m_in) -> Complex {
        const double h = a / double(m_in);
        const int n = m_in + int(std::ceil((L - a) / h)) + 1; // nodes 0..n-1
        // R[n-1] = 0 handled by dropping the node from the unknowns.
        const int u = n - 1;
        std::vector<Complex> diag(u), upper(u), lower(u), rhs(u);
        const double invh2 = p.D / (h * h);
        for (int i = 0; i < u; ++i) {
            const double w = (i < m_in) ? 1.0 : (i == m_in ? 0.5 : 0.0);
            const Complex c = c_out + w * p.K_pow;
            if (i == 0) {
                const double lap0 = cylinder ? 4.0 : 2.0;
                diag[i] = -lap0 * invh2 - c;
                upper[i] = lap0 * invh2;
            } else {
                const double wm = cylinder ? 1.0 - 0.5 / double(i) : 1.0;
                const double wp = cylinder ? 1.0 + 0.5 / double(i) : 1.0;
                lower[i] = wm * invh2;
                diag[i] = -(wm + wp) * invh2 - c;
                upper[i] = wp * invh2;
            }
            rhs[i] = drive * w;
        }
        // Thomas elimination.
        for (int i = 1; i < u; ++i) {
            const Complex f = lower[i] / diag[i - 1];
            diag[i] -= f * upper[i - 1];
            rhs[i] -= f * rhs[i - 1];
        }
        std::vector<Complex> R(u);
        R[u - 1] = rhs[u - 1] / diag[u - 1];
        for (int i = u - 2; i >= 0; --i) R[i] = (rhs[i] - upper[i] * R[i + 1]) / diag[i];

        // Beam average: (1/a) integral for the sheet, (2/a^2) r-weighted for
        // the cylinder, trapezoid with the edge node at half weight.
        Complex avg(0.0, 0.0);
        if (!cylinder) {
            avg = 0.5 * (R[0] + R[m_in]);
            for (int i = 1; i < m_in; ++i) avg += R[i];
            avg *= h / a;
        } else {
            avg = 0.5 * (double(m_in) * h) * R[m_in];
            for (int i = 1; i < m_in; ++i) avg += (double(i) * h) * R[i];
            avg *= 2.0 * h / (a * a);
        }
        return 1.0 + avg * c_in / drive;
    };

    const int m_base = std::max(64, int(std::ceil(double(min_points - 1) * a / L)));
    const Complex s_h = solve(m_base);
    const Complex s_h2 = solve(2 * m_base);
    if (std::abs(s_h - s_h2) > 1e-5 * std::max(1.0, std::abs(s_h2)))
        throw ConvergenceError("fd_oracle: Richardson pair disagrees; raise min_points");
    return (4.0 * s_h2 - s_h) / 3.0;
}

} // namespace eitmotion
