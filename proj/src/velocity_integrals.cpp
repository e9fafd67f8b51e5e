#include "eitmotion/velocity_integrals.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "eitmotion/errors.hpp"
#include "eitmotion/quadrature.hpp"
#include "eitmotion/special_functions.hpp"

namespace eitmotion {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// H_n(rho) = d^n/drho^n (1/sqrt(pi)) int e^{-t^2}/(t - rho) dt. In the upper
// half plane H_0 = i sqrt(pi) w(rho) and the derivatives follow from
// w' = -2 rho w + 2i/sqrt(pi); the lower half plane is the Schwarz
// reflection of the upper one (the two halves are distinct analytic
// functions, separated by the jump across the real axis).
struct HilbertDerivs {
    Complex h0, h1, h2, h3;
};

HilbertDerivs hilbert_derivs(Complex rho) {
    const bool lower = rho.imag() < 0.0;
    const Complex r = lower ? std::conj(rho) : rho;
    const Complex w = faddeeva_w(r);
    const Complex w1 = -2.0 * r * w + Complex(0.0, 2.0 / kSqrtPi);
    const Complex w2 = -2.0 * w - 2.0 * r * w1;
    const Complex w3 = -4.0 * w1 - 2.0 * r * w2;
    const Complex is(0.0, kSqrtPi);
    HilbertDerivs d{is * w, is * w1, is * w2, is * w3};
    if (lower) {
        d.h0 = std::conj(d.h0);
        d.h1 = std::conj(d.h1);
        d.h2 = std::conj(d.h2);
        d.h3 = std::conj(d.h3);
    }
    return d;
}

// V(r) = int g(z)/(z - r) dz for the sigma = v_th Gaussian g.
Complex pole_average(Complex r, double s) { return hilbert_gauss(r / s) / s; }

// Closed-form z-average of {1, B - a2 z, A - a1 z} over
// D(z) = (A - a1 z)(B - a2 z) - W, weighted by the sigma = v_th Gaussian.
GSet inner_z(Complex A, Complex B, double a1, double a2, double W, double v_th) {
    const double s = std::numbers::sqrt2 * v_th;

    if (a1 == 0.0 && a2 == 0.0) {
        const Complex D = A * B - W;
        if (D == Complex(0.0, 0.0))
            throw ValidationError("response denominator vanishes identically");
        return {1.0 / D, B / D, A / D};
    }
    if (a2 == 0.0) {
        if (B == Complex(0.0, 0.0)) {
            if (W == 0.0) throw ValidationError("response denominator vanishes identically");
            return {Complex(-1.0 / W, 0.0), Complex(0.0, 0.0), -A / W};
        }
        const Complex r = (A - W / B) / a1;
        const Complex V = pole_average(r, s);
        const Complex IG = -V / (a1 * B);
        return {IG, B * IG, 1.0 / B + (W / B) * IG};
    }
    if (a1 == 0.0) {
        if (A == Complex(0.0, 0.0)) {
            if (W == 0.0) throw ValidationError("response denominator vanishes identically");
            return {Complex(-1.0 / W, 0.0), -B / W, Complex(0.0, 0.0)};
        }
        const Complex r = (B - W / A) / a2;
        const Complex V = pole_average(r, s);
        const Complex IG = -V / (a2 * A);
        return {IG, 1.0 / A + (W / A) * IG, A * IG};
    }

    // quadratic denominator: a1 a2 (z - rp)(z - rm)
    const Complex sum = a1 * B + a2 * A;
    const Complex dif = a1 * B - a2 * A;
    const Complex sq = std::sqrt(dif * dif + 4.0 * (a1 * a2) * W);
    const double pick = sum.real() * sq.real() + sum.imag() * sq.imag();
    const Complex big = (pick >= 0.0) ? sum + sq : sum - sq;
    Complex rp, rm;
    if (big == Complex(0.0, 0.0)) {
        rp = rm = sum / (2.0 * a1 * a2);
    } else {
        rp = big / (2.0 * a1 * a2);
        rm = (A * B - W) / ((a1 * a2) * rp);
    }

    const Complex dr = rp - rm;
    const double scale = s + std::abs(rp) + std::abs(rm);
    const bool same_half = rp.imag() * rm.imag() > 0.0;
    if (!same_half || std::abs(dr) >= 1e-4 * scale) {
        // direct partial fractions; when the poles pinch the real axis from
        // opposite sides the numerators add instead of cancel, so this stays
        // accurate there
        const Complex Vp = pole_average(rp, s);
        const Complex Vm = pole_average(rm, s);
        const Complex den = (a1 * a2) * dr;
        return {(Vp - Vm) / den,
                ((B - a2 * rp) * Vp - (B - a2 * rm) * Vm) / den,
                ((A - a1 * rp) * Vp - (A - a1 * rm) * Vm) / den};
    }

    // nearly degenerate same-side roots: difference quotients by a Taylor
    // step at the midpoint, accurate to O(|dr|^4 / scale^4)
    const Complex mid = 0.5 * (rp + rm);
    const Complex h = 0.5 * dr;
    const Complex h2_6 = h * h / 6.0;
    const HilbertDerivs hd = hilbert_derivs(mid / s);
    const Complex V = hd.h0 / s;
    const Complex V1 = hd.h1 / (s * s);
    const Complex V2 = hd.h2 / (s * s * s);
    const Complex V3 = hd.h3 / (s * s * s * s);
    const Complex cB = B - a2 * mid;
    const Complex cA = A - a1 * mid;
    const double a12 = a1 * a2;
    return {(V1 + h2_6 * V3) / a12,
            (cB * V1 - a2 * V + h2_6 * (cB * V3 - 3.0 * a2 * V2)) / a12,
            (cA * V1 - a1 * V + h2_6 * (cA * V3 - 3.0 * a1 * V2)) / a12};
}

} // namespace

Complex hilbert_gauss(Complex rho) { return hilbert_derivs(rho).h0; }

Complex voigt_G1(const MediumParams& m, double q1, double Delta_1, double omega) {
    m.validate();
    if (!std::isfinite(q1) || q1 <= 0.0) throw ValidationError("q1 must be > 0");
    const double sq = std::numbers::sqrt2 * m.v_th * q1;
    const Complex A(omega + Delta_1, m.Gamma_d + m.gamma);
    return -hilbert_gauss(A / sq) / sq;
}

Complex one_photon_K(const MediumParams& m, double q1, double Delta_1, double omega) {
    const Complex g1 = voigt_G1(m, q1, Delta_1, omega);
    const Complex i(0.0, 1.0);
    return i * g1 / (1.0 - i * m.gamma * g1);
}

GSet g_set(const MediumParams& m, const BeamParams& b, double omega,
           const std::array<double, 3>& k_env, const GSetOptions& opt) {
    m.validate();
    b.validate();
    for (double c : k_env)
        if (!std::isfinite(c)) throw ValidationError("k_env must be finite");
    if (!std::isfinite(omega)) throw ValidationError("omega must be finite");

    const double W = std::norm(b.Omega_2);
    const Complex A(omega + b.Delta_1, m.Gamma_d + m.gamma);
    const Complex B(omega + b.Delta, m.Gamma_21 + m.gamma);

    const double kx = k_env[0], ky = k_env[1], kz = k_env[2];
    const double dqx = b.delta_q[0], dqy = b.delta_q[1], dqz = b.delta_q[2];
    const double kp = std::hypot(kx, ky);
    const double dqp = std::hypot(dqx, dqy);

    // rotate the transverse plane so everything lives on one axis
    double p1x = 0.0, p2x = 0.0;
    if (kp > 0.0 && dqp > 0.0) {
        const double cross = kx * dqy - ky * dqx;
        if (std::abs(cross) > 1e-12 * kp * dqp)
            throw ValidationError("transverse parts of k_env and beam.delta_q must be collinear");
        p1x = kp;
        p2x = kp + (kx * dqx + ky * dqy) / kp;
    } else if (kp > 0.0) {
        p1x = kp;
        p2x = kp;
    } else if (dqp > 0.0) {
        p2x = dqp;
    }
    const double p1z = kz + b.q1;
    const double p2z = kz + dqz;

    if (p1x == 0.0 && p2x == 0.0) return inner_z(A, B, p1z, p2z, W, m.v_th);

    const double L = 9.0 * m.v_th;
    AdaptiveOptions q;
    q.rel_tol = opt.rel_tol;
    q.max_intervals = opt.max_intervals;
    std::vector<double> hints;
    if (p1x != 0.0) hints.push_back(A.real() / p1x);
    if (p2x != 0.0) hints.push_back(B.real() / p2x);
    std::erase_if(hints, [&](double h) { return !(h > -L && h < L); });

    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * m.v_th);
    auto component = [&](int which) {
        return adaptive_gk15(
            [&, which](double x) {
                const double g = norm * std::exp(-0.5 * (x / m.v_th) * (x / m.v_th));
                const GSet s = inner_z(A - p1x * x, B - p2x * x, p1z, p2z, W, m.v_th);
                return g * (which == 0 ? s.G : which == 1 ? s.G1 : s.G2);
            },
            -L, L, q, hints);
    };
    return GSet{component(0), component(1), component(2)};
}

} // namespace eitmotion
