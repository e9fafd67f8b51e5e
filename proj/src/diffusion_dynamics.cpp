#include "eitmotion/diffusion_dynamics.hpp"

#include <cmath>

#include "eitmotion/errors.hpp"
#include "eitmotion/fft.hpp"
#include "eitmotion/velocity_integrals.hpp"

namespace eitmotion {

namespace {

// Multiply every spatial-frequency mode by exp(coef * k_perp^2) in place.
void spectral_gaussian_multiply(ComplexField2D& f, Complex coef) {
    fft_2d_inplace(f.values, f.nx, f.ny, false);
    for (int iy = 0; iy < f.ny; ++iy) {
        const double ky = fft_wavenumber(iy, f.ny, f.dy);
        for (int ix = 0; ix < f.nx; ++ix) {
            const double kx = fft_wavenumber(ix, f.nx, f.dx);
            f.at(ix, iy) *= std::exp(coef * (kx * kx + ky * ky));
        }
    }
    fft_2d_inplace(f.values, f.nx, f.ny, true);
}

} // namespace

StoredCoherence evolve_stored(const StoredCoherence& state, double dt,
                              const MediumParams& m) {
    state.field.validate();
    m.validate();
    if (!std::isfinite(dt) || dt < 0.0)
        throw ValidationError("evolve_stored: dt must be >= 0");
    if (!(state.t >= 0.0)) throw ValidationError("evolve_stored: state.t must be >= 0");

    StoredCoherence out{state.field, state.t + dt};
    spectral_gaussian_multiply(out.field, Complex(-m.diffusion() * dt, 0.0));
    const Complex global = std::exp(Complex(-m.Gamma_21 * dt, -m.omega_21 * dt));
    for (Complex& v : out.field.values) v *= global;
    return out;
}

void SlowLightParams::validate() const {
    if (!std::isfinite(V_g) || V_g < 0.0 || V_g > kSpeedOfLight)
        throw ValidationError("SlowLightParams.V_g must be in [0, c]");
    if (!std::isfinite(Gamma_0)) throw ValidationError("SlowLightParams.Gamma_0 must be finite");
    if (!std::isfinite(D) || D < 0.0) throw ValidationError("SlowLightParams.D must be >= 0");
    if (!std::isfinite(q1) || !(q1 > 0.0)) throw ValidationError("SlowLightParams.q1 must be > 0");
    if (!std::isfinite(Delta)) throw ValidationError("SlowLightParams.Delta must be finite");
}

SlowLightParams group_velocity(const MediumParams& m, const BeamParams& b) {
    m.validate();
    b.validate();
    const double K = one_photon_K(m, b.q1, b.Delta_1).real();
    const double W = std::norm(b.Omega_2);
    const double ghom = m.Gamma_21 + K * W;
    const double dq_sq = b.delta_q[0] * b.delta_q[0] + b.delta_q[1] * b.delta_q[1] +
                         b.delta_q[2] * b.delta_q[2];
    const double window = ghom + m.diffusion() * dq_sq;
    // Drive off: no dispersion regardless of how narrow the window is.
    const double slow =
        (W == 0.0) ? 0.0
                   : m.coupling * kSpeedOfLight * K * K * W / (window * window);

    SlowLightParams slp;
    slp.V_g = kSpeedOfLight / (1.0 + slow);
    slp.Gamma_0 = slp.V_g * m.coupling * K - window;
    slp.D = m.diffusion();
    slp.q1 = b.q1;
    slp.Delta = b.Delta;
    slp.validate();
    return slp;
}

SlowLightStep evolve_slow_light(const ComplexField2D& envelope, double t,
                                const SlowLightParams& slp) {
    envelope.validate();
    slp.validate();
    if (!std::isfinite(t) || t < 0.0)
        throw ValidationError("evolve_slow_light: t must be >= 0");

    SlowLightStep out{envelope, std::exp(Complex(-slp.Gamma_0 * t, slp.Delta * t))};
    spectral_gaussian_multiply(out.field,
                               -t * Complex(slp.D, slp.V_g / (2.0 * slp.q1)));
    return out;
}

} // namespace eitmotion
