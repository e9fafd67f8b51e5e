#include "eitmotion/dicke_filter.hpp"

#include <cmath>

#include "eitmotion/errors.hpp"
#include "eitmotion/fft.hpp"
#include "eitmotion/velocity_integrals.hpp"

namespace eitmotion {

namespace {

Complex one_photon_K_cached(const MediumParams& m, const BeamParams& b) {
    return one_photon_K(m, b.q1, b.Delta_1);
}

Complex window_from(const Complex& K, double W, double ghom, double D,
                    double Delta_plus_omega, double kq_sq) {
    const Complex denom(-ghom - D * kq_sq, Delta_plus_omega);
    return -K * W / denom;
}

} // namespace

double gamma_hom(const MediumParams& m, const BeamParams& b) {
    m.validate();
    b.validate();
    const Complex K = one_photon_K_cached(m, b);
    return m.Gamma_21 + K.real() * std::norm(b.Omega_2);
}

Complex window_L(const std::array<double, 3>& k, double omega,
                 const MediumParams& m, const BeamParams& b) {
    m.validate();
    b.validate();
    for (double c : k)
        if (!std::isfinite(c)) throw ValidationError("window_L: k must be finite");
    if (!std::isfinite(omega)) throw ValidationError("window_L: omega must be finite");
    const Complex K = one_photon_K_cached(m, b);
    const double W = std::norm(b.Omega_2);
    const double ghom = m.Gamma_21 + K.real() * W;
    double kq_sq = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double c = b.delta_q[i] + k[i];
        kq_sq += c * c;
    }
    return window_from(K, W, ghom, m.diffusion(), b.Delta + omega, kq_sq);
}

Complex chi31_dicke(const std::array<double, 3>& k, double omega,
                    const MediumParams& m, const BeamParams& b) {
    const Complex K = one_photon_K_cached(m, b);
    return Complex(0.0, 1.0) * m.coupling * K * (1.0 - window_L(k, omega, m, b));
}

void FilterParams::validate() const {
    medium.validate();
    beams.validate();
    if (!std::isfinite(propagation_length) || propagation_length < 0.0)
        throw ValidationError("FilterParams.propagation_length must be >= 0");
}

FilterResult apply_filter(const ComplexField2D& in, const FilterParams& p) {
    in.validate();
    p.validate();

    FilterResult out;
    out.field = in;
    fft_2d_inplace(out.field.values, in.nx, in.ny, false);

    // Aliasing diagnostic on the input spectrum before any multiplication.
    double total = 0.0, edge = 0.0;
    for (int iy = 0; iy < in.ny; ++iy) {
        const int fy = (iy < in.ny / 2) ? iy : iy - in.ny;
        const double ry = std::abs(double(fy)) / (in.ny / 2.0);
        for (int ix = 0; ix < in.nx; ++ix) {
            const int fx = (ix < in.nx / 2) ? ix : ix - in.nx;
            const double rx = std::abs(double(fx)) / (in.nx / 2.0);
            const double e = std::norm(out.field.at(ix, iy));
            total += e;
            if (std::max(rx, ry) > 0.9) edge += e;
        }
    }
    out.edge_energy_fraction = (total > 0.0) ? edge / total : 0.0;
    out.aliasing_warning = out.edge_energy_fraction > 0.01;

    const Complex K = one_photon_K_cached(p.medium, p.beams);
    const double W = std::norm(p.beams.Omega_2);
    const double ghom = p.medium.Gamma_21 + K.real() * W;
    const double D = p.medium.diffusion();
    const Complex iKc = Complex(0.0, 1.0) * p.medium.coupling * K;
    const double dz = p.propagation_length;

    for (int iy = 0; iy < in.ny; ++iy) {
        const double ky = fft_wavenumber(iy, in.ny, in.dy);
        for (int ix = 0; ix < in.nx; ++ix) {
            const double kx = fft_wavenumber(ix, in.nx, in.dx);
            const double dqx = p.beams.delta_q[0] + kx;
            const double dqy = p.beams.delta_q[1] + ky;
            const double dqz = p.beams.delta_q[2];
            const double kq_sq = dqx * dqx + dqy * dqy + dqz * dqz;
            const Complex L = window_from(K, W, ghom, D, p.beams.Delta, kq_sq);
            Complex disp = iKc * (1.0 - L);
            if (p.include_diffraction)
                disp += Complex(-(kx * kx + ky * ky) / (2.0 * p.beams.q1), 0.0);
            out.field.at(ix, iy) *= std::exp(Complex(0.0, 1.0) * disp * dz);
        }
    }

    fft_2d_inplace(out.field.values, in.nx, in.ny, true);
    return out;
}

double angular_transmission(double theta, double q,
                            const MediumParams& m, const BeamParams& b) {
    if (!std::isfinite(theta) || !std::isfinite(q) || q < 0.0)
        throw ValidationError("angular_transmission: need finite theta, q >= 0");
    m.validate();
    b.validate();
    const Complex K = one_photon_K_cached(m, b);
    const double W = std::norm(b.Omega_2);
    const double ghom = m.Gamma_21 + K.real() * W;
    return K.real() * W / (ghom + m.diffusion() * q * q * theta * theta);
}

} // namespace eitmotion
