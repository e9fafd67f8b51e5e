#pragma once
#include <array>
#include <complex>

namespace eitmotion {

using Complex = std::complex<double>;

// Bulk medium and atomic constants. All rates are angular frequencies in
// s^-1, velocities in m/s, wavevectors in rad/m.
struct MediumParams {
    double v_th = 0.0;     // 1D rms thermal velocity
    double gamma = 0.0;    // velocity relaxation (collision) rate
    double Gamma_d = 0.0;  // optical coherence decay rate
    double Gamma_21 = 0.0; // ground coherence decay rate
    double omega_21 = 0.0; // ground-state splitting carried by the coherence
    double coupling = 1.0; // susceptibility prefactor (density * dipole / c)

    // motional diffusion coefficient in the collision-dominated limit
    double diffusion() const { return v_th * v_th / gamma; }

    void validate() const;
};

// Probe / drive geometry and detunings. The probe propagates along +z.
struct BeamParams {
    double q1 = 0.0;                              // one-photon wavevector
    std::array<double, 3> delta_q{0.0, 0.0, 0.0}; // two-photon mismatch
    Complex Omega_2{0.0, 0.0};                    // drive Rabi frequency
    double Delta_1 = 0.0;                         // one-photon detuning
    double Delta = 0.0;                           // two-photon detuning

    void validate() const;
};

} // namespace eitmotion
