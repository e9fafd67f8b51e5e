#pragma once
#include "eitmotion/field2d.hpp"
#include "eitmotion/params.hpp"

namespace eitmotion {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Ground-state coherence envelope parked in the vapor (drive off), with the
// elapsed storage time. Only the transverse (x, y) profile is tracked; the
// longitudinal dependence is outside the stored-image data model.
struct StoredCoherence {
    ComplexField2D field;
    double t = 0.0;
};

// Field-free storage: every spatial-frequency mode decays as
// exp(-(D k^2 + Gamma_21) dt), with the ground-state splitting applied as the
// exact global phase exp(-i omega_21 dt). Spectral stepping is exact, so
// steps compose: evolve(dt1) then evolve(dt2) equals evolve(dt1 + dt2).
StoredCoherence evolve_stored(const StoredCoherence& state, double dt,
                              const MediumParams& m);

struct SlowLightParams {
    double V_g = 0.0;     // group velocity, m/s
    double Gamma_0 = 0.0; // on-resonance decay rate of the traveling pulse, 1/s
    double D = 0.0;       // m^2/s
    double q1 = 0.0;      // probe carrier wavenumber, 1/m
    double Delta = 0.0;   // two-photon detuning carried by the envelope, 1/s
    void validate() const;
};

// Slow-light dispersion in the diffusive regime:
//   c/V_g = 1 + coupling * c * K^2 |Omega_2|^2 / (gamma_hom + D dq^2)^2,
//   Gamma_0 = V_g * coupling * K - gamma_hom - D dq^2,
// with K = Re{K(Delta_1)} and dq = |beams.delta_q|.
SlowLightParams group_velocity(const MediumParams& m, const BeamParams& b);

struct SlowLightStep {
    ComplexField2D field; // transverse envelope in the co-moving frame
    Complex carrier;      // exp((i Delta - Gamma_0) t), reported separately
};

// Traveling-envelope evolution for duration t: each transverse mode is
// multiplied by exp(-(D + i V_g/(2 q1)) k_perp^2 t). The real part diffuses
// the envelope, the imaginary part is paraxial diffraction over the distance
// V_g t. Valid while the envelope stays band-limited,
// D k_perp^2 << gamma_hom + D dq^2.
SlowLightStep evolve_slow_light(const ComplexField2D& envelope, double t,
                                const SlowLightParams& slp);

} // namespace eitmotion
