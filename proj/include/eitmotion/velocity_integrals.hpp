#pragma once
#include <array>

#include "eitmotion/params.hpp"

namespace eitmotion {

// Maxwellian averages of the drive-dressed two-level response. With
// u1 = (k + q1 z^)*v and u2 = (k + delta_q)*v the common denominator is
//   D(v) = (A - u1)(B - u2) - |Omega_2|^2,
//   A = omega + Delta_1 + i(Gamma_d + gamma),  B = omega + Delta + i(Gamma_21 + gamma),
// and the averages are
//   G  = < 1 / D >,   G1 = < (B - u2) / D >,   G2 = < (A - u1) / D >.
struct GSet {
    Complex G{};
    Complex G1{};
    Complex G2{};
};

struct GSetOptions {
    double rel_tol = 1e-10; // target for the transverse quadrature
    int max_intervals = 20000;
};

// (1/sqrt(pi)) int e^{-t^2} / (t - rho) dt for rho off the real axis.
Complex hilbert_gauss(Complex rho);

// One-photon response with the drive off: < 1 / (omega + Delta_1 - q1 v_z +
// i(Gamma_d + gamma)) > over the Maxwellian. Closed form via the Faddeeva
// function.
Complex voigt_G1(const MediumParams& m, double q1, double Delta_1, double omega = 0.0);

// Collision-renormalized one-photon kernel K = i G1 / (1 - i gamma G1).
// Reduces to 1/Gamma_d for an atom at rest on resonance.
Complex one_photon_K(const MediumParams& m, double q1, double Delta_1, double omega = 0.0);

// Full {G, G1, G2} for envelope frequency omega and envelope wavevector
// k_env. The velocity integral along z is done in closed form (partial
// fractions + Faddeeva); any transverse component is integrated numerically.
// The transverse parts of k_env and delta_q must be collinear so a single
// transverse axis suffices; otherwise a ValidationError is thrown.
GSet g_set(const MediumParams& m, const BeamParams& b, double omega,
           const std::array<double, 3>& k_env, const GSetOptions& opt = {});

} // namespace eitmotion
