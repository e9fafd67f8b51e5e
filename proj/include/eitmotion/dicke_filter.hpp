#pragma once
#include <array>

#include "eitmotion/field2d.hpp"
#include "eitmotion/params.hpp"

namespace eitmotion {

// Collision-broadened two-photon linewidth: Gamma_21 plus the power term
// Re{K(Delta_1)}*|Omega_2|^2, with K the one-photon response at the drive
// detuning. Valid deep in the collisional (diffusive) regime.
double gamma_hom(const MediumParams& m, const BeamParams& b);

// Transparency-window lineshape in the diffusive regime, as a function of the
// probe transverse/longitudinal wavevector offset k (added to beams.delta_q)
// and the modulation frequency omega:
//   L = -K |Omega_2|^2 / (i (Delta + omega) - gamma_hom - D |delta_q + k|^2).
// Re{L} -> reaches its peak value at two-photon resonance and decays with the
// diffusion rate D|delta_q + k|^2.
Complex window_L(const std::array<double, 3>& k, double omega,
                 const MediumParams& m, const BeamParams& b);

// Diffusive-regime probe susceptibility i*coupling*K*(1 - L). Agrees with the
// full velocity-averaged susceptibility when collisions dominate
// (gamma >> v_th * |delta_q + k|).
Complex chi31_dicke(const std::array<double, 3>& k, double omega,
                    const MediumParams& m, const BeamParams& b);

struct FilterParams {
    MediumParams medium;
    BeamParams beams;
    bool include_diffraction = true;
    double propagation_length = 0.0; // metres of vapor traversed
    void validate() const;
};

struct FilterResult {
    ComplexField2D field;
    // Fraction of input spectral energy in the outer 10% of k-space; a large
    // value means the grid under-resolves the field and the per-mode phases
    // are unreliable near the fold-over edge.
    double edge_energy_fraction = 0.0;
    bool aliasing_warning = false; // edge_energy_fraction > 1%
};

// Propagate a transverse field envelope through the vapor: multiply each
// spatial-frequency mode by exp(i p(k_perp) L) with
//   p = -|k_perp|^2/(2 q1)  (if include_diffraction)  + chi31_dicke(k_perp, 0).
// Spatially uniform absorption is kept in the field (k=0 mode included).
FilterResult apply_filter(const ComplexField2D& in, const FilterParams& p);

// Steady-state window amplitude Re{L} for a plane-wave component at angle
// theta to the drive, two-photon wavenumber scale q: equals
// Re{K}|Omega_2|^2 / (gamma_hom + D q^2 theta^2). Matches window_L evaluated
// at |delta_q + k| = q*theta, Delta = omega = 0.
double angular_transmission(double theta, double q,
                            const MediumParams& m, const BeamParams& b);

} // namespace eitmotion
