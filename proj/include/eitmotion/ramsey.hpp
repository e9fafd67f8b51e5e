#pragma once
#include <utility>
#include <vector>

#include "eitmotion/params.hpp"
#include "eitmotion/susceptibility.hpp"

namespace eitmotion {

// Stepwise beam profile: a 1D sheet of half-width a, or a cylinder of
// radius a. Atoms diffuse out of the beam, dephase only at the slow rate
// outside it, and diffuse back in coherently: the source of the narrow
// central feature in the steady-state spectrum.
struct RamseyGeometry {
    enum class Dim { sheet_1d, cylinder_2d };
    double a = 0.0; // m
    Dim dim = Dim::sheet_1d;
    void validate() const;
};

struct RamseyParams {
    double Gamma = 0.0; // 1/s, non-power-broadened width Gamma_21 + D dq^2
    double K_pow = 0.0; // 1/s, drive power term Re{K}|Omega_2|^2
    double D = 0.0;     // m^2/s
    void validate() const;
};

// Inverse healing lengths of the coherence inside and outside the beam:
//   k1 = sqrt((Gamma + K_pow - i Delta)/D),  k2 = sqrt((Gamma - i Delta)/D),
// principal branch with Re{k} > 0.
std::pair<Complex, Complex> k1_k2(double Delta, const RamseyParams& p);

// Finite-beam correction S_D to the plane-wave window lineshape (0 = no
// correction, 1 = window fully erased by beam escape):
//   sheet:    [tanh(k1 a)/(k1 a)] / [1 + (k1/k2) tanh(k1 a)]
//   cylinder: (2/(k1 a)) / [I0(k1 a)/I1(k1 a) + (k1/k2) K0(k2 a)/K1(k2 a)]
// tanh and the Bessel ratios run on overflow-guarded branches.
Complex s_correction(double Delta, const RamseyGeometry& geom, const RamseyParams& p);

struct RamseySpectra {
    // Complex K - K*K_pow*(1 - S_D)/(Gamma + K_pow - i Delta) per grid point;
    // the real part is the absorbed power in units of the drive power.
    Spectrum absorption;
    // Unit-peak transparency depth Re{K} - P(Delta), peaked at line centre.
    Spectrum transmission;
};

// Steady-state absorption spectrum of the finite beam. K is the one-photon
// response constant (seconds) at the drive detuning.
RamseySpectra power_spectrum(const std::vector<double>& delta_grid,
                             const RamseyGeometry& geom, const RamseyParams& p,
                             double K);

// Transverse coherence profile for the sheet: A cosh(k1 x) - drive/(k1^2 D)
// inside |x| <= a, decaying exp(-k2 (|x| - a)) outside, with value and slope
// continuous at the beam edge. x_grid is evaluated pointwise (any order).
std::vector<Complex> coherence_profile_1d(const std::vector<double>& x_grid,
                                          double Delta, const RamseyGeometry& geom,
                                          const RamseyParams& p, Complex drive);

// Independent route to S_D: solve the steady-state diffusion equation by
// second-order central differences on [0, a + 20/Re{k2}] (symmetry or radial
// regularity at the origin, zero at the far boundary, the beam edge landing
// exactly on a node), beam-average the solution, and convert to the
// equivalent correction. Runs a Richardson pair at h and h/2 and throws
// ConvergenceError if the two disagree beyond 1e-5. min_points sets the
// coarse-grid resolution (>= 8001 nodes).
Complex fd_oracle(double Delta, const RamseyGeometry& geom, const RamseyParams& p,
                  Complex drive, int min_points = 8001);

} // namespace eitmotion
