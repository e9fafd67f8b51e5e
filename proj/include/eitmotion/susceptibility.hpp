#pragma once
#include <vector>

#include "eitmotion/params.hpp"
#include "eitmotion/velocity_integrals.hpp"

namespace eitmotion {

struct Spectrum {
    enum class Normalization { raw, unit_peak };
    std::vector<double> axis;     // strictly increasing grid
    std::vector<Complex> values;  // chi or normalized transmission
    Normalization normalization = Normalization::raw;
};

struct FwhmResult {
    double width = 0.0;
    double peak_height = 0.0;
    // the one supported method: linear interpolation of the two half-height
    // crossings around the global peak
    static constexpr const char* method = "interpolated-half-crossings";
};

// Probe susceptibility for arbitrary motional regime. Uses the algebraic
// form chi31 = -coupling * [G1 (1 - i gamma G2) + i gamma |Omega_2|^2 G^2] / G_d
// with G_d = (1 - i gamma G1)(1 - i gamma G2) + gamma^2 |Omega_2|^2 G^2,
// which is exact for all gamma >= 0 (the 1/gamma cancellation of the raw
// expression is removed analytically).
Complex chi31_general(const MediumParams& m, const BeamParams& b, double omega,
                      const std::array<double, 3>& k_perp, const GSetOptions& opt = {});

// Raw chi(Delta) over a detuning grid at omega = 0.
Spectrum chi_scan(const std::vector<double>& delta_grid, const std::array<double, 3>& k_perp,
                  const MediumParams& m, const BeamParams& b, const GSetOptions& opt = {});

// Normalized transparency window from a raw chi scan:
//   T(Delta) = [Im chi_base - Im chi(Delta)] / [Im chi_base - min Im chi],
// with the baseline taken as the mean of the two grid endpoints. A featureless
// scan (no window) yields T identically 0; a window whose absorption minimum
// sits on a grid endpoint raises a ValidationError (grid too narrow).
Spectrum transmission_from_chi(const Spectrum& chi);

Spectrum transmission_scan(const std::vector<double>& delta_grid,
                           const std::array<double, 3>& k_perp, const MediumParams& m,
                           const BeamParams& b, const GSetOptions& opt = {});

// Width of the dominant interior peak by interpolated half-height crossings.
FwhmResult fwhm(const Spectrum& s);

// Motional contribution to the transparency width for residual two-photon
// wavevector k: 2 (2/a^2) gamma H(a v_th k / gamma) with a^2 = 2/ln 2. Covers
// the ballistic (Doppler, linear in k) and diffusive (Dicke, quadratic in k)
// regimes and the crossover between them.
double fwhm_analytic(double k, const MediumParams& m);

} // namespace eitmotion
