"""Thermal-motion effects in EIT media.

Probe susceptibility across motional regimes, transparency-window widths,
diffusive-limit spatial filtering of images, storage and slow-light
diffusion dynamics, finite-beam (Ramsey-narrowed) spectra, and a kinetic
Monte-Carlo cross-check, all backed by the C++ core.

Units: angular frequencies and rates in rad/s, lengths in metres,
velocities in m/s, diffusion coefficients in m^2/s.
"""

from ._core import (
    BeamParams,
    ConvergenceError,
    FormatError,
    McResult,
    MediumParams,
    SlowLightParams,
    ValidationError,
    __version__,
    angular_transmission,
    apply_filter,
    bessel_I,
    bessel_K,
    brownian_H,
    chi31_dicke,
    chi31_general,
    chi_scan,
    evolve_slow_light,
    evolve_stored,
    faddeeva_w,
    fd_oracle,
    fwhm,
    fwhm_analytic,
    gamma_hom,
    group_velocity,
    one_photon_K,
    power_spectrum,
    read_cf64,
    s_correction,
    simulate_chi,
    transmission_scan,
    voigt_G1,
    window_L,
    write_cf64,
)

__all__ = [
    "BeamParams",
    "ConvergenceError",
    "FormatError",
    "McResult",
    "MediumParams",
    "SlowLightParams",
    "ValidationError",
    "__version__",
    "angular_transmission",
    "apply_filter",
    "bessel_I",
    "bessel_K",
    "brownian_H",
    "chi31_dicke",
    "chi31_general",
    "chi_scan",
    "evolve_slow_light",
    "evolve_stored",
    "faddeeva_w",
    "fd_oracle",
    "fwhm",
    "fwhm_analytic",
    "gamma_hom",
    "group_velocity",
    "one_photon_K",
    "power_spectrum",
    "read_cf64",
    "s_correction",
    "simulate_chi",
    "transmission_scan",
    "voigt_G1",
    "window_L",
    "write_cf64",
]
