// Python bindings for the thermal-motion EIT library: susceptibilities in all
// motional regimes, transparency-width tools, the diffusive-regime image
// filter, storage / slow-light evolution, finite-beam (Ramsey) spectra, the
// kinetic Monte-Carlo oracle, and the CF64 field format.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <complex>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eitmotion/cf64.hpp"
#include "eitmotion/dicke_filter.hpp"
#include "eitmotion/diffusion_dynamics.hpp"
#include "eitmotion/errors.hpp"
#include "eitmotion/field2d.hpp"
#include "eitmotion/kinetic_mc.hpp"
#include "eitmotion/params.hpp"
#include "eitmotion/ramsey.hpp"
#include "eitmotion/special_functions.hpp"
#include "eitmotion/susceptibility.hpp"
#include "eitmotion/velocity_integrals.hpp"

namespace py = pybind11;
using namespace eitmotion;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexField2D field_from_array(const CArray& arr, double dx, double dy) {
    if (arr.ndim() != 2)
        throw ValidationError("field array must be 2-dimensional");
    ComplexField2D f;
    f.ny = static_cast<int>(arr.shape(0));
    f.nx = static_cast<int>(arr.shape(1));
    f.dx = dx;
    f.dy = dy;
    f.values.assign(arr.data(), arr.data() + arr.size());
    f.validate();
    return f;
}

py::array_t<Complex> array_from_field(const ComplexField2D& f) {
    py::array_t<Complex> arr({f.ny, f.nx});
    std::memcpy(arr.mutable_data(), f.values.data(),
                f.values.size() * sizeof(Complex));
    return arr;
}

// The single-count array_t constructor produces a zero-stride array with
// this toolchain, so spell out shape and strides explicitly.
template <typename T>
py::array_t<T> array_from_vector(const std::vector<T>& v) {
    const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(v.size())};
    const std::vector<py::ssize_t> strides{static_cast<py::ssize_t>(sizeof(T))};
    py::array_t<T> arr(shape, strides);
    std::memcpy(arr.mutable_data(), v.data(), v.size() * sizeof(T));
    return arr;
}

RamseyGeometry make_geometry(const std::string& name, double radius) {
    RamseyGeometry g;
    g.a = radius;
    if (name == "sheet")
        g.dim = RamseyGeometry::Dim::sheet_1d;
    else if (name == "cylinder")
        g.dim = RamseyGeometry::Dim::cylinder_2d;
    else
        throw ValidationError("geometry: expected \"sheet\" or \"cylinder\", got \"" +
                              name + "\"");
    g.validate();
    return g;
}

RamseyParams make_ramsey_params(double D, double Gamma, double K_pow) {
    RamseyParams p;
    p.D = D;
    p.Gamma = Gamma;
    p.K_pow = K_pow;
    p.validate();
    return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "thermal-motion effects in EIT media: susceptibilities, "
              "transparency widths, diffusion-limit filters, storage and "
              "slow-light dynamics, finite-beam spectra, kinetic Monte Carlo";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    // ---- parameter bundles --------------------------------------------------
    py::class_<MediumParams>(m, "MediumParams")
        .def(py::init([](double v_th, double gamma, double Gamma_d, double Gamma_21,
                         double omega_21, double coupling) {
                 MediumParams p;
                 p.v_th = v_th;
                 p.gamma = gamma;
                 p.Gamma_d = Gamma_d;
                 p.Gamma_21 = Gamma_21;
                 p.omega_21 = omega_21;
                 p.coupling = coupling;
                 p.validate();
                 return p;
             }),
             py::arg("v_th"), py::arg("gamma"), py::arg("Gamma_d"),
             py::arg("Gamma_21"), py::arg("omega_21") = 0.0,
             py::arg("coupling") = 1.0)
        .def_readwrite("v_th", &MediumParams::v_th)
        .def_readwrite("gamma", &MediumParams::gamma)
        .def_readwrite("Gamma_d", &MediumParams::Gamma_d)
        .def_readwrite("Gamma_21", &MediumParams::Gamma_21)
        .def_readwrite("omega_21", &MediumParams::omega_21)
        .def_readwrite("coupling", &MediumParams::coupling)
        .def("diffusion", &MediumParams::diffusion,
             "thermal diffusion coefficient v_th^2 / gamma, m^2/s")
        .def("validate", &MediumParams::validate);

    py::class_<BeamParams>(m, "BeamParams")
        .def(py::init([](double q1, Complex Omega_2, std::array<double, 3> delta_q,
                         double Delta_1, double Delta) {
                 BeamParams b;
                 b.q1 = q1;
                 b.Omega_2 = Omega_2;
                 b.delta_q = delta_q;
                 b.Delta_1 = Delta_1;
                 b.Delta = Delta;
                 b.validate();
                 return b;
             }),
             py::arg("q1"), py::arg("Omega_2"),
             py::arg("delta_q") = std::array<double, 3>{0.0, 0.0, 0.0},
             py::arg("Delta_1") = 0.0, py::arg("Delta") = 0.0)
        .def_readwrite("q1", &BeamParams::q1)
        .def_readwrite("Omega_2", &BeamParams::Omega_2)
        .def_readwrite("delta_q", &BeamParams::delta_q)
        .def_readwrite("Delta_1", &BeamParams::Delta_1)
        .def_readwrite("Delta", &BeamParams::Delta)
        .def("validate", &BeamParams::validate);

    py::class_<SlowLightParams>(m, "SlowLightParams")
        .def_readonly("V_g", &SlowLightParams::V_g)
        .def_readonly("Gamma_0", &SlowLightParams::Gamma_0)
        .def_readonly("D", &SlowLightParams::D)
        .def_readonly("q1", &SlowLightParams::q1)
        .def_readonly("Delta", &SlowLightParams::Delta);

    py::class_<McResult>(m, "McResult")
        .def_readonly("chi", &McResult::chi)
        .def_readonly("stderr_chi", &McResult::stderr_chi)
        .def_readonly("ks_vz", &McResult::ks_vz)
        .def_readonly("window_means", &McResult::window_means)
        .def_readonly("discarded_windows", &McResult::discarded_windows)
        .def_readonly("collisions", &McResult::collisions);

    // ---- special functions --------------------------------------------------
    m.def("faddeeva_w", &faddeeva_w, py::arg("z"),
          "w(z) = exp(-z^2) erfc(-i z), accurate in the upper half plane");
    m.def("brownian_H", py::overload_cast<double>(&brownian_H), py::arg("x"),
          "x - 1 + exp(-x): quadratic for small x, linear minus one for large x");
    m.def("bessel_I", &bessel_I, py::arg("nu"), py::arg("z"),
          "modified Bessel I_nu for complex argument (nu = 0 or 1)");
    m.def("bessel_K", &bessel_K, py::arg("nu"), py::arg("z"),
          "modified Bessel K_nu for complex argument (nu = 0 or 1)");

    // ---- velocity-averaged response ------------------------------------------
    m.def("voigt_G1", &voigt_G1, py::arg("medium"), py::arg("q1"),
          py::arg("Delta_1"), py::arg("omega") = 0.0,
          "drive-off one-photon response, closed form via the Faddeeva function");
    m.def("one_photon_K", &one_photon_K, py::arg("medium"), py::arg("q1"),
          py::arg("Delta_1"), py::arg("omega") = 0.0,
          "collision-renormalized one-photon kernel K = i G1 / (1 - i gamma G1)");

    m.def(
        "chi31_general",
        [](const MediumParams& m_, const BeamParams& b, double omega,
           std::array<double, 3> k_perp) { return chi31_general(m_, b, omega, k_perp); },
        py::arg("medium"), py::arg("beams"), py::arg("omega") = 0.0,
        py::arg("k_perp") = std::array<double, 3>{0.0, 0.0, 0.0},
        "probe susceptibility for arbitrary motional regime");

    m.def(
        "chi_scan",
        [](const std::vector<double>& delta_grid, std::array<double, 3> k_perp,
           const MediumParams& m_, const BeamParams& b) {
            const Spectrum s = chi_scan(delta_grid, k_perp, m_, b);
            return array_from_vector(s.values);
        },
        py::arg("delta_grid"), py::arg("k_perp"), py::arg("medium"), py::arg("beams"),
        "raw chi over a two-photon detuning grid at omega = 0");

    m.def(
        "transmission_scan",
        [](const std::vector<double>& delta_grid, std::array<double, 3> k_perp,
           const MediumParams& m_, const BeamParams& b) {
            const Spectrum s = transmission_scan(delta_grid, k_perp, m_, b);
            std::vector<double> t(s.values.size());
            for (size_t i = 0; i < s.values.size(); ++i)
                t[i] = s.values[i].real();
            return array_from_vector(t);
        },
        py::arg("delta_grid"), py::arg("k_perp"), py::arg("medium"), py::arg("beams"),
        "normalized transparency window over a detuning grid (0 = opaque "
        "baseline, 1 = window peak)");

    m.def(
        "fwhm",
        [](const std::vector<double>& axis, const std::vector<double>& values) {
            Spectrum s;
            s.axis = axis;
            s.values.assign(values.begin(), values.end());
            const FwhmResult r = fwhm(s);
            return py::make_tuple(r.width, r.peak_height);
        },
        py::arg("axis"), py::arg("values"),
        "(width, peak_height) of the dominant interior peak by interpolated "
        "half-height crossings");

    m.def("fwhm_analytic", &fwhm_analytic, py::arg("k"), py::arg("medium"),
          "motional transparency-width contribution 2 (2/a^2) gamma H(a v_th "
          "k/gamma), a^2 = 2/ln 2");

    // ---- diffusive-regime window and image filter ----------------------------
    m.def("gamma_hom", &gamma_hom, py::arg("medium"), py::arg("beams"),
          "homogeneous window width Gamma_21 + Re{K}|Omega_2|^2");
    m.def("window_L", &window_L, py::arg("k_perp"), py::arg("omega"),
          py::arg("medium"), py::arg("beams"),
          "diffusive-regime transparency window lineshape L");
    m.def("chi31_dicke", &chi31_dicke, py::arg("k_perp"), py::arg("omega"),
          py::arg("medium"), py::arg("beams"),
          "diffusive-limit susceptibility i coupling K (1 - L)");
    m.def("angular_transmission", &angular_transmission, py::arg("theta"),
          py::arg("q"), py::arg("medium"), py::arg("beams"),
          "steady-state window amplitude Re{L} at plane-wave angle theta");

    m.def(
        "apply_filter",
        [](const CArray& field, double dx, double dy, const MediumParams& m_,
           const BeamParams& b, bool include_diffraction, double propagation_length) {
            FilterParams p;
            p.medium = m_;
            p.beams = b;
            p.include_diffraction = include_diffraction;
            p.propagation_length = propagation_length;
            const FilterResult r = apply_filter(field_from_array(field, dx, dy), p);
            return py::make_tuple(array_from_field(r.field), r.edge_energy_fraction,
                                  r.aliasing_warning);
        },
        py::arg("field"), py::arg("dx"), py::arg("dy"), py::arg("medium"),
        py::arg("beams"), py::arg("include_diffraction") = true,
        py::arg("propagation_length") = 0.0,
        "propagate a transverse image through the vapor; returns (field, "
        "edge_energy_fraction, aliasing_warning)");

    // ---- storage and slow light ----------------------------------------------
    m.def(
        "evolve_stored",
        [](const CArray& field, double dx, double dy, double dt,
           const MediumParams& m_, double t0) {
            StoredCoherence st;
            st.field = field_from_array(field, dx, dy);
            st.t = t0;
            const StoredCoherence out = evolve_stored(st, dt, m_);
            return py::make_tuple(array_from_field(out.field), out.t);
        },
        py::arg("field"), py::arg("dx"), py::arg("dy"), py::arg("dt"),
        py::arg("medium"), py::arg("t0") = 0.0,
        "field-free storage for duration dt; returns (field, t)");

    m.def("group_velocity", &group_velocity, py::arg("medium"), py::arg("beams"),
          "slow-light dispersion parameters in the diffusive regime");

    m.def(
        "evolve_slow_light",
        [](const CArray& field, double dx, double dy, double t,
           const SlowLightParams& slp) {
            const SlowLightStep out =
                evolve_slow_light(field_from_array(field, dx, dy), t, slp);
            return py::make_tuple(array_from_field(out.field), out.carrier);
        },
        py::arg("field"), py::arg("dx"), py::arg("dy"), py::arg("t"),
        py::arg("params"),
        "traveling-envelope complex diffusion for duration t; returns "
        "(envelope, carrier) with the carrier factor reported separately");

    // ---- finite-beam (Ramsey-narrowed) spectra -------------------------------
    m.def(
        "s_correction",
        [](double Delta, const std::string& geometry, double radius, double D,
           double Gamma, double K_pow) {
            return s_correction(Delta, make_geometry(geometry, radius),
                                make_ramsey_params(D, Gamma, K_pow));
        },
        py::arg("Delta"), py::arg("geometry"), py::arg("radius"), py::arg("D"),
        py::arg("Gamma"), py::arg("K_pow"),
        "finite-beam correction S (0 = plane wave, 1 = window erased); "
        "geometry is \"sheet\" or \"cylinder\"");

    m.def(
        "power_spectrum",
        [](const std::vector<double>& delta_grid, const std::string& geometry,
           double radius, double D, double Gamma, double K_pow, double K) {
            const RamseySpectra sp =
                power_spectrum(delta_grid, make_geometry(geometry, radius),
                               make_ramsey_params(D, Gamma, K_pow), K);
            std::vector<double> t(sp.transmission.values.size());
            for (size_t i = 0; i < t.size(); ++i)
                t[i] = sp.transmission.values[i].real();
            return py::make_tuple(array_from_vector(sp.absorption.values),
                                  array_from_vector(t));
        },
        py::arg("delta_grid"), py::arg("geometry"), py::arg("radius"), py::arg("D"),
        py::arg("Gamma"), py::arg("K_pow"), py::arg("K"),
        "steady-state finite-beam spectrum; returns (absorption, transmission)");

    m.def(
        "fd_oracle",
        [](double Delta, const std::string& geometry, double radius, double D,
           double Gamma, double K_pow, Complex drive, int min_points) {
            return fd_oracle(Delta, make_geometry(geometry, radius),
                             make_ramsey_params(D, Gamma, K_pow), drive, min_points);
        },
        py::arg("Delta"), py::arg("geometry"), py::arg("radius"), py::arg("D"),
        py::arg("Gamma"), py::arg("K_pow"), py::arg("drive") = Complex(1.0, 0.0),
        py::arg("min_points") = 8001,
        "independent finite-difference route to the finite-beam correction");

    // ---- kinetic Monte-Carlo oracle ------------------------------------------
    m.def(
        "simulate_chi",
        [](std::array<double, 3> k_perp, double omega, const MediumParams& m_,
           const BeamParams& b, long long n_atoms, double dt, double t_total,
           uint64_t seed, double probe_drive) {
            McConfig cfg;
            cfg.n_atoms = n_atoms;
            cfg.dt = dt;
            cfg.t_total = t_total;
            cfg.seed = seed;
            cfg.probe_drive = probe_drive;
            return simulate_chi(k_perp, omega, m_, b, cfg);
        },
        py::arg("k_perp"), py::arg("omega"), py::arg("medium"), py::arg("beams"),
        py::arg("n_atoms"), py::arg("dt"), py::arg("t_total"), py::arg("seed"),
        py::arg("probe_drive") = 1.0,
        "BGK kinetic Monte-Carlo estimate of chi with jackknife error bars");

    // ---- CF64 container -------------------------------------------------------
    m.def(
        "read_cf64",
        [](const std::string& path) {
            const Cf64File f = read_cf64(path);
            py::dict d;
            d["field"] = array_from_field(f.field);
            d["dx"] = f.field.dx;
            d["dy"] = f.field.dy;
            d["unit"] = f.unit;
            d["extra"] = f.extra.dump();
            return d;
        },
        py::arg("path"), "load a CF64 complex-field file; extra metadata is "
                         "returned as a JSON string");

    m.def(
        "write_cf64",
        [](const std::string& path, const CArray& field, double dx, double dy,
           const std::string& unit, const std::string& extra_json) {
            const auto extra = nlohmann::json::parse(extra_json, nullptr, false);
            if (extra.is_discarded() || !extra.is_object())
                throw ValidationError("extra_json: not a JSON object");
            write_cf64(path, field_from_array(field, dx, dy), unit, extra);
        },
        py::arg("path"), py::arg("field"), py::arg("dx"), py::arg("dy"),
        py::arg("unit") = "dimensionless", py::arg("extra_json") = "{}",
        "write a CF64 complex-field file (atomic replace)");
}
